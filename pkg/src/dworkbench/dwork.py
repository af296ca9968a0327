"""Eigenspace Frobenius traces and point counts for the one-parameter
degree-N family sum X_i^N = N t prod X_i in P^{N-1}.

The eigentrace is a stratified character sum: a torus stratum constrained by
s^N = (Nt)^N prod u_i plus boundary strata over vanishing coordinate sets.
Two evaluation routes are kept: a literal nested scan (the defining sum) and
a state-convolution engine over (partial sum, dlog sum, weight exponent)
that aggregates every t at once.  The engine must agree with the scan, and
at N = 3 with brute-force equivariant fixed-point counts.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

import numpy as np

from .cyclotomic import CycloElem, to_cyclo
from .errors import BadN, BadParams, BadT, Infeasible, UnsupportedN
from .finitefield import FqField, build_field
from .weights import WeightVector

_COUNT_BUDGET = 10 ** 10
_STATE_BUDGET = 6 * 10 ** 6  # q (q-1) N cells


def _entries_of(v: "WeightVector | Sequence[int]", N: int) -> tuple[int, ...]:
    if isinstance(v, WeightVector):
        if v.N != N:
            raise BadParams("label modulus differs from family degree")
        return v.entries
    ent = tuple(int(e) % N for e in v)
    if len(ent) != N:
        raise BadParams(f"expected {N} entries, got {len(ent)}")
    return ent


class DworkFiber:
    """One fiber of the family: prime field, odd degree N, parameter t."""

    __slots__ = ("field", "N", "t_code")

    def __init__(self, field: FqField, N: int, t):
        if N < 3 or N % 2 == 0:
            raise BadN("family degree must be odd and at least 3")
        if field.m != 1 or (field.q - 1) % N != 0:
            raise BadN("fiber field must be prime with q = 1 mod N")
        self.field = field
        self.N = N
        self.t_code = t.code if hasattr(t, "code") else int(t) % field.q

    @property
    def t(self):
        return self.field.from_code(self.t_code)

    def is_smooth(self) -> bool:
        if self.t_code == 0:
            return True
        d = (int(self.field.DLOG[self.t_code]) * self.N) % (self.field.q - 1)
        return d != 0

    def __repr__(self) -> str:
        return f"DworkFiber(q={self.field.q}, N={self.N}, t={self.t_code})"


class GroupElement:
    """Coordinatewise root-of-unity scaling, modulo the diagonal."""

    __slots__ = ("N", "exps")

    def __init__(self, N: int, exps: Sequence[int]):
        e = [x % N for x in exps]
        if len(e) != N:
            raise BadParams("need one exponent per coordinate")
        if sum(e) % N != 0:
            raise BadParams("exponents must sum to 0 mod N")
        # canonical coset representative: first exponent zero
        self.N = N
        self.exps = tuple((x - e[0]) % N for x in e)

    def is_identity(self) -> bool:
        return not any(self.exps)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GroupElement):
            return self.N == other.N and self.exps == other.exps
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.N, self.exps))

    def __repr__(self) -> str:
        return f"GroupElement(N={self.N}, {list(self.exps)})"


class EigenTrace:
    """Trace value with its stratum breakdown.

    The all-equal label carries the invariant hyperplane classes of every
    even degree, so its middle-degree trace needs the geometric constant
    1 + q + ... + q^{N-2} on top of the stratified sum; every other label
    gets the bare sum.
    """

    __slots__ = ("fiber", "entries", "torus", "strata", "hyperplane", "value")

    def __init__(self, fiber: DworkFiber, entries: tuple[int, ...], torus: CycloElem, strata: dict):
        self.fiber = fiber
        self.entries = entries
        self.torus = torus
        self.strata = strata
        q, N = fiber.field.q, fiber.N
        if len(set(entries)) == 1:
            self.hyperplane = CycloElem.rational(N, (q ** (N - 1) - 1) // (q - 1))
        else:
            self.hyperplane = CycloElem.zero(N)
        total = torus + self.hyperplane
        for s in strata.values():
            total = total + s
        self.value = total

    def to_json(self) -> dict:
        strata = {
            "torus": self.torus.to_json(),
            **{",".join(map(str, z)): s.to_json() for z, s in sorted(self.strata.items())},
        }
        if not self.hyperplane.is_zero():
            strata["hyperplane"] = self.hyperplane.to_json()
        return {"t": self.fiber.t_code, "value": self.value.to_json(), "strata": strata}


# -- stratum enumeration ----------------------------------------------------


def strata_sets(entries: Sequence[int]) -> list[tuple[int, ...]]:
    """All coordinate sets Z, 2 <= |Z| <= N-1, with v constant off Z."""
    N = len(entries)
    classes: dict[int, list[int]] = {}
    for i, e in enumerate(entries):
        classes.setdefault(e, []).append(i)
    out: list[tuple[int, ...]] = []
    for members in classes.values():
        top = min(len(members), N - 2)
        for r in range(1, top + 1):
            for comp in combinations(members, r):
                cs = set(comp)
                out.append(tuple(i for i in range(N) if i not in cs))
    out.sort()
    return out


def boundary_term(field: FqField, N: int, entries: Sequence[int], Z: Sequence[int], i0: int | None = None) -> CycloElem:
    """One boundary stratum: units on Z summing to zero, first slot pinned.

    The weight is the residue character with exponents v_i - a, a being the
    constant value off Z; the pinned index i0 defaults to min(Z) and the
    value is independent of the choice.
    """
    Z = tuple(sorted(Z))
    if not (2 <= len(Z) <= N - 1):
        raise BadParams("stratum must omit something and keep two coordinates")
    comp = [i for i in range(N) if i not in Z]
    vals = {entries[i] % N for i in comp}
    if len(vals) != 1:
        raise BadParams("label not constant off the stratum")
    a = vals.pop()
    if i0 is None:
        i0 = Z[0]
    elif i0 not in Z:
        raise BadParams("pinned index must lie in the stratum")
    q = field.q
    dl = field.DLOG
    S = np.zeros((q, N), dtype=np.int64)
    S[1 % q, 0] = 1  # the pinned unit contributes 1 to the sum, exponent 0
    for i in Z:
        if i == i0:
            continue
        w = (entries[i] - a) % N
        S2 = np.zeros_like(S)
        for x in range(1, q):
            e = (w * int(dl[x])) % N
            S2 += np.roll(S, (x, e), axis=(0, 1))
        S = S2
    return -to_cyclo(S[0].tolist(), N)


# -- torus stratum, state-convolution engine --------------------------------


def _torus_aggregate(field: FqField, N: int, entries: Sequence[int]) -> np.ndarray:
    """H[r, e]: counts of torus tuples by constraint residue and weight.

    A tuple contributes at r = (N dlog(s) - sum dlog u_i) mod (q-1) and
    e = sum v_i dlog(u_i) mod N; the fiber at t reads off the single row
    r_t = N dlog(N t) mod (q-1).
    """
    q = field.q
    Qm1 = q - 1
    if q * Qm1 * N > _STATE_BUDGET:
        raise Infeasible(f"state space {q * Qm1 * N} exceeds budget")
    dl = field.DLOG
    S = np.zeros((q, Qm1, N), dtype=np.int64)
    S[0, 0, 0] = 1
    for i in range(N - 1):
        vi = entries[i] % N
        S2 = np.zeros_like(S)
        for x in range(1, q):
            dlx = int(dl[x])
            S2 += np.roll(S, (x, dlx, (vi * dlx) % N), axis=(0, 1, 2))
        S = S2
    H = np.zeros((Qm1, N), dtype=np.int64)
    d = np.arange(Qm1)
    for sigma in range(q):
        s = (sigma + 1) % q
        if s == 0:
            continue
        r = (N * int(dl[s]) - d) % Qm1
        np.add.at(H, (r, slice(None)), S[sigma])
    return H


def _torus_row(field: FqField, N: int, t_code: int) -> int:
    dlNt = int(field.DLOG[field.mul_code(field.el(N).code, t_code)])
    return (N * dlNt) % (field.q - 1)


# -- literal scan (defining sum) -------------------------------------------


def _torus_scan(field: FqField, N: int, entries: Sequence[int], t_code: int) -> CycloElem:
    """The defining torus sum by nested enumeration, last coordinate scanned."""
    q = field.q
    Qm1 = q - 1
    total = Qm1 ** (N - 1)
    if total > 10 ** 9:
        raise Infeasible(f"torus scan cost {total} too large")
    EXP, dl = field.EXP, field.DLOG
    r_t = _torus_row(field, N, t_code)
    counts = np.zeros(N, dtype=np.int64)
    chunk = 1 << 18
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        rem = idx
        sigma = np.zeros_like(idx)
        dsum = np.zeros_like(idx)
        e = np.zeros_like(idx)
        for i in range(N - 1):
            di = rem % Qm1
            rem = rem // Qm1
            sigma = (sigma + EXP[di]) % q
            dsum += di
            e += (entries[i] % N) * di
        s = (sigma + 1) % q
        ok = s != 0
        r = (N * dl[np.where(ok, s, 1)] - dsum) % Qm1
        ok &= r == r_t
        counts += np.bincount((e % N)[ok], minlength=N)
    return -to_cyclo(counts.tolist(), N)


def _boundary_scan(field: FqField, N: int, entries: Sequence[int], Z: Sequence[int]) -> CycloElem:
    Z = tuple(sorted(Z))
    comp = [i for i in range(N) if i not in Z]
    a = entries[comp[0]] % N
    q = field.q
    Qm1 = q - 1
    free = Z[1:]
    total = Qm1 ** len(free)
    EXP = field.EXP
    counts = np.zeros(N, dtype=np.int64)
    chunk = 1 << 18
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        rem = idx
        sigma = np.ones_like(idx)
        e = np.zeros_like(idx)
        for i in free:
            di = rem % Qm1
            rem = rem // Qm1
            sigma = (sigma + EXP[di]) % q
            e += ((entries[i] - a) % N) * di
        ok = sigma == 0
        counts += np.bincount((e % N)[ok], minlength=N)
    return -to_cyclo(counts.tolist(), N)


# -- public eigentrace API --------------------------------------------------


def _check_fiber_for_charsum(fiber: DworkFiber) -> None:
    if fiber.t_code == 0:
        raise BadT("character-sum trace needs t != 0")
    if not fiber.is_smooth():
        raise BadT("character-sum trace needs a smooth fiber (t^N != 1)")


def eigentrace_charsum(v: "WeightVector | Sequence[int]", fiber: DworkFiber, engine: str = "state") -> EigenTrace:
    """Exact Frobenius trace on the labelled eigenspace of the smooth fiber.

    engine "state" aggregates by constraint residue; engine "scan" runs the
    defining nested sum.  Both produce identical exact values.
    """
    _check_fiber_for_charsum(fiber)
    N, field = fiber.N, fiber.field
    entries = _entries_of(v, N)
    if engine == "state":
        H = _torus_aggregate(field, N, entries)
        torus = -to_cyclo(H[_torus_row(field, N, fiber.t_code)].tolist(), N)
    elif engine == "scan":
        torus = _torus_scan(field, N, entries, fiber.t_code)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    strata = {}
    for Z in strata_sets(entries):
        if engine == "scan":
            strata[Z] = _boundary_scan(field, N, entries, Z)
        else:
            strata[Z] = boundary_term(field, N, entries, Z)
    return EigenTrace(fiber, entries, torus, strata)


def eigentrace_all_t(field: FqField, N: int, v: "WeightVector | Sequence[int]") -> dict[int, EigenTrace]:
    """Eigentraces at every smooth t != 0, sharing one torus aggregation."""
    entries = _entries_of(v, N)
    H = _torus_aggregate(field, N, entries)
    strata = {Z: boundary_term(field, N, entries, Z) for Z in strata_sets(entries)}
    out: dict[int, EigenTrace] = {}
    for t_code in range(1, field.q):
        fiber = DworkFiber(field, N, t_code)
        if not fiber.is_smooth():
            continue
        torus = -to_cyclo(H[_torus_row(field, N, t_code)].tolist(), N)
        out[t_code] = EigenTrace(fiber, entries, torus, dict(strata))
    return out


def weil_check(trace: EigenTrace, tol: float = 1e-6) -> bool:
    """Purity bound: |T| <= rank * q^{(N-2)/2} at every embedding."""
    from .weights import rank_of

    N = trace.fiber.N
    q = trace.fiber.field.q
    bound = rank_of(trace.entries, N) * q ** ((N - 2) / 2)
    for e in range(1, N):
        if math.gcd(e, N) != 1:
            continue
        if abs(trace.value.embed(e)) > bound + tol * max(1.0, bound):
            return False
    return True


def duality_check(v: "WeightVector | Sequence[int]", fiber: DworkFiber) -> bool:
    """Negating the label conjugates the trace; permutation labels coincide."""
    N = fiber.N
    entries = _entries_of(v, N)
    neg = tuple((-e) % N for e in entries)
    tv = eigentrace_charsum(entries, fiber).value
    tn = eigentrace_charsum(neg, fiber).value
    if tn != tv.conjugate():
        return False
    if any(sorted((e + c) % N for e in entries) == sorted(neg) for c in range(N)):
        if tn != tv:
            return False
    return True


# -- point counting ---------------------------------------------------------


def count_points(fiber: DworkFiber, m: int = 1, threads: int = 1) -> int:
    """#Y_t(F_{q^m}) by standard-chart projective enumeration."""
    N = fiber.N
    q = fiber.field.q
    if q ** (m * (N - 1)) > _COUNT_BUDGET:
        raise Infeasible(f"point enumeration cost q^{m * (N - 1)} over budget")
    E = fiber.field if m == 1 else build_field(q, m)
    qe = E.q
    powN = np.zeros(qe, dtype=np.int64)
    dl = E.DLOG
    powN[1:] = E.EXP[(N * dl[1:]) % (qe - 1)]
    nt_code = E.mul_code(E.el(N).code, fiber.t_code)  # t is a base residue
    total = 0
    # chart j: coords before j vanish, coord j = 1, later coords free
    for j in range(N):
        nfree = N - 1 - j
        if nfree == 0:
            # all earlier coords zero: equation reads 1 = 0
            continue
        size = qe ** nfree
        if j >= 1:
            # the product term vanishes with the first coordinate
            total += _count_fermat_affine(E, powN, nfree)
            continue
        total += _count_chart_zero(E, powN, nt_code, nfree, size, threads)
    return total


def _count_fermat_affine(E: FqField, powN: np.ndarray, nfree: int) -> int:
    # solutions of 1 + sum_{i} x_i^N = 0 over nfree free coordinates
    qe = E.q
    size = qe ** nfree
    cnt = 0
    chunk = 1 << 20
    flat = E.m == 1
    for lo in range(0, size, chunk):
        idx = np.arange(lo, min(size, lo + chunk), dtype=np.int64)
        rem = idx
        acc = np.full_like(idx, 1)
        for _ in range(nfree):
            xi = rem % qe
            rem //= qe
            acc = acc + powN[xi] if flat else E.add_codes(acc, powN[xi])
        if flat:
            acc %= qe
        cnt += int(np.count_nonzero(acc == 0))
    return cnt


def _chart_zero_chunk(E: FqField, powN: np.ndarray, nt_code: int, nfree: int, lo: int, hi: int) -> int:
    qe = E.q
    idx = np.arange(lo, hi, dtype=np.int64)
    rem = idx
    flat = E.m == 1  # prime field: defer the modulus to one pass at the end
    acc = np.full_like(idx, 1)
    prod_dl = np.zeros_like(idx)
    any_zero = np.zeros(idx.shape, dtype=bool)
    dl = E.DLOG
    dls = dl.copy()
    dls[0] = 0
    for _ in range(nfree):
        xi = rem % qe
        rem //= qe
        acc = acc + powN[xi] if flat else E.add_codes(acc, powN[xi])
        any_zero |= xi == 0
        prod_dl += dls[xi]
    if flat:
        acc %= qe
    if nt_code == 0:
        rhs = np.zeros_like(idx)
    else:
        rhs = np.where(any_zero, 0, E.EXP[(prod_dl + int(dl[nt_code])) % (qe - 1)])
    return int(np.count_nonzero(acc == rhs))


def _count_chart_zero(E: FqField, powN: np.ndarray, nt_code: int, nfree: int, size: int, threads: int) -> int:
    chunk = 1 << 20
    ranges = [(lo, min(size, lo + chunk)) for lo in range(0, size, chunk)]
    if threads <= 1 or len(ranges) < 2:
        return sum(_chart_zero_chunk(E, powN, nt_code, nfree, lo, hi) for lo, hi in ranges)
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(lambda r: _chart_zero_chunk(E, powN, nt_code, nfree, *r), ranges))
    return sum(parts)


# -- N = 3 brute-force equivariant fixed points -----------------------------


def _curve_points(fiber: DworkFiber, E: FqField) -> list[tuple[int, int, int]]:
    """All points of the N = 3 fiber over E, one representative each."""
    qe = E.q
    powN = np.zeros(qe, dtype=np.int64)
    powN[1:] = E.EXP[(3 * E.DLOG[1:]) % (qe - 1)]
    nt_code = E.mul_code(E.el(3).code, fiber.t_code)
    pts: list[tuple[int, int, int]] = []
    Y = np.arange(qe, dtype=np.int64)
    add = E.add_table()
    for y in range(qe):
        # chart (1 : y : z)
        lhs = add[add[1, powN[y]], powN[Y]]
        if nt_code == 0 or y == 0:
            rhs = np.zeros(qe, dtype=np.int64)
        else:
            coef = E.mul_code(nt_code, y)
            rhs = E.mul_codes(np.full(qe, coef), Y)
        for z in np.nonzero(lhs == rhs)[0]:
            pts.append((1, y, int(z)))
    # chart (0 : 1 : z): 1 + z^3 = 0
    for z in np.nonzero(add[1, powN[Y]] == 0)[0]:
        pts.append((0, 1, int(z)))
    return pts


def fix_count_bruteforce(fiber: DworkFiber, g: GroupElement) -> int:
    """Points of the cubic fiber fixed by the scaled Frobenius, counted
    projectively over the cubic extension."""
    if fiber.N != 3:
        raise UnsupportedN("brute-force fixed points implemented for N = 3 only")
    if g.N != 3:
        raise BadParams("group element degree mismatch")
    base = fiber.field
    E = build_field(base.q, 3)
    q = base.q
    w = base.generator ** ((q - 1) // 3)  # cube root of unity, embeds as a constant
    zetas = [(w ** e).code for e in g.exps]
    pts = _curve_points(fiber, E)
    qe = E.q
    frob = np.zeros(qe, dtype=np.int64)
    frob[1:] = E.EXP[(E.DLOG[1:] * q) % (qe - 1)]
    cnt = 0
    for p in pts:
        img = [E.mul_code(z, int(frob[c])) for z, c in zip(zetas, p)]
        lam = None
        good = True
        for c, ic in zip(p, img):
            if c == 0:
                if ic != 0:
                    good = False
                    break
                continue
            ratio = E.mul_code(ic, (E.from_code(c) ** -1).code)
            if lam is None:
                lam = ratio
            elif lam != ratio:
                good = False
                break
        if good:
            cnt += 1
    return cnt
