"""Finite fields F_q, q = p^m, backed by exponential and discrete-log tables.

Elements are integer codes in 0..q-1 whose base-p digits are the coordinates
in the power basis of a fixed irreducible modulus (for m = 1 the code is the
residue itself).  Every multiplicative question becomes index arithmetic mod
q-1; additive structure is digitwise.  Bulk code arrays go through numpy.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import BadSubfield, NotPrime, TooLarge, ZeroInput

_TABLE_BOUND = 1 << 24
_DENSE_ADD_BOUND = 2200  # full q x q addition table only below this


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    m = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(m):
                prod[d - m + j] = (prod[d - m + j] - c * mod[j]) % p
    out = prod[:m]
    out += [0] * (m - len(out))
    return out


def _poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1] + [0] * (len(mod) - 2)
    cur = list(base)
    while e:
        if e & 1:
            result = _poly_mulmod(result, cur, mod, p)
        cur = _poly_mulmod(cur, cur, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    def norm(v: list[int]) -> list[int]:
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = norm(list(a)), norm(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b):
            c = (r[-1] * inv) % p
            off = len(r) - len(b)
            for j, bj in enumerate(b):
                r[off + j] = (r[off + j] - c * bj) % p
            r = norm(r)
            if not r:
                break
        a, b = b, r
    return a


def _is_irreducible(mod: list[int], p: int) -> bool:
    # x^{p^m} == x mod f, and x^{p^{m/r}} - x coprime to f for prime r | m
    m = len(mod) - 1
    x = [0, 1] + [0] * (m - 2) if m >= 2 else [0]
    xq = _poly_powmod(x, p ** m, mod, p)
    if xq != x + [0] * (m - len(x)):
        return False
    for r in prime_factors(m):
        sub = _poly_powmod(x, p ** (m // r), mod, p)
        diff = [(s - t) % p for s, t in zip(sub, x + [0] * (m - len(x)))]
        g = _poly_gcd(list(mod), diff, p)
        if len(g) - 1 > 0:
            return False
    return True


class FqElem:
    """Element of an FqField, held as its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: "FqField", code: int):
        self.field = field
        self.code = code

    def is_zero(self) -> bool:
        return self.code == 0

    def dlog(self) -> int:
        if self.code == 0:
            raise ZeroInput("discrete log of zero")
        return int(self.field.DLOG[self.code])

    def __add__(self, other: "FqElem | int") -> "FqElem":
        o = self.field.el(other) if isinstance(other, int) else other
        return FqElem(self.field, self.field.add_code(self.code, o.code))

    __radd__ = __add__

    def __neg__(self) -> "FqElem":
        return FqElem(self.field, self.field.neg_code(self.code))

    def __sub__(self, other: "FqElem | int") -> "FqElem":
        o = self.field.el(other) if isinstance(other, int) else other
        return self + (-o)

    def __rsub__(self, other: int) -> "FqElem":
        return self.field.el(other) - self

    def __mul__(self, other: "FqElem | int") -> "FqElem":
        o = self.field.el(other) if isinstance(other, int) else other
        return FqElem(self.field, self.field.mul_code(self.code, o.code))

    __rmul__ = __mul__

    def __truediv__(self, other: "FqElem | int") -> "FqElem":
        o = self.field.el(other) if isinstance(other, int) else other
        if o.code == 0:
            raise ZeroDivisionError("division by zero field element")
        return self * o ** -1

    def __pow__(self, k: int) -> "FqElem":
        f = self.field
        if self.code == 0:
            if k < 0:
                raise ZeroDivisionError("inverting zero field element")
            return FqElem(f, 0 if k else 1)
        d = (self.dlog() * k) % (f.q - 1)
        return FqElem(f, int(f.EXP[d]))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FqElem):
            return self.field is other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.el(other).code
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.code))

    def __repr__(self) -> str:
        return f"Fq[{self.field.q}]({self.code})"


class FqField:
    """F_{p^m} with exp/dlog tables and vectorized code arithmetic."""

    def __init__(self, p: int, m: int, seed: int = 0):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        q = p ** m
        if q > _TABLE_BOUND:
            raise TooLarge(f"q = {q} exceeds the table bound 2^24")
        self.p, self.m, self.q, self.seed = p, m, q, seed
        self._pp = [p ** i for i in range(m + 1)]
        if m == 1:
            self.modulus: tuple[int, ...] | None = None
        else:
            rng = random.Random(seed * 1000003 + p * 1009 + m)
            while True:
                cand = [rng.randrange(p) for _ in range(m)] + [1]
                if cand[0] != 0 and _is_irreducible(cand, p):
                    self.modulus = tuple(cand)
                    break
        self._gen_code = self._find_generator()
        self._build_log_tables()
        self._trabs: np.ndarray | None = None
        self._add_table: np.ndarray | None = None

    # -- construction internals -------------------------------------------

    def _code_digits(self, code: int) -> list[int]:
        return [(code // self._pp[i]) % self.p for i in range(self.m)]

    def _digits_code(self, digits: Sequence[int]) -> int:
        return sum((d % self.p) * self._pp[i] for i, d in enumerate(digits))

    def _mul_code_slow(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        prod = _poly_mulmod(self._code_digits(a), self._code_digits(b), self.modulus, self.p)
        return self._digits_code(prod)

    def _pow_code_slow(self, a: int, e: int) -> int:
        out, cur = 1, a
        while e:
            if e & 1:
                out = self._mul_code_slow(out, cur)
            cur = self._mul_code_slow(cur, cur)
            e >>= 1
        return out

    def _find_generator(self) -> int:
        n = self.q - 1
        checks = [n // r for r in prime_factors(n)]
        for cand in range(2, self.q):
            if all(self._pow_code_slow(cand, c) != 1 for c in checks):
                return cand
        raise ArithmeticError("no generator found")  # unreachable for a field

    def _build_log_tables(self) -> None:
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        dlog = np.full(q, -1, dtype=np.int64)
        cur = 1
        for k in range(q - 1):
            exp[k] = cur
            dlog[cur] = k
            cur = self._mul_code_slow(cur, self._gen_code)
        if cur != 1:
            raise ArithmeticError("generator order check failed")
        self.EXP, self.DLOG = exp, dlog

    # -- element access ----------------------------------------------------

    def el(self, value: int) -> FqElem:
        """The image of the integer value (an F_p constant)."""
        return FqElem(self, value % self.p)

    def from_code(self, code: int) -> FqElem:
        return FqElem(self, code % self.q)

    @property
    def generator(self) -> FqElem:
        return FqElem(self, self._gen_code)

    def zero(self) -> FqElem:
        return FqElem(self, 0)

    def one(self) -> FqElem:
        return FqElem(self, 1)

    def elements(self) -> Iterator[FqElem]:
        for c in range(self.q):
            yield FqElem(self, c)

    def units(self) -> Iterator[FqElem]:
        for c in range(1, self.q):
            yield FqElem(self, c)

    # -- scalar code arithmetic -------------------------------------------

    def add_code(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._digits_code(
            [(x + y) % self.p for x, y in zip(self._code_digits(a), self._code_digits(b))]
        )

    def neg_code(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self._digits_code([(-x) % self.p for x in self._code_digits(a)])

    def mul_code(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.EXP[(int(self.DLOG[a]) + int(self.DLOG[b])) % (self.q - 1)])

    # -- vectorized code arithmetic ---------------------------------------

    def add_codes(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (A + B) % self.p
        if self.q <= _DENSE_ADD_BOUND:
            return self.add_table()[A, B]
        out = np.zeros(np.broadcast(A, B).shape, dtype=np.int64)
        for i in range(self.m):
            di = ((A // self._pp[i]) + (B // self._pp[i])) % self.p
            out += di * self._pp[i]
        return out

    def neg_codes(self, A: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (-A) % self.p
        out = np.zeros(np.shape(A), dtype=np.int64)
        for i in range(self.m):
            out += ((-(A // self._pp[i])) % self.p) * self._pp[i]
        return out

    def mul_codes(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A)
        B = np.asarray(B)
        nz = (A != 0) & (B != 0)
        d = (self.DLOG[A] + self.DLOG[B]) % (self.q - 1)
        return np.where(nz, self.EXP[np.where(nz, d, 0)], 0)

    def add_table(self) -> np.ndarray:
        if self._add_table is None:
            if self.q > _DENSE_ADD_BOUND:
                raise TooLarge(f"dense addition table refused for q = {self.q}")
            codes = np.arange(self.q)
            tab = np.zeros((self.q, self.q), dtype=np.int32)
            for i in range(self.m):
                di = ((codes[:, None] // self._pp[i]) + (codes[None, :] // self._pp[i])) % self.p
                tab += (di * self._pp[i]).astype(np.int32)
            self._add_table = tab
        return self._add_table

    # -- trace and norm ----------------------------------------------------

    def trace_abs_table(self) -> np.ndarray:
        """TRABS[code] = absolute trace down to F_p, as a residue mod p."""
        if self._trabs is None:
            q, p, m = self.q, self.p, self.m
            if m == 1:
                self._trabs = np.arange(q, dtype=np.int64)
            else:
                codes = np.arange(q, dtype=np.int64)
                dl = self.DLOG[1:]
                acc = codes
                for i in range(1, m):
                    im = np.zeros(q, dtype=np.int64)
                    im[1:] = self.EXP[(dl * (p ** i)) % (q - 1)]
                    acc = self._add_codes_int(acc, im)
                if np.any(acc >= p):
                    raise ArithmeticError("absolute trace left the prime field")
                self._trabs = acc
        return self._trabs

    def _add_codes_int(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        out = np.zeros(np.shape(A), dtype=np.int64)
        for i in range(self.m):
            out += (((A // self._pp[i]) + (B // self._pp[i])) % self.p) * self._pp[i]
        return out

    def trace_to_prime(self, x: FqElem) -> int:
        return int(self.trace_abs_table()[x.code])

    def norm_to_subfield(self, x: FqElem, d: int) -> FqElem:
        """Norm from F_{p^m} down to F_{p^d}, d | m."""
        if d < 1 or self.m % d != 0:
            raise BadSubfield(f"degree {d} does not divide {self.m}")
        if x.code == 0:
            return self.zero()
        e = (self.q - 1) // (self.p ** d - 1)
        return FqElem(self, int(self.EXP[(x.dlog() * e) % (self.q - 1)]))


@lru_cache(maxsize=None)
def build_field(p: int, m: int = 1, seed: int = 0) -> FqField:
    """Construct (and cache) F_{p^m} with verified modulus and generator."""
    return FqField(p, m, seed)
