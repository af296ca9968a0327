"""Exact arithmetic in cyclotomic fields Q(zeta_M).

An element lives in the power basis 1, z, ..., z^{phi(M)-1} for a fixed
primitive M-th root of unity z, as an integer numerator vector over one
shared positive denominator.  Products are reduced modulo the M-th
cyclotomic polynomial, so the representation is canonical and equality is
literal coefficient equality.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

from .errors import NotAMultiple
from .groupring import convolve_int

Rat = Union[int, Fraction]


def euler_phi(M: int) -> int:
    out, rem, f = 1, M, 2
    while f * f <= rem:
        if rem % f == 0:
            rem //= f
            out *= f - 1
            while rem % f == 0:
                rem //= f
                out *= f
        f += 1
    if rem > 1:
        out *= rem - 1
    return out


def _poly_div_exact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; the division is exact by construction
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Integer coefficients of the M-th cyclotomic polynomial, low to high."""
    if M == 1:
        return (-1, 1)
    poly = [0] * (M + 1)
    poly[0], poly[M] = -1, 1  # x^M - 1
    for d in range(1, M):
        if M % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


class CycloCtx:
    """Cached per-modulus data: reduction rows and canonical power vectors."""

    __slots__ = ("M", "phi", "poly", "red", "pow_vecs", "_emb")

    def __init__(self, M: int):
        self.M = M
        self.poly = cyclotomic_poly(M)
        phi = len(self.poly) - 1
        self.phi = phi
        top = max(2 * phi - 2, M - 1)
        red: list[tuple[int, ...]] = []
        cur = [-c for c in self.poly[:phi]]  # z^phi
        red.append(tuple(cur))
        for _ in range(phi, top):
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                cur = [c + lead * b for c, b in zip(cur, red[0])]
            red.append(tuple(cur))
        self.red = red
        vecs: list[tuple[int, ...]] = []
        for e in range(M):
            if e < phi:
                v = [0] * phi
                v[e] = 1
                vecs.append(tuple(v))
            else:
                vecs.append(red[e - phi])
        self.pow_vecs = vecs
        self._emb: dict[int, list[complex]] = {}

    def embedding_basis(self, e: int) -> list[complex]:
        basis = self._emb.get(e)
        if basis is None:
            basis = [cmath.exp(2j * cmath.pi * e * i / self.M) for i in range(self.phi)]
            self._emb[e] = basis
        return basis


@lru_cache(maxsize=None)
def ctx_for(M: int) -> CycloCtx:
    if M < 1:
        raise ValueError("modulus must be positive")
    return CycloCtx(M)


def _reduce_vec(conv: list[int], ctx: CycloCtx) -> list[int]:
    phi = ctx.phi
    out = list(conv[:phi])
    out += [0] * (phi - len(out))
    for i in range(phi, len(conv)):
        c = conv[i]
        if c:
            row = ctx.red[i - phi]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


def _make(M: int, num: list[int], den: int) -> "CycloElem":
    if den < 0:
        den = -den
        num = [-v for v in num]
    g = den
    for v in num:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                break
    if g > 1:
        den //= g
        num = [v // g for v in num]
    if not any(num):
        den = 1
    el = object.__new__(CycloElem)
    el.M = M
    el._num = tuple(num)
    el._den = den
    return el


class CycloElem:
    """Element of Q(zeta_M) in canonical reduced power-basis form."""

    __slots__ = ("M", "_num", "_den")

    M: int
    _num: tuple[int, ...]
    _den: int

    def __init__(self, M: int, value: Rat = 0):
        ctx = ctx_for(M)
        fr = Fraction(value)
        num = [0] * ctx.phi
        num[0] = fr.numerator
        self.M = M
        self._num = tuple(num)
        self._den = fr.denominator
        if fr.numerator == 0:
            self._den = 1

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(M: int) -> "CycloElem":
        return CycloElem(M, 0)

    @staticmethod
    def one(M: int) -> "CycloElem":
        return CycloElem(M, 1)

    @staticmethod
    def rational(M: int, value: Rat) -> "CycloElem":
        return CycloElem(M, value)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other: Union["CycloElem", Rat]) -> "CycloElem":
        if isinstance(other, CycloElem):
            if other.M != self.M:
                raise ValueError(
                    f"modulus mismatch: {self.M} vs {other.M}; coerce explicitly"
                )
            return other
        return CycloElem(self.M, other)

    def __add__(self, other: Union["CycloElem", Rat]) -> "CycloElem":
        o = self._lift(other)
        da, db = self._den, o._den
        num = [a * db + b * da for a, b in zip(self._num, o._num)]
        return _make(self.M, num, da * db)

    __radd__ = __add__

    def __sub__(self, other: Union["CycloElem", Rat]) -> "CycloElem":
        return self + (-self._lift(other))

    def __rsub__(self, other: Rat) -> "CycloElem":
        return (-self) + other

    def __neg__(self) -> "CycloElem":
        return _make(self.M, [-v for v in self._num], self._den)

    def __mul__(self, other: Union["CycloElem", Rat]) -> "CycloElem":
        o = self._lift(other)
        if o.is_rational():
            fr = o.as_rational()
            return _make(self.M, [v * fr.numerator for v in self._num], self._den * fr.denominator)
        if self.is_rational():
            fr = self.as_rational()
            return _make(self.M, [v * fr.numerator for v in o._num], o._den * fr.denominator)
        ctx = ctx_for(self.M)
        conv = convolve_int(self._num, o._num)
        return _make(self.M, _reduce_vec(conv, ctx), self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["CycloElem", Rat]) -> "CycloElem":
        o = self._lift(other)
        if o.is_rational():
            fr = o.as_rational()
            if fr == 0:
                raise ZeroDivisionError("cyclotomic division by zero")
            return _make(self.M, [v * fr.denominator for v in self._num], self._den * fr.numerator)
        return self * o.invert()

    def __rtruediv__(self, other: Rat) -> "CycloElem":
        return self.invert() * other

    def __pow__(self, k: int) -> "CycloElem":
        if k < 0:
            return self.invert() ** (-k)
        out = CycloElem.one(self.M)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def invert(self) -> "CycloElem":
        """Multiplicative inverse via the product of Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.is_rational():
            return CycloElem(self.M, 1 / self.as_rational())
        prod = CycloElem.one(self.M)
        for e in range(2, self.M):
            if math.gcd(e, self.M) == 1:
                prod = prod * self.galois(e)
        norm = (self * prod).as_rational()  # field norm, necessarily rational
        return prod * (1 / norm)

    # -- Galois ------------------------------------------------------------

    def galois(self, e: int) -> "CycloElem":
        """Apply the automorphism z -> z^e, e coprime to M."""
        M = self.M
        if math.gcd(e, M) != 1:
            raise ValueError("exponent not coprime to modulus")
        ctx = ctx_for(M)
        out = [0] * ctx.phi
        for i, c in enumerate(self._num):
            if c:
                row = ctx.pow_vecs[(i * e) % M]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return _make(M, out, self._den)

    def conjugate(self) -> "CycloElem":
        return self.galois(self.M - 1) if self.M > 1 else self

    def coerce(self, M2: int) -> "CycloElem":
        """Value-preserving inclusion into Q(zeta_{M2}) for M | M2."""
        if M2 == self.M:
            return self
        if M2 % self.M:
            raise NotAMultiple(f"{M2} is not a multiple of {self.M}")
        k = M2 // self.M
        ctx2 = ctx_for(M2)
        out = [0] * ctx2.phi
        for i, c in enumerate(self._num):
            if c:
                row = ctx2.pow_vecs[(i * k) % M2]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return _make(M2, out, self._den)

    # -- numerics ----------------------------------------------------------

    def embed(self, e: int = 1, prec: int = 53):
        """Complex value under z -> exp(2 pi i e / M), gcd(e, M) = 1.

        Returns a Python complex for prec <= 53, else an mpmath mpc with at
        least prec working bits.
        """
        if math.gcd(e, self.M) != 1:
            raise ValueError("embedding exponent not coprime to modulus")
        if prec <= 53:
            basis = ctx_for(self.M).embedding_basis(e % self.M)
            acc = 0 + 0j
            for c, b in zip(self._num, basis):
                if c:
                    acc += c * b
            return acc / self._den
        with mpmath.workprec(prec + 16):
            acc = mpmath.mpc(0)
            for i, c in enumerate(self._num):
                if c:
                    acc += c * mpmath.expjpi(mpmath.mpf(2 * e * i) / self.M)
            return acc / self._den

    def abs2(self, e: int = 1) -> float:
        v = self.embed(e)
        return v.real * v.real + v.imag * v.imag

    # -- structure ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._num)

    def denominator(self) -> int:
        return self._den

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloElem):
            return self.M == other.M and self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.as_rational())
        return hash((self.M, self._num, self._den))

    def __repr__(self) -> str:
        terms = []
        for i, n in enumerate(self._num):
            if not n:
                continue
            c = str(Fraction(n, self._den))
            terms.append(c if i == 0 else (f"{c}*z{i}" if i > 1 else f"{c}*z"))
        body = " + ".join(terms) if terms else "0"
        return f"Cyclo[{self.M}]({body})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "coeffs": [
                [str(f.numerator), str(f.denominator)] for f in self.coeffs
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "CycloElem":
        M = int(obj["M"])
        phi = ctx_for(M).phi
        pairs = obj["coeffs"]
        if len(pairs) != phi:
            raise ValueError("coefficient length does not match phi(M)")
        fracs = [Fraction(int(n), int(d)) for n, d in pairs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        num = [int(f * den) for f in fracs]
        return _make(M, num, den)


def root_of_unity(M: int, k: int = 1) -> CycloElem:
    """zeta_M^k in canonical form."""
    ctx = ctx_for(M)
    row = ctx.pow_vecs[k % M]
    return _make(M, list(row), 1)


def to_cyclo(counts: Iterable[int], M: int, den: int = 1) -> CycloElem:
    """Build sum_e counts[e] * zeta_M^e / den from an exponent-count vector."""
    ctx = ctx_for(M)
    out = [0] * ctx.phi
    for e, c in enumerate(counts):
        if c:
            row = ctx.pow_vecs[e % M]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return _make(M, out, den)


def common(a: CycloElem, b: CycloElem) -> tuple[CycloElem, CycloElem]:
    """Lift both elements into Q(zeta_lcm)."""
    M = a.M * b.M // math.gcd(a.M, b.M)
    return a.coerce(M), b.coerce(M)
