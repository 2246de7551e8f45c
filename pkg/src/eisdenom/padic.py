"""Truncated p-adic arithmetic, the Teichmuller character, Kubota-Leopoldt
values at negative integers for Teichmuller-power characters, the two
congruence corollaries used in the denominator bound, and the index of
irregularity with its Carlitz-Skula bound.

p = 2 is excluded throughout: the Teichmuller character degenerates there and
the denominator pipeline never needs truncated values at 2.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, inf
from typing import Optional, Tuple, Union

from . import _kernels
from .bernoulli import bernoulli_number, padic_val, zeta_neg

__all__ = [
    "PrecisionError",
    "PadicInt",
    "teichmuller",
    "Lp_neg",
    "congruence_cor_case1",
    "congruence_cor_case2",
    "irregular_index",
    "skula_bound_ok",
    "ln_bounds",
]


class PrecisionError(ArithmeticError):
    """Raised when a congruence can be neither certified nor refuted at the
    working precision."""


class PadicInt:
    """A p-adic number known to finite precision: p^val * (unit + O(p^prec)).

    `unit` is prime to p.  A value indistinguishable from zero is stored with
    unit None and an absolute bound: the number is O(p^bound).  Valuations are
    tracked exactly, so division by p and by units is lossless.
    """

    __slots__ = ("p", "val", "unit", "prec", "bound")

    def __init__(self, p: int, val, unit, prec: int, bound=None):
        self.p = p
        if unit is None:
            self.val = None
            self.unit = None
            self.prec = 0
            self.bound = bound
        else:
            m = p**prec
            unit %= m
            if prec <= 0 or unit == 0:
                raise ValueError("unit part needs positive precision")
            # normalize: strip p's from the unit into the valuation
            while unit % p == 0 and prec > 1:
                unit //= p
                val += 1
                prec -= 1
                unit %= p**prec
                if unit == 0:
                    self.val, self.unit, self.prec = None, None, 0
                    self.bound = val + prec
                    return
            if unit % p == 0:
                self.val, self.unit, self.prec = None, None, 0
                self.bound = val + prec
                return
            self.val = val
            self.unit = unit
            self.prec = prec
            self.bound = val + prec

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_rational(q, p: int, prec: int) -> "PadicInt":
        q = Fraction(q)
        if q == 0:
            return PadicInt(p, None, None, 0, bound=inf)
        v = padic_val(q, p)
        u = q / Fraction(p) ** v
        num, den = u.numerator, u.denominator
        m = p**prec
        return PadicInt(p, v, num * pow(den, -1, m) % m, prec)

    @staticmethod
    def zero_to(p: int, bound) -> "PadicInt":
        return PadicInt(p, None, None, 0, bound=bound)

    def is_zeroish(self) -> bool:
        return self.unit is None

    # -- views ----------------------------------------------------------------

    def valuation(self) -> int:
        if self.is_zeroish():
            if self.bound == inf:
                return inf
            raise PrecisionError(f"only a valuation lower bound {self.bound} is known")
        return self.val

    def residue(self) -> int:
        """The value mod p^(val+prec), for nonnegative valuation."""
        if self.is_zeroish():
            return 0
        if self.val < 0:
            raise ValueError("negative valuation has no residue")
        return (self.p**self.val * self.unit) % (self.p ** (self.val + self.prec))

    def is_integral(self) -> Optional[bool]:
        """Certified membership in Z_p; raises PrecisionError if undecidable."""
        if self.is_zeroish():
            if self.bound >= 0:
                return True
            raise PrecisionError("zero to insufficient precision")
        return self.val >= 0

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        return PadicInt.from_rational(other, self.p, self.prec if self.prec > 0 else 6)

    def __add__(self, other) -> "PadicInt":
        other = self._coerce(other)
        p = self.p
        if self.is_zeroish() and other.is_zeroish():
            return PadicInt.zero_to(p, min(self.bound, other.bound))
        if self.is_zeroish() or other.is_zeroish():
            z, x = (self, other) if self.is_zeroish() else (other, self)
            N = min(z.bound, x.bound)
            if N == inf:
                return PadicInt(p, x.val, x.unit, x.prec)
            if N <= x.val:
                return PadicInt.zero_to(p, N)
            return PadicInt(p, x.val, x.unit, N - x.val)
        N = min(self.bound, other.bound)
        v = min(self.val, other.val)
        m = p ** (N - v)
        s = (self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)) % m
        if s == 0:
            return PadicInt.zero_to(p, N)
        return PadicInt(p, v, s, N - v)

    def __neg__(self) -> "PadicInt":
        if self.is_zeroish():
            return self
        return PadicInt(self.p, self.val, -self.unit % self.p**self.prec, self.prec)

    def __sub__(self, other) -> "PadicInt":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "PadicInt":
        other = self._coerce(other)
        p = self.p
        if self.is_zeroish() or other.is_zeroish():
            a, b = self, other
            if a.is_zeroish() and b.is_zeroish():
                return PadicInt.zero_to(p, a.bound + b.bound)
            z, x = (a, b) if a.is_zeroish() else (b, a)
            return PadicInt.zero_to(p, z.bound + x.val)
        prec = min(self.prec, other.prec)
        return PadicInt(p, self.val + other.val, self.unit * other.unit, prec)

    def __truediv__(self, other) -> "PadicInt":
        other = self._coerce(other)
        if other.is_zeroish():
            raise ZeroDivisionError("division by a p-adic zero")
        if self.is_zeroish():
            return PadicInt.zero_to(self.p, self.bound - other.val)
        prec = min(self.prec, other.prec)
        m = self.p**prec
        return PadicInt(
            self.p, self.val - other.val, self.unit * pow(other.unit, -1, m), prec
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __str__(self) -> str:
        if self.is_zeroish():
            return f"O({self.p}^{self.bound})"
        if self.val >= 0:
            r = self.residue()
            return f"{r} + O({self.p}^{self.val + self.prec})"
        return f"{self.p}^{self.val}*({self.unit} + O({self.p}^{self.prec}))"

    __repr__ = __str__


def teichmuller(a: int, p: int, r: int) -> PadicInt:
    """The Teichmuller lift omega(a): the (p-1)-st root of unity congruent to
    a mod p, computed as a^(p^(r-1)) mod p^r."""
    if p < 3:
        raise ValueError("p must be an odd prime")
    if a % p == 0:
        raise ValueError("argument divisible by p")
    return PadicInt(p, 0, pow(a, p ** (r - 1), p**r), r)


def Lp_neg(m: int, a: int, p: int, r: int = 6) -> Union[Fraction, PadicInt]:
    """The Kubota-Leopoldt value L_p(1-m, omega^a) for m >= 2.

    When a = m mod (p-1) the interpolated character is trivial and the value
    is the exact rational (1 - p^(m-1)) zeta(1-m).  Otherwise the value is a
    truncated p-adic number, computed through the generalized Bernoulli number
    of the conductor-p character omega^(a-m)."""
    if p < 3:
        raise ValueError("p must be an odd prime")
    if m < 2:
        raise ValueError("m must be >= 2")
    if (a - m) % (p - 1) == 0:
        return (1 - Fraction(p) ** (m - 1)) * zeta_neg(m)
    guard = 2
    prec = r + guard
    mod = p**prec
    e = (a - m) % (p - 1)
    bp = [comb(m, mu) * bernoulli_number(m - mu) for mu in range(m + 1)]
    total = PadicInt.zero_to(p, inf)
    for c in range(1, p):
        # p^m B_m(c/p) = sum_mu binom(m,mu) B_{m-mu} c^mu p^(m-mu), p-integral
        x = sum(Fraction(bp[mu]) * c**mu * p ** (m - mu) for mu in range(m + 1))
        chi = PadicInt(p, 0, pow(pow(c, p ** (prec - 1), mod), e, mod), prec)
        total = total + chi * PadicInt.from_rational(x, p, prec)
    # B_{m, omega^(a-m)} = total / p; Euler factor is 1 (character of conductor p)
    gen_bernoulli = total / PadicInt.from_rational(p, p, prec)
    return gen_bernoulli / PadicInt.from_rational(-m, p, prec)


def _as_padic(x, p: int, r: int) -> PadicInt:
    if isinstance(x, PadicInt):
        return x
    return PadicInt.from_rational(x, p, r)


def congruence_cor_case1(x: int, y: int, p: int, r: int = 6) -> bool:
    """Checks  Lp(1-x, w^x) Lp(1-y, 1) / Lp(1-x-y, w^x)
               - Lp(1-y, 1)  in  Z_p / Lp(1-x-y, w^x),
    i.e. the difference times Lp(1-x-y, w^x) lands in Z_p.  Requires
    x != 0 mod (p-1)."""
    if x % (p - 1) == 0:
        raise ValueError("case1 requires x nonzero mod p-1")
    A = _as_padic(Lp_neg(x, x, p, r), p, r)
    B = _as_padic(Lp_neg(y, 0, p, r), p, r)
    C = _as_padic(Lp_neg(x + y, x, p, r), p, r)
    res = B * (A - C)  # = (A*B/C - B) * C
    return bool(res.is_integral())


def congruence_cor_case2(x: int, y: int, p: int, r: int = 6) -> bool:
    """Checks  Lp(1-x,1) Lp(1-y,1) / Lp(1-x-y,1)
               = Lp(1-x,1) + Lp(1-y,1)  (mod Z_p),
    equivalently = -(p-1)/(px) - (p-1)/(py) (mod Z_p)."""
    A = _as_padic(Lp_neg(x, 0, p, r), p, r)
    B = _as_padic(Lp_neg(y, 0, p, r), p, r)
    C = _as_padic(Lp_neg(x + y, 0, p, r), p, r)
    res = A * B / C - A - B
    return bool(res.is_integral())


def irregular_index(p: int) -> int:
    """d(p): the number of even t with 2 <= t <= p-3 and p | B_t."""
    if p < 5:
        raise ValueError("p must be a prime >= 5")
    table = _kernels.bernoulli_even_mod_p(p)
    return sum(1 for t in range(2, p - 2, 2) if table[t // 2] == 0)


# -- rational logarithm bounds ------------------------------------------------


def _atanh_bounds(t: Fraction, terms: int) -> Tuple[Fraction, Fraction]:
    """Bounds for 2*atanh(t) = ln((1+t)/(1-t)), 0 <= t < 1."""
    s = Fraction(0)
    tk = t
    t2 = t * t
    for j in range(terms):
        s += tk / (2 * j + 1)
        tk *= t2
    tail = tk / ((2 * terms + 1) * (1 - t2))
    return 2 * s, 2 * (s + tail)


def ln_bounds(x: Fraction, terms: int = 24) -> Tuple[Fraction, Fraction]:
    """Rational lower/upper bounds for ln(x), x > 1, float-free."""
    x = Fraction(x)
    if x <= 1:
        raise ValueError("ln_bounds needs x > 1")
    lo2, hi2 = _atanh_bounds(Fraction(1, 3), terms)  # ln 2
    k = 0
    while x >= 2:
        x /= 2
        k += 1
    if x == 1:
        return k * lo2, k * hi2
    lo1, hi1 = _atanh_bounds((x - 1) / (x + 1), terms)
    return k * lo2 + lo1, k * hi2 + hi1


def skula_bound_ok(p: int) -> bool:
    """Certifies d(p) < (p+3)/4 - (ln 2/ln p)(p-1)/4 with exact rational
    log brackets."""
    d = irregular_index(p)
    for terms in (16, 48, 160):
        lo2, hi2 = ln_bounds(Fraction(2), terms)
        lop, hip = ln_bounds(Fraction(p), terms)
        # certify TRUE with an upper bound for ln2/lnp
        if Fraction(d) < Fraction(p + 3, 4) - Fraction(p - 1, 4) * (hi2 / lop):
            return True
        # certify FALSE with a lower bound
        if Fraction(d) >= Fraction(p + 3, 4) - Fraction(p - 1, 4) * (lo2 / hip):
            return False
    raise PrecisionError(f"log brackets too loose for p={p}")
