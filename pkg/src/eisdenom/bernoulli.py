"""Exact rational arithmetic: Bernoulli numbers and polynomials, Riemann zeta
special values, quadratic Dirichlet L-values, Kronecker symbols and p-adic
valuations.

All scalars are `fractions.Fraction`; nothing in this module touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, inf, isqrt
from typing import Iterable, List, Tuple

__all__ = [
    "UniPoly",
    "bernoulli_number",
    "bernoulli_poly",
    "faulhaber",
    "zeta_neg",
    "zeta_numerator",
    "zeta_denominator",
    "kronecker",
    "is_fundamental_discriminant",
    "gen_bernoulli_quadratic",
    "dirichlet_L_neg",
    "padic_val",
    "primes_up_to",
    "format_rational",
]

_BERN: List[Fraction] = [Fraction(1)]


def bernoulli_number(t: int) -> Fraction:
    """B_t with the convention B_1 = -1/2, memoized via the binomial recurrence."""
    if t < 0:
        raise ValueError("Bernoulli index must be >= 0")
    while len(_BERN) <= t:
        m = len(_BERN)
        s = sum(comb(m + 1, j) * _BERN[j] for j in range(m))
        _BERN.append(Fraction(-s, m + 1))
    return _BERN[t]


class UniPoly:
    """Dense univariate polynomial over Fraction, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + UniPoly([-c for c in other.coeffs])

    def scale(self, s: Fraction) -> "UniPoly":
        return UniPoly([c * s for c in self.coeffs])

    def shift1(self) -> "UniPoly":
        """p(x+1)."""
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for d, c in enumerate(self.coeffs):
            for j in range(d + 1):
                out[j] += c * comb(d, j)
        return UniPoly(out)

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "UniPoly":
        return UniPoly([Fraction(0)] + [Fraction(c, i + 1) for i, c in enumerate(self.coeffs)])

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)})"


def bernoulli_poly(t: int) -> UniPoly:
    """B_t(x) = sum_mu binom(t,mu) B_{t-mu} x^mu."""
    if t < 0:
        raise ValueError("Bernoulli index must be >= 0")
    return UniPoly([comb(t, mu) * bernoulli_number(t - mu) for mu in range(t + 1)])


def faulhaber(t: int, x: Fraction) -> Fraction:
    """(B_t(x) - B_t)/t.  For integer x >= 0 this is the power sum
    0^{t-1} + 1^{t-1} + ... + (x-1)^{t-1}."""
    if t < 1:
        raise ValueError("faulhaber needs t >= 1")
    x = Fraction(x)
    return (bernoulli_poly(t)(x) - bernoulli_number(t)) / t


def zeta_neg(m: int) -> Fraction:
    """zeta(1-m) = -B_m/m for m >= 1."""
    if m < 1:
        raise ValueError("zeta_neg needs m >= 1")
    return Fraction(-bernoulli_number(m), m)


def zeta_numerator(m: int) -> int:
    """N_m: the (positive) numerator of zeta(1-m)."""
    return abs(zeta_neg(m).numerator)


def zeta_denominator(m: int) -> int:
    """J_m: the (positive) denominator of zeta(1-m)."""
    return zeta_neg(m).denominator


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), extended to all integers n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # factor out 2's from n
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    if e:
        if a % 2 == 0:
            return 0
        if e % 2 and a % 8 in (3, 5):
            sign = -sign
    # Jacobi symbol (a|n) with n odd > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def _is_squarefree(n: int) -> bool:
    if n % 4 == 0 or n % 9 == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def is_fundamental_discriminant(D: int) -> bool:
    if D <= 1:
        return False
    if D % 4 == 1:
        return _is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


def gen_bernoulli_quadratic(k: int, D: int) -> Fraction:
    """Generalized Bernoulli number B_{k,chi_D} for the real quadratic
    Kronecker character chi_D = (D|.), D a positive fundamental discriminant."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a positive fundamental discriminant")
    bk = bernoulli_poly(k)
    return D ** (k - 1) * sum(
        kronecker(D, a) * bk(Fraction(a, D)) for a in range(1, D + 1)
    )


def dirichlet_L_neg(k: int, D: int) -> Fraction:
    """L(1-k, chi_D) = -B_{k,chi_D}/k."""
    return -gen_bernoulli_quadratic(k, D) / k


def padic_val(q, p: int):
    """ord_p of an integer or Fraction; +inf for 0."""
    q = Fraction(q)
    if q == 0:
        return inf
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def primes_up_to(n: int) -> List[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, f in enumerate(sieve) if f]


def format_rational(q) -> str:
    """Serialize a rational as "a/b" in lowest terms, or "a" for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def factorize(n: int) -> List[Tuple[int, int]]:
    """Trial-division factorization, adequate at desk scale."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out
