"""Homogeneous two-variable polynomial modules of even weight n: the monomial
basis, its dual basis, the determinant-positive matrix action, the perfect
pairing between the two, and the Bernoulli difference/integral primitives used
to close Hecke-translated paths into cycles.

Matrices are plain tuples (a, b, c, d) meaning [[a, b], [c, d]].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, inf
from typing import Tuple

from .bernoulli import bernoulli_number, padic_val

Mat2 = Tuple[int, int, int, int]

IDENT: Mat2 = (1, 0, 0, 1)
S_MAT: Mat2 = (0, -1, 1, 0)
T_MAT: Mat2 = (1, 1, 0, 1)


def mat_mul(g: Mat2, h: Mat2) -> Mat2:
    a, b, c, d = g
    e, f, i, j = h
    return (a * e + b * i, a * f + b * j, c * e + d * i, c * f + d * j)


def mat_det(g: Mat2) -> int:
    return g[0] * g[3] - g[1] * g[2]


def mat_adj(g: Mat2) -> Mat2:
    a, b, c, d = g
    return (d, -b, -c, a)


def mat_neg(g: Mat2) -> Mat2:
    return (-g[0], -g[1], -g[2], -g[3])


def t_power(q: int) -> Mat2:
    return (1, q, 0, 1)


class HomPoly:
    """Homogeneous weight-n polynomial.

    Primary polynomials store the coefficient of X1^mu X2^(n-mu) at index mu.
    Dual polynomials store coordinates in the dual basis, so that the pairing
    of a dual against a primary is the plain dot product of coordinates.
    """

    __slots__ = ("n", "coeffs", "dual")

    def __init__(self, n: int, coeffs, dual: bool = False):
        cs = tuple(c if type(c) is Fraction else Fraction(c) for c in coeffs)
        if len(cs) != n + 1:
            raise ValueError(f"weight {n} needs {n + 1} coefficients, got {len(cs)}")
        self.n = n
        self.coeffs = cs
        self.dual = dual

    @classmethod
    def _raw(cls, n: int, coeffs: tuple, dual: bool = False) -> "HomPoly":
        """Trusted constructor: coeffs must already be a tuple of Fractions."""
        self = object.__new__(cls)
        self.n = n
        self.coeffs = coeffs
        self.dual = dual
        return self

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(n: int, dual: bool = False) -> "HomPoly":
        return HomPoly(n, [Fraction(0)] * (n + 1), dual)

    @staticmethod
    def basis(n: int, nu: int) -> "HomPoly":
        """The monomial X1^nu X2^(n-nu)."""
        c = [Fraction(0)] * (n + 1)
        c[nu] = Fraction(1)
        return HomPoly(n, c)

    @staticmethod
    def dual_basis(n: int, nu: int) -> "HomPoly":
        c = [Fraction(0)] * (n + 1)
        c[nu] = Fraction(1)
        return HomPoly(n, c, dual=True)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._check_compatible(other)
        return HomPoly(self.n, [x + y for x, y in zip(self.coeffs, other.coeffs)], self.dual)

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        self._check_compatible(other)
        return HomPoly(self.n, [x - y for x, y in zip(self.coeffs, other.coeffs)], self.dual)

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.n, [-x for x in self.coeffs], self.dual)

    def scale(self, s) -> "HomPoly":
        s = Fraction(s)
        return HomPoly(self.n, [s * x for x in self.coeffs], self.dual)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomPoly)
            and self.n == other.n
            and self.dual == other.dual
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.dual, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check_compatible(self, other: "HomPoly") -> None:
        if self.n != other.n or self.dual != other.dual:
            raise ValueError("weight or basis mismatch")

    # -- ring structure (primary only) --------------------------------------

    def __mul__(self, other: "HomPoly") -> "HomPoly":
        if self.dual or other.dual:
            raise ValueError("products are defined for primary polynomials only")
        out = [Fraction(0)] * (self.n + other.n + 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return HomPoly(self.n + other.n, out)

    def power(self, e: int) -> "HomPoly":
        if e < 0:
            raise ValueError("negative power")
        acc = HomPoly(0, [Fraction(1)])
        for _ in range(e):
            acc = acc * self
        return acc

    # -- dual-basis / monomial conversion ------------------------------------

    def monomial_coeffs(self) -> Tuple[Fraction, ...]:
        """Coefficients on X1^mu X2^(n-mu) regardless of basis tag.

        The dual basis vector at index nu is (-1)^(n-nu) binom(n,nu)
        X1^(n-nu) X2^nu, so dual coordinates g produce the monomial
        coefficient g_{n-mu} (-1)^mu binom(n,mu) at index mu.
        """
        if not self.dual:
            return self.coeffs
        n = self.n
        return tuple(
            self.coeffs[n - mu] * ((-1) ** mu) * comb(n, mu) for mu in range(n + 1)
        )

    @staticmethod
    def dual_from_monomials(n: int, mono) -> "HomPoly":
        coords = [
            Fraction(mono[n - nu], ((-1) ** (n - nu)) * comb(n, n - nu))
            for nu in range(n + 1)
        ]
        return HomPoly(n, coords, dual=True)

    # -- evaluation and valuations -------------------------------------------

    def eval_x(self, x: Fraction) -> Fraction:
        """P(x, 1) for a primary polynomial."""
        if self.dual:
            raise ValueError("eval_x is for primary polynomials")
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def min_valuation(self, p: int):
        if self.is_zero():
            return inf
        return min(padic_val(c, p) for c in self.coeffs if c != 0)

    def to_json(self):
        from .bernoulli import format_rational

        return {
            "weight": self.n,
            "basis": "dual" if self.dual else "primary",
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    def __repr__(self) -> str:
        tag = "dual" if self.dual else "primary"
        return f"HomPoly(n={self.n}, {tag}, {[str(c) for c in self.coeffs]})"


def act(g: Mat2, P: HomPoly) -> HomPoly:
    """Left action (gP)(X1,X2) = P(d X1 - b X2, -c X1 + a X2), det(g) > 0.

    Works for both bases; dual inputs are pushed through the monomial form.
    """
    if g == IDENT or (g[0] == -1 and g == (-1, 0, 0, -1)):
        return P  # -1 acts trivially in even weight
    if mat_det(g) <= 0:
        raise ValueError("matrix action requires positive determinant")
    a, b, c, d = g
    n = P.n
    mono = P.monomial_coeffs()
    out = [Fraction(0)] * (n + 1)
    # (d X1 - b X2)^mu expanded once per mu, times (-c X1 + a X2)^(n-mu)
    for mu, coef in enumerate(mono):
        if coef == 0:
            continue
        left = [comb(mu, i) * d**i * (-b) ** (mu - i) for i in range(mu + 1)]
        right = [
            comb(n - mu, j) * (-c) ** j * a ** (n - mu - j) for j in range(n - mu + 1)
        ]
        for i, lc in enumerate(left):
            if lc == 0:
                continue
            for j, rc in enumerate(right):
                if rc:
                    out[i + j] += coef * lc * rc
    if P.dual:
        return HomPoly.dual_from_monomials(n, out)
    return HomPoly(n, out)


def pair_dual(Pb: HomPoly, Q: HomPoly) -> Fraction:
    """Perfect pairing of a dual polynomial against a primary one."""
    if not Pb.dual or Q.dual:
        raise ValueError("pair_dual takes (dual, primary)")
    if Pb.n != Q.n:
        raise ValueError("weight mismatch")
    return sum((x * y for x, y in zip(Pb.coeffs, Q.coeffs)), Fraction(0))


_DAGGER_ROWS: dict = {}


def _dagger_row(mu: int) -> tuple:
    """Coefficients of X2^n Btilde_{mu+1}(X1/X2) on X1^rho, rho = 0..mu+1."""
    row = _DAGGER_ROWS.get(mu)
    if row is None:
        row = tuple(
            Fraction(comb(mu + 1, rho) * bernoulli_number(mu + 1 - rho), mu + 1)
            for rho in range(mu + 2)
        )
        _DAGGER_ROWS[mu] = row
    return row


def difference_primitive(P: HomPoly) -> HomPoly:
    """The Bernoulli primitive Pd with Pd(X1+X2, X2) - Pd(X1, X2) = P.

    Defined on monomials by X1^mu X2^(n-mu) -> X2^n Btilde_{mu+1}(X1/X2);
    requires the X1^n coefficient of P to vanish.
    """
    if P.dual:
        raise ValueError("difference_primitive is for primary polynomials")
    n = P.n
    if P.coeffs[n] != 0:
        raise ValueError("input must have zero X1^n coefficient")
    out = [Fraction(0)] * (n + 1)
    for mu in range(n):
        c = P.coeffs[mu]
        if c == 0:
            continue
        row = _dagger_row(mu)
        for rho in range(1, mu + 2):
            out[rho] += c * row[rho]
    return HomPoly(n, out)


def integral_primitive(P: HomPoly) -> HomPoly:
    """The primitive Pi with d/dx Pi(x,1) = P(x,1), normalized so that the
    X2^n coefficient is -B_{mu+1}/(mu+1) on each monomial."""
    if P.dual:
        raise ValueError("integral_primitive is for primary polynomials")
    n = P.n
    if P.coeffs[n] != 0:
        raise ValueError("input must have zero X1^n coefficient")
    out = [Fraction(0)] * (n + 1)
    for mu in range(n):
        c = P.coeffs[mu]
        if c == 0:
            continue
        out[mu + 1] += c / (mu + 1)
        out[0] -= c * bernoulli_number(mu + 1) / (mu + 1)
    return HomPoly(n, out)


@dataclass(frozen=True)
class LiftParams:
    """Indexing data (p; nu, k, j) for one translated basic path, together
    with the derived quantities l = min(ord_p(j), k), j' = j/p^l and the
    Bezout pair (d, b) with j'd - p^(k-l) b = 1, 1 <= d < p^(k-l)."""

    p: int
    n: int
    nu: int
    k: int
    j: int
    l: int
    jprime: int
    d: int
    b: int

    @staticmethod
    def make(p: int, n: int, nu: int, k: int, j: int) -> "LiftParams":
        if not (1 <= nu <= n - 1):
            raise ValueError("nu out of range")
        if not (0 <= j <= p**k - 1):
            raise ValueError("j out of range")
        l = k if j == 0 else min(_int_val(j, p), k)
        jp = j // p**l
        npow = p ** (k - l)
        if k - l == 0:
            d, b = 0, -1
        else:
            d = pow(jp, -1, npow)  # in [1, p^(k-l)) since p does not divide j'
            b = (jp * d - 1) // npow
            assert jp * d - npow * b == 1
        return LiftParams(p, n, nu, k, j, l, jp, d, b)


def _int_val(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def lift_polys(params: LiftParams) -> Tuple[HomPoly, HomPoly, HomPoly, HomPoly]:
    """The two boundary polynomials of a translated basic path and their
    difference primitives (bnd1, bnd0, prim1, prim0).

    bnd1 = (p^k X1 - j X2)^nu X2^(n-nu)
    bnd0 = (-1)^(nu+1) (p^l X2)^nu (p^(k-l) X1 + d X2)^(n-nu)

    Expanded with integer binomials; only the primitives carry denominators.
    """
    p, n, nu, k, j = params.p, params.n, params.nu, params.k, params.j
    l, d = params.l, params.d
    pk = p**k
    c1 = [0] * (n + 1)
    for rho in range(nu + 1):
        c1[rho] = comb(nu, rho) * pk**rho * (-j) ** (nu - rho)
    sign = (-1) ** (nu + 1) * p ** (l * nu)
    pkl = p ** (k - l)
    c0 = [0] * (n + 1)
    for rho in range(n - nu + 1):
        c0[rho] = sign * comb(n - nu, rho) * pkl**rho * d ** (n - nu - rho)
    prim1 = [Fraction(0)] * (n + 1)
    prim0 = [Fraction(0)] * (n + 1)
    for mu in range(n):
        for cs, prim in ((c1, prim1), (c0, prim0)):
            c = cs[mu]
            if c:
                row = _dagger_row(mu)
                for rho in range(1, mu + 2):
                    prim[rho] += c * row[rho]
    bnd1 = HomPoly._raw(n, tuple(Fraction(x) for x in c1))
    bnd0 = HomPoly._raw(n, tuple(Fraction(x) for x in c0))
    return bnd1, bnd0, HomPoly._raw(n, tuple(prim1)), HomPoly._raw(n, tuple(prim0))
