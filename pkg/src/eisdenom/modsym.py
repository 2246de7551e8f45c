"""Modular symbols with homogeneous polynomial coefficients.

Paths live on the upper half plane extended by cusps.  Interior endpoints are
"formal" points M(tau) for one generic basepoint tau, stored as an integer
matrix split into gamma * hnf with gamma in SL2(Z) and hnf upper triangular
in Hermite normal form; this makes equality modulo the modular group a
syntactic check.  Cusp endpoints are reduced coprime pairs and are only ever
fed to the continued-fraction path decomposition.

Implements the Hecke operators, the closed-up translated basic cells, and the
p-integral lift cycles built from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, inf
from typing import Dict, List, Tuple, Union

from .bernoulli import padic_val
from .sympoly import (
    HomPoly,
    IDENT,
    LiftParams,
    Mat2,
    S_MAT,
    act,
    lift_polys,
    mat_adj,
    mat_det,
    mat_mul,
    mat_neg,
    t_power,
)

__all__ = [
    "Cusp",
    "Formal",
    "Term",
    "SymbolChain",
    "hnf_split",
    "hecke_tp",
    "hecke_up",
    "hecke_vp",
    "hecke_uv_sum",
    "hecke_power_coeff",
    "manin_decompose",
    "boundary_class",
    "is_cycle",
    "coinvariant_form",
    "basic_path",
    "closed_basic_cell",
    "build_lift",
    "integrality_report",
]


# ---------------------------------------------------------------------------
# points


def _primitive_int_matrix(m) -> Mat2:
    """Scale a rational matrix to a primitive integer matrix, det > 0,
    sign-normalized so the first nonzero entry is positive."""
    if all(type(x) is int for x in m):
        ints = list(m)
    else:
        fr = [Fraction(x) for x in m]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    t = (ints[0], ints[1], ints[2], ints[3])
    if mat_det(t) <= 0:
        raise ValueError("formal point needs positive determinant")
    return t


def hnf_split(m: Mat2) -> Tuple[Mat2, Tuple[int, int, int]]:
    """Write an integer matrix with det > 0 as gamma * [[a, b], [0, d]] with
    gamma in SL2(Z), a, d > 0 and 0 <= b < d.  The triple (a, b, d) is the
    unique such Hermite normal form of the coset SL2(Z) * m."""
    a0, b0, c0, d0 = m
    # clear the lower-left entry by a Bezout row operation
    if c0 == 0:
        g, x, y = abs(a0), (1 if a0 > 0 else -1), 0
    else:
        g, x, y = _xgcd(a0, c0)
    # u = [[x, y], [-c0//g, a0//g]] has det 1 and u*m is upper triangular
    u: Mat2 = (x, y, -c0 // g, a0 // g)
    h = mat_mul(u, m)
    assert h[2] == 0
    a, b, d = h[0], h[1], h[3]
    if a < 0:
        # flip both diagonal signs with diag(-1,-1) in SL2
        u = mat_mul((-1, 0, 0, -1), u)
        a, b, d = -a, -b, -d
    assert a > 0 and d > 0
    k = b // d
    u = mat_mul(t_power(-k), u)
    b -= k * d
    gamma = mat_adj(u)  # u in SL2 so adj = inverse
    assert mat_mul(gamma, (a, b, 0, d)) == m
    return gamma, (a, b, d)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """g, x, y with x*a + y*b = g = gcd(a,b) > 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class Cusp:
    """A point of P^1(Q), reduced with c >= 0 and a = 1 when c = 0."""

    a: int
    c: int

    @staticmethod
    def make(a: int, c: int) -> "Cusp":
        if a == 0 and c == 0:
            raise ValueError("(0:0) is not a cusp")
        g = gcd(a, c)
        a, c = a // g, c // g
        if c < 0 or (c == 0 and a < 0):
            a, c = -a, -c
        return Cusp(a, c)

    @staticmethod
    def infinity() -> "Cusp":
        return Cusp(1, 0)

    def apply(self, g: Mat2) -> "Cusp":
        a, b, c, d = g
        return Cusp.make(a * self.a + b * self.c, c * self.a + d * self.c)

    def sort_key(self):
        return (0, self.a, self.c)

    def __str__(self) -> str:
        return "oo" if self.c == 0 else f"{self.a}/{self.c}"


class Formal:
    """The point m(tau) for the generic basepoint tau, m rational det > 0."""

    __slots__ = ("gamma", "hnf")

    def __init__(self, m):
        mi = _primitive_int_matrix(m)
        gamma, hnf = hnf_split(mi)
        # gamma is only defined up to sign; fix it for hashability
        if _first_nonzero(gamma) < 0:
            gamma = mat_neg(gamma)
        self.gamma = gamma
        self.hnf = hnf

    @staticmethod
    def basepoint() -> "Formal":
        return Formal(IDENT)

    def matrix(self) -> Mat2:
        a, b, d = self.hnf
        return mat_mul(self.gamma, (a, b, 0, d))

    def apply(self, g: Mat2) -> "Formal":
        return Formal(mat_mul(g, self.matrix()))

    def is_basepoint_orbit(self) -> bool:
        return self.hnf == (1, 0, 1)

    def sort_key(self):
        return (1,) + self.hnf + self.gamma

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Formal)
            and self.hnf == other.hnf
            and self.gamma == other.gamma
        )

    def __hash__(self) -> int:
        return hash((self.hnf, self.gamma))

    def __str__(self) -> str:
        return f"[{self.matrix()}](tau)"


def _first_nonzero(g: Mat2) -> int:
    for x in g:
        if x:
            return x
    return 0


Point = Union[Cusp, Formal]


def point_apply(pt: Point, g: Mat2) -> Point:
    return pt.apply(g)


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class Term:
    frm: Point
    to: Point
    poly: HomPoly
    coeff: Fraction


class SymbolChain:
    """Formal Q-linear combination of paths with polynomial coefficients.

    Terms with zero coefficient or zero polynomial are pruned; endpoint order
    is normalized (a swap negates the coefficient)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms):
        out: List[Term] = []
        for t in terms:
            if t.poly.n != n or t.poly.dual:
                raise ValueError("chain coefficients must be primary of one weight")
            if t.coeff == 0 or t.poly.is_zero():
                continue
            if t.frm == t.to:
                continue
            if t.frm.sort_key() > t.to.sort_key():
                t = Term(t.to, t.frm, t.poly, -t.coeff)
            out.append(t)
        self.n = n
        self.terms = tuple(out)

    @staticmethod
    def single(frm: Point, to: Point, poly: HomPoly, coeff=Fraction(1)) -> "SymbolChain":
        return SymbolChain(poly.n, [Term(frm, to, poly, Fraction(coeff))])

    @staticmethod
    def concat(n: int, chains) -> "SymbolChain":
        terms: List[Term] = []
        for ch in chains:
            if ch.n != n:
                raise ValueError("weight mismatch")
            terms.extend(ch.terms)
        return SymbolChain(n, terms)

    def __add__(self, other: "SymbolChain") -> "SymbolChain":
        if self.n != other.n:
            raise ValueError("weight mismatch")
        return SymbolChain(self.n, self.terms + other.terms)

    def scale(self, s) -> "SymbolChain":
        s = Fraction(s)
        return SymbolChain(self.n, [Term(t.frm, t.to, t.poly, s * t.coeff) for t in self.terms])

    def __neg__(self) -> "SymbolChain":
        return self.scale(-1)

    def apply(self, g: Mat2) -> "SymbolChain":
        """gamma . ({a,b} (x) P) = {ga, gb} (x) gP, termwise."""
        return SymbolChain(
            self.n,
            [
                Term(point_apply(t.frm, g), point_apply(t.to, g), act(g, t.poly), t.coeff)
                for t in self.terms
            ],
        )

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self):
        def pt(x: Point):
            if isinstance(x, Cusp):
                return str(x)
            return list(x.hnf)

        from .bernoulli import format_rational

        return {
            "weight": self.n,
            "terms": [
                {
                    "from": pt(t.frm),
                    "to": pt(t.to),
                    "poly": t.poly.to_json(),
                    "coeff": format_rational(t.coeff),
                }
                for t in self.terms
            ],
        }


# ---------------------------------------------------------------------------
# Hecke operators


def _hecke_reps(p: int) -> List[Mat2]:
    return [(p, 0, 0, 1)] + [(1, j, 0, p) for j in range(p)]


def hecke_vp(ch: SymbolChain, p: int) -> SymbolChain:
    return ch.apply((p, 0, 0, 1))


def hecke_up(ch: SymbolChain, p: int) -> SymbolChain:
    return SymbolChain.concat(ch.n, [ch.apply((1, j, 0, p)) for j in range(p)])


def hecke_tp(ch: SymbolChain, p: int) -> SymbolChain:
    return hecke_vp(ch, p) + hecke_up(ch, p)


def hecke_uv_sum(ch: SymbolChain, p: int, m: int) -> SymbolChain:
    """sum_{k=0}^{m} U_p^k V_p^{m-k} applied to the chain."""
    if m < 0:
        raise ValueError("m must be >= 0")
    pieces = []
    for k in range(m + 1):
        piece = ch
        for _ in range(m - k):
            piece = hecke_vp(piece, p)
        for _ in range(k):
            piece = hecke_up(piece, p)
        pieces.append(piece)
    return SymbolChain.concat(ch.n, pieces)


def hecke_power_coeff(A: int, B: int) -> int:
    """binom(A+B, B) - binom(A+B, B-1); the expansion coefficients of a Hecke
    power in terms of the U/V window sums."""
    if B < 0:
        return 0
    return comb(A + B, B) - (comb(A + B, B - 1) if B >= 1 else 0)


# ---------------------------------------------------------------------------
# boundary in coinvariants


def boundary_class(ch: SymbolChain) -> Dict[Tuple[int, int, int], HomPoly]:
    """Boundary of the chain pushed to coinvariants of the modular group.

    Each endpoint gamma*h(tau) contributes at the canonical point h(tau) with
    its polynomial transported by gamma^{-1}.  Cusp endpoints are rejected:
    they belong to relative homology."""
    acc: Dict[Tuple[int, int, int], HomPoly] = {}

    def add(pt: Point, poly: HomPoly, sgn: int, coeff: Fraction):
        if isinstance(pt, Cusp):
            raise ValueError("cusp endpoint in absolute boundary computation")
        moved = act(mat_adj(pt.gamma), poly).scale(sgn * coeff)
        key = pt.hnf
        if key in acc:
            acc[key] = acc[key] + moved
        else:
            acc[key] = moved

    for t in ch.terms:
        add(t.to, t.poly, 1, t.coeff)
        add(t.frm, t.poly, -1, t.coeff)
    return {k: v for k, v in acc.items() if not v.is_zero()}


def is_cycle(ch: SymbolChain) -> bool:
    return not boundary_class(ch)


def coinvariant_form(ch: SymbolChain) -> Dict[tuple, HomPoly]:
    """Canonical form of the chain itself in coinvariants: each path orbit is
    keyed by (hnf of one endpoint, relative matrix to the other), orientation
    chosen by key comparison (a swap negates).  Used to verify operator
    identities at the chain level."""
    acc: Dict[tuple, HomPoly] = {}
    for t in ch.terms:
        if isinstance(t.frm, Cusp) or isinstance(t.to, Cusp):
            raise ValueError("coinvariant_form requires formal endpoints")
        options = []
        for a, b, sgn in ((t.frm, t.to, 1), (t.to, t.frm, -1)):
            rel = _canon_rel(mat_mul(mat_adj(a.gamma), b.matrix()))
            options.append(((a.hnf, rel), a.gamma, sgn))
        options.sort(key=lambda o: o[0])
        (key, gamma, sgn) = options[0]
        moved = act(mat_adj(gamma), t.poly).scale(sgn * t.coeff)
        acc[key] = acc[key] + moved if key in acc else moved
    return {k: v for k, v in acc.items() if not v.is_zero()}


def _canon_rel(m: Mat2) -> Mat2:
    g = 0
    for x in m:
        g = gcd(g, x)
    m = (m[0] // g, m[1] // g, m[2] // g, m[3] // g)
    return m if _first_nonzero(m) > 0 else mat_neg(m)


def chains_coinvariant_equal(a: SymbolChain, b: SymbolChain) -> bool:
    fa, fb = coinvariant_form(a), coinvariant_form(b)
    if set(fa) != set(fb):
        return False
    return all(fa[k] == fb[k] for k in fa)


# ---------------------------------------------------------------------------
# Manin decomposition of cusp paths


def _cf_convergents(a: int, c: int) -> List[Tuple[int, int]]:
    """Convergents of a/c (c > 0), ending exactly at (a, c)."""
    quots = []
    x, y = a, c
    while y:
        q, r = divmod(x, y)
        quots.append(q)
        x, y = y, r
    ps, qs = [1, quots[0]], [0, 1]
    for q in quots[1:]:
        ps.append(q * ps[-1] + ps[-2])
        qs.append(q * qs[-1] + qs[-2])
    return list(zip(ps[1:], qs[1:]))


def _path_from_infinity(c: Cusp) -> List[Mat2]:
    """Matrices g_i in SL2(Z) whose paths g_i{0, oo} concatenate to {oo, a/c}."""
    if c.c == 0:
        return []
    conv = [(1, 0)] + _cf_convergents(c.a, c.c)
    out = []
    for i in range(1, len(conv)):
        (pk, qk), (pk1, qk1) = conv[i], conv[i - 1]
        s = (-1) ** i  # p_k q_{k-1} - p_{k-1} q_k = (-1)^(k-1), k = i-1
        g = (pk, s * pk1, qk, s * qk1)
        assert mat_det(g) == 1
        out.append(g)
    return out


def manin_decompose(alpha: Cusp, beta: Cusp) -> List[Mat2]:
    """Unimodular matrices g_i whose paths g_i{0, oo} concatenate to
    {alpha, beta}."""
    if alpha == beta:
        return []
    # {alpha, beta} = {alpha, oo} + {oo, beta};  {x, oo} segments are the
    # reversals of the {oo, x} ones, and reversal is right-composition by S.
    left = [mat_mul(g, S_MAT) for g in reversed(_path_from_infinity(alpha))]
    out = left + _path_from_infinity(beta)
    return [g if _first_nonzero(g) > 0 else mat_neg(g) for g in out]


# ---------------------------------------------------------------------------
# translated basic cells and lift cycles


def basic_path(n: int, nu: int, tau0: Formal, tau1: Formal) -> SymbolChain:
    """{-1/tau0, tau1} (x) X1^nu X2^(n-nu)."""
    return SymbolChain.single(tau0.apply(S_MAT), tau1, HomPoly.basis(n, nu))


def closed_basic_cell(
    n: int, params: LiftParams, tau0: Formal, tau1: Formal
) -> SymbolChain:
    """The translated basic path closed into a cycle by two unit paths
    carrying the difference primitives of its boundary polynomials."""
    p, k, j = params.p, params.k, params.j
    l, d = params.l, params.d
    bnd1, bnd0, prim1, prim0 = lift_polys(params)
    g = (1, j, 0, p**k)
    m0, m1 = tau0.matrix(), tau1.matrix()
    frm = Formal(mat_mul(mat_mul(g, S_MAT), m0))  # ((-1/tau0) + j)/p^k
    a1 = Formal(mat_mul(g, m1))  # (tau1 + j)/p^k
    a0 = Formal(mat_mul((p**l, -d, 0, p ** (k - l)), m0))  # (p^l tau0 - d)/p^(k-l)
    t = t_power(1)
    return SymbolChain(
        n,
        [
            Term(frm, a1, bnd1, Fraction(1)),  # bnd1 = g . e_nu
            Term(a1, a1.apply(t), prim1, Fraction(-1)),
            Term(a0, a0.apply(t), prim0, Fraction(-1)),
        ],
    )


def build_lift(n: int, p: int, nu: int, m: int) -> SymbolChain:
    """The lift of the m-th Hecke power of the basic relative cycle: a linear
    combination of closed cells that is a genuine cycle, p-integral once
    m >= n."""
    if not (1 <= nu <= n - 1):
        raise ValueError("nu out of range")
    if m < 0:
        raise ValueError("m must be >= 0")
    pieces = []
    for A in range(m // 2 + 1):
        cA = hecke_power_coeff(m - A, A) * p ** ((n + 1) * A)
        for k in range(m - 2 * A + 1):
            s = m - 2 * A - k
            coeff = Fraction(cA * p ** ((n - nu) * s))
            tau0 = Formal((1, 0, 0, p**s))
            tau1 = Formal((p**s, 0, 0, 1))
            for j in range(p**k):
                params = LiftParams.make(p, n, nu, k, j)
                pieces.append(closed_basic_cell(n, params, tau0, tau1).scale(coeff))
    return SymbolChain.concat(n, pieces)


def integrality_report(ch: SymbolChain, p: int):
    """Minimum p-adic valuation over coeff * polynomial entries; +inf for the
    empty chain."""
    best = inf
    for t in ch.terms:
        v = padic_val(t.coeff, p) + t.poly.min_valuation(p)
        if v < best:
            best = v
    return best
