"""Real quadratic orders and their narrow class groups via indefinite binary
quadratic forms: reduction cycles, totally positive fundamental units,
automorph matrices, the closed geodesic cycle attached to a narrow class,
partial zeta values at negative integers through the Eisenstein pairing,
Duke's higher Rademacher symbols, and the sharpness search for the universal
denominator bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, Iterator, List, Optional, Tuple

from .bernoulli import padic_val, zeta_neg, zeta_numerator
from .eis import EisensteinCocycle, eisenstein_cocycle
from .modsym import Formal, SymbolChain
from .sympoly import HomPoly, Mat2, act, mat_det

__all__ = [
    "QuadElem",
    "QuadOrder",
    "QForm",
    "is_discriminant",
    "reduce_form",
    "reduced_forms",
    "form_cycle",
    "NarrowClass",
    "narrow_classes",
    "narrow_class_from_form",
    "fundamental_unit_tp",
    "class_cycle",
    "partial_zeta_neg",
    "invariant_quadratic",
    "rademacher",
    "sharpness_search",
    "valid_discriminants",
]


def is_discriminant(D: int) -> bool:
    if D <= 0 or D % 4 not in (0, 1):
        return False
    r = isqrt(D)
    return r * r != D


def valid_discriminants(bound: int) -> Iterator[int]:
    for D in range(5, bound + 1):
        if is_discriminant(D):
            yield D


@dataclass(frozen=True)
class QuadElem:
    """x + y*sqrt(D) with rational x, y."""

    x: Fraction
    y: Fraction
    D: int

    @staticmethod
    def make(x, y, D: int) -> "QuadElem":
        return QuadElem(Fraction(x), Fraction(y), D)

    def conj(self) -> "QuadElem":
        return QuadElem(self.x, -self.y, self.D)

    def __add__(self, o: "QuadElem") -> "QuadElem":
        return QuadElem(self.x + o.x, self.y + o.y, self.D)

    def __sub__(self, o: "QuadElem") -> "QuadElem":
        return QuadElem(self.x - o.x, self.y - o.y, self.D)

    def __mul__(self, o: "QuadElem") -> "QuadElem":
        return QuadElem(
            self.x * o.x + self.y * o.y * self.D, self.x * o.y + self.y * o.x, self.D
        )

    def scale(self, s) -> "QuadElem":
        return QuadElem(self.x * s, self.y * s, self.D)

    def norm(self) -> Fraction:
        return self.x * self.x - self.y * self.y * self.D

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_positive(self) -> bool:
        """Positivity in the real embedding sending sqrt(D) to the positive root."""
        if self.y == 0:
            return self.x > 0
        if self.x == 0:
            return self.y > 0
        if self.x > 0 and self.y > 0:
            return True
        if self.x < 0 and self.y < 0:
            return False
        return (self.x * self.x > self.y * self.y * self.D) == (self.x > 0)

    def __str__(self) -> str:
        return f"{self.x} + {self.y}*sqrt({self.D})"


@dataclass(frozen=True)
class QuadOrder:
    """The quadratic order of discriminant D = D0 * f^2, D0 fundamental."""

    D: int
    D0: int
    conductor: int

    @staticmethod
    def make(D: int) -> "QuadOrder":
        if not is_discriminant(D):
            raise ValueError(f"{D} is not a real quadratic discriminant")
        f = 1
        g = 2
        D0, cond = D, 1
        while g * g <= D:
            if D % (g * g) == 0:
                q = D // (g * g)
                if q % 4 in (0, 1):
                    from .bernoulli import is_fundamental_discriminant

                    if is_fundamental_discriminant(q):
                        D0, cond = q, g
            g += 1
        return QuadOrder(D, D0, cond)


QForm = Tuple[int, int, int]


def form_disc(f: QForm) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def is_primitive(f: QForm) -> bool:
    return gcd(gcd(f[0], f[1]), f[2]) == 1


def is_reduced(f: QForm) -> bool:
    a, b, c = f
    D = form_disc(f)
    if D <= 0 or b <= 0:
        return False
    s = isqrt(D)  # floor sqrt, D not a square
    # 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, exactly in integers
    if b > s:
        return False
    t = 2 * abs(a)
    return (s - b) < t <= (s + b) and (t - b) ** 2 < D and (t + b) ** 2 > D


def _rho(f: QForm) -> QForm:
    """One reduction step (a, b, c) -> (c, b', c')."""
    a, b, c = f
    D = form_disc(f)
    s = isqrt(D)
    ac = abs(c)
    # b' = -b mod 2|c|, placed in (sqrt(D) - 2|c|, sqrt(D))
    b2 = (-b) % (2 * ac)
    b2 += ((s - b2) // (2 * ac)) * 2 * ac
    if b2 > s:
        b2 -= 2 * ac
    c2 = (b2 * b2 - D) // (4 * c)
    assert (b2 * b2 - D) % (4 * c) == 0
    return (c, b2, c2)


def reduce_form(f: QForm) -> QForm:
    """Apply reduction steps until the form is reduced."""
    if not is_primitive(f):
        raise ValueError("form must be primitive")
    seen = 0
    while not is_reduced(f):
        f = _rho(f)
        seen += 1
        if seen > 10000:
            raise ArithmeticError("reduction failed to terminate")
    return f


def reduced_forms(D: int) -> List[QForm]:
    """All primitive reduced forms of discriminant D, sorted."""
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a real quadratic discriminant")
    out = []
    s = isqrt(D)
    for b in range(1, s + 1):
        if (D - b * b) % 4:
            continue
        prod4 = (D - b * b) // 4  # = -a*c = |a||c|
        a = 1
        while a * a <= prod4:
            if prod4 % a == 0:
                for aa in (a, -a):
                    cc = -prod4 // aa
                    f = (aa, b, cc)
                    if is_primitive(f) and is_reduced(f):
                        out.append(f)
                a2 = prod4 // a
                if a2 != a:
                    for aa in (a2, -a2):
                        cc = -prod4 // aa
                        f = (aa, b, cc)
                        if is_primitive(f) and is_reduced(f):
                            out.append(f)
            a += 1
    return sorted(set(out))


def form_cycle(f: QForm) -> List[QForm]:
    """The cycle of reduced forms through the reduction of f."""
    f0 = reduce_form(f)
    cyc = [f0]
    g = _rho(f0)
    while g != f0:
        cyc.append(g)
        g = _rho(g)
    return cyc


def fundamental_unit_tp(D: int) -> Tuple[int, int]:
    """Minimal t, u > 0 with t^2 - D u^2 = 4; (t + u sqrt(D))/2 is the totally
    positive fundamental unit of the order of discriminant D.

    Found from the purely periodic continued fraction of (b0 + sqrt(D))/2
    with b0 the largest integer below sqrt(D) congruent to D mod 2; the
    period's automorphy factor is the fundamental unit, squared if its norm
    is -1."""
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a real quadratic discriminant")
    s = isqrt(D)
    b0 = s if (s - D) % 2 == 0 else s - 1
    # alpha = (P + sqrt(D))/Q, purely periodic since alpha > 1 > 0 > alpha' > -1
    P0, Q0 = b0, 2
    P, Q = P0, Q0
    # denominator-convergent recurrence: eps = q_{l-1} alpha_0 + q_{l-2},
    # with q_{-2} = 1, q_{-1} = 0
    qm2, qm1 = 1, 0
    while True:
        a = (P + s) // Q
        P2 = a * Q - P
        Q2 = (D - P2 * P2) // Q
        qm2, qm1 = qm1, a * qm1 + qm2
        P, Q = P2, Q2
        if (P, Q) == (P0, Q0):
            break
    eps = QuadElem.make(Fraction(b0, 2), Fraction(1, 2), D).scale(qm1) + QuadElem.make(
        qm2, 0, D
    )
    nrm = eps.norm()
    if nrm == -1:
        eps = eps * eps
    t, u = eps.trace(), 2 * eps.y
    assert t.denominator == 1 and u.denominator == 1
    t, u = int(t), int(u)
    assert t > 0 and u > 0 and t * t - D * u * u == 4
    return t, u


@dataclass(frozen=True)
class NarrowClass:
    """A narrow ideal class of the order of discriminant D, carried by a
    reduced representative form with positive leading coefficient.

    basis = ((-b + sqrt(D))/2, a) is a positively oriented basis of the
    corresponding proper ideal; gamma0 realizes multiplication by the totally
    positive fundamental unit on that basis, and norm_form is the associated
    invariant quadratic (equal to the automorph's invariant form)."""

    order: QuadOrder
    rep: QForm
    cycle: Tuple[QForm, ...]
    basis: Tuple[QuadElem, QuadElem]
    gamma0: Mat2
    t: int
    u: int

    @property
    def norm_form(self) -> QForm:
        a, b, c = self.rep
        return (-a, -b, -c)

    def norm_form_poly(self) -> HomPoly:
        A, B, C = self.norm_form
        return HomPoly(2, [C, B, A])

    def inverse(self) -> "NarrowClass":
        a, b, c = self.rep
        return _class_of_form(self.order, (a, -b, c), self.t, self.u)

    def label(self) -> str:
        return f"{self.rep[0]},{self.rep[1]},{self.rep[2]}"


def _class_of_form(
    order: QuadOrder, f: QForm, t: int, u: int, rep: Optional[QForm] = None
) -> NarrowClass:
    cyc = form_cycle(f)
    if rep is None:
        rep = min(g for g in cyc if g[0] > 0)
    elif rep not in cyc or rep[0] <= 0:
        raise ValueError("representative must be a cycle member with a > 0")
    a, b, c = rep
    D = order.D
    alpha1 = QuadElem.make(Fraction(-b, 2), Fraction(1, 2), D)
    alpha2 = QuadElem.make(a, 0, D)
    gamma0: Mat2 = ((t - u * b) // 2, -u * c, u * a, (t + u * b) // 2)
    cls = NarrowClass(order, rep, tuple(cyc), (alpha1, alpha2), gamma0, t, u)
    _check_class(cls)
    return cls


def narrow_class_from_form(D: int, f: QForm, rep: Optional[QForm] = None) -> NarrowClass:
    """The narrow class of an arbitrary primitive form of discriminant D,
    optionally pinned to a particular cycle member with a > 0 as the working
    representative (the class data is representative independent; tests rely
    on that)."""
    if form_disc(f) != D:
        raise ValueError("discriminant mismatch")
    t, u = fundamental_unit_tp(D)
    return _class_of_form(QuadOrder.make(D), f, t, u, rep)


def _check_class(cls: NarrowClass) -> None:
    D = cls.order.D
    a1, a2 = cls.basis
    # positive orientation: alpha1 alpha2' - alpha1' alpha2 = a sqrt(D) > 0
    orient = a1 * a2.conj() - a1.conj() * a2
    assert orient.x == 0 and orient.y > 0
    # gamma0 (alpha1, alpha2)^T = eps0 (alpha1, alpha2)^T, det 1, trace t
    g = cls.gamma0
    assert mat_det(g) == 1
    assert g[0] + g[3] == cls.t and abs(cls.t) > 2
    eps = QuadElem.make(Fraction(cls.t, 2), Fraction(cls.u, 2), D)
    assert eps.norm() == 1 and eps.is_positive() and eps.conj().is_positive()
    assert a1.scale(g[0]) + a2.scale(g[1]) == eps * a1
    assert a1.scale(g[2]) + a2.scale(g[3]) == eps * a2
    # norm form: -(alpha2 X1 - alpha1 X2)(alpha2' X1 - alpha1' X2)/a, and it
    # agrees with the automorph's invariant quadratic
    A, B, C = cls.norm_form
    a = cls.rep[0]
    assert Fraction(A) == -(a2 * a2.conj()).x / a
    assert Fraction(B) == (a1 * a2.conj() + a1.conj() * a2).x / a
    assert Fraction(C) == -(a1 * a1.conj()).x / a
    npoly = cls.norm_form_poly()
    assert act(g, npoly) == npoly
    assert npoly == invariant_quadratic(g)
    assert form_disc(cls.norm_form) == D


def narrow_classes(D: int) -> List[NarrowClass]:
    """One class per cycle of primitive reduced forms; the order of the list
    is the deterministic scan order (sorted forms, cycles peeled in order)."""
    order = QuadOrder.make(D)
    t, u = fundamental_unit_tp(D)
    forms = reduced_forms(D)
    remaining = set(forms)
    out = []
    for f in forms:
        if f not in remaining:
            continue
        cls = _class_of_form(order, f, t, u)
        remaining.difference_update(cls.cycle)
        out.append(cls)
    return out


# ---------------------------------------------------------------------------
# cycles, partial zeta values, Rademacher symbols


def class_cycle(cls: NarrowClass, k: int) -> SymbolChain:
    """The closed geodesic cycle {tau, gamma0 tau} (x) N^(k-1) in weight 2k-2."""
    if k < 2:
        raise ValueError("k must be >= 2")
    tau = Formal.basepoint()
    poly = cls.norm_form_poly().power(k - 1)
    return SymbolChain.single(tau, tau.apply(cls.gamma0), poly)


_COCYCLES: Dict[int, EisensteinCocycle] = {}


def _cocycle(n: int) -> EisensteinCocycle:
    phi = _COCYCLES.get(n)
    if phi is None:
        phi = eisenstein_cocycle(n)
        _COCYCLES[n] = phi
    return phi


def partial_zeta_neg(cls: NarrowClass, k: int) -> Fraction:
    """zeta_O(A, 1-k) through the Eisenstein pairing against the cycle of the
    inverse class: (-1)^k zeta(1-2k) <Eis, cycle(A^{-1})>."""
    if k < 2:
        raise ValueError("k must be >= 2")
    phi = _cocycle(2 * k - 2)
    ch = class_cycle(cls.inverse(), k)
    return (-1) ** k * zeta_neg(2 * k) * phi.pair_chain(ch)


def invariant_quadratic(gamma: Mat2) -> HomPoly:
    """The weight-2 invariant form of a nonzero-trace matrix:

        -sgn(a+d)/m * (c X1^2 - (a-d) X1 X2 - b X2^2),

    where m is the content of (c, a-d, b) signed by its first nonzero entry
    (so the form is primitive and T^a maps to X2^2 for every a)."""
    a, b, c, d = gamma
    if mat_det(gamma) != 1:
        raise ValueError("invariant form is defined on the modular group")
    tr = a + d
    if tr == 0:
        raise ValueError("trace zero has no canonical invariant form")
    m = gcd(gcd(c, a - d), b)
    for x in (c, a - d, b):
        if x:
            if x < 0:
                m = -m
            break
    sgn = 1 if tr > 0 else -1
    s = Fraction(-sgn, m)
    # coefficients [X2^2, X1X2, X1^2]
    return HomPoly(2, [s * (-b), s * (-(a - d)), s * c])


def rademacher(k: int, gamma: Mat2) -> int:
    """The higher Rademacher symbol: the numerator of zeta(1-2k) times the
    Eisenstein pairing against {tau, gamma tau} (x) Q_gamma^(k-1).  Integral
    for every gamma with nonzero trace."""
    if k < 2:
        raise ValueError("k must be >= 2")
    q = invariant_quadratic(gamma)
    tau = Formal.basepoint()
    ch = SymbolChain.single(tau, tau.apply(gamma), q.power(k - 1))
    val = zeta_numerator(2 * k) * _cocycle(2 * k - 2).pair_chain(ch)
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral Rademacher value {val} at {gamma}")
    return int(val)


def sharpness_search(k: int, p: int, max_disc: int):
    """First (D, class index) in scan order with ord_p(J_2k zeta_O(A,1-k)) = 0,
    or None when the budget max_disc is exhausted."""
    if k < 2:
        raise ValueError("k must be >= 2")
    J = zeta_neg(2 * k).denominator
    for D in valid_discriminants(max_disc):
        for idx, cls in enumerate(narrow_classes(D)):
            val = J * partial_zeta_neg(cls, k)
            if val.denominator != 1:
                raise ArithmeticError(f"universal bound violated at D={D}")
            if padic_val(val, p) == 0:
                return {"D": D, "class_index": idx, "form": cls.rep, "value": int(val)}
    return None
