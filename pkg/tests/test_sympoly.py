import random
from fractions import Fraction

import pytest

from eisdenom.sympoly import (
    HomPoly,
    IDENT,
    LiftParams,
    S_MAT,
    T_MAT,
    act,
    difference_primitive,
    integral_primitive,
    lift_polys,
    mat_adj,
    mat_mul,
    pair_dual,
)


def rand_pos_det(rng, bound=1000):
    while True:
        g = tuple(rng.randint(-bound, bound) for _ in range(4))
        if g[0] * g[3] - g[1] * g[2] > 0:
            return g


def test_action_examples():
    e0 = HomPoly.basis(4, 0)
    assert act(IDENT, HomPoly.basis(4, 1)) == HomPoly.basis(4, 1)
    assert act(S_MAT, e0) == HomPoly.basis(4, 4)
    assert act(T_MAT, e0) == e0


def test_action_axioms():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.choice((2, 4, 6))
        P = HomPoly(n, [rng.randint(-5, 5) for _ in range(n + 1)])
        g, h = rand_pos_det(rng, 6), rand_pos_det(rng, 6)
        assert act(mat_mul(g, h), P) == act(g, act(h, P))
        assert act(IDENT, P) == P
        assert act((-1, 0, 0, -1), P) == P  # n even


def test_pair_examples():
    n = 4
    assert pair_dual(HomPoly.dual_basis(n, 1), HomPoly.basis(n, 1)) == 1
    assert pair_dual(HomPoly.dual_basis(n, 1), HomPoly.basis(n, 2)) == 0
    combo = HomPoly.basis(n, 0).scale(3) + HomPoly.basis(n, 1)
    assert pair_dual(HomPoly.dual_basis(n, 0), combo) == 3


def test_pair_weight_mismatch():
    with pytest.raises(ValueError):
        pair_dual(HomPoly.dual_basis(2, 0), HomPoly.basis(4, 0))


def test_pairing_equivariance_500_random():
    rng = random.Random(17)
    for _ in range(500):
        n = rng.choice((2, 4, 6, 8, 10, 12))
        g = rand_pos_det(rng)
        Pb = HomPoly(n, [rng.randint(-9, 9) for _ in range(n + 1)], dual=True)
        Q = HomPoly(n, [rng.randint(-9, 9) for _ in range(n + 1)])
        assert pair_dual(Pb, act(g, Q)) == pair_dual(act(mat_adj(g), Pb), Q)


def test_dual_monomial_roundtrip():
    rng = random.Random(5)
    for n in (2, 4, 8):
        Pb = HomPoly(n, [rng.randint(-9, 9) for _ in range(n + 1)], dual=True)
        assert HomPoly.dual_from_monomials(n, Pb.monomial_coeffs()) == Pb


def test_difference_primitive_examples():
    for n in (2, 4, 6):
        assert difference_primitive(HomPoly.basis(n, 0)) == HomPoly.basis(n, 1)
    assert difference_primitive(HomPoly.basis(2, 1)) == HomPoly(
        2, [0, Fraction(-1, 2), Fraction(1, 2)]
    )
    z = HomPoly.zero(2)
    assert difference_primitive(z) == z


def test_difference_primitive_rejects_top_degree():
    with pytest.raises(ValueError):
        difference_primitive(HomPoly.basis(2, 2))


def test_difference_identity_all_monomials():
    shift = (1, -1, 0, 1)  # P(X1 + X2, X2)
    for n in range(2, 21, 2):
        for mu in range(n):
            P = HomPoly.basis(n, mu)
            Pd = difference_primitive(P)
            assert act(shift, Pd) - Pd == P


def test_integral_primitive_examples():
    assert integral_primitive(HomPoly.basis(2, 0)) == HomPoly(2, [Fraction(1, 2), 1, 0])
    assert integral_primitive(HomPoly.basis(2, 1)) == HomPoly(
        2, [Fraction(-1, 12), 0, Fraction(1, 2)]
    )


def test_integral_primitive_is_antiderivative():
    # d/dx Pi(x,1) = P(x,1), and the unit-interval integral of Pd(z,1) is
    # Pi(x,1): with A the antiderivative of Pd(z,1) vanishing at 0,
    # A(x+1) - A(x) = Pi(x,1) as exact polynomials
    from eisdenom.bernoulli import UniPoly

    for n in range(2, 13, 2):
        for mu in range(n):
            P = HomPoly.basis(n, mu)
            Pi = integral_primitive(P)
            deriv = tuple(i * c for i, c in enumerate(Pi.coeffs))[1:]
            assert deriv + (Fraction(0),) == P.coeffs
            Pd = difference_primitive(P)
            anti = UniPoly(Pd.coeffs).antiderivative()
            assert anti.shift1() - anti == UniPoly(Pi.coeffs)


def test_lift_params_invariants():
    for p in (2, 3, 5):
        for k in range(5):
            for j in range(p**k):
                lp = LiftParams.make(p, 4, 1, k, j)
                if k - lp.l > 0:
                    assert lp.jprime * lp.d - p ** (k - lp.l) * lp.b == 1
                    assert 1 <= lp.d < p ** (k - lp.l)
                else:
                    assert (lp.d, lp.b) == (0, -1)
    assert LiftParams.make(2, 2, 1, 1, 0).l == 1  # l_1(0) = 1


def test_lift_polys_examples():
    # k = 0: both boundary polynomials reduce to the basic monomial
    b1, b0, _, _ = lift_polys(LiftParams.make(5, 2, 1, 0, 0))
    assert b1 == HomPoly.basis(2, 1)
    assert b0 == HomPoly.basis(2, 1)
    # (n=2, nu=1, k=1, j=0, p=2): 2 X1 X2 on both sides
    b1, b0, _, _ = lift_polys(LiftParams.make(2, 2, 1, 1, 0))
    assert b1 == HomPoly.basis(2, 1).scale(2)
    assert b0 == HomPoly.basis(2, 1).scale(2)
    # (n=2, nu=1, k=1, j=1, p=2): (2X1 - X2)X2 and X2(2X1 + X2)
    b1, b0, _, _ = lift_polys(LiftParams.make(2, 2, 1, 1, 1))
    assert b1 == HomPoly(2, [-1, 2, 0])
    assert b0 == HomPoly(2, [1, 2, 0])


def test_lift_prim_valuation_bound():
    # min coefficient valuation of the primitives is >= min(0, k - n)
    for n in (2, 4):
        for p in (2, 3, 5):
            for k in range(5):
                for nu in range(1, n):
                    for j in range(p**k):
                        _, _, p1, p0 = lift_polys(LiftParams.make(p, n, nu, k, j))
                        bound = min(0, k - n)
                        assert p1.min_valuation(p) >= bound
                        assert p0.min_valuation(p) >= bound


def test_poly_json():
    p = HomPoly(2, [Fraction(1, 2), 0, -3])
    assert p.to_json() == {"weight": 2, "basis": "primary", "coeffs": ["1/2", "0", "-3"]}
