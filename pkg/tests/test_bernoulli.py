from fractions import Fraction
from math import comb, inf

import pytest

from eisdenom.bernoulli import (
    UniPoly,
    bernoulli_number,
    bernoulli_poly,
    dirichlet_L_neg,
    factorize,
    faulhaber,
    format_rational,
    gen_bernoulli_quadratic,
    is_fundamental_discriminant,
    kronecker,
    padic_val,
    primes_up_to,
    zeta_denominator,
    zeta_neg,
    zeta_numerator,
)


def akiyama_tanigawa(n):
    """Independent oracle for B_0..B_n (first-kind convention, B_1 = -1/2)."""
    A = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        A[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            A[j - 1] = j * (A[j - 1] - A[j])
        out.append(A[0])
    # Akiyama-Tanigawa produces B_1 = +1/2; flip to the B_1 = -1/2 convention
    if n >= 1:
        out[1] = -out[1]
    return out


def test_bernoulli_examples():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(12) == Fraction(-691, 2730)


def test_bernoulli_against_independent_oracle():
    oracle = akiyama_tanigawa(40)
    for t, expected in enumerate(oracle):
        assert bernoulli_number(t) == expected


def test_recurrence_consistency():
    for t in range(1, 61):
        assert sum(comb(t + 1, j) * bernoulli_number(j) for j in range(t + 1)) == 0


def test_von_staudt_clausen():
    for t in range(2, 61, 2):
        B = bernoulli_number(t)
        for p in primes_up_to(100):
            v = padic_val(B, p)
            assert v >= -1
            assert (v == -1) == (t % (p - 1) == 0)


def test_denominator_law():
    # von Staudt-Clausen for B_2k, sharpened by the extra ord_p(2k) carried
    # into zeta(1-2k) = -B_2k/2k
    for k in range(1, 21):
        expected = 1
        for p in primes_up_to(2 * k + 2):
            if (2 * k) % (p - 1) == 0:
                expected *= p * p ** padic_val(2 * k, p)
        assert zeta_denominator(2 * k) == expected
        bdenom = 1
        for p in primes_up_to(2 * k + 2):
            if (2 * k) % (p - 1) == 0:
                bdenom *= p
        assert bernoulli_number(2 * k).denominator == bdenom


def test_bernoulli_poly_examples():
    assert bernoulli_poly(1).coeffs == (Fraction(-1, 2), Fraction(1))
    assert bernoulli_poly(2).coeffs == (Fraction(1, 6), Fraction(-1), Fraction(1))
    assert bernoulli_poly(2)(Fraction(1, 5)) == Fraction(1, 150)


def test_translation_identity():
    # B_t(x+1) - B_t(x) = t x^(t-1) as exact polynomials
    for t in range(1, 31):
        bt = bernoulli_poly(t)
        diff = bt.shift1() - bt
        expected = UniPoly([Fraction(0)] * (t - 1) + [Fraction(t)])
        assert diff == expected


def test_faulhaber_values():
    assert faulhaber(2, Fraction(0)) == 0
    assert faulhaber(2, Fraction(5)) == 10
    assert faulhaber(4, Fraction(3)) == 9
    # power-sum meaning at integers
    for t in range(1, 8):
        for x in range(8):
            assert faulhaber(t, Fraction(x)) == sum(j ** (t - 1) for j in range(x))


def test_zeta_values():
    assert zeta_neg(2) == Fraction(-1, 12)
    assert zeta_numerator(2) == 1 and zeta_denominator(2) == 12
    assert zeta_neg(4) == Fraction(1, 120)
    assert zeta_denominator(4) == 120
    # -B_12/12 = -(-691/2730)/12; the value is positive
    assert zeta_neg(12) == Fraction(691, 32760)
    assert zeta_numerator(12) == 691


@pytest.mark.parametrize(
    "k,D,B,L",
    [
        (2, 5, Fraction(4, 5), Fraction(-2, 5)),
        (2, 8, Fraction(2), Fraction(-1)),
        (2, 12, Fraction(4), Fraction(-2)),
    ],
)
def test_gen_bernoulli_quadratic(k, D, B, L):
    assert gen_bernoulli_quadratic(k, D) == B
    assert dirichlet_L_neg(k, D) == L


def test_gen_bernoulli_rejects_bad_discriminants():
    for D in (3, 6, 7, 9, 16, 25, 45, -5):
        with pytest.raises(ValueError):
            gen_bernoulli_quadratic(2, D)


def test_kronecker_is_multiplicative_quadratic_character():
    from math import gcd

    for D in (5, 8, 12, 13, 17, 21, 24):
        f = [kronecker(D, a) for a in range(1, D * D + D)]
        for a in range(1, D):
            for b in range(1, D):
                assert f[a * b - 1] == f[a - 1] * f[b - 1]
        # period D and vanishing exactly on gcd > 1
        for a in range(1, 2 * D):
            assert f[a - 1] == f[a + D - 1]
            assert (f[a - 1] == 0) == (gcd(a, D) > 1)


def test_padic_val():
    assert padic_val(Fraction(-24, 31), 5) == 0
    assert padic_val(Fraction(691, 32760), 691) == 1
    assert padic_val(0, 7) == inf
    assert padic_val(Fraction(5, 125), 5) == -2


def test_fundamental_discriminants():
    fundamentals = [D for D in range(2, 50) if is_fundamental_discriminant(D)]
    assert fundamentals == [5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44]


def test_format_rational():
    assert format_rational(Fraction(1, 30)) == "1/30"
    assert format_rational(Fraction(-7, 2)) == "-7/2"
    assert format_rational(Fraction(4)) == "4"


def test_factorize():
    assert factorize(32760) == [(2, 3), (3, 2), (5, 1), (7, 1), (13, 1)]
    assert factorize(1) == []
