import pytest

from eisdenom import _kernels
from eisdenom._kernels import _reference
from eisdenom.bernoulli import bernoulli_number, primes_up_to


def test_backend_reports():
    assert _kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("p", [5, 7, 11, 13, 37, 101, 157])
def test_reference_matches_exact_bernoulli(p):
    table = _reference.bernoulli_even_mod_p(p)
    assert len(table) == (p - 3) // 2 + 1
    for t in range(0, p - 2, 2):
        b = bernoulli_number(t)
        assert table[t // 2] == b.numerator * pow(b.denominator, -1, p) % p


def test_active_backend_matches_reference():
    for p in primes_up_to(200):
        if p >= 5:
            assert _kernels.bernoulli_even_mod_p(p) == _reference.bernoulli_even_mod_p(p)


def test_rejects_small_p():
    with pytest.raises(ValueError):
        _kernels.bernoulli_even_mod_p(3)
