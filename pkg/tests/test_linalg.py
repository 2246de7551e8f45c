import random
from fractions import Fraction

from eisdenom.linalg import solve_exact


def test_solve_simple():
    rows = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(3)]]
    assert solve_exact(rows, [Fraction(4), Fraction(9)]) == [Fraction(2), Fraction(3)]


def test_solve_overdetermined_consistent():
    rows = [[1, 1], [2, 2], [1, -1]]
    rows = [[Fraction(x) for x in r] for r in rows]
    sol = solve_exact(rows, [Fraction(3), Fraction(6), Fraction(1)])
    assert sol == [Fraction(2), Fraction(1)]


def test_solve_inconsistent():
    rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert solve_exact(rows, [Fraction(1), Fraction(2)]) is None


def test_solve_underdetermined_returns_particular():
    rows = [[Fraction(1), Fraction(1), Fraction(0)]]
    sol = solve_exact(rows, [Fraction(5)])
    assert sol is not None
    assert sol[0] + sol[1] == 5


def test_random_square_systems():
    rng = random.Random(123)
    for _ in range(30):
        m = rng.randint(1, 6)
        a = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(m)] for _ in range(m)]
        x = [Fraction(rng.randint(-5, 5)) for _ in range(m)]
        b = [sum(a[i][j] * x[j] for j in range(m)) for i in range(m)]
        sol = solve_exact(a, b)
        assert sol is not None
        assert [sum(a[i][j] * sol[j] for j in range(m)) for i in range(m)] == b
