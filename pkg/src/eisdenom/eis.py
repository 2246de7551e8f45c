"""The rational Eisenstein cocycle and everything paired against it.

The weight-(n+2) Eisenstein series has a rational cohomology class; we
represent it by a 1-cocycle on the generators S = [[0,-1],[1,0]] and
T = [[1,1],[0,1]], pinned by its exact pairing values: 1 on the unit
horocycle path against X2^n, and the closed rational formula

    zeta(-nu) zeta(nu-n) / zeta(-1-n) - zeta(-nu) - zeta(nu-n)

against each closed basic cell.  Everything downstream (lift pairings,
p-adic L combinations, denominator exponents) is exact rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, inf
from typing import Dict, List, Optional, Tuple

from .bernoulli import (
    bernoulli_number,
    factorize,
    faulhaber,
    padic_val,
    primes_up_to,
    zeta_neg,
    zeta_numerator,
)
from .linalg import solve_exact
from .modsym import Formal, SymbolChain, boundary_class
from .sympoly import (
    HomPoly,
    IDENT,
    LiftParams,
    Mat2,
    S_MAT,
    T_MAT,
    act,
    lift_polys,
    mat_adj,
    mat_det,
    mat_mul,
    mat_neg,
    pair_dual,
    t_power,
)

__all__ = [
    "zeta_at",
    "basic_cycle_pairing",
    "EisensteinCocycle",
    "eisenstein_cocycle",
    "coboundary_witness",
    "window_pairing",
    "pair_lift_value",
    "padic_l_ratio",
    "lift_pairing_limit",
    "p_defect_nu",
    "p_defect",
    "eisenstein_denominator",
]


def zeta_at(j: int) -> Fraction:
    """zeta(-j) for j >= 0."""
    return zeta_neg(j + 1)


def basic_cycle_pairing(n: int, nu: int) -> Fraction:
    """Exact pairing of the Eisenstein class against the closed basic cell."""
    if not (1 <= nu <= n - 1):
        raise ValueError("nu out of range")
    return (
        zeta_at(nu) * zeta_at(n - nu) / zeta_at(n + 1) - zeta_at(nu) - zeta_at(n - nu)
    )


# ---------------------------------------------------------------------------
# cocycle


class EisensteinCocycle:
    """Values of the Eisenstein cocycle on the generators S and T, as dual
    polynomials.  phi extends to the whole modular group by the cocycle law
    phi(gh) = phi(g) + g.phi(h); -1 acts trivially since n is even."""

    def __init__(self, n: int, on_s: HomPoly, on_t: HomPoly):
        if not (on_s.dual and on_t.dual):
            raise ValueError("cocycle values must be dual polynomials")
        self.n = n
        self.on_s = on_s
        self.on_t = on_t
        self._memo: Dict[Mat2, HomPoly] = {}

    # -- evaluation on arbitrary group elements ------------------------------

    def _phi_t_power(self, q: int) -> HomPoly:
        """phi(T^q) in closed form: sum_{i=0}^{q-1} T^i . v, using power sums
        so that huge q cost nothing."""
        n = self.n
        if q == 0:
            return HomPoly.zero(n, dual=True)
        if q < 0:
            return act(t_power(q), self._phi_t_power(-q)).scale(-1)
        mono = self.on_t.monomial_coeffs()
        # (T^i v)(X1,X2) = v(X1 - i X2, X2) = sum_t i^t * piece_t
        out = [Fraction(0)] * (n + 1)
        for t in range(n + 1):
            s = faulhaber(t + 1, q)  # sum_{i<q} i^t
            if s == 0:
                continue
            sign = (-1) ** t
            for mu in range(t, n + 1):
                c = mono[mu]
                if c:
                    out[mu - t] += s * sign * comb(mu, t) * c
        return HomPoly.dual_from_monomials(n, tuple(out))

    def phi(self, g: Mat2) -> HomPoly:
        """phi(g) for any g in SL2(Z), via Euclidean word decomposition."""
        if mat_det(g) != 1:
            raise ValueError("phi is defined on SL2(Z)")
        key = g if _sign_key(g) > 0 else mat_neg(g)
        if key in self._memo:
            return self._memo[key]
        n = self.n
        result = HomPoly.zero(n, dual=True)
        prefix: Mat2 = IDENT
        cur = g
        while True:
            a, b, c, d = cur
            if c == 0:
                # cur = +-T^b (a = d = +-1); phi(-1) = 0 and -1 acts trivially
                q = b if a > 0 else -b
                result = result + _act_dual(prefix, self._phi_t_power(q))
                break
            q = _nearest_quotient(a, c)
            if q:
                result = result + _act_dual(prefix, self._phi_t_power(q))
                prefix = mat_mul(prefix, t_power(q))
                cur = (a - q * c, b - q * d, c, d)
                a, b, c, d = cur
            result = result + _act_dual(prefix, self.on_s)
            prefix = mat_mul(prefix, S_MAT)
            cur = (c, d, -a, -b)  # S^{-1} * cur
        self._memo[key] = result
        return result

    # -- pairing with cycles --------------------------------------------------

    def pair_chain(self, ch: SymbolChain) -> Fraction:
        """Pairing against a cycle all of whose endpoints lie in the orbit of
        the generic basepoint."""
        if ch.n != self.n:
            raise ValueError("weight mismatch")
        if boundary_class(ch):
            raise ValueError("pair_chain requires a cycle")
        total = Fraction(0)
        for t in ch.terms:
            for pt in (t.frm, t.to):
                if not isinstance(pt, Formal) or not pt.is_basepoint_orbit():
                    raise ValueError("endpoint outside the basepoint orbit")
            g1, g2 = t.frm.gamma, t.to.gamma
            rel = mat_mul(mat_adj(g1), g2)
            total += t.coeff * pair_dual(self.phi(rel), act(mat_adj(g1), t.poly))
        return total

    # -- Hecke action ----------------------------------------------------------

    def hecke_image(self, p: int) -> Tuple[HomPoly, HomPoly]:
        """Values on S and T of the dual Hecke operator applied to phi."""
        return (self._hecke_on(p, S_MAT), self._hecke_on(p, T_MAT))

    def _hecke_on(self, p: int, g: Mat2) -> HomPoly:
        reps = [(p, 0, 0, 1)] + [(1, j, 0, p) for j in range(p)]
        out = HomPoly.zero(self.n, dual=True)
        for gi in reps:
            h = mat_mul(gi, g)
            for gm in reps:
                cand = mat_mul(h, mat_adj(gm))
                if all(x % p == 0 for x in cand):
                    gam = (cand[0] // p, cand[1] // p, cand[2] // p, cand[3] // p)
                    assert mat_det(gam) == 1
                    out = out + _act_dual(mat_adj(gi), self.phi(gam))
                    break
            else:
                raise AssertionError("coset permutation failed")
        return out


def _sign_key(g: Mat2) -> int:
    for x in g:
        if x:
            return x
    return 0


def _nearest_quotient(a: int, c: int) -> int:
    """q with |a - qc| <= |c|/2."""
    q, r = divmod(a, c)
    if 2 * abs(r) > abs(c):
        q += 1
    return q


def _act_dual(g: Mat2, P: HomPoly) -> HomPoly:
    if g == IDENT:
        return P
    return act(g, P)


def _dual_action_matrix(n: int, g: Mat2) -> List[List[Fraction]]:
    cols = [act(g, HomPoly.dual_basis(n, nu)).coeffs for nu in range(n + 1)]
    return [[cols[nu][i] for nu in range(n + 1)] for i in range(n + 1)]


def eisenstein_cocycle(n: int) -> EisensteinCocycle:
    """Solve the exact linear system pinning the Eisenstein cocycle:

      (1 + S) u = 0,
      (1 + U + U^2)(u + S v) = 0 with U = ST,
      <v, X2^n> = 1,
      -<u, e_nu> - <v, prim1 + prim0> = basic_cycle_pairing(n, nu).

    Any solution represents the class; solutions differ by coboundaries,
    which pair to zero against cycles."""
    if n < 2 or n % 2:
        raise ValueError("weight must be even and >= 2")
    size = 2 * (n + 1)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    Sd = _dual_action_matrix(n, S_MAT)
    U = mat_mul(S_MAT, T_MAT)
    Ud = _dual_action_matrix(n, U)
    UUd = _mat_sq(Ud)

    def emit(block_u, block_v, value):
        for i in range(n + 1):
            row = [Fraction(0)] * size
            for j in range(n + 1):
                row[j] = block_u[i][j]
                row[n + 1 + j] = block_v[i][j]
            rows.append(row)
            rhs.append(value[i])

    ident = [[Fraction(i == j) for j in range(n + 1)] for i in range(n + 1)]
    zero_vec = [Fraction(0)] * (n + 1)
    # (1 + S) u = 0
    emit(_mat_add(ident, Sd), [[Fraction(0)] * (n + 1)] * (n + 1), zero_vec)
    # (1 + U + U^2)(u + S v) = 0
    A = _mat_add(_mat_add(ident, Ud), UUd)
    emit(A, _mat_mulm(A, Sd), zero_vec)
    # normalization <v, e_0> = 1
    row = [Fraction(0)] * size
    row[n + 1] = Fraction(1)
    rows.append(row)
    rhs.append(Fraction(1))
    # pinned pairing values
    for nu in range(1, n):
        params = LiftParams.make(2, n, nu, 0, 0)  # k = 0: prime irrelevant
        _, _, prim1, prim0 = lift_polys(params)
        w = prim1 + prim0
        row = [Fraction(0)] * size
        row[nu] = Fraction(-1)
        for mu in range(n + 1):
            row[n + 1 + mu] = -w.coeffs[mu]
        rows.append(row)
        rhs.append(basic_cycle_pairing(n, nu))
    sol = solve_exact(rows, rhs)
    if sol is None:
        raise ArithmeticError("cocycle system inconsistent; implementation bug")
    u = HomPoly(n, sol[: n + 1], dual=True)
    v = HomPoly(n, sol[n + 1 :], dual=True)
    return EisensteinCocycle(n, u, v)


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_mulm(a, b):
    m = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(m)]
        for i in range(m)
    ]


def _mat_sq(a):
    return _mat_mulm(a, a)


def coboundary_witness(
    n: int, w_s: HomPoly, w_t: HomPoly
) -> Optional[HomPoly]:
    """Solve (S - 1) b = w_s, (T - 1) b = w_t for a dual polynomial b, or
    return None if the pair is not a coboundary."""
    Sd = _dual_action_matrix(n, S_MAT)
    Td = _dual_action_matrix(n, T_MAT)
    rows, rhs = [], []
    for mat, w in ((Sd, w_s), (Td, w_t)):
        for i in range(n + 1):
            rows.append([mat[i][j] - Fraction(i == j) for j in range(n + 1)])
            rhs.append(w.coeffs[i])
    sol = solve_exact(rows, rhs)
    if sol is None:
        return None
    return HomPoly(n, sol, dual=True)


# ---------------------------------------------------------------------------
# closed-form lift pairings


def _btilde_scaled(t: int, p: int, e: int) -> Fraction:
    """faulhaber(t, p^e), memoized per (t, p, e)."""
    key = (t, p, e)
    val = _BT_CACHE.get(key)
    if val is None:
        val = faulhaber(t, Fraction(p**e))
        _BT_CACHE[key] = val
    return val


_BT_CACHE: Dict[Tuple[int, int, int], Fraction] = {}


def window_pairing(n: int, p: int, nu: int, m: int) -> Fraction:
    """Exact pairing of the Eisenstein class against the degree-m window of
    closed cells: the sum over k <= m, scaled by p^((n-nu)(m-k)), of the
    pairings of all cells at level k.  Computed from the closed Bernoulli
    forms of the three constituent sums; no analytic objects appear."""
    if not (1 <= nu <= n - 1):
        raise ValueError("nu out of range")
    if m < 0:
        raise ValueError("m must be >= 0")
    key = (n, p, nu, m)
    cached = _WINDOW_CACHE.get(key)
    if cached is not None:
        return cached
    zr = zeta_at(nu) * zeta_at(n - nu) / zeta_at(n + 1)
    w1 = Fraction(0)
    w2 = Fraction(0)
    w3 = Fraction(0)
    for k in range(m + 1):
        scale = Fraction(p ** ((n - nu) * (m - k)))
        # main-term sum over translates at level k
        w1 += scale * zr * Fraction(
            (1 - p ** ((n + 1) * (k + 1))) - (1 - p ** ((n + 1) * k)) * p ** (n - nu),
            1 - p ** (n + 1),
        )
        # first boundary primitive, evaluated at the translated points
        t2 = Fraction((-1) ** nu, nu + 1) * _btilde_scaled(nu + 2, p, k) / p**k
        t2 += (-1) ** (nu + 1) * sum(
            (
                Fraction(comb(nu, mu) * (-1) ** mu * p ** (k * mu))
                * bernoulli_number(mu + 1)
                / (mu + 1)
                * _btilde_scaled(nu - mu + 1, p, k)
                for mu in range(nu + 1)
            ),
            Fraction(0),
        )
        w2 += scale * t2
        # second boundary primitive
        t3 = Fraction((-1) ** nu, n - nu + 1) * sum(
            (
                p ** (lp * (nu + 1))
                * (
                    _btilde_scaled(n - nu + 2, p, k - lp)
                    - p ** (n - nu + 1) * _btilde_scaled(n - nu + 2, p, k - lp - 1)
                )
                for lp in range(k)
            ),
            Fraction(0),
        ) / p**k
        t3 += Fraction((-1) ** nu * p ** (k * nu)) * bernoulli_number(n - nu + 1) / (
            n - nu + 1
        )
        t3 += (-1) ** nu * sum(
            (
                Fraction(comb(n - nu, mu) * p ** (k * mu))
                * bernoulli_number(mu + 1)
                / (mu + 1)
                * sum(
                    (
                        p ** (lp * (nu - mu))
                        * (
                            _btilde_scaled(n - nu - mu + 1, p, k - lp)
                            - p ** (n - nu - mu)
                            * _btilde_scaled(n - nu - mu + 1, p, k - lp - 1)
                        )
                        for lp in range(k)
                    ),
                    Fraction(0),
                )
                for mu in range(n - nu + 1)
            ),
            Fraction(0),
        )
        w3 += scale * t3
    out = w1 - w2 - w3
    _WINDOW_CACHE[key] = out
    return out


_WINDOW_CACHE: Dict[Tuple[int, int, int, int], Fraction] = {}


def pair_lift_value(n: int, p: int, nu: int, m: int) -> Fraction:
    """Exact pairing of the Eisenstein class against the degree-m lift cycle:
    sum_A C(m-A, A) p^((n+1)A) window_pairing(m - 2A)."""
    from .modsym import hecke_power_coeff

    total = Fraction(0)
    for A in range(m // 2 + 1):
        total += (
            hecke_power_coeff(m - A, A)
            * Fraction(p ** ((n + 1) * A))
            * window_pairing(n, p, nu, m - 2 * A)
        )
    return total


# ---------------------------------------------------------------------------
# p-adic L combinations and denominator exponents


def padic_l_ratio(n: int, nu: int, p: int) -> Fraction:
    """The rational value of the p-adic L combination

        Lp(-nu) Lp(nu-n) / Lp(-1-n) - Lp(-nu) - Lp(nu-n),

    where every factor interpolates a zeta value with its Euler factor
    removed: Lp(-j) here means (1 - p^j) zeta(-j)."""
    if not (1 <= nu <= n - 1):
        raise ValueError("nu out of range")
    a = (1 - Fraction(p) ** nu) * zeta_at(nu)
    b = (1 - Fraction(p) ** (n - nu)) * zeta_at(n - nu)
    c = (1 - Fraction(p) ** (n + 1)) * zeta_at(n + 1)
    return a * b / c - a - b


def lift_pairing_limit(n: int, nu: int, p: int) -> Fraction:
    """The p-adic limit of the lift pairings along the factorial subsequence."""
    return (
        Fraction(1 - p ** (n + 1))
        / ((1 - Fraction(p) ** nu) * (1 - Fraction(p) ** (n - nu)))
        * padic_l_ratio(n, nu, p)
    )


def p_defect_nu(n: int, nu: int, p: int) -> int:
    """max(-ord_p of the p-adic L combination, 0); zero values give 0."""
    v = padic_val(padic_l_ratio(n, nu, p), p)
    if v == inf:
        return 0
    return max(-v, 0)


def p_defect(n: int, p: int) -> int:
    return max(p_defect_nu(n, nu, p) for nu in range(1, n))


def eisenstein_denominator(n: int, prime_bound: int) -> Tuple[int, dict]:
    """The denominator of the Eisenstein class: the numerator of zeta(-1-n),
    cross-checked prime by prime against the defect exponents.

    Returns (N, report); report flags any prime p <= prime_bound where the
    defect disagrees with ord_p(N), and any prime factor of N above the
    bound (uncovered)."""
    N = zeta_numerator(n + 2)
    J = zeta_neg(n + 2).denominator
    per_prime = []
    all_match = True
    for p in primes_up_to(prime_bound):
        dp = p_defect(n, p)
        op = 0
        M = N
        while M % p == 0:
            M //= p
            op += 1
        match = dp == op
        all_match = all_match and match
        per_prime.append({"p": p, "delta_p": dp, "ord_p_N": op, "match": match})
    uncovered = [p for p, _ in factorize(N) if p > prime_bound] if N > 1 else []
    report = {
        "n": n,
        "N": N,
        "J": J,
        "per_prime": per_prime,
        "all_match": all_match,
        "uncovered_primes": uncovered,
    }
    return N, report
