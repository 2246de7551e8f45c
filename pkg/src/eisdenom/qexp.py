"""Floating-point oracle: truncated q-expansions of the weight-(n+2)
Eisenstein series and numerical path integration of pairing integrals.

This is a cross-check for the exact evaluators, not a proof: plain double
precision, straight-line paths, Gauss-Legendre quadrature with a doubling
error estimate.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from .bernoulli import zeta_neg
from .modsym import Formal, SymbolChain
from .sympoly import Mat2

__all__ = ["QSeries", "eisenstein_q", "numeric_pair", "numeric_pair_chain"]


@dataclass(frozen=True)
class QSeries:
    weight: int  # n + 2
    coeffs: Tuple[Fraction, ...]

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1


def _sigma(e: int, k: int) -> int:
    s = 0
    d = 1
    while d * d <= k:
        if k % d == 0:
            s += d**e
            if d != k // d:
                s += (k // d) ** e
        d += 1
    return s


def eisenstein_q(n: int, T: int) -> QSeries:
    """1 + (2/zeta(-1-n)) sum_k sigma_{n+1}(k) q^k up to q^T, exact coefficients."""
    if T < 1:
        raise ValueError("need at least one q term")
    lead = 2 / zeta_neg(n + 2)
    coeffs = [Fraction(1)] + [lead * _sigma(n + 1, k) for k in range(1, T + 1)]
    return QSeries(n + 2, tuple(coeffs))


def _series_floats(series: QSeries) -> np.ndarray:
    return np.array([float(c) for c in series.coeffs], dtype=np.float64)


def _eval_series(cf: np.ndarray, z: complex) -> complex:
    q = cmath.exp(2j * cmath.pi * z)
    acc = 0j
    for c in reversed(cf):
        acc = acc * q + c
    return acc


def _eval_poly(coeffs, z: complex) -> complex:
    # P(z, 1) for monomial coefficients indexed by the X1-degree
    acc = 0j
    for c in reversed([float(x) for x in coeffs]):
        acc = acc * z + c
    return acc


def mobius(g: Mat2, z: complex) -> complex:
    a, b, c, d = g
    return (a * z + b) / (c * z + d)


def _segment_integral(cf, poly_coeffs, alpha: complex, beta: complex, nodes: int) -> complex:
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    # map [-1, 1] -> [0, 1]
    xs = 0.5 * (xs + 1.0)
    ws = 0.5 * ws
    dz = beta - alpha
    total = 0j
    comp = 0j  # Kahan compensation
    for x, w in zip(xs, ws):
        z = alpha + x * dz
        term = w * _eval_series(cf, z) * _eval_poly(poly_coeffs, z)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total * dz


def numeric_pair(
    n: int,
    gamma: Mat2,
    poly_coeffs,
    tau: complex = 1j,
    terms: int = 150,
    nodes: int = 64,
    tol: float = 1e-9,
) -> complex:
    """Integral of E_{n+2}(z) P(z,1) along the straight segment tau -> gamma(tau).

    Raises if the doubling error estimate exceeds tol."""
    cf = _series_floats(eisenstein_q(n, terms))
    alpha, beta = tau, mobius(gamma, tau)
    v1 = _segment_integral(cf, poly_coeffs, alpha, beta, nodes)
    v2 = _segment_integral(cf, poly_coeffs, alpha, beta, 2 * nodes)
    cf2 = _series_floats(eisenstein_q(n, 2 * terms))
    v3 = _segment_integral(cf2, poly_coeffs, alpha, beta, 2 * nodes)
    err = abs(v2 - v1) + abs(v3 - v2)
    if err > tol:
        raise ArithmeticError(f"quadrature error estimate {err:.3g} exceeds {tol:.3g}")
    return v3


def numeric_pair_chain(
    ch: SymbolChain,
    tau: complex = 1j,
    terms: int = 150,
    nodes: int = 64,
    tol: float = 1e-9,
) -> complex:
    """Numeric pairing of a whole chain: sum of segment integrals between the
    numeric images of the formal endpoints."""
    cf = _series_floats(eisenstein_q(ch.n, terms))
    cf2 = _series_floats(eisenstein_q(ch.n, 2 * terms))
    total = 0j
    err = 0.0
    for t in ch.terms:
        if not isinstance(t.frm, Formal) or not isinstance(t.to, Formal):
            raise ValueError("numeric pairing needs formal endpoints")
        alpha = mobius(t.frm.matrix(), tau)
        beta = mobius(t.to.matrix(), tau)
        pc = t.poly.coeffs
        v1 = _segment_integral(cf, pc, alpha, beta, nodes)
        v2 = _segment_integral(cf2, pc, alpha, beta, 2 * nodes)
        err += abs(v2 - v1)
        total += float(t.coeff) * v2
    if err > tol:
        raise ArithmeticError(f"quadrature error estimate {err:.3g} exceeds {tol:.3g}")
    return total
