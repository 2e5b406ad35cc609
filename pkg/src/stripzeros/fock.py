"""Bargmann-Fock norms of polynomials and truncated symbols, and the symbol bound.

||f||_beta^2 = sum_k k! |c_k|^2 / beta^k. Factorials enter through lgamma so
large indices do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from .polycore import Poly
from .symbolmod import BivarTrunc, LinearOpTable, transcendental_symbol


def _log_weights(n: int, beta: float) -> np.ndarray:
    k = np.arange(n)
    return gammaln(k + 1) - k * math.log(beta)


def _check_beta(*betas: float):
    for b in betas:
        if not b > 0:
            raise ValueError("Fock weights must be positive")


def fock_norm_sq(p: Poly, beta: float = 1.0) -> float:
    _check_beta(beta)
    c = np.abs(p.coeffs)
    mask = c > 0
    if not mask.any():
        return 0.0
    lw = _log_weights(len(c), beta)
    return float(np.sum(np.exp(lw[mask] + 2 * np.log(c[mask]))))


def fock_norm(p: Poly, beta: float = 1.0) -> float:
    """sqrt(sum_k k! |c_k|^2 / beta^k)."""
    return math.sqrt(fock_norm_sq(p, beta))


def _bivar_terms(G: BivarTrunc, beta: Tuple[float, float]) -> np.ndarray:
    b1, b2 = beta
    _check_beta(b1, b2)
    c = np.abs(G.coeffs)
    lw = _log_weights(c.shape[0], b1)[:, None] + _log_weights(c.shape[1], b2)[None, :]
    with np.errstate(divide="ignore"):
        return np.where(c > 0, np.exp(lw + 2 * np.log(np.where(c > 0, c, 1.0))), 0.0)


def fock_norm_bivar(G: BivarTrunc, beta: Sequence[float] = (1.0, 1.0)) -> float:
    """sqrt(sum_{j,k} j! k! |g_jk|^2 / (beta_1^j beta_2^k)) over the stored truncation."""
    return math.sqrt(float(np.sum(_bivar_terms(G, tuple(beta)))))


def last_shell(G: BivarTrunc, beta: Sequence[float] = (1.0, 1.0)) -> float:
    """Squared-norm contribution of the highest stored w-order."""
    return float(np.sum(_bivar_terms(G, tuple(beta))[:, -1]))


@dataclass
class BoundReport:
    lhs: float
    rhs: float
    margin: float
    passed: bool
    truncated: bool
    order: int
    last_shell: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def bound_check(T: LinearOpTable, f: Poly, a: float, b: float, N: int) -> BoundReport:
    """Compare ||T f||_b with ||G(z, a w)||_(b, a) * ||f||_a using the symbol truncated at N.

    ``truncated`` is set when N is below deg f, in which case the symbol
    truncation may undercount the right-hand side.
    """
    deg = 0 if f.degree is None else f.degree
    T.require(max(deg, N))
    lhs = fock_norm(T.apply(f), b)
    G = transcendental_symbol(T, N).scale_w(a)
    gn = fock_norm_bivar(G, (b, a))
    rhs = gn * fock_norm(f, a)
    margin = rhs * (1 + 1e-9) - lhs
    return BoundReport(lhs, rhs, margin, margin >= 0, N < deg, N, last_shell(G, (b, a)))
