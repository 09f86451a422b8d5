"""Independent Ritz upper bounds for ``2|p| + r^lam`` in a harmonic-oscillator basis.

The oscillator functions are their own Fourier transforms up to the phase
``(-1)^n``, so the matrix of ``|p|`` is the matrix of ``r`` with alternating
signs.  Matrix elements of ``r^k`` are exact Gauss-Laguerre quadratures with
the fractional power absorbed in the weight.  Being a Ritz calculation in a
complete basis, every eigenvalue is a rigorous upper bound of the exact level.
"""

from __future__ import annotations

from math import lgamma

import numpy as np
from scipy.linalg import eigh
from scipy.special import eval_genlaguerre, roots_genlaguerre


def _radial_power(size: int, l: int, power: float) -> np.ndarray:
    alpha = l + 0.5
    y, w = roots_genlaguerre(size + 5, alpha + power / 2.0)
    n = np.arange(size)
    L = np.array([eval_genlaguerre(k, alpha, y) for k in n])
    norm = np.exp(0.5 * np.array([lgamma(k + 1) - lgamma(k + alpha + 1) for k in n]))
    B = L * norm[:, None]
    return (B * w) @ B.T


def ritz_levels(lam: float, l: int, size: int, length: float, count: int = 4) -> np.ndarray:
    """Lowest ``count`` Ritz values of ``2|p| + r^lam`` at oscillator length ``length``."""
    R = _radial_power(size, l, 1.0)
    P = _radial_power(size, l, lam)
    n = np.arange(size)
    sign = (-1.0) ** (n[:, None] + n[None, :])
    H = 2.0 * sign * R / length + P * length ** lam
    return eigh(H, eigvals_only=True, subset_by_index=[0, count - 1])


def best_ritz_levels(lam: float, l: int, sizes=(60, 100), lengths=None, count: int = 4) -> np.ndarray:
    """Elementwise minimum over sizes and oscillator lengths; still an upper bound."""
    lengths = np.linspace(0.3, 3.0, 28) if lengths is None else lengths
    best = np.full(count, np.inf)
    for size in sizes:
        for b in lengths:
            best = np.minimum(best, ritz_levels(lam, l, size, b, count))
    return best
