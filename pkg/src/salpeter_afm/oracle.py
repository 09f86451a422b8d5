"""Reference eigensolver for ``sigma sqrt(p^2+m^2) + V(r)`` on a Lagrange-Laguerre mesh.

The radial problem is expanded on the regularized Lagrange-Laguerre basis
of size ``M`` with a scale ``h`` (nodes ``r_i = h x_i``).  The matrix of
``p^2`` (including the centrifugal term) is known analytically; the
relativistic kinetic operator is built by mapping its eigenvalues ``t`` to
``sigma sqrt(t + m^2)``; the potential is diagonal at the mesh points.  The
basis is doubled until the requested levels stop moving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh, eigvalsh_tridiagonal

from .afm_core import QuantumNumbers
from .errors import ConvergenceFailure, DomainError
from .potentials import PotentialSpec, herbst_critical_coupling

__all__ = [
    "Semirelativistic",
    "NonrelativisticNu",
    "TwoMass",
    "HamiltonianSpec",
    "LaguerreMesh",
    "OracleResult",
    "DEFAULT_SIZES",
    "solve_radial",
    "expectation_p2",
    "delta_gap",
    "kinetic_gap_from_coefficients",
    "get_mesh",
    "tune_scale",
]

DEFAULT_SIZES = (50, 100, 200, 400, 800)


@dataclass(frozen=True)
class Semirelativistic:
    """``sigma sqrt(p^2 + mass^2)``."""

    sigma: float = 2.0
    mass: float = 0.0

    def __post_init__(self):
        if not (self.sigma > 0 and self.mass >= 0):
            raise DomainError("need sigma > 0 and mass >= 0")

    def of_p2(self, t):
        return self.sigma * np.sqrt(t + self.mass ** 2)

    @property
    def threshold(self):
        return self.sigma * self.mass

    @property
    def ultraviolet_weight(self):
        # coefficient of |p| at large momentum
        return self.sigma


@dataclass(frozen=True)
class NonrelativisticNu:
    """``p^2/nu``."""

    nu: float

    def __post_init__(self):
        if not self.nu > 0:
            raise DomainError("nu must be positive")

    def of_p2(self, t):
        return t / self.nu

    threshold = 0.0
    ultraviolet_weight = math.inf


@dataclass(frozen=True)
class TwoMass:
    """``sqrt(p^2 + m1^2) + sqrt(p^2 + m2^2)``."""

    m1: float
    m2: float

    def __post_init__(self):
        if not (self.m1 >= 0 and self.m2 >= 0):
            raise DomainError("masses must be nonnegative")

    def of_p2(self, t):
        return np.sqrt(t + self.m1 ** 2) + np.sqrt(t + self.m2 ** 2)

    @property
    def threshold(self):
        return self.m1 + self.m2

    ultraviolet_weight = 2.0


@dataclass(frozen=True)
class HamiltonianSpec:
    """Kinetic operator, central potential and orbital quantum number."""

    kinetic: Semirelativistic | NonrelativisticNu | TwoMass
    potential: PotentialSpec
    l: int = 0

    def __post_init__(self):
        if not (isinstance(self.l, (int, np.integer)) and self.l >= 0):
            raise DomainError(f"l must be a nonnegative integer, got {self.l}")
        if not isinstance(self.potential, PotentialSpec):
            raise DomainError("potential must be a PotentialSpec")

    @property
    def collapses(self) -> bool:
        """True when a ``-k/r`` singularity makes the operator unbounded below."""
        k = self.potential.coulomb_strength
        uv = self.kinetic.ultraviolet_weight
        return k > 0 and math.isfinite(uv) and k >= uv * herbst_critical_coupling(self.l)


def _laguerre_log_abs(n: int, x: np.ndarray) -> np.ndarray:
    """``log|L_n(x)|`` by the three-term recurrence with running rescaling."""
    p0 = np.ones_like(x)
    p1 = 1.0 - x
    logscale = np.zeros_like(x)
    if n == 0:
        return np.zeros_like(x)
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1 - x) * p1 - k * p0) / (k + 1)
        big = np.abs(p1) > 1e100
        if big.any():
            p0[big] *= 1e-100
            p1[big] *= 1e-100
            logscale[big] += 100 * math.log(10.0)
    return np.log(np.abs(p1)) + logscale


class LaguerreMesh:
    """Regularized Lagrange-Laguerre mesh of size ``M``.

    Attributes
    ----------
    nodes : ndarray
        Zeros of ``L_M``.
    log_lambda : ndarray
        ``log`` of the Christoffel weights times ``exp(x_i)``.
    """

    def __init__(self, size: int):
        if size < 2:
            raise DomainError("mesh size must be at least 2")
        self.size = size
        k = np.arange(1, size)
        self.nodes = eigvalsh_tridiagonal(2.0 * np.arange(size) + 1.0, -k.astype(float))
        x = self.nodes
        self.log_lambda = (np.log(x) + x
                           - 2.0 * (math.log(size + 1.0) + _laguerre_log_abs(size + 1, x)))
        i = np.arange(size)
        X1, X2 = np.meshgrid(x, x, indexing="ij")
        sgn = (-1.0) ** (i[:, None] - i[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            T = sgn * (X1 + X2) / (np.sqrt(X1 * X2) * (X1 - X2) ** 2)
        T[i, i] = (4.0 + (4.0 * size + 2.0) * x - x * x) / (12.0 * x * x)
        self.p2 = T

    def p2_matrix(self, l: int) -> np.ndarray:
        """Matrix of ``-d^2/dx^2 + l(l+1)/x^2`` at unit scale."""
        return self.p2 + np.diag(l * (l + 1) / self.nodes ** 2)

    def p2_spectrum(self, l: int) -> tuple[np.ndarray, np.ndarray]:
        return _p2_spectrum(self.size, l)

    def project(self, u: Callable[[np.ndarray], np.ndarray], scale: float) -> np.ndarray:
        """Mesh coefficients ``sqrt(h lambda_i) u(h x_i)`` of a radial function ``u(r)``."""
        r = scale * self.nodes
        return np.exp(0.5 * (self.log_lambda + math.log(scale))) * np.asarray(u(r), dtype=float)


@lru_cache(maxsize=8)
def get_mesh(size: int) -> LaguerreMesh:
    return LaguerreMesh(size)


@lru_cache(maxsize=64)
def _p2_spectrum(size: int, l: int) -> tuple[np.ndarray, np.ndarray]:
    t, U = eigh(get_mesh(size).p2_matrix(l))
    t.setflags(write=False)
    U.setflags(write=False)
    return t, U


@dataclass(frozen=True)
class OracleResult:
    """Converged lowest levels of one partial wave.

    ``levels[n]`` is the radial excitation ``n``.  ``convergence_estimate``
    holds ``|E(M) - E(M/2)|`` per level.  ``vectors`` are the mesh
    coefficients of the eigenvectors (columns).  ``collapsed`` marks a
    Hamiltonian unbounded below; ``levels`` is then empty.  ``extrapolated``
    marks levels obtained by Aitken acceleration of the size sequence.
    """

    levels: tuple
    basis_size: int
    scale: float
    l: int
    convergence_estimate: tuple
    expectations: dict | None = None
    collapsed: bool = False
    extrapolated: bool = False
    vectors: np.ndarray | None = field(default=None, repr=False, compare=False)


def _kinetic_matrix(h: HamiltonianSpec, size: int, scale: float) -> np.ndarray:
    if isinstance(h.kinetic, NonrelativisticNu):
        return get_mesh(size).p2_matrix(h.l) / (scale * scale * h.kinetic.nu)
    t, U = _p2_spectrum(size, h.l)
    f = h.kinetic.of_p2(np.maximum(t, 0.0) / (scale * scale))
    return (U * f) @ U.T


def _diagonalize(h: HamiltonianSpec, size: int, scale: float, count: int, vectors=False):
    mesh = get_mesh(size)
    H = _kinetic_matrix(h, size, scale)
    H[np.diag_indices(size)] += h.potential(scale * mesh.nodes)
    count = min(count, size)
    if vectors:
        return eigh(H, subset_by_index=[0, count - 1])
    return eigh(H, eigvals_only=True, subset_by_index=[0, count - 1])


def tune_scale(h: HamiltonianSpec, count: int, size: int = 50,
               grid: Sequence[float] | None = None, window: int = 2) -> float:
    """Scale on which the lowest ``count`` levels are most stable under basis doubling.

    For each candidate scale the levels are computed at sizes ``size`` and
    ``2 size``.  A scale is scored by the largest summed relative shift
    among itself and its ``window`` neighbours on each side, so that an
    accidental crossing of the two sizes is not mistaken for stability.
    Scales holding more bound levels win.  Minimising the energy itself is
    not used because the mesh is not variational for singular potentials.
    """
    if grid is None:
        grid = np.logspace(-5, 3, 97)
    grid = [float(s) for s in grid]
    threshold = h.kinetic.threshold if h.potential.vanishes_at_infinity else math.inf
    bound_counts, shifts = [], []
    for s in grid:
        with np.errstate(all="ignore"):
            coarse = _diagonalize(h, size, s, count)
            fine = _diagonalize(h, 2 * size, s, count)
        if not (np.all(np.isfinite(coarse)) and np.all(np.isfinite(fine))):
            bound_counts.append(-1)
            shifts.append(math.inf)
            continue
        nb = int(np.count_nonzero(fine < threshold))
        bound_counts.append(nb)
        shifts.append(float(np.sum(np.abs(coarse[:nb] - fine[:nb]) / np.maximum(1.0, np.abs(fine[:nb])))))
    if max(bound_counts) < 0:
        raise ConvergenceFailure("no admissible mesh scale")
    shifts = np.array(shifts)
    most = max(bound_counts)
    best_key, best_h = None, None
    for i, s in enumerate(grid):
        if bound_counts[i] != most:
            continue
        lo, hi = max(0, i - window), min(len(grid), i + window + 1)
        key = (float(np.max(shifts[lo:hi])), shifts[i])
        if best_key is None or key < best_key:
            best_key, best_h = key, s
    return best_h


def _aitken(e2, e1, e0):
    """Aitken extrapolation of three successive values; NaN where the tail is not geometric."""
    d1, d0 = e1 - e2, e0 - e1
    with np.errstate(divide="ignore", invalid="ignore"):
        r = d0 / d1
        out = e0 + d0 * r / (1.0 - r)
    ok = np.isfinite(out) & (r > 0.0) & (r < 0.9)
    return np.where(ok, out, np.nan)


def solve_radial(h: HamiltonianSpec, n_max: int = 0, tol: float = 1e-4, *,
                 scale: float | None = None,
                 sizes: Sequence[int] = DEFAULT_SIZES,
                 extrapolate: bool = True) -> OracleResult:
    """Lowest ``n_max + 1`` levels of ``h`` in partial wave ``h.l``.

    Parameters
    ----------
    h : HamiltonianSpec
    n_max : int
        Highest radial quantum number requested.
    tol : float
        Convergence target ``|E(M) - E(M/2)| <= tol max(1, |E|)``.
    scale : float, optional
        Mesh scale; tuned automatically when omitted.
    sizes : sequence of int
        Basis-size schedule.
    extrapolate : bool
        Singular potentials with relativistic kinematics converge only
        algebraically in ``M``.  When the raw levels have not converged and
        successive differences shrink geometrically, Aitken extrapolants are
        formed and their own successive change is used as the estimate.

    Raises
    ------
    ConvergenceFailure
        If the last two sizes still disagree.
    """
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    count = n_max + 1
    if h.collapses:
        return OracleResult((), 0, float("nan"), h.l, (), collapsed=True)
    if scale is None:
        scale = tune_scale(h, count, size=sizes[0])
    threshold = h.kinetic.threshold if h.potential.vanishes_at_infinity else math.inf
    history, accel = [], []
    last_change = math.nan
    for size in sizes:
        e, vec = _diagonalize(h, size, scale, count, vectors=True)
        history.append(e)
        if len(history) < 2:
            continue
        bound = e < threshold
        k = int(np.count_nonzero(bound))
        tol_e = tol * np.maximum(1.0, np.abs(e))
        est = np.abs(e - history[-2])
        if np.all(est[bound] <= tol_e[bound]):
            return OracleResult(tuple(float(v) for v in e[:k]), size, scale, h.l,
                                tuple(float(v) for v in est[:k]), vectors=vec[:, :k])
        last_change = float(np.max(est[bound])) if bound.any() else 0.0
        if extrapolate and len(history) >= 3:
            accel.append(_aitken(*history[-3:]))
            if len(accel) >= 2:
                # keep raw values where they are already converged
                value = np.where(est <= tol_e, e, accel[-1])
                est_x = np.where(est <= tol_e, est, np.abs(accel[-1] - accel[-2]))
                if np.all(np.isfinite(est_x[bound])) and np.all(est_x[bound] <= tol_e[bound]):
                    return OracleResult(tuple(float(v) for v in value[:k]), size, scale, h.l,
                                        tuple(float(v) for v in est_x[:k]),
                                        vectors=vec[:, :k], extrapolated=True)
    raise ConvergenceFailure(
        f"levels not converged to {tol} at basis size {sizes[-1]}: last change {last_change:.3g}")


def kinetic_gap_from_coefficients(c: np.ndarray, size: int, l: int, scale: float,
                                  mass: float = 0.0) -> tuple[float, float, float]:
    """``<p^2>``, ``<sqrt(p^2+m^2)>`` and ``sqrt(<p^2+m^2>) - <sqrt(p^2+m^2)>`` for mesh coefficients ``c``."""
    t, U = _p2_spectrum(size, l)
    t = np.maximum(t, 0.0) / (scale * scale)
    w = U.T @ c
    w2 = w * w / float(np.dot(w, w))
    p2 = float(np.dot(w2, t))
    # sqrt(t+m^2) - m written without cancellation
    shifted = np.dot(w2, t / (np.sqrt(t + mass * mass) + mass))
    mean_sqrt = mass + float(shifted)
    gap = p2 / (math.sqrt(p2 + mass * mass) + mass) - float(shifted)
    return p2, mean_sqrt, max(gap, 0.0) if gap > -1e-14 * max(1.0, p2) else gap


def _state_vector(h: HamiltonianSpec, state: QuantumNumbers, tol: float,
                  result: OracleResult | None):
    if state.l != h.l:
        raise DomainError(f"state l={state.l} does not match the Hamiltonian l={h.l}")
    if result is None or len(result.levels) <= state.n:
        result = solve_radial(h, state.n, tol)
    if len(result.levels) <= state.n:
        raise DomainError(f"state {state} is not bound")
    return result, result.vectors[:, state.n]


def expectation_p2(h: HamiltonianSpec, state: QuantumNumbers, *, tol: float = 1e-6,
                   result: OracleResult | None = None) -> float:
    """``<p^2>`` (radial plus centrifugal) in the converged eigenstate ``state``."""
    result, c = _state_vector(h, state, tol, result)
    return kinetic_gap_from_coefficients(c, result.basis_size, h.l, result.scale)[0]


def delta_gap(h: HamiltonianSpec, state: QuantumNumbers, *, tol: float = 1e-6,
              result: OracleResult | None = None) -> float:
    """``sigma sqrt(<p^2+m^2>) - sigma <sqrt(p^2+m^2)>`` in the eigenstate ``state``."""
    if not isinstance(h.kinetic, Semirelativistic):
        raise DomainError("delta_gap needs a semirelativistic kinetic operator")
    result, c = _state_vector(h, state, tol, result)
    gap = kinetic_gap_from_coefficients(c, result.basis_size, h.l, result.scale, h.kinetic.mass)[2]
    return h.kinetic.sigma * gap
