"""Least-squares fits of ``N = b n + d l + c`` against oracle spectra.

Three dimensionless families are supported:

``ur-powerlaw``   ``2|q| + x^lam``, closed form ``ur_powerlaw_energy(1, lam, 2, N)``
``rel-coulomb``   ``2 sqrt(q^2+1) - a/x``, closed form ``2 sqrt(1 - a^2/(4N^2))``
``ur-funnel``     ``2|q| + x - beta/x``, closed form ``2 sqrt(2N - beta)``

Each closed form is monotone in ``N``, so every oracle level defines an
effective ``N``; a linear least-squares fit of those values seeds a
nonlinear refinement on relative energy errors.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import least_squares

from .errors import DomainError
from .oracle import HamiltonianSpec, Semirelativistic, solve_radial
from .potentials import Funnel, PowerLaw
from .sr_spectra import ur_powerlaw_energy

__all__ = [
    "Family",
    "FitGrid",
    "FitReport",
    "published_coefficients",
    "rational_form",
    "oracle_levels",
    "closed_form_levels",
    "relative_errors",
    "evaluate_fit_error",
    "fit_n_coefficients",
]

ORACLE_TOL = 1e-4


class Family(enum.Enum):
    """Dimensionless Hamiltonians whose ``N`` coefficients are fitted."""

    UR_POWERLAW = "ur-powerlaw"
    REL_COULOMB = "rel-coulomb"
    UR_FUNNEL = "ur-funnel"

    @classmethod
    def coerce(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"urpowerlaw": "ur-powerlaw", "relcoulomb": "rel-coulomb", "urfunnel": "ur-funnel"}
        key = aliases.get(key, key)
        for member in cls:
            if member.value == key:
                return member
        raise DomainError(f"unknown family {value!r}")

    def hamiltonian(self, param: float, l: int) -> HamiltonianSpec:
        if self is Family.UR_POWERLAW:
            return HamiltonianSpec(Semirelativistic(2.0, 0.0), PowerLaw(1.0, param), l)
        if self is Family.REL_COULOMB:
            return HamiltonianSpec(Semirelativistic(2.0, 1.0), PowerLaw(param, -1.0), l)
        return HamiltonianSpec(Semirelativistic(2.0, 0.0), Funnel(1.0, param), l)

    def energy(self, param: float, N):
        """Closed-form level as a function of (an array of) ``N``."""
        N = np.asarray(N, dtype=float)
        if self is Family.UR_POWERLAW:
            return ur_powerlaw_energy(1.0, param, 2.0, 1.0) * N ** (param / (param + 1.0))
        if self is Family.REL_COULOMB:
            with np.errstate(invalid="ignore", divide="ignore"):
                return 2.0 * np.sqrt(1.0 - param * param / (4.0 * N * N))
        with np.errstate(invalid="ignore"):
            return 2.0 * np.sqrt(2.0 * N - param)

    def n_from_energy(self, param: float, E):
        """Inverse of :meth:`energy`."""
        E = np.asarray(E, dtype=float)
        if self is Family.UR_POWERLAW:
            k = ur_powerlaw_energy(1.0, param, 2.0, 1.0)
            return (E / k) ** ((param + 1.0) / param)
        if self is Family.REL_COULOMB:
            return param / (2.0 * np.sqrt(1.0 - E * E / 4.0))
        return 0.5 * (E * E / 4.0 + param)

    def standard_coefficients(self) -> tuple[float, float, float]:
        """``(b, c, d)`` of the textbook choice: ``2n+l+3/2`` or ``n+l+1``."""
        return (1.0, 1.0, 1.0) if self is Family.REL_COULOMB else (2.0, 1.5, 1.0)

    def check_parameter(self, param: float) -> None:
        if self is Family.UR_POWERLAW and not param > 0:
            raise DomainError("ur-powerlaw needs lambda > 0")
        if self is Family.REL_COULOMB and not 0 < param < 4.0 / math.pi:
            raise DomainError("rel-coulomb needs 0 < a < 4/pi")
        if self is Family.UR_FUNNEL and not 0 <= param < 4.0 / math.pi:
            raise DomainError("ur-funnel needs 0 <= beta < 4/pi")


# printed rational coefficients (p, q, r) of (p x + q)/(x + r) for b, c, d
_PUBLISHED_RATIONALS = {
    Family.UR_POWERLAW: ((3.00, 3.67, 3.40), (2.69, 8.69, 8.27), None),
    Family.REL_COULOMB: ((1.03, -1.48, -1.48), (1.07, -1.64, -1.64), (0.96, -1.56, -1.56)),
    Family.UR_FUNNEL: ((1.88, -5.34, -3.51), (1.99, -4.40, -3.49), (0.76, -2.46, -2.54)),
}


def rational_form(x: float, pqr) -> float:
    """``(p x + q)/(x + r)``; ``None`` stands for the constant 1."""
    if pqr is None:
        return 1.0
    p, q, r = pqr
    return (p * x + q) / (x + r)


def published_coefficients(family, param: float) -> tuple[float, float, float]:
    """Published ``(b, c, d)`` at one parameter value."""
    fam = Family.coerce(family)
    rb, rc, rd = _PUBLISHED_RATIONALS[fam]
    return rational_form(param, rb), rational_form(param, rc), rational_form(param, rd)


@dataclass(frozen=True)
class FitGrid:
    """Quantum-number box and parameter values of a fit."""

    parameter_values: tuple
    n_max: int = 3
    l_max: int = 3

    def __post_init__(self):
        object.__setattr__(self, "parameter_values", tuple(float(v) for v in self.parameter_values))
        if not self.parameter_values:
            raise DomainError("FitGrid needs at least one parameter value")
        if self.n_max < 0 or self.l_max < 0:
            raise DomainError("n_max and l_max must be nonnegative")

    @property
    def nl(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened ``(n, l)`` arrays in row-major ``[l][n]`` order."""
        l, n = np.meshgrid(np.arange(self.l_max + 1), np.arange(self.n_max + 1), indexing="ij")
        return n.ravel().astype(float), l.ravel().astype(float)


@dataclass(frozen=True)
class FitReport:
    """Outcome of :func:`fit_n_coefficients`.

    ``coefficients[k]`` is ``(b, c, d)`` at ``parameter_values[k]``;
    ``rational_fit`` maps ``"b"``, ``"c"``, ``"d"`` to ``(p, q, r)`` triples
    and its errors are in ``rational_max_rel_error``.  Errors of the
    textbook ``N`` on the same grid are kept as a baseline.
    """

    family: Family
    parameter_values: tuple
    coefficients: tuple
    max_rel_error: float
    mean_rel_error: float
    per_parameter_max: tuple
    per_parameter_mean: tuple
    baseline_max: tuple
    rational_fit: dict | None = None
    rational_max_rel_error: tuple | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "family": self.family.value,
            "parameter_values": list(self.parameter_values),
            "coefficients": [list(c) for c in self.coefficients],
            "max_rel_error": self.max_rel_error,
            "mean_rel_error": self.mean_rel_error,
            "per_parameter_max": list(self.per_parameter_max),
            "per_parameter_mean": list(self.per_parameter_mean),
            "baseline_max": list(self.baseline_max),
        }
        if self.rational_fit is not None:
            out["rational_fit"] = {k: (list(v) if v is not None else None)
                                   for k, v in self.rational_fit.items()}
            out["rational_max_rel_error"] = list(self.rational_max_rel_error)
        return out


def _levels_one(args) -> np.ndarray:
    family, param, n_max, l_max, tol = args
    rows = []
    for l in range(l_max + 1):
        res = solve_radial(family.hamiltonian(param, l), n_max, tol)
        if len(res.levels) < n_max + 1:
            raise DomainError(f"only {len(res.levels)} bound levels for {family.value} at {param}, l={l}")
        rows.append(res.levels)
    return np.array(rows)


def oracle_levels(family, grid: FitGrid, *, tol: float = ORACLE_TOL, jobs: int = 1) -> np.ndarray:
    """Oracle levels with shape ``(len(params), l_max+1, n_max+1)``."""
    fam = Family.coerce(family)
    for p in grid.parameter_values:
        fam.check_parameter(p)
    tasks = [(fam, p, grid.n_max, grid.l_max, tol) for p in grid.parameter_values]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(_levels_one, tasks))
    else:
        out = [_levels_one(t) for t in tasks]
    return np.array(out)


def closed_form_levels(family, param: float, coefficients, grid: FitGrid) -> np.ndarray:
    """Closed-form levels ``[l][n]`` for ``N = b n + d l + c``."""
    fam = Family.coerce(family)
    b, c, d = coefficients
    n, l = grid.nl
    return fam.energy(param, b * n + d * l + c).reshape(grid.l_max + 1, grid.n_max + 1)


def relative_errors(approx, exact) -> np.ndarray:
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    err = np.abs(approx - exact) / np.abs(exact)
    return np.where(np.isfinite(err), err, np.inf)


def _coefficients_at(coefficients, fam, params):
    if coefficients == "standard":
        return [fam.standard_coefficients()] * len(params)
    if coefficients == "published":
        return [published_coefficients(fam, p) for p in params]
    if callable(coefficients):
        return [tuple(coefficients(p)) for p in params]
    coefficients = list(coefficients)
    if len(coefficients) == 3 and np.isscalar(coefficients[0]):
        return [tuple(coefficients)] * len(params)
    if len(coefficients) != len(params):
        raise DomainError("one (b, c, d) triple per parameter value is required")
    return [tuple(c) for c in coefficients]


def evaluate_fit_error(family, coefficients, grid: FitGrid, *,
                       levels: np.ndarray | None = None, jobs: int = 1) -> tuple[float, float]:
    """Maximum and mean relative error of the closed form against the oracle.

    ``coefficients`` is a ``(b, c, d)`` triple, one triple per parameter,
    a callable ``param -> (b, c, d)``, or the strings ``"published"`` and
    ``"standard"``.
    """
    fam = Family.coerce(family)
    if levels is None:
        levels = oracle_levels(fam, grid, jobs=jobs)
    coeffs = _coefficients_at(coefficients, fam, grid.parameter_values)
    errs = np.array([relative_errors(closed_form_levels(fam, p, cf, grid), levels[k])
                     for k, (p, cf) in enumerate(zip(grid.parameter_values, coeffs))])
    return float(errs.max()), float(errs.mean())


def _fit_one(fam: Family, param: float, exact: np.ndarray, grid: FitGrid) -> tuple:
    n, l = grid.nl
    E = exact.ravel()
    # seed: linear least squares on effective N values
    Neff = fam.n_from_energy(param, E)
    design = np.column_stack([n, np.ones_like(n), l])
    seed, *_ = np.linalg.lstsq(design, Neff, rcond=None)

    def residual(x):
        b, c, d = x
        approx = fam.energy(param, b * n + d * l + c)
        r = (approx - E) / E
        return np.where(np.isfinite(r), r, 10.0)

    sol = least_squares(residual, seed, method="lm", xtol=1e-14, ftol=1e-14)
    return tuple(float(v) for v in sol.x)


def _rational_seed(fam: Family, which: int):
    seed = _PUBLISHED_RATIONALS[fam][which]
    return seed if seed is not None else (1.0, 0.0, 1.0) if fam is not Family.REL_COULOMB else (1.0, -1.5, -1.5)


def _rational_eval(fam, x, pqr):
    if fam is Family.REL_COULOMB:
        p, q = pqr
        return (p * x - q) / (x - q)
    return rational_form(x, pqr)


def _fit_rationals(fam: Family, grid: FitGrid, levels: np.ndarray, per_param: list) -> dict:
    xs = np.array(grid.parameter_values)
    seeds = []
    for which in range(3):
        s = _rational_seed(fam, which)
        seeds.extend([s[0], -s[2]] if fam is Family.REL_COULOMB else list(s))
    width = 2 if fam is Family.REL_COULOMB else 3
    n, l = grid.nl
    E = levels.reshape(len(xs), -1)

    def unpack(v):
        return [tuple(v[k * width:(k + 1) * width]) for k in range(3)]

    def coeff_residual(v):
        forms = unpack(v)
        target = np.array(per_param)
        return np.concatenate([_rational_eval(fam, xs, forms[k]) - target[:, k] for k in range(3)])

    def energy_residual(v):
        forms = unpack(v)
        out = []
        for i, x in enumerate(xs):
            b, c, d = (_rational_eval(fam, x, f) for f in forms)
            approx = fam.energy(x, b * n + d * l + c)
            r = (approx - E[i]) / E[i]
            out.append(np.where(np.isfinite(r), r, 10.0))
        return np.concatenate(out)

    v0 = np.array(seeds, dtype=float)
    if len(xs) >= width:
        v0 = least_squares(coeff_residual, v0, method="trf", xtol=1e-12, ftol=1e-12).x
        v0 = least_squares(energy_residual, v0, method="trf", xtol=1e-12, ftol=1e-12).x
    forms = unpack(v0)
    if fam is Family.REL_COULOMB:
        forms = [(p, -q, -q) for p, q in forms]
    return {"b": forms[0], "c": forms[1], "d": forms[2]}


def fit_n_coefficients(family, grid: FitGrid, *, rational: bool = True, jobs: int = 1,
                       levels: np.ndarray | None = None) -> FitReport:
    """Fit ``(b, c, d)`` per parameter value against the oracle.

    The objective is the unweighted sum of squared relative energy errors
    over the ``(n, l)`` box.  With ``rational=True`` the rational forms
    ``(p x + q)/(x + r)`` are also fitted across the parameter axis
    (``(p a - q)/(a - q)`` for ``rel-coulomb``, which keeps ``f(0) = 1``).
    """
    fam = Family.coerce(family)
    if levels is None:
        levels = oracle_levels(fam, grid, jobs=jobs)
    coeffs, pmax, pmean, base = [], [], [], []
    for k, p in enumerate(grid.parameter_values):
        cf = _fit_one(fam, p, levels[k], grid)
        err = relative_errors(closed_form_levels(fam, p, cf, grid), levels[k])
        berr = relative_errors(closed_form_levels(fam, p, fam.standard_coefficients(), grid), levels[k])
        coeffs.append(cf)
        pmax.append(float(err.max()))
        pmean.append(float(err.mean()))
        base.append(float(berr.max()))
    rfit = rerr = None
    diagnostics = {}
    if rational:
        if len(grid.parameter_values) >= 3:
            rfit = _fit_rationals(fam, grid, levels, coeffs)
            forms = (rfit["b"], rfit["c"], rfit["d"])
            rerr = tuple(
                float(relative_errors(closed_form_levels(
                    fam, p, tuple(rational_form(p, f) for f in forms), grid), levels[k]).max())
                for k, p in enumerate(grid.parameter_values))
        else:
            diagnostics["rational_fit"] = "skipped: fewer than three parameter values"
    return FitReport(fam, grid.parameter_values, tuple(coeffs), max(pmax),
                     float(np.mean(pmean)), tuple(pmax), tuple(pmean), tuple(base),
                     rfit, rerr, diagnostics)
