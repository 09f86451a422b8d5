"""Auxiliary-field building blocks.

The semirelativistic kinetic term ``sigma*sqrt(p^2 + m^2)`` is traded for
``m^2/nu + sigma^2 nu/4 + p^2/nu``; with ``nu`` held constant the remaining
problem is nonrelativistic and its spectrum ``e(nu)`` is taken from closed
forms.  The final energy is the extremum of
``E(nu) = m^2/nu + sigma^2 nu/4 + e(nu)``.

Every closed form depends on the quantum numbers only through a global
number ``N``; the :class:`NModel` family supplies it.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, ExtremizationError, RangeWarning
from .rootkit import RootBracket, SignChoice, bracketed_root, cubic_F

__all__ = [
    "QuantumNumbers",
    "NModel",
    "HarmonicN",
    "CoulombN",
    "LambdaFitN",
    "LinearN",
    "lambda_fit_coefficients",
    "n_value",
    "BoundCharacter",
    "NuSpectrum",
    "LiftResult",
    "nr_powerlaw_energy",
    "nr_funnel_energy",
    "afm_extremize",
    "semirelativistic_lift",
    "lowmass_shift",
]

OMEGA = math.sqrt(3.0) * math.pi


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    n: int
    l: int

    def __post_init__(self):
        if self.n < 0 or self.l < 0:
            raise DomainError(f"quantum numbers must be nonnegative, got n={self.n}, l={self.l}")


class NModel:
    """Rule giving the global quantum number ``N(n, l)``."""

    name = "custom"

    def __call__(self, n: int, l: int) -> float:
        raise NotImplementedError

    def describe(self) -> str:
        return self.name


@dataclass(frozen=True)
class HarmonicN(NModel):
    """``N = 2n + l + 3/2``; exact for the oscillator, upper bounds elsewhere."""

    name = "harmonic"

    def __call__(self, n, l):
        return 2.0 * n + l + 1.5


@dataclass(frozen=True)
class CoulombN(NModel):
    """``N = n + l + 1``; exact for the Coulomb problem."""

    name = "coulomb"

    def __call__(self, n, l):
        return n + l + 1.0


def lambda_fit_coefficients(lam: float) -> tuple[float, float]:
    """Coefficients ``b(lam)``, ``c(lam)`` of ``N = b n + l + c``.

    Rational interpolation built on ``omega = sqrt(3) pi``; it is exact at
    ``lam = 2`` and ``lam = -1`` and matches the large-n behaviour of the
    linear potential at ``lam = 1``.
    """
    w = OMEGA
    b = ((4 * w - 18) * lam + (18 - 2 * w)) / ((3 * w - 15) * lam + (21 - 3 * w))
    c = ((7 * w - 36) * lam + (36 - 5 * w)) / ((6 * w - 32) * lam + (40 - 6 * w))
    return b, c


@dataclass(frozen=True)
class LambdaFitN(NModel):
    lam: float
    name = "lambda"

    def __post_init__(self):
        if not -1.0 <= self.lam <= 2.0:
            warnings.warn(f"lambda-fitted N used at lambda={self.lam}, outside [-1, 2]",
                          RangeWarning, stacklevel=3)

    def __call__(self, n, l):
        b, c = lambda_fit_coefficients(self.lam)
        return b * n + l + c

    def describe(self):
        return f"lambda:{self.lam:g}"


@dataclass(frozen=True)
class LinearN(NModel):
    """``N = b n + d l + c`` with free coefficients (fitted or user supplied)."""

    b: float
    c: float
    d: float = 1.0
    name = "linear"

    def __call__(self, n, l):
        return self.b * n + self.d * l + self.c

    def describe(self):
        return f"linear:b={self.b:.6g},c={self.c:.6g},d={self.d:.6g}"


def n_value(model: NModel, q: QuantumNumbers) -> float:
    value = float(model(q.n, q.l))
    if not value > 0.0:
        raise DomainError(f"{model.describe()} gives nonpositive N={value} for {q}")
    return value


class BoundCharacter(enum.Enum):
    """How an approximate level relates to the exact one."""

    EXACT = "exact"
    UPPER = "upper"
    UNKNOWN = "unknown"

    @property
    def is_upper(self) -> bool:
        return self in (BoundCharacter.EXACT, BoundCharacter.UPPER)


@dataclass(frozen=True)
class NuSpectrum:
    """Levels ``e(nu)`` of ``p^2/nu + V(r)`` as a function of ``nu > 0``.

    ``derivative`` is optional; when absent a central difference is used.
    ``character`` records whether ``e`` is exact, an upper bound of the exact
    levels of ``p^2/nu + V``, or of unknown position.
    """

    fn: Callable[[float], float]
    character: BoundCharacter = BoundCharacter.UNKNOWN
    derivative: Optional[Callable[[float], float]] = None

    def __call__(self, nu: float) -> float:
        return self.fn(nu)

    def slope(self, nu: float) -> float:
        if self.derivative is not None:
            return self.derivative(nu)
        return _central_difference(self.fn, nu)

    @classmethod
    def powerlaw(cls, a: float, lam: float, N: float,
                 character: BoundCharacter = BoundCharacter.UNKNOWN) -> "NuSpectrum":
        k = -lam / (lam + 2.0)
        pref = nr_powerlaw_energy(a, lam, 1.0, N)
        return cls(lambda nu: pref * nu ** k, character,
                   lambda nu: k * pref * nu ** (k - 1.0))

    @classmethod
    def funnel(cls, a: float, b: float, N: float,
               character: BoundCharacter = BoundCharacter.UNKNOWN) -> "NuSpectrum":
        return cls(lambda nu: nr_funnel_energy(a, b, nu, N), character)

    @classmethod
    def constant(cls, value: float) -> "NuSpectrum":
        return cls(lambda nu: value, BoundCharacter.UNKNOWN, lambda nu: 0.0)


@dataclass(frozen=True)
class LiftResult:
    energy: float
    nu0: float
    bound: BoundCharacter
    energy_alt: float = float("nan")
    internals: dict = field(default_factory=dict)


def _central_difference(f, x, rel_step=1e-5):
    h = rel_step * x
    return (f(x + h) - f(x - h)) / (2.0 * h)


def nr_powerlaw_energy(a: float, lam: float, nu: float, N: float) -> float:
    """Levels of ``p^2/nu + a sgn(lam) r^lam``.

    ``((2+lam)/lam) |a lam/2|^(2/(lam+2)) (N^2/nu)^(lam/(lam+2))``; exact for
    ``lam = 2`` with ``N = 2n+l+3/2`` and for ``lam = -1`` with ``N = n+l+1``.
    """
    if lam == 0.0 or lam <= -2.0:
        raise DomainError(f"power-law exponent must satisfy lam > -2, lam != 0; got {lam}")
    if not (a > 0 and nu > 0 and N > 0):
        raise DomainError("a, nu and N must be positive")
    return ((2.0 + lam) / lam) * abs(a * lam / 2.0) ** (2.0 / (lam + 2.0)) \
        * (N * N / nu) ** (lam / (lam + 2.0))


def nr_funnel_energy(a: float, b: float, nu: float, N: float) -> float:
    """Levels of ``p^2/nu + a r - b/r``.

    Written through ``Y = 3 N^2 sqrt(3a/(nu^2 b^3))`` and the cubic root
    ``F_+(Y)``; ``b = 0`` falls back to the linear closed form.
    """
    if not (a > 0 and nu > 0 and N > 0) or b < 0:
        raise DomainError("need a > 0, nu > 0, N > 0 and b >= 0")
    if b == 0.0:
        return nr_powerlaw_energy(a, 1.0, nu, N)
    Y = 3.0 * N * N * math.sqrt(3.0 * a / (nu * nu * b ** 3))
    F = cubic_F(SignChoice.PLUS, Y)
    # Y/F^2 - 2/F reduces to (F - 1/F)/2 on the cubic
    return math.sqrt(3.0 * a * b) * 0.5 * (F - 1.0 / F)


def afm_extremize(energy_of_nu: Callable[[float], float], bracket: RootBracket | None = None,
                  derivative: Callable[[float], float] | None = None,
                  scale: float = 1.0, grid_points: int = 161) -> tuple[float, float]:
    """Locate the interior minimum of ``energy_of_nu`` on a positive bracket.

    The bracket is scanned on a logarithmic grid, the best cell is refined by
    golden-section search in ``log nu`` and the result is polished as a root
    of the derivative (analytic if given, central difference otherwise).

    Returns
    -------
    nu0, energy
    """
    if bracket is None:
        s = max(scale, 1.0)
        bracket = RootBracket(1e-8 * s, 1e8 * s)
    if bracket.lo <= 0:
        raise DomainError("auxiliary-field bracket must be positive")
    u = np.linspace(math.log(bracket.lo), math.log(bracket.hi), grid_points)
    with np.errstate(all="ignore"):
        vals = []
        for ui in u:
            try:
                vals.append(float(energy_of_nu(math.exp(ui))))
            except (DomainError, ValueError, ZeroDivisionError, OverflowError):
                vals.append(math.nan)
    vals = np.array(vals)
    if not np.isfinite(vals).any():
        raise ExtremizationError("energy is undefined on the whole bracket")
    vals[~np.isfinite(vals)] = np.inf
    i = int(np.argmin(vals))
    if i == 0 or i == grid_points - 1:
        raise ExtremizationError(
            f"no interior stationary point in [{bracket.lo:.3g}, {bracket.hi:.3g}] "
            f"(minimum at the {'lower' if i == 0 else 'upper'} edge)")
    lo, hi = u[i - 1], u[i + 1]
    g = lambda t: energy_of_nu(math.exp(t))
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = hi - invphi * (hi - lo), lo + invphi * (hi - lo)
    fc, fd = g(c), g(d)
    while hi - lo > 1e-10:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = g(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = g(d)
    nu0 = math.exp(0.5 * (lo + hi))
    dE = derivative if derivative is not None else (lambda x: _central_difference(energy_of_nu, x))
    a_, b_ = math.exp(u[i - 1]), math.exp(u[i + 1])
    try:
        if dE(a_) < 0 < dE(b_):
            nu0 = bracketed_root(dE, RootBracket(a_, b_, tolerance=1e-15 * b_))
    except (ValueError, ArithmeticError):
        pass
    return nu0, float(energy_of_nu(nu0))


def semirelativistic_lift(e: NuSpectrum, sigma: float, m: float,
                          bracket: RootBracket | None = None) -> LiftResult:
    """Energy of ``sigma sqrt(p^2+m^2) + V`` from the levels ``e(nu)`` of ``p^2/nu + V``.

    Minimises ``m^2/nu + sigma^2 nu/4 + e(nu)``.  The value is also returned
    in the equivalent form ``sigma^2 nu0/2 + (nu e)'(nu0)`` as
    ``energy_alt``.  The upper-bound character of ``e`` carries over.
    """
    if not sigma > 0 or m < 0:
        raise DomainError("need sigma > 0 and m >= 0")
    E = lambda nu: m * m / nu + 0.25 * sigma * sigma * nu + e(nu)
    dE = None
    if e.derivative is not None:
        dE = lambda nu: -m * m / (nu * nu) + 0.25 * sigma * sigma + e.derivative(nu)
    nu0, energy = afm_extremize(E, bracket, derivative=dE, scale=2.0 * max(m, 1.0) / sigma)
    alt = 0.5 * sigma * sigma * nu0 + e(nu0) + nu0 * e.slope(nu0)
    bound = BoundCharacter.UPPER if e.character.is_upper else BoundCharacter.UNKNOWN
    return LiftResult(energy, nu0, bound, alt)


def lowmass_shift(sigma: float, m: float, nu0_ur: float) -> float:
    """First-order mass correction ``m^2/nu0`` to a massless level."""
    if not nu0_ur > 0:
        raise DomainError("auxiliary field must be positive")
    return m * m / nu0_ur
