"""Potential and kinematics descriptions shared by the closed forms and the oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, Unphysical

__all__ = [
    "Kinematics",
    "PotentialSpec",
    "PowerLaw",
    "Funnel",
    "SquareRoot",
    "Yukawa",
    "herbst_critical_coupling",
]


@dataclass(frozen=True)
class Kinematics:
    """Kinetic operator ``sigma * sqrt(p^2 + mass^2)``."""

    sigma: float = 2.0
    mass: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        if not self.mass >= 0:
            raise DomainError(f"mass must be nonnegative, got {self.mass}")


def herbst_critical_coupling(l: int) -> float:
    """Largest ``kappa`` for which ``|p| - kappa/r`` is bounded below in partial wave ``l``.

    Equals ``2/pi`` for ``l = 0``.
    """
    return 2.0 * math.exp(2.0 * (gammaln((l + 2) / 2.0) - gammaln((l + 1) / 2.0)))


class PotentialSpec:
    """Central potential ``V(r)``; instances are callables on arrays of radii."""

    #: coefficient ``kappa`` of a ``-kappa/r`` singularity at the origin
    coulomb_strength = 0.0
    #: True when ``V(r) -> 0`` at large ``r`` (continuum threshold at the rest energy)
    vanishes_at_infinity = False

    def __call__(self, r):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class PowerLaw(PotentialSpec):
    """``a * sgn(lam) * r**lam``."""

    a: float
    lam: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"power-law strength must be positive, got {self.a}")
        if self.lam == 0 or self.lam <= -2:
            raise DomainError(f"exponent must satisfy lam > -2, lam != 0; got {self.lam}")
        if -2 < self.lam < -1:
            raise Unphysical(f"exponents in (-2, -1) have no physical solution, got {self.lam}")

    def __call__(self, r):
        return math.copysign(self.a, self.lam) * np.asarray(r, dtype=float) ** self.lam

    @property
    def coulomb_strength(self):
        return self.a if self.lam == -1 else 0.0

    @property
    def vanishes_at_infinity(self):
        return self.lam < 0

    def describe(self):
        return f"power:a={self.a:g},lambda={self.lam:g}"


@dataclass(frozen=True)
class Funnel(PotentialSpec):
    """``a r - b/r``."""

    a: float
    b: float = 0.0

    def __post_init__(self):
        if not self.a > 0 or self.b < 0:
            raise DomainError("funnel needs a > 0 and b >= 0")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.a * r - self.b / r

    @property
    def coulomb_strength(self):
        return self.b

    def describe(self):
        return f"funnel:a={self.a:g},b={self.b:g}"


@dataclass(frozen=True)
class SquareRoot(PotentialSpec):
    """``sqrt(a^2 r^2 + b^2)``."""

    a: float
    b: float = 0.0

    def __post_init__(self):
        if not self.a > 0 or self.b < 0:
            raise DomainError("square-root potential needs a > 0 and b >= 0")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.sqrt(self.a ** 2 * r * r + self.b ** 2)

    def describe(self):
        return f"sqrt:a={self.a:g},b={self.b:g}"


@dataclass(frozen=True)
class Yukawa(PotentialSpec):
    """``-alpha exp(-beta r)/r``."""

    alpha: float
    beta: float
    vanishes_at_infinity = True

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise DomainError("Yukawa needs alpha > 0 and beta > 0")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return -self.alpha * np.exp(-self.beta * r) / r

    @property
    def coulomb_strength(self):
        return self.alpha

    def describe(self):
        return f"yukawa:alpha={self.alpha:g},beta={self.beta:g}"
