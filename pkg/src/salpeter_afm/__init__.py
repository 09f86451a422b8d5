"""Auxiliary-field approximations and a numerical reference for spinless Salpeter spectra."""

from __future__ import annotations

__version__ = "0.1.0"

from .afm_core import (BoundCharacter, CoulombN, HarmonicN, LambdaFitN, LinearN, NModel,
                       NuSpectrum, QuantumNumbers, afm_extremize, lowmass_shift,
                       nr_funnel_energy, nr_powerlaw_energy, semirelativistic_lift)
from .errors import (AfmError, BracketError, ConvergenceFailure, CriticalExceeded, DomainError,
                     ExtremizationError, NoBoundState, NoBoundStateWarning, NoSpectrum,
                     RangeWarning, Unphysical)
from .potentials import Funnel, Kinematics, PotentialSpec, PowerLaw, SquareRoot, Yukawa
from .sr_spectra import (AfmResult, ScalingFrame, critical_coupling_powerlaw, sr_funnel_energy,
                         sr_powerlaw_energy, ur_powerlaw_energy, yukawa_energy)

__all__ = [
    "__version__",
    "AfmError", "BracketError", "ConvergenceFailure", "CriticalExceeded", "DomainError",
    "ExtremizationError", "NoBoundState", "NoBoundStateWarning", "NoSpectrum", "RangeWarning",
    "Unphysical",
    "BoundCharacter", "CoulombN", "HarmonicN", "LambdaFitN", "LinearN", "NModel", "NuSpectrum",
    "QuantumNumbers", "afm_extremize", "lowmass_shift", "nr_funnel_energy", "nr_powerlaw_energy",
    "semirelativistic_lift",
    "Funnel", "Kinematics", "PotentialSpec", "PowerLaw", "SquareRoot", "Yukawa",
    "AfmResult", "ScalingFrame", "critical_coupling_powerlaw", "sr_funnel_energy",
    "sr_powerlaw_energy", "ur_powerlaw_energy", "yukawa_energy",
]
