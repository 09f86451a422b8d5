"""Published reference levels, stored as fixture data.

Each case holds three ``4 x 4`` arrays indexed ``[l][n]``: the numerical
reference (``oracle``), the fitted-``N`` closed form (``improved``) and the
textbook-``N`` closed form (``standard``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ReferenceCase", "CASES", "FIXTURE_VERSION", "get_case"]

FIXTURE_VERSION = "1"


@dataclass(frozen=True)
class ReferenceCase:
    """Printed table for one dimensionless Hamiltonian.

    Attributes
    ----------
    name : str
    family : str
        Fitter family the table belongs to.
    parameter : float
        ``lambda``, ``a`` or ``beta``.
    oracle, improved, standard : tuple of tuple of float
        ``[l][n]`` values for ``n, l = 0..3``.
    decimals : int
        Printed precision; closed-form lines match after rounding to it.
    oracle_atol, improved_rtol : float
        Per-cell tolerances used when comparing against the fixture.
    """

    name: str
    family: str
    parameter: float
    description: str
    oracle: tuple
    improved: tuple
    standard: tuple
    decimals: int = 4
    oracle_atol: float = 5e-4
    improved_rtol: float = 5e-3

    @property
    def rounding(self) -> float:
        """Half a unit in the last printed digit."""
        return 0.5 * 10.0 ** (-self.decimals)

    def array(self, line: str) -> np.ndarray:
        return np.array(getattr(self, line), dtype=float)


LINEAR_UR = ReferenceCase(
    name="linear_ur", family="ur-powerlaw", parameter=1.0,
    description="2|q| + x",
    oracle=((3.1577, 4.7109, 5.8913, 6.8742),
            (4.2248, 5.4575, 6.4837, 7.3767),
            (5.0789, 6.1304, 7.0470, 7.8671),
            (5.8108, 6.7425, 7.5775, 8.3387)),
    improved=((3.1338, 4.6849, 5.8374, 6.7973),
              (4.2215, 5.4725, 6.4866, 7.3623),
              (5.0814, 6.1602, 7.0764, 7.8869),
              (5.8156, 6.7785, 7.6207, 8.3787)),
    standard=((3.4641, 5.2915, 6.6333, 7.7460),
              (4.4721, 6.0000, 7.2111, 8.2462),
              (5.2915, 6.6333, 7.7460, 8.7178),
              (6.0000, 7.2111, 8.2462, 9.1652)),
    improved_rtol=2e-3,
)

COULOMB_REL = ReferenceCase(
    name="coulomb_rel", family="rel-coulomb", parameter=1.0,
    description="2 sqrt(q^2 + 1) - 1/x",
    oracle=((1.65817, 1.92184, 1.96739, 1.98231),
            (1.93515, 1.97122, 1.98389, 1.98973),
            (1.97187, 1.98416, 1.98987, 1.99297),
            (1.98428, 1.98993, 1.99301, 1.99487)),
    improved=((1.65982, 1.92356, 1.96680, 1.98151),
              (1.93476, 1.97012, 1.98291, 1.98895),
              (1.97296, 1.98416, 1.98961, 1.99266),
              (1.98528, 1.99021, 1.99302, 1.99477)),
    standard=((1.73205, 1.93649, 1.97203, 1.98431),
              (1.93649, 1.97203, 1.98431, 1.98997),
              (1.97203, 1.98431, 1.98997, 1.99304),
              (1.98431, 1.98997, 1.99304, 1.99489)),
    decimals=5,
)

FUNNEL_UR = ReferenceCase(
    name="funnel_ur", family="ur-funnel", parameter=0.4,
    description="2|q| + x - 0.4/x",
    oracle=((2.7821, 4.3709, 5.5874, 6.5938),
            (3.9944, 5.2365, 6.2744, 7.1772),
            (4.8993, 5.9549, 6.8772, 7.7028),
            (5.6588, 6.5927, 7.4311, 8.1957)),
    improved=((2.7804, 4.4196, 5.5977, 6.5678),
              (3.9737, 5.2529, 6.2765, 7.1552),
              (4.8837, 5.9710, 6.8887, 7.6978),
              (5.6489, 6.6115, 7.4508, 8.2046)),
    standard=((3.2249, 5.1381, 6.5115, 7.6420),
              (4.2895, 5.8652, 7.0993, 8.1486),
              (5.1381, 6.5115, 7.6420, 8.6255),
              (5.8652, 7.0993, 8.1486, 9.0774)),
)

CASES = {c.name: c for c in (LINEAR_UR, COULOMB_REL, FUNNEL_UR)}


def get_case(name: str) -> ReferenceCase:
    try:
        return CASES[name]
    except KeyError:
        raise KeyError(f"unknown table case {name!r}; choose from {sorted(CASES)}") from None
