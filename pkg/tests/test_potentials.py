from __future__ import annotations

import math

import numpy as np
import pytest

from salpeter_afm.errors import DomainError, Unphysical
from salpeter_afm.potentials import (Funnel, Kinematics, PowerLaw, SquareRoot, Yukawa,
                                     herbst_critical_coupling)


def test_kinematics_validation():
    with pytest.raises(DomainError):
        Kinematics(0.0, 1.0)
    with pytest.raises(DomainError):
        Kinematics(2.0, -1.0)


@pytest.mark.parametrize("lam", [0.0, -2.0, -2.5])
def test_powerlaw_domain(lam):
    with pytest.raises(DomainError):
        PowerLaw(1.0, lam)


def test_powerlaw_unphysical_window():
    with pytest.raises(Unphysical):
        PowerLaw(1.0, -1.5)


def test_values():
    r = np.array([0.5, 2.0])
    assert np.allclose(PowerLaw(2.0, 1.0)(r), 2.0 * r)
    assert np.allclose(PowerLaw(2.0, -1.0)(r), -2.0 / r)
    assert np.allclose(Funnel(1.0, 0.4)(r), r - 0.4 / r)
    assert np.allclose(SquareRoot(1.0, 1.0)(r), np.sqrt(r * r + 1))
    assert np.allclose(Yukawa(0.5, 0.3)(r), -0.5 * np.exp(-0.3 * r) / r)


def test_coulomb_strength_and_tail():
    assert PowerLaw(0.7, -1.0).coulomb_strength == 0.7
    assert PowerLaw(0.7, 1.0).coulomb_strength == 0.0
    assert Funnel(1.0, 0.4).coulomb_strength == 0.4
    assert Yukawa(0.5, 0.3).coulomb_strength == 0.5
    assert Yukawa(0.5, 0.3).vanishes_at_infinity
    assert PowerLaw(1.0, -0.5).vanishes_at_infinity
    assert not Funnel(1.0, 0.4).vanishes_at_infinity


def test_describe():
    assert PowerLaw(1.0, 1.0).describe() == "power:a=1,lambda=1"


def test_herbst():
    assert herbst_critical_coupling(0) == pytest.approx(2.0 / math.pi, rel=1e-15)
    # grows with l
    assert herbst_critical_coupling(1) > herbst_critical_coupling(0)
