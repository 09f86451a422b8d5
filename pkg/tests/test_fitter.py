from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from salpeter_afm.errors import DomainError
from salpeter_afm.fitter import (Family, FitGrid, FitReport, closed_form_levels,
                                 evaluate_fit_error, fit_n_coefficients, oracle_levels,
                                 published_coefficients, rational_form, relative_errors)


@pytest.fixture(scope="module")
def linear_levels():
    return oracle_levels(Family.UR_POWERLAW, FitGrid((1.0,)))


class TestFamily:
    def test_coerce(self):
        assert Family.coerce("ur_powerlaw") is Family.UR_POWERLAW
        assert Family.coerce("RelCoulomb") is Family.REL_COULOMB
        with pytest.raises(DomainError):
            Family.coerce("quartic")

    @pytest.mark.parametrize("fam,param", [(Family.UR_POWERLAW, 0.7), (Family.REL_COULOMB, 0.9),
                                           (Family.UR_FUNNEL, 0.4)])
    def test_inverse(self, fam, param):
        N = np.array([1.1, 2.5, 7.0])
        assert np.allclose(fam.n_from_energy(param, fam.energy(param, N)), N, rtol=1e-12)

    @given(st.floats(min_value=0.05, max_value=3.0), st.floats(min_value=0.6, max_value=20.0))
    def test_powerlaw_energy_matches_closed_form(self, lam, N):
        from salpeter_afm.sr_spectra import ur_powerlaw_energy
        assert float(Family.UR_POWERLAW.energy(lam, N)) == pytest.approx(ur_powerlaw_energy(1.0, lam, 2.0, N), rel=1e-13)

    def test_parameter_ranges(self):
        with pytest.raises(DomainError):
            Family.REL_COULOMB.check_parameter(1.3)
        with pytest.raises(DomainError):
            Family.UR_POWERLAW.check_parameter(0.0)
        Family.UR_FUNNEL.check_parameter(0.0)


class TestPublishedCoefficients:
    def test_linear(self):
        b, c, d = published_coefficients("ur-powerlaw", 1.0)
        assert round(b, 2) == 1.52 and round(c, 2) == 1.23 and d == 1.0

    def test_harmonic_end(self):
        b, c, _ = published_coefficients("ur-powerlaw", 2.0)
        assert round(b, 2) == 1.79 and abs(b - math.pi / math.sqrt(3)) < 0.03
        assert round(c, 2) == 1.37 and abs(c - math.pi * math.sqrt(3) / 4) < 0.02

    def test_coulomb_endpoint(self):
        # the Coulomb forms reduce to N = n + l + 1 at vanishing coupling
        assert published_coefficients("rel-coulomb", 0.0) == pytest.approx((1.0, 1.0, 1.0))

    def test_rational_none(self):
        assert rational_form(0.3, None) == 1.0


class TestErrors:
    def test_relative_errors(self):
        assert np.allclose(relative_errors([1.1, 2.0], [1.0, 2.0]), [0.1, 0.0])
        assert relative_errors([np.nan], [1.0])[0] == np.inf

    def test_linear_published(self, linear_levels):
        mx, mean = evaluate_fit_error("ur-powerlaw", "published", FitGrid((1.0,)), levels=linear_levels)
        assert mx <= 0.012
        assert 0 <= mean <= mx

    def test_linear_standard(self, linear_levels):
        mx, _ = evaluate_fit_error("ur-powerlaw", "standard", FitGrid((1.0,)), levels=linear_levels)
        assert 0.04 <= mx <= 0.13

    def test_funnel_published(self):
        mx, _ = evaluate_fit_error("ur-funnel", "published", FitGrid((0.4,)))
        assert mx <= 0.05

    def test_coefficient_forms_agree(self, linear_levels):
        g = FitGrid((1.0,))
        triple = published_coefficients("ur-powerlaw", 1.0)
        ref = evaluate_fit_error("ur-powerlaw", triple, g, levels=linear_levels)
        assert evaluate_fit_error("ur-powerlaw", [triple], g, levels=linear_levels) == ref
        assert evaluate_fit_error("ur-powerlaw", lambda p: triple, g, levels=linear_levels) == ref
        with pytest.raises(DomainError):
            evaluate_fit_error("ur-powerlaw", [triple, triple], g, levels=linear_levels)

    def test_closed_form_shape(self):
        g = FitGrid((1.0,), n_max=2, l_max=1)
        lv = closed_form_levels("ur-powerlaw", 1.0, (2.0, 1.5, 1.0), g)
        assert lv.shape == (2, 3)
        assert lv[0, 0] == pytest.approx(2 * math.sqrt(3.0))


class TestFit:
    def test_fresh_linear_fit(self, linear_levels):
        rep = fit_n_coefficients("ur-powerlaw", FitGrid((1.0,)), levels=linear_levels, rational=False)
        b, c, d = rep.coefficients[0]
        for got, ref in zip((b, c, d), published_coefficients("ur-powerlaw", 1.0)):
            assert abs(got - ref) / ref < 0.03
        assert 0.003 <= rep.max_rel_error <= 0.011
        assert rep.max_rel_error < rep.baseline_max[0]

    def test_fit_never_worse_than_published(self, linear_levels):
        rep = fit_n_coefficients("ur-powerlaw", FitGrid((1.0,)), levels=linear_levels, rational=False)
        mx, _ = evaluate_fit_error("ur-powerlaw", "published", FitGrid((1.0,)), levels=linear_levels)
        # least squares on relative errors need not minimise the maximum, but it lands close
        assert rep.per_parameter_mean[0] <= evaluate_fit_error(
            "ur-powerlaw", "published", FitGrid((1.0,)), levels=linear_levels)[1] + 1e-12
        assert rep.max_rel_error <= 1.2 * mx

    def test_rational_coulomb_endpoint(self):
        rep = fit_n_coefficients("rel-coulomb", FitGrid((0.2, 0.6, 1.0), n_max=2, l_max=2))
        for key in ("b", "c", "d"):
            assert rational_form(0.0, rep.rational_fit[key]) == pytest.approx(1.0, rel=1e-12)
        assert max(rep.rational_max_rel_error) < 0.01

    def test_report_serializable(self, linear_levels):
        rep = fit_n_coefficients("ur-powerlaw", FitGrid((1.0,)), levels=linear_levels, rational=False)
        doc = json.loads(json.dumps(rep.to_dict()))
        assert doc["family"] == "ur-powerlaw"
        assert isinstance(rep, FitReport)

    def test_parallel_is_deterministic(self):
        g = FitGrid((0.5, 1.5), n_max=1, l_max=1)
        serial = oracle_levels("ur-powerlaw", g, jobs=1)
        parallel = oracle_levels("ur-powerlaw", g, jobs=2)
        assert np.array_equal(serial, parallel)

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            FitGrid(())
        with pytest.raises(DomainError):
            FitGrid((1.0,), n_max=-1)
        n, l = FitGrid((1.0,), n_max=1, l_max=1).nl
        assert list(n) == [0, 1, 0, 1] and list(l) == [0, 0, 1, 1]


def test_baseline_band_on_coarse_grid():
    # the harmonic-N baseline peaks near lambda = 0.7; a coarse grid skips the peak
    rep = fit_n_coefficients("ur-powerlaw", FitGrid((0.1, 0.5, 1.0, 1.5, 2.0)), rational=False)
    assert 0.04 <= min(rep.baseline_max) and max(rep.baseline_max) <= 0.13
    assert 0.002 <= rep.max_rel_error <= 0.015
