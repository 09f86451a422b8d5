"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION k: PASS|FAIL`` line with the measured
quantities, then asserts at the stated tolerance.  Tolerances are never
relaxed here; a criterion the numerics cannot meet fails honestly.
"""

from __future__ import annotations

import math
import os
import time

import numpy as np
import pytest

from salpeter_afm.afm_core import QuantumNumbers, nr_powerlaw_energy
from salpeter_afm.fitter import Family, FitGrid, fit_n_coefficients, published_coefficients
from salpeter_afm.oracle import HamiltonianSpec, Semirelativistic, delta_gap, solve_radial
from salpeter_afm.potentials import Funnel, Kinematics, PowerLaw, Yukawa
from salpeter_afm.reference import CASES
from salpeter_afm.rootkit import airy_zero, airy_zero_wkb
from salpeter_afm.sr_spectra import (coulomb_critical_N, coulomb_critical_factor, sr_funnel_energy,
                                     sr_powerlaw_energy, ur_harmonic_wkb, ur_powerlaw_energy,
                                     yukawa_critical_height, yukawa_energy, yukawa_reduced)

ORACLE_TOL = 1e-6
JOBS = max(1, min(4, os.cpu_count() or 1))


def report(capsys, number: int, checks: dict[str, tuple[bool, str]]) -> bool:
    ok = all(flag for flag, _ in checks.values())
    detail = "; ".join(f"{k} {'ok' if flag else 'FAIL'} ({msg})" for k, (flag, msg) in checks.items())
    with capsys.disabled():
        print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} | {detail}")
    return ok


def oracle_table(case):
    fam = Family.coerce(case.family)
    return np.array([solve_radial(fam.hamiltonian(case.parameter, l), 3, ORACLE_TOL).levels
                     for l in range(4)])


def table_checks(name):
    case = CASES[name]
    fam = Family.coerce(case.family)
    start = time.perf_counter()
    oracle = oracle_table(case)
    l, n = np.meshgrid(np.arange(4), np.arange(4), indexing="ij")
    b, c, d = fam.standard_coefficients()
    standard = fam.energy(case.parameter, b * n + d * l + c)
    pb, pc, pd = published_coefficients(fam, case.parameter)
    improved = fam.energy(case.parameter, pb * n + pd * l + pc)
    elapsed = time.perf_counter() - start
    return case, oracle, standard, improved, elapsed


def table_criterion(capsys, number, name, improved_rtol):
    case, oracle, standard, improved, elapsed = table_checks(name)
    d_or = np.abs(oracle - case.array("oracle"))
    # the third line is exact algebra; printed digits add half a unit of rounding
    d_std = np.abs(standard - case.array("standard"))
    d_imp = np.abs(improved / case.array("improved") - 1.0)
    checks = {
        "oracle": (d_or.max() <= 5e-4,
                   f"max {d_or.max():.2e}, {int((d_or > 5e-4).sum())}/16 cells > 5e-4"),
        "standard": (d_std.max() <= 1e-6 + case.rounding, f"max {d_std.max():.2e}"),
        "improved": (d_imp.max() <= improved_rtol, f"max rel {d_imp.max():.2e}"),
        "runtime": (elapsed < 30.0, f"{elapsed:.1f} s"),
    }
    assert report(capsys, number, checks)


def test_criterion_1_linear_table(capsys):
    table_criterion(capsys, 1, "linear_ur", 2e-3)


def test_criterion_2_coulomb_table(capsys):
    table_criterion(capsys, 2, "coulomb_rel", 5e-3)


def test_criterion_3_funnel_table(capsys):
    table_criterion(capsys, 3, "funnel_ur", 5e-3)


def test_criterion_4_variational(capsys):
    worst_margin, worst_delta, count = math.inf, math.inf, 0
    for name in ("linear_ur", "coulomb_rel", "funnel_ur"):
        case = CASES[name]
        fam = Family.coerce(case.family)
        for l in range(4):
            h = fam.hamiltonian(case.parameter, l)
            res = solve_radial(h, 3, ORACLE_TOL)
            for n, e in enumerate(res.levels):
                worst_margin = min(worst_margin, float(fam.energy(case.parameter, 2 * n + l + 1.5)) - e)
                worst_delta = min(worst_delta, delta_gap(h, QuantumNumbers(n, l), result=res))
                count += 1
    checks = {
        "harmonic-N above oracle": (worst_margin >= 1e-6, f"min margin {worst_margin:.3e} over {count}"),
        "delta >= 0": (worst_delta >= 0.0, f"min delta {worst_delta:.3e}"),
    }
    assert report(capsys, 4, checks)


def test_criterion_5_critical_coulomb(capsys):
    N = coulomb_critical_N(0.4842564)
    factor = coulomb_critical_factor(1.0)
    checks = {
        "N": (abs(N - 0.7276) <= 2e-3, f"N = {N:.6f}"),
        "factor": (abs(factor - 0.7712) <= 1e-4, f"factor = {factor:.6f}"),
    }
    assert report(capsys, 5, checks)


def test_criterion_6_airy_wkb(capsys):
    rel = max(abs(airy_zero_wkb(n) - airy_zero(n)) / abs(airy_zero(n)) for n in range(11))
    afm = max(abs(ur_harmonic_wkb(1.0, n) / (-(4.0 ** (1 / 3)) * airy_zero_wkb(n)) - 1.0)
              for n in range(11))
    checks = {
        "wkb zeros": (rel <= 0.08, f"max rel {rel:.4f}"),
        "harmonic formula": (afm <= 1e-14, f"max rel {afm:.1e}"),
    }
    assert report(capsys, 6, checks)


def _duality_error():
    rng = np.random.default_rng(7)
    worst = 0.0
    for lam in (0.5, 1.0, 2.0):
        for a, s, N in rng.uniform(0.2, 5.0, (25, 3)):
            ur = ur_powerlaw_energy(a, lam, s, N)
            nr = nr_powerlaw_energy(a ** ((1 + 2 * lam) / (1 + lam)), 2 * lam,
                                    a ** (1 / (1 + lam)) / s, math.sqrt(N))
            worst = max(worst, abs(nr / ur - 1.0))
    return worst


def _frame_error():
    # sigma sqrt(p^2+m^2) + a r - b/r has k times the levels at (m/k, a/k^2, b)
    k, worst = 1.7, 0.0
    for l in (0, 1):
        direct = solve_radial(HamiltonianSpec(Semirelativistic(2.0, 0.8), Funnel(1.2, 0.3), l),
                              2, 1e-9).levels
        unit = solve_radial(HamiltonianSpec(Semirelativistic(2.0, 0.8 / k), Funnel(1.2 / k ** 2, 0.3), l),
                            2, 1e-9).levels
        worst = max(worst, float(np.max(np.abs(k * np.asarray(unit) / np.asarray(direct) - 1.0))))
    return worst


def _funnel_lowmass_ratios():
    a, b, sigma, N = 1.0, 0.4, 2.0, 1.5
    m0 = N * math.sqrt(a / b)
    out = {}
    for eps in (0.01, 0.05):
        k = Kinematics(sigma, m0 * math.sqrt(eps))
        g = sr_funnel_energy(Funnel(a, b), k, N, "general").energy
        lm = sr_funnel_energy(Funnel(a, b), k, N, "lowmass").energy
        out[eps] = abs(g - lm) / abs(g) / (2 * eps * eps)
    return out


def _yukawa_limits():
    coul = sr_powerlaw_energy(PowerLaw(1.0, -1.0), Kinematics(2.0, 1.0), 1.0).energy
    yuk = yukawa_energy(Yukawa(1.0, 1e-9), Kinematics(2.0, 1.0), 1.0).energy
    beta0 = abs(yuk / coul - 1.0)
    N = 1.0
    # E - N vanishes like sqrt(1 - g/N); one Richardson step in sqrt(delta) gives the limit
    d = 1e-8
    E1 = yukawa_reduced(10.0, N * (1 - d), N)[2]
    E4 = yukawa_reduced(10.0, N * (1 - d / 4), N)[2]
    gN = max(abs(2 * E4 - E1 - N), abs(yukawa_reduced(10.0, N, N)[2] - N))
    chi = 1e4
    height = abs(chi * yukawa_critical_height(chi, N) / (math.e * N * N / 2) - 1.0)
    return beta0, gN, height


def test_criterion_7_properties(capsys):
    dual = _duality_error()
    frame = _frame_error()
    ratios = _funnel_lowmass_ratios()
    beta0, gN, height = _yukawa_limits()
    checks = {
        "duality": (dual <= 1e-10, f"max rel {dual:.1e}"),
        "frame": (frame <= 1e-6, f"max rel {frame:.1e}"),
        "funnel lowmass": (all(r <= 1.0 for r in ratios.values()),
                           ", ".join(f"eps={e}: err/(2eps^2)={r:.2f}" for e, r in ratios.items())),
        "yukawa beta->0": (beta0 <= 1e-6, f"rel {beta0:.1e}"),
        "yukawa g->N": (gN <= 1e-6, f"abs {gN:.1e}"),
        "yukawa chi g": (height <= 1e-3, f"rel {height:.1e}"),
    }
    assert report(capsys, 7, checks)


@pytest.mark.slow
def test_criterion_8_fit_bands(capsys):
    start = time.perf_counter()
    lams = tuple(np.round(np.arange(1, 21) * 0.1, 10))
    rep = fit_n_coefficients("ur-powerlaw", FitGrid(lams), rational=False, jobs=JOBS)
    elapsed = time.perf_counter() - start
    base = max(rep.baseline_max)
    worst = lams[int(np.argmax(rep.baseline_max))]
    checks = {
        "fitted": (0.002 <= rep.max_rel_error <= 0.015, f"max {100 * rep.max_rel_error:.2f}%"),
        "baseline": (0.04 <= base <= 0.13,
                     f"max {100 * base:.2f}% at lambda={worst}, min {100 * min(rep.baseline_max):.2f}%"),
        "runtime": (elapsed < 600.0, f"{elapsed:.0f} s"),
    }
    assert report(capsys, 8, checks)
