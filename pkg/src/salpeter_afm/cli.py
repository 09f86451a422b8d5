"""Command-line front end.

Subcommands
-----------
spectrum   closed-form levels (optionally against the oracle) for one Hamiltonian
table      three-line comparison for a built-in reference case
check      named invariant suites (scaling, duality, bounds, limits, delta)
fit        ``N = b n + d l + c`` fits for a dimensionless family
oracle     raw oracle levels for one partial wave

Exit codes: 0 success, 1 computation or property failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .afm_core import (CoulombN, HarmonicN, LambdaFitN, LinearN, NModel, QuantumNumbers,
                       NuSpectrum, nr_powerlaw_energy)
from .errors import AfmError, ConvergenceFailure, NoBoundState
from .fitter import Family, FitGrid, evaluate_fit_error, fit_n_coefficients, published_coefficients
from .oracle import (HamiltonianSpec, NonrelativisticNu, Semirelativistic, delta_gap,
                     solve_radial)
from .potentials import Funnel, Kinematics, PotentialSpec, PowerLaw, SquareRoot, Yukawa
from .reference import CASES, FIXTURE_VERSION, get_case
from .sr_spectra import (ScalingFrame, powerlaw_scaling, scaling_reduce, sr_funnel_energy,
                         sr_powerlaw_energy, ur_powerlaw_energy, yukawa_energy)

__all__ = ["main", "build_parser", "parse_potential", "parse_nmodel", "parse_range",
           "CSV_HEADER"]

CSV_HEADER = ("case", "n", "l", "oracle", "afm_std", "afm_improved",
              "rel_err_std", "rel_err_improved")
NO_BOUND = "no_bound_state"
TOOL = "salpeter-afm"


class UsageError(Exception):
    """Invalid command-line input (exit code 2)."""


# ---------------------------------------------------------------------------
# parsing helpers

def _kv(text: str) -> dict:
    out = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        if "=" not in item:
            raise UsageError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip().lower()] = float(v)
        except ValueError:
            raise UsageError(f"value of {k!r} is not a number: {v!r}") from None
    return out


def parse_potential(text: str) -> PotentialSpec:
    """Parse ``kind:key=value,...`` into a potential.

    Kinds: ``linear`` (a), ``harmonic`` (a), ``coulomb`` (a), ``power``
    (a, lambda), ``funnel`` (a, b), ``sqrt`` (a, b), ``yukawa`` (alpha, beta).
    """
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    p = _kv(rest)
    try:
        if kind == "linear":
            return PowerLaw(p.get("a", 1.0), 1.0)
        if kind == "harmonic":
            return PowerLaw(p.get("a", 1.0), 2.0)
        if kind == "coulomb":
            return PowerLaw(p.get("a", 1.0), -1.0)
        if kind == "power":
            return PowerLaw(p.get("a", 1.0), p["lambda"])
        if kind == "funnel":
            return Funnel(p.get("a", 1.0), p.get("b", 0.0))
        if kind == "sqrt":
            return SquareRoot(p.get("a", 1.0), p.get("b", 0.0))
        if kind == "yukawa":
            return Yukawa(p["alpha"], p["beta"])
    except KeyError as exc:
        raise UsageError(f"potential {kind!r} needs parameter {exc.args[0]!r}") from None
    except (AfmError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown potential kind {kind!r}")


def parse_nmodel(text: str) -> NModel | str:
    """Parse ``harmonic``, ``coulomb``, ``lambda-fit:lambda=x``, ``linear:b=,c=,d=`` or ``published``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "harmonic":
        return HarmonicN()
    if kind == "coulomb":
        return CoulombN()
    if kind == "published":
        return "published"
    p = _kv(rest)
    try:
        if kind == "lambda-fit":
            return LambdaFitN(p["lambda"])
        if kind == "linear":
            return LinearN(p["b"], p["c"], p.get("d", 1.0))
    except KeyError as exc:
        raise UsageError(f"N model {kind!r} needs parameter {exc.args[0]!r}") from None
    raise UsageError(f"unknown N model {kind!r}")


def parse_range(text: str, kind: type = int) -> list:
    """``3``, ``0..3``, ``0.1..2.0:0.1`` or a comma list."""
    text = text.strip()
    try:
        if "," in text:
            return [kind(t) for t in text.split(",") if t.strip()]
        if ".." in text:
            lo, _, hi = text.partition("..")
            hi, _, step = hi.partition(":")
            lo, hi = kind(lo), kind(hi)
            step = kind(step) if step else kind(1)
            if step <= 0 or hi < lo:
                raise UsageError(f"empty range {text!r}")
            count = int(math.floor((hi - lo) / step + 1e-9)) + 1
            return [kind(round(lo + i * step, 12)) if kind is float else lo + i * step
                    for i in range(count)]
        return [kind(text)]
    except ValueError:
        raise UsageError(f"malformed range {text!r}") from None


def _range_arg(kind):
    def convert(text):
        try:
            return parse_range(text, kind)
        except UsageError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    convert.__name__ = f"{kind.__name__}-range"
    return convert


# ---------------------------------------------------------------------------
# spectra

def _standard_model(pot: PotentialSpec) -> NModel:
    if isinstance(pot, (Yukawa,)) or (isinstance(pot, PowerLaw) and pot.lam == -1):
        return CoulombN()
    return HarmonicN()


def _published_model(pot: PotentialSpec, kin: Kinematics) -> NModel | None:
    """Published fitted ``N`` when the Hamiltonian maps onto a fitted family."""
    if isinstance(pot, PowerLaw) and kin.mass == 0 and pot.lam > 0:
        return LinearN(*published_coefficients(Family.UR_POWERLAW, pot.lam))
    if isinstance(pot, PowerLaw) and pot.lam == -1 and kin.mass > 0:
        a = 2.0 * pot.a / kin.sigma
        if 0 < a < 4.0 / math.pi:
            return LinearN(*published_coefficients(Family.REL_COULOMB, a))
    if isinstance(pot, Funnel) and kin.mass == 0:
        # sigma|p| + a r - b/r maps onto 2|q| + x - beta/x with beta = 2b/sigma
        beta = 2.0 * pot.b / kin.sigma
        if 0 <= beta < 4.0 / math.pi:
            return LinearN(*published_coefficients(Family.UR_FUNNEL, beta))
    return None


def afm_energy(pot: PotentialSpec, kin: Kinematics, N: float, model: NModel | None = None,
               mode: str = "auto"):
    """Dispatch to the closed form matching ``pot``; returns an AfmResult."""
    if isinstance(pot, PowerLaw):
        return sr_powerlaw_energy(pot, kin, N, n_source=model)
    if isinstance(pot, Funnel):
        return sr_funnel_energy(pot, kin, N, mode, n_source=model)
    if isinstance(pot, Yukawa):
        return yukawa_energy(pot, kin, N, n_source=model)
    if isinstance(pot, SquareRoot):
        if kin.mass != 0:
            raise UsageError("square-root potential has a closed form only for mass 0")
        # sigma|p| + sqrt(a^2 r^2 + b^2) is the linear closed form at mass b/sigma
        return sr_powerlaw_energy(PowerLaw(pot.a, 1.0), Kinematics(kin.sigma, pot.b / kin.sigma), N)
    raise UsageError(f"no closed form for {pot!r}")


def _energy_or_sentinel(pot, kin, model, q):
    if model is None:
        return None, {}
    try:
        res = afm_energy(pot, kin, model(q.n, q.l), model)
    except NoBoundState:
        return NO_BOUND, {}
    return res.energy, dict(res.internals, nu0=res.nu0, bound=res.bound.value)


def _oracle_column(pot, kin, ls, n_max, tol, jobs):
    tasks = [(pot, kin, l, n_max, tol) for l in ls]
    return dict(zip(ls, _map(_oracle_levels_task, tasks, jobs)))


def _oracle_levels_task(args):
    pot, kin, l, n_max, tol = args
    res = solve_radial(HamiltonianSpec(Semirelativistic(kin.sigma, kin.mass), pot, l), n_max, tol)
    return list(res.levels)


def _map(fn, tasks, jobs):
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def _rel(a, b):
    if isinstance(a, float) and isinstance(b, float) and b != 0:
        return abs(a - b) / abs(b)
    return None


def _row(case, n, l, oracle, std, imp):
    return {"case": case, "n": n, "l": l, "oracle": oracle, "afm_std": std,
            "afm_improved": imp, "rel_err_std": _rel(std, oracle),
            "rel_err_improved": _rel(imp, oracle)}


# ---------------------------------------------------------------------------
# output

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else str(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def render(rows: list, fmt: str, command: str, config: dict, extra: dict | None = None) -> str:
    """Serialize rows as CSV, JSON (with envelope) or an aligned text table."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([_fmt(r.get(k)) for k in CSV_HEADER])
        return buf.getvalue()
    if fmt == "json":
        doc = {"tool": TOOL, "version": __version__, "command": command,
               "config": _jsonable(config), "rows": _jsonable(rows)}
        if extra:
            doc["metadata"] = _jsonable(extra)
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    widths = [max(len(h), 11) for h in CSV_HEADER]
    lines = ["  ".join(h.rjust(w) for h, w in zip(CSV_HEADER, widths))]
    for r in rows:
        cells = []
        for k, w in zip(CSV_HEADER, widths):
            v = r.get(k)
            cells.append((f"{v:.6f}" if isinstance(v, float) else _fmt(v)).rjust(w))
        lines.append("  ".join(cells))
    if extra:
        for k in sorted(extra):
            lines.append(f"# {k}: {_fmt(extra[k]) if not isinstance(extra[k], (dict, list)) else json.dumps(_jsonable(extra[k]), sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_echo(args) -> dict:
    skip = {"func", "config", "output", "jobs"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# ---------------------------------------------------------------------------
# commands

def cmd_spectrum(args) -> int:
    pot = parse_potential(args.potential)
    try:
        kin = Kinematics(args.sigma, args.mass)
    except AfmError as exc:
        raise UsageError(str(exc)) from None
    std = parse_nmodel(args.nmodel) if args.nmodel else _standard_model(pot)
    if args.improved is None:
        imp = None
    else:
        imp = parse_nmodel(args.improved)
        if imp == "published":
            imp = _published_model(pot, kin)
            if imp is None:
                raise UsageError("no published fitted N for this Hamiltonian")
    if std == "published":
        std = _published_model(pot, kin)
        if std is None:
            raise UsageError("no published fitted N for this Hamiltonian")
    oracle = _oracle_column(pot, kin, args.l, max(args.n), args.tol, args.jobs) if args.oracle else {}
    rows, internals = [], []
    for l in args.l:
        for n in args.n:
            q = QuantumNumbers(n, l)
            e_std, info = _energy_or_sentinel(pot, kin, std, q)
            e_imp, _ = _energy_or_sentinel(pot, kin, imp, q)
            levels = oracle.get(l)
            o = levels[n] if levels is not None and n < len(levels) else (NO_BOUND if args.oracle else None)
            rows.append(_row(pot.describe(), n, l, o, e_std, e_imp))
            if args.verbose:
                internals.append({"n": n, "l": l, **info})
    extra = {"internals": internals} if args.verbose else None
    _emit(render(rows, args.format, "spectrum", _config_echo(args), extra), args.output)
    return 0


def _table_rows(case, ns, ls, tol, jobs):
    fam = Family.coerce(case.family)
    p = case.parameter
    std = fam.standard_coefficients()
    imp = published_coefficients(fam, p)
    tasks = [(fam, p, l, max(ns), tol) for l in ls]
    levels = dict(zip(ls, _map(_family_levels_task, tasks, jobs)))
    rows = []
    for l in ls:
        for n in ns:
            e_std = float(fam.energy(p, std[0] * n + std[2] * l + std[1]))
            e_imp = float(fam.energy(p, imp[0] * n + imp[2] * l + imp[1]))
            rows.append(_row(case.name, n, l, levels[l][n], e_std, e_imp))
    return rows


def _family_levels_task(args):
    fam, p, l, n_max, tol = args
    return list(solve_radial(fam.hamiltonian(p, l), n_max, tol).levels)


def table_deviations(case, rows) -> dict:
    """Largest deviation of each computed line from the embedded fixture."""
    dev = {"oracle_abs": 0.0, "afm_std_abs": 0.0, "afm_improved_rel": 0.0}
    for r in rows:
        n, l = r["n"], r["l"]
        if n > 3 or l > 3:
            continue
        dev["oracle_abs"] = max(dev["oracle_abs"], abs(r["oracle"] - case.oracle[l][n]))
        dev["afm_std_abs"] = max(dev["afm_std_abs"], abs(r["afm_std"] - case.standard[l][n]))
        dev["afm_improved_rel"] = max(dev["afm_improved_rel"],
                                      abs(r["afm_improved"] - case.improved[l][n]) / case.improved[l][n])
    return dev


def cmd_table(args) -> int:
    case = get_case(args.case)
    rows = _table_rows(case, args.n, args.l, args.tol, args.jobs)
    dev = table_deviations(case, rows)
    extra = {"fixture_version": FIXTURE_VERSION, "parameter": case.parameter,
             "hamiltonian": case.description, "max_deviation_from_reference": dev}
    _emit(render(rows, args.format, "table", _config_echo(args), extra), args.output)
    if args.format != "pretty" and args.output is None:
        pass
    else:
        print(f"max deviation from reference: {json.dumps(dev, sort_keys=True)}", file=sys.stderr)
    return 0


# -- check suites -------------------------------------------------------------

def _suite_scaling(args):
    out = []
    corrupt = args.corrupt_scale
    # oracle frame invariance for the linear potential: E(a=4) = 2 E(a=1)
    for l in (0, 1):
        e1 = solve_radial(HamiltonianSpec(Semirelativistic(2.0, 0.0), PowerLaw(1.0, 1.0), l), 2, 1e-9).levels
        e4 = solve_radial(HamiltonianSpec(Semirelativistic(2.0, 0.0), PowerLaw(4.0, 1.0), l), 2, 1e-9).levels
        err = max(abs(b - 2.0 * corrupt * a) / b for a, b in zip(e1, e4))
        out.append((f"oracle linear frame l={l}", err <= 1e-6, err))
    # Yukawa closed form under the general law: alpha e^(-beta r)/r = G v(beta r)
    alpha, beta, s, m, N = 0.8, 0.3, 2.0, 1.5, 1.0
    direct = yukawa_energy(Yukawa(alpha, beta), Kinematics(s, m), N).energy
    unit = lambda mm, G: yukawa_energy(Yukawa(G, 1.0), Kinematics(1.0, mm), N).energy
    frame = scaling_reduce(unit, m, alpha * beta, ScalingFrame(beta, s)) * corrupt
    err = abs(frame - direct) / direct
    out.append(("yukawa closed form frame", err <= 1e-12, err))
    # power-law refinement on the massive linear closed form
    lam, G, m = 1.0, 3.0, 0.7
    direct = sr_powerlaw_energy(PowerLaw(G, lam), Kinematics(s, m), 1.5).energy
    unit = lambda chi: sr_powerlaw_energy(PowerLaw(1.0, lam), Kinematics(1.0, chi), 1.5).energy
    err = abs(powerlaw_scaling(unit, lam, m, G, s) * corrupt - direct) / direct
    out.append(("power-law scaling linear", err <= 1e-12, err))
    return out


def _suite_duality(args):
    rng = np.random.default_rng(args.seed)
    out = []
    for lam in (0.5, 1.0, 2.0):
        worst = 0.0
        for _ in range(20):
            a, s, N = rng.uniform(0.2, 5.0, 3)
            ur = ur_powerlaw_energy(a, lam, s, N)
            nr = nr_powerlaw_energy(a ** ((1 + 2 * lam) / (1 + lam)), 2 * lam,
                                    a ** (1 / (1 + lam)) / s, math.sqrt(N))
            worst = max(worst, abs(nr - ur) / abs(ur))
        out.append((f"duality lambda={lam}", worst <= 1e-10, worst))
    return out


def _bounds_cases():
    for name in ("linear_ur", "coulomb_rel", "funnel_ur"):
        case = CASES[name]
        fam = Family.coerce(case.family)
        for l in range(4):
            yield name, fam, case.parameter, l


def _bounds_task(args):
    name, fam, p, l = args
    levels = solve_radial(fam.hamiltonian(p, l), 3, 1e-6).levels
    res = []
    for n, e in enumerate(levels):
        std = float(fam.energy(p, 2 * n + l + 1.5))
        res.append((f"{name} harmonic-N n={n} l={l}", std - e >= 1e-6, std - e))
        if fam is Family.REL_COULOMB:
            c = float(fam.energy(p, n + l + 1.0))
            res.append((f"{name} coulomb-N n={n} l={l}", c - e >= 1e-6, c - e))
    return res


def _suite_bounds(args):
    return [r for chunk in _map(_bounds_task, list(_bounds_cases()), args.jobs) for r in chunk]


def _suite_limits(args):
    out = []
    for lam in (0.5, 1.0, 2.0):
        sr = sr_powerlaw_energy(PowerLaw(1.3, lam), Kinematics(2.0, 0.0), 2.5).energy
        ur = ur_powerlaw_energy(1.3, lam, 2.0, 2.5)
        err = abs(sr - ur) / ur
        out.append((f"massless power law lambda={lam}", err <= 1e-10, err))
    f0 = sr_funnel_energy(Funnel(1.0, 0.0), Kinematics(2.0, 0.0), 1.5).energy
    err = abs(f0 - ur_powerlaw_energy(1.0, 1.0, 2.0, 1.5)) / f0
    out.append(("funnel b=0 is linear", err <= 1e-12, err))
    ur = sr_funnel_energy(Funnel(1.0, 0.4), Kinematics(2.0, 0.0), 1.5).energy
    g = sr_funnel_energy(Funnel(1.0, 0.4), Kinematics(2.0, 1e-4), 1.5, "general").energy
    err = abs(g - ur) / ur
    out.append(("funnel general m->0", err <= 1e-6, err))
    y = yukawa_energy(Yukawa(1.0, 1e-9), Kinematics(2.0, 1.0), 1.0).energy
    c = 2.0 * math.sqrt(1.0 - 0.25)
    err = abs(y - c) / c
    out.append(("yukawa beta->0 is coulomb", err <= 1e-6, err))
    r = sr_powerlaw_energy(PowerLaw(1.0, -1.0), Kinematics(2.0, 1.0), 2.0)
    nu0 = r.nu0
    err = abs(nu0 * nu0 - (4.0 / 4.0) * (1.0 + nu0 * nu0 / 16.0)) / (nu0 * nu0)
    out.append(("coulomb virial nu0", err <= 1e-12, err))
    return out


def _delta_task(args):
    name, fam, p, l = args
    h = fam.hamiltonian(p, l)
    res = solve_radial(h, 3, 1e-6)
    out = []
    for n in range(len(res.levels)):
        d = delta_gap(h, QuantumNumbers(n, l), result=res)
        out.append((f"{name} delta n={n} l={l}", d >= 0.0, d))
    return out


def _suite_delta(args):
    return [r for chunk in _map(_delta_task, list(_bounds_cases()), args.jobs) for r in chunk]


SUITES: dict[str, Callable] = {
    "scaling": _suite_scaling,
    "duality": _suite_duality,
    "bounds": _suite_bounds,
    "limits": _suite_limits,
    "delta": _suite_delta,
}


def cmd_check(args) -> int:
    results = SUITES[args.suite](args)
    failures = [r for r in results if not r[1]]
    report = {"suite": args.suite, "passed": len(results) - len(failures), "failed": len(failures),
              "results": [{"name": n, "ok": bool(ok), "value": float(v)} for n, ok, v in results]}
    if args.format == "json":
        text = json.dumps({"tool": TOOL, "version": __version__, "command": "check",
                           "config": _jsonable(_config_echo(args)), "report": report},
                          indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{'PASS' if ok else 'FAIL'}  {n}  ({v:.3e})" for n, ok, v in results]
        lines.append(f"{report['passed']} passed, {report['failed']} failed")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 1 if failures else 0


# -- fit ----------------------------------------------------------------------

PUBLISHED_BANDS = {
    Family.UR_POWERLAW: ((0.003, 0.011), (0.045, 0.127)),
    Family.REL_COULOMB: ((0.00005, 0.003), (0.00004, 0.173)),
    Family.UR_FUNNEL: ((0.006, 0.049), (0.127, 0.422)),
}


def cmd_fit(args) -> int:
    fam = Family.coerce(args.family)
    values = args.values
    if values is None:
        values = {Family.UR_POWERLAW: parse_range("0.1..2.0:0.1", float),
                  Family.REL_COULOMB: parse_range("0.2..1.2:0.1", float),
                  Family.UR_FUNNEL: parse_range("0.0..1.0:0.1", float)}[fam]
    try:
        grid = FitGrid(tuple(values), args.n_max, args.l_max)
        for v in grid.parameter_values:
            fam.check_parameter(v)
    except AfmError as exc:
        raise UsageError(str(exc)) from None
    report = fit_n_coefficients(fam, grid, rational=not args.no_rational, jobs=args.jobs)
    published_max = [evaluate_fit_error(fam, "published", FitGrid((p,), args.n_max, args.l_max))[0]
                     for p in grid.parameter_values] if args.compare_published else None
    fit_band, base_band = PUBLISHED_BANDS[fam]
    doc = report.to_dict()
    doc["published_band"] = {"fitted": list(fit_band), "standard": list(base_band)}
    if published_max is not None:
        doc["published_coefficients_max"] = published_max
    if args.format == "json":
        text = json.dumps({"tool": TOOL, "version": __version__, "command": "fit",
                           "config": _jsonable(_config_echo(args)), "report": _jsonable(doc)},
                          indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "parameter", "b", "c", "d", "max_rel_error", "mean_rel_error",
                    "standard_max_rel_error"])
        for k, p in enumerate(report.parameter_values):
            b, c, d = report.coefficients[k]
            w.writerow([fam.value, repr(p), repr(b), repr(c), repr(d), repr(report.per_parameter_max[k]),
                        repr(report.per_parameter_mean[k]), repr(report.baseline_max[k])])
        text = buf.getvalue()
    else:
        lines = [f"{'param':>7} {'b':>9} {'c':>9} {'d':>9} {'max err':>9} {'std err':>9}"]
        for k, p in enumerate(report.parameter_values):
            b, c, d = report.coefficients[k]
            lines.append(f"{p:7.3f} {b:9.5f} {c:9.5f} {d:9.5f} {report.per_parameter_max[k]:9.4%} "
                         f"{report.baseline_max[k]:9.4%}")
        lines.append(f"fitted max error band: {min(report.per_parameter_max):.3%} .. "
                     f"{max(report.per_parameter_max):.3%} (published {fit_band[0]:.3%} .. {fit_band[1]:.3%})")
        lines.append(f"standard-N error band: {min(report.baseline_max):.3%} .. "
                     f"{max(report.baseline_max):.3%} (published {base_band[0]:.3%} .. {base_band[1]:.3%})")
        if report.rational_fit is not None:
            for key in ("b", "c", "d"):
                lines.append(f"rational {key}: {report.rational_fit[key]}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


# -- oracle -------------------------------------------------------------------

def cmd_oracle(args) -> int:
    pot = parse_potential(args.potential)
    try:
        kin = NonrelativisticNu(args.nu) if args.nu is not None else Semirelativistic(args.sigma, args.mass)
    except AfmError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for l in args.l:
        res = solve_radial(HamiltonianSpec(kin, pot, l), args.n_max, args.tol)
        if res.collapsed:
            rows.append({"l": l, "n": None, "energy": None, "status": "collapsed"})
            continue
        for n, (e, est) in enumerate(zip(res.levels, res.convergence_estimate)):
            rows.append({"l": l, "n": n, "energy": e, "convergence": est,
                         "basis_size": res.basis_size, "scale": res.scale})
        for n in range(len(res.levels), args.n_max + 1):
            rows.append({"l": l, "n": n, "energy": None, "status": NO_BOUND})
    if args.format == "json":
        text = json.dumps({"tool": TOOL, "version": __version__, "command": "oracle",
                           "config": _jsonable(_config_echo(args)), "rows": _jsonable(rows)},
                          indent=2, sort_keys=True) + "\n"
    else:
        keys = ["n", "l", "energy", "convergence", "basis_size", "scale", "status"]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([_fmt(r.get(k)) for k in keys])
        text = buf.getvalue()
    _emit(text, args.output)
    return 0


# ---------------------------------------------------------------------------
# parser

def _common(p, formats=("csv", "json", "pretty"), default="pretty"):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent solves")
    p.add_argument("--config", default=None, help="key=value file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="salpeter-afm",
                                     description="Auxiliary-field spectra of spinless Salpeter Hamiltonians.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="closed-form levels for one Hamiltonian")
    sp.add_argument("--potential", required=True,
                    help="e.g. linear:a=1, coulomb:a=0.5, power:a=1,lambda=0.5, funnel:a=1,b=0.4")
    sp.add_argument("--sigma", type=float, default=2.0)
    sp.add_argument("--mass", type=float, default=0.0)
    sp.add_argument("--nmodel", default=None,
                    help="harmonic, coulomb, lambda-fit:lambda=x, linear:b=,c=,d= or published")
    sp.add_argument("--improved", default=None, help="second N model for the afm_improved column")
    sp.add_argument("--n", type=_range_arg(int), default=[0])
    sp.add_argument("--l", type=_range_arg(int), default=[0])
    sp.add_argument("--oracle", action="store_true", help="also solve numerically")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--verbose", action="store_true", help="include closed-form internals")
    _common(sp)
    sp.set_defaults(func=cmd_spectrum)

    tp = sub.add_parser("table", help="three-line comparison for a reference case")
    tp.add_argument("case", choices=sorted(CASES))
    tp.add_argument("--n", type=_range_arg(int), default=[0, 1, 2, 3])
    tp.add_argument("--l", type=_range_arg(int), default=[0, 1, 2, 3])
    tp.add_argument("--tol", type=float, default=1e-6)
    _common(tp)
    tp.set_defaults(func=cmd_table)

    cp = sub.add_parser("check", help="run an invariant suite")
    cp.add_argument("suite", choices=sorted(SUITES))
    cp.add_argument("--seed", type=int, default=12345)
    cp.add_argument("--corrupt-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    _common(cp, formats=("json", "pretty"))
    cp.set_defaults(func=cmd_check)

    fp = sub.add_parser("fit", help="fit N = b n + d l + c against the oracle")
    fp.add_argument("family", choices=[f.value for f in Family])
    vals = fp.add_mutually_exclusive_group()
    vals.add_argument("--lambda", dest="values", type=_range_arg(float))
    vals.add_argument("--a", dest="values", type=_range_arg(float))
    vals.add_argument("--beta", dest="values", type=_range_arg(float))
    fp.add_argument("--n-max", type=int, default=3)
    fp.add_argument("--l-max", type=int, default=3)
    fp.add_argument("--no-rational", action="store_true")
    fp.add_argument("--compare-published", action="store_true",
                    help="also evaluate the published coefficients")
    _common(fp)
    fp.set_defaults(func=cmd_fit)

    op = sub.add_parser("oracle", help="numerical levels for one Hamiltonian")
    op.add_argument("--potential", required=True)
    op.add_argument("--sigma", type=float, default=2.0)
    op.add_argument("--mass", type=float, default=0.0)
    op.add_argument("--nu", type=float, default=None, help="use p^2/nu instead")
    op.add_argument("--l", type=_range_arg(int), default=[0])
    op.add_argument("--n-max", type=int, default=3)
    op.add_argument("--tol", type=float, default=1e-6)
    _common(op, formats=("csv", "json"), default="csv")
    op.set_defaults(func=cmd_oracle)
    return parser


def _read_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = _read_config(known.config)
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in subparsers.choices.values():
        defaults = {}
        for action in sp._actions:
            if action.dest not in cfg:
                continue
            raw = cfg[action.dest]
            if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                defaults[action.dest] = raw.lower() in ("1", "true", "yes", "on")
            elif action.type is not None:
                try:
                    defaults[action.dest] = action.type(raw)
                except (argparse.ArgumentTypeError, ValueError) as exc:
                    raise UsageError(f"config value {action.dest}={raw!r}: {exc}") from None
            else:
                defaults[action.dest] = raw
            if action.required:
                action.required = False
        sp.set_defaults(**defaults)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    for name in ("potential",):
        if hasattr(args, name) and getattr(args, name) is None:
            print(f"error: --{name} is required", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceFailure, AfmError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
