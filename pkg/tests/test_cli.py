from __future__ import annotations

import csv
import io
import json
import math

import pytest

from salpeter_afm.cli import UsageError, main, parse_nmodel, parse_potential, parse_range
from salpeter_afm.potentials import Funnel, PowerLaw, Yukawa

HEADER = ["case", "n", "l", "oracle", "afm_std", "afm_improved", "rel_err_std", "rel_err_improved"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestParsing:
    def test_potentials(self):
        assert parse_potential("linear:a=2") == PowerLaw(2.0, 1.0)
        assert parse_potential("power:a=1,lambda=0.5") == PowerLaw(1.0, 0.5)
        assert parse_potential("funnel:a=1,b=0.4") == Funnel(1.0, 0.4)
        assert parse_potential("yukawa:alpha=0.5,beta=0.1") == Yukawa(0.5, 0.1)

    @pytest.mark.parametrize("bad", ["quartic:a=1", "power:a=1", "linear:a", "linear:a=x"])
    def test_bad_potentials(self, bad):
        with pytest.raises(UsageError):
            parse_potential(bad)

    def test_nmodel(self):
        assert parse_nmodel("published") == "published"
        with pytest.raises(UsageError):
            parse_nmodel("linear:b=1")
        with pytest.raises(UsageError):
            parse_nmodel("cubic")

    def test_ranges(self):
        assert parse_range("3") == [3]
        assert parse_range("0..3") == [0, 1, 2, 3]
        assert parse_range("1,4") == [1, 4]
        assert parse_range("0.1..0.3:0.1", float) == pytest.approx([0.1, 0.2, 0.3])
        with pytest.raises(UsageError):
            parse_range("3..1")


class TestSpectrum:
    def test_csv_header_and_values(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--potential", "linear:a=1", "--n", "0..1",
                           "--format", "csv")
        assert code == 0
        assert out.splitlines()[0].split(",") == HEADER
        got = [float(r["afm_std"]) for r in rows(out)]
        assert got == pytest.approx([2 * math.sqrt(3), math.sqrt(28)], rel=1e-12)

    def test_no_bound_state_sentinel(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--potential", "coulomb:a=3", "--format", "csv")
        assert code == 0
        assert rows(out)[0]["afm_std"] == "no_bound_state"

    def test_malformed_flag_writes_nothing(self, capsys, tmp_path):
        target = tmp_path / "out.csv"
        code, _, err = run(capsys, "spectrum", "--potential", "linear:a=1", "--n", "x..y",
                           "--output", str(target))
        assert code == 2 and not target.exists()
        assert err

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "spectrum", "--potential", "quartic:a=1")
        assert code == 2 and "quartic" in err

    def test_json_deterministic(self, capsys):
        argv = ("spectrum", "--potential", "funnel:a=1,b=0.4", "--mass", "0.3", "--n", "0..2",
                "--format", "json")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second
        doc = json.loads(first)
        assert {"tool", "version", "command", "config", "rows"} <= set(doc)
        assert doc["command"] == "spectrum" and len(doc["rows"]) == 3

    def test_config_file_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# defaults\npotential = linear:a=1\nn = 0..2\nformat = csv\n")
        code, out, _ = run(capsys, "spectrum", "--config", str(cfg))
        assert code == 0 and len(rows(out)) == 3
        code, out, _ = run(capsys, "spectrum", "--config", str(cfg), "--n", "1")
        assert code == 0 and [r["n"] for r in rows(out)] == ["1"]

    def test_missing_config(self, capsys, tmp_path):
        code, _, _ = run(capsys, "spectrum", "--config", str(tmp_path / "nope.cfg"))
        assert code == 2


class TestTable:
    def test_linear_triples(self, capsys):
        code, out, _ = run(capsys, "table", "linear_ur", "--n", "0", "--l", "0", "--format", "csv")
        r = rows(out)[0]
        assert code == 0
        assert float(r["oracle"]) == pytest.approx(3.1577, abs=2e-3)
        assert float(r["afm_improved"]) == pytest.approx(3.1338, abs=5e-5)
        assert float(r["afm_std"]) == pytest.approx(3.4641, abs=5e-5)

    def test_coulomb_triple(self, capsys):
        _, out, _ = run(capsys, "table", "coulomb_rel", "--n", "0", "--l", "0", "--format", "csv")
        r = rows(out)[0]
        assert float(r["oracle"]) == pytest.approx(1.65817, abs=1e-5)
        assert float(r["afm_std"]) == pytest.approx(math.sqrt(3), abs=1e-12)

    def test_funnel_corner(self, capsys, tmp_path):
        target = tmp_path / "t.json"
        code, _, _ = run(capsys, "table", "funnel_ur", "--n", "3", "--l", "3", "--format", "json",
                         "-o", str(target))
        row = json.loads(target.read_text())["rows"][0]
        assert code == 0
        assert row["afm_std"] == pytest.approx(9.0774, abs=5e-5)
        assert row["oracle"] == pytest.approx(8.1957, abs=5e-5)


class TestCheck:
    @pytest.mark.parametrize("suite", ["scaling", "duality", "limits"])
    def test_fast_suites_pass(self, capsys, suite):
        code, out, _ = run(capsys, "check", suite)
        assert code == 0, out

    def test_bounds_suite(self, capsys):
        code, out, _ = run(capsys, "check", "bounds", "--jobs", "2")
        assert code == 0, out

    def test_corrupted_scale_fails(self, capsys):
        code, _, _ = run(capsys, "check", "scaling", "--corrupt-scale", "1.01")
        assert code == 1


class TestOracleAndFit:
    def test_oracle_subcommand(self, capsys):
        code, out, _ = run(capsys, "oracle", "--potential", "linear:a=1", "--n-max", "1",
                           "--format", "csv")
        lines = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(lines) == 2
        assert float(lines[0]["energy"]) == pytest.approx(3.15693, abs=1e-4)

    def test_oracle_nonrelativistic(self, capsys):
        code, out, _ = run(capsys, "oracle", "--potential", "coulomb:a=1", "--nu", "2",
                           "--n-max", "0", "--format", "csv")
        assert code == 0
        assert float(rows(out)[0]["energy"]) == pytest.approx(-0.5, abs=1e-6)

    def test_small_fit(self, capsys):
        code, out, _ = run(capsys, "fit", "ur-powerlaw", "--lambda", "1", "--n-max", "1",
                           "--l-max", "1", "--no-rational", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "fit"
