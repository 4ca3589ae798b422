import csv
import io
import json
import subprocess
import sys

import pytest

from omitted_values.cli import RunConfig, dispatch, load_expected, render
from omitted_values.errors import DomainError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


class TestCommands:
    def test_word(self):
        res = run_json("word", "B A^2")
        assert res["canonical"] == "A^2 B" and res["trace"] == -6
        assert res["matrix"] == [[-7, 4], [-2, 1]]

    def test_a0(self):
        res = run_json("a0", "2", "1")
        assert res["t_min"] == 6 and res["witnesses"] == ["A^2 B"]
        assert res["a0"] == pytest.approx(0.003701599, abs=1e-9)

    def test_candidates(self):
        res = run_json("candidates", "14")
        assert len(res) == 5 and {r["trace"] for r in res} <= {-6, -10, -14, 10, 14, 6}

    def test_bounds(self):
        res = run_json("bounds", "1", "-1")
        assert res["representative"] == [2, 1] and res["nstar"] == 3

    def test_mu(self):
        res = run_json("--tol", "1e-9", "mu", "2", "1")
        assert res["mu"] == pytest.approx(0.0252896, abs=1e-6)

    def test_flags_after_subcommand(self):
        assert run_json("mu", "2", "1", "--tol", "1e-9") == run_json("--tol", "1e-9", "mu", "2", "1")

    def test_table_csv(self):
        code, out, _ = run("--format", "csv", "table-a5", "--extra", "5", "1")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [(r["m"], r["n"]) for r in rows][-1] == ("5", "1") and len(rows) == 6

    def test_length_and_inverse(self):
        t = run_json("invert-length", "3.5")["t"]
        assert run_json("length", str(t))["length"] == pytest.approx(3.5, rel=1e-6)

    def test_choco_text(self):
        code, out, _ = run("--format", "text", "choco")
        assert code == 0 and out.splitlines()[0].split()[0] == "s0"

    def test_conjecture(self):
        res = run_json("conjecture", "2")
        assert res["verified"] and res["k"] == 2

    def test_h_eval(self, covering21):
        res = run_json("h-eval", "0", "0")
        assert res["h"]["re"] == pytest.approx(covering21.h(0).real, abs=1e-9)

    def test_h_sample_deterministic(self):
        a = run("--format", "csv", "h-sample", "3", "--seed", "7")
        assert a == run("--format", "csv", "h-sample", "3", "--seed", "7")
        assert a[1].splitlines()[0] == "re_z,im_z,re_h,im_h"


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ("a0", "2", "2"),
            ("mu", "1", "1"),
            ("length", "1.5"),
            ("conjecture", "5"),
            ("h-eval", "1", "0"),
            ("--tol", "-1", "mu", "2", "1"),
            ("--digits", "5", "mu", "2", "1"),
            ("word", "C"),
            ("nonsense",),
            ("a0", "two", "1"),
        ],
    )
    def test_invalid_input(self, argv):
        code, out, err = run(*argv)
        assert code == 1 and out == "" and err.startswith(("error", "usage"))

    def test_validation_precedes_work(self, monkeypatch):
        import omitted_values.extremal as ex

        def boom(*a, **k):
            raise AssertionError("solver reached")

        monkeypatch.setattr(ex, "mu", boom)
        assert run("mu", "3", "3")[0] == 1

    def test_convergence_failure(self):
        assert run("--max-iter", "2", "--tol", "1e-12", "mu", "2", "1")[0] == 2

    def test_force_has_hard_cap(self):
        assert run("--force", "conjecture", "7")[0] == 1

    def test_run_config(self):
        with pytest.raises(DomainError):
            RunConfig(output_format="xml")
        with pytest.raises(DomainError):
            RunConfig(max_iterations=0)


class TestRender:
    def test_formats(self):
        payload = [{"x": 1.5, "y": "a"}, {"x": 2.0, "y": "b"}]
        assert json.loads(render(payload, "json")) == payload
        assert render(payload, "csv").splitlines() == ["x,y", "1.5,a", "2.0,b"]
        assert render({"x": 1j}, "text").strip() == 'x  {"im": 1.0, "re": 0.0}'


class TestReport:
    def test_expected_file(self):
        specs = load_expected()
        keys = [(s["name"], s["kind"], bool(s.get("warn_only"))) for s in specs]
        assert len(set(keys)) == len(keys)
        for s in specs:
            assert s["kind"] in {"exact", "abs", "rel", "sig", "range", "greater", "at_most", "words"}

    def test_report(self):
        code, out, _ = run("report")
        rep = json.loads(out)
        statuses = {c["name"]: c["status"] for c in rep["checks"]}
        assert statuses["covering.verified"] == "pass"
        assert statuses["a0(2,1).t_min"] == "pass"
        assert code == (0 if rep["passed"] else 3)
        assert rep["failed"] == sum(s == "fail" for s in statuses.values())


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "omitted_values.cli", "word", "A^2 B"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["trace"] == -6
