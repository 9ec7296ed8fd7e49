"""Command-line behavior: golden outputs, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from markov_fuzzy.cli import main

DYADIC_JOINT = '{"arity": 2, "probs": [0.125, 0.25, 0.25, 0.375]}'
DYADIC_SPEC = '{"marginals": [0.75, 0.5]}'
TABLE = '{"universe": ["a", "b"], "p": {"a": 0.25, "b": 0.5}}'


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_golden_json(self, tmp_path, capsys):
        path = write(tmp_path, "joint.json", DYADIC_JOINT)
        code, out, _ = run(capsys, ["eval", "--formula", "P1 & P2", "--input", path])
        assert code == 0
        assert out == (
            '{"true": 0.375, "distribution": {"false": 0.625, "true": 0.375}}\n'
        )

    def test_golden_csv(self, tmp_path, capsys):
        path = write(tmp_path, "joint.json", DYADIC_JOINT)
        code, out, _ = run(
            capsys,
            ["eval", "--formula", "P1 & P2", "--input", path, "--format", "csv"],
        )
        assert code == 0
        assert out == "outcome,probability\nfalse,0.625\ntrue,0.375\n"

    def test_reference_conjunction(self, tmp_path, capsys):
        path = write(
            tmp_path, "joint.json", '{"arity": 2, "probs": [0.1, 0.2, 0.3, 0.4]}'
        )
        code, out, _ = run(capsys, ["eval", "--formula", "P1 & P2", "--input", path])
        assert code == 0
        assert json.loads(out)["true"] == 0.4

    def test_tautology(self, tmp_path, capsys):
        path = write(tmp_path, "joint.json", '{"arity": 1, "probs": [0.25, 0.75]}')
        code, out, _ = run(capsys, ["eval", "--formula", "P1 | !P1", "--input", path])
        assert code == 0
        assert json.loads(out)["true"] == 1.0

    def test_arity_mismatch_exit_3(self, tmp_path, capsys):
        path = write(tmp_path, "joint.json", DYADIC_JOINT)
        code, _, err = run(
            capsys, ["eval", "--formula", "P1 & P2 & P3", "--input", path]
        )
        assert code == 3
        assert "ArityMismatch" in err

    def test_parse_error_exit_2(self, tmp_path, capsys):
        path = write(tmp_path, "joint.json", DYADIC_JOINT)
        code, _, err = run(capsys, ["eval", "--formula", "P1 &", "--input", path])
        assert code == 2
        assert "ParseError" in err

    def test_bad_joint_exit_2(self, tmp_path, capsys):
        path = write(tmp_path, "joint.json", '{"arity": 1, "probs": [0.5, 0.4]}')
        code, _, err = run(capsys, ["eval", "--formula", "P1", "--input", path])
        assert code == 2
        assert "NotNormalized" in err

    def test_missing_file_exit_2(self, tmp_path, capsys):
        code, _, err = run(
            capsys, ["eval", "--formula", "P1", "--input", str(tmp_path / "nope")]
        )
        assert code == 2


class TestBounds:
    def test_and_bounds(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", DYADIC_SPEC)
        code, out, _ = run(capsys, ["bounds", "--formula", "P1 & P2", "--input", path])
        assert code == 0
        result = json.loads(out)
        assert result["lo"] == pytest.approx(0.25, abs=1e-9)
        assert result["hi"] == pytest.approx(0.5, abs=1e-9)
        assert result["classic"] == {"kind": "and", "lo": "and_min", "hi": "and_max"}

    def test_unrecognized_formula_has_no_classic_field(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", DYADIC_SPEC)
        code, out, _ = run(
            capsys, ["bounds", "--formula", "P1 & !P2", "--input", path]
        )
        assert code == 0
        assert "classic" not in json.loads(out)

    def test_independent_degenerate(self, tmp_path, capsys):
        path = write(
            tmp_path, "spec.json", '{"marginals": [0.75, 0.5], "independent": true}'
        )
        code, out, _ = run(capsys, ["bounds", "--formula", "P1 & P2", "--input", path])
        assert code == 0
        result = json.loads(out)
        assert result["lo"] == result["hi"] == pytest.approx(0.375, abs=1e-12)

    def test_infeasible_pairwise_exit_2(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "spec.json",
            '{"marginals": [0.7, 0.6], "pairwise": {"1,2": 0.9}}',
        )
        code, _, err = run(capsys, ["bounds", "--formula", "P1 & P2", "--input", path])
        assert code == 2
        assert "InfeasibleQ" in err

    def test_deterministic(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", DYADIC_SPEC)
        argv = ["bounds", "--formula", "P1 | P2", "--input", path]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second


class TestSweep:
    def test_golden_csv(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", DYADIC_SPEC)
        code, out, _ = run(capsys, ["sweep", "--input", path, "--steps", "3"])
        assert code == 0
        assert out == (
            "q,and_q,or_q,implies_q\n"
            "0,0.25,1,0.5\n"
            "0.125,0.375,0.875,0.625\n"
            "0.25,0.5,0.75,0.75\n"
        )

    def test_formula_column(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", DYADIC_SPEC)
        code, out, _ = run(
            capsys,
            ["sweep", "--input", path, "--steps", "3", "--formula", "P1 & P2"],
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "q,and_q,or_q,implies_q,formula"
        for line in lines[1:]:
            cells = line.split(",")
            assert cells[4] == cells[1]  # the formula is the conjunction

    def test_degenerate_interval_single_row(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", '{"marginals": [1.0, 1.0]}')
        code, out, _ = run(capsys, ["sweep", "--input", path, "--steps", "5"])
        assert code == 0
        assert out == "q,and_q,or_q,implies_q\n0,1,1,1\n"

    def test_zero_steps_exit_2(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", DYADIC_SPEC)
        code, _, err = run(capsys, ["sweep", "--input", path, "--steps", "0"])
        assert code == 2

    def test_wrong_arity_exit_3(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", '{"marginals": [0.5, 0.5, 0.5]}')
        code, _, _ = run(capsys, ["sweep", "--input", path, "--steps", "3"])
        assert code == 3

    def test_json_format(self, tmp_path, capsys):
        path = write(tmp_path, "spec.json", DYADIC_SPEC)
        code, out, _ = run(
            capsys, ["sweep", "--input", path, "--steps", "2", "--format", "json"]
        )
        assert code == 0
        rows = json.loads(out)
        assert [row["q"] for row in rows] == [0.0, 0.25]


class TestQuantify:
    def test_bounds_golden(self, tmp_path, capsys):
        path = write(tmp_path, "table.json", TABLE)
        code, out, _ = run(capsys, ["quantify", "bounds", "--input", path])
        assert code == 0
        assert out == '{"lo": 0.5, "hi": 0.75}\n'

    def test_sample_deterministic(self, tmp_path, capsys):
        path = write(tmp_path, "table.json", TABLE)
        argv = [
            "quantify",
            "sample",
            "--input",
            path,
            "--seed",
            "42",
            "--samples",
            "500",
        ]
        code, first, _ = run(capsys, argv)
        assert code == 0
        _, second, _ = run(capsys, argv)
        assert first == second
        result = json.loads(first)
        assert result["n"] == 500
        assert result["seed"] == 42
        assert 0.0 <= result["mean"] <= 1.0

    def test_sample_radius_uses_delta(self, tmp_path, capsys):
        path = write(tmp_path, "table.json", TABLE)
        _, out, _ = run(
            capsys,
            [
                "quantify",
                "sample",
                "--input",
                path,
                "--samples",
                "100",
                "--delta",
                "0.5",
            ],
        )
        import math

        assert json.loads(out)["radius"] == pytest.approx(
            math.sqrt(math.log(4.0) / 200.0)
        )

    def test_empty_universe_exit_2(self, tmp_path, capsys):
        path = write(tmp_path, "table.json", '{"universe": [], "p": {}}')
        code, _, err = run(capsys, ["quantify", "bounds", "--input", path])
        assert code == 2

    def test_schema_error_exit_2(self, tmp_path, capsys):
        path = write(tmp_path, "table.json", DYADIC_SPEC)
        code, _, err = run(capsys, ["quantify", "bounds", "--input", path])
        assert code == 2
        assert "SchemaError" in err


class TestArityCap:
    def test_env_lowers_cap(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("MARKOV_FUZZY_MAX_ARITY", "1")
        path = write(tmp_path, "joint.json", DYADIC_JOINT)
        code, _, err = run(capsys, ["eval", "--formula", "P1 & P2", "--input", path])
        assert code == 4
        assert "ArityTooLarge" in err

    def test_env_cannot_raise_cap(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("MARKOV_FUZZY_MAX_ARITY", "99")
        path = write(tmp_path, "joint.json", DYADIC_JOINT)
        code, _, _ = run(capsys, ["eval", "--formula", "P1 & P2", "--input", path])
        assert code == 0

    def test_invalid_env_exit_2(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("MARKOV_FUZZY_MAX_ARITY", "lots")
        path = write(tmp_path, "joint.json", DYADIC_JOINT)
        code, _, _ = run(capsys, ["eval", "--formula", "P1 & P2", "--input", path])
        assert code == 2


class TestUsage:
    def test_missing_subcommand(self, capsys):
        assert main([]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0

    def test_module_entry_point(self, tmp_path):
        path = write(tmp_path, "table.json", TABLE)
        proc = subprocess.run(
            [sys.executable, "-m", "markov_fuzzy", "quantify", "bounds", "--input", path],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout) == {"lo": 0.5, "hi": 0.75}
