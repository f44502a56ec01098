"""
Tests for the command-line interface.
"""

import json

import pytest
from click.testing import CliRunner

from seminorm_lab import __version__
from seminorm_lab.cli import cli
from seminorm_lab.output_formatter import ROW_COLUMNS, SCHEMA


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args):
    return runner.invoke(cli, args, obj={})


class TestDemoCommand:
    """`demo` runs and lists the named demos."""

    def test_version(self, runner):
        """--version prints the package version."""
        result = invoke(runner, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_list(self, runner):
        """Every demo id is listed."""
        result = invoke(runner, ["demo", "list"])
        assert result.exit_code == 0
        for demo_id in ("thm4", "thm5", "ex1", "ex2", "ex3", "ex4", "incomplete", "thm6"):
            assert demo_id in result.output

    def test_thm4(self, runner):
        """A passing demo exits 0."""
        result = invoke(runner, ["demo", "thm4", "--n-max", "10", "--samples", "10"])
        assert result.exit_code == 0
        assert "PASS" in result.stdout

    def test_json(self, runner):
        """--format json prints one JSON document."""
        result = invoke(runner, ["demo", "ex2", "--n-max", "5", "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["schema"] == SCHEMA
        assert data["n_max"] == 5
        assert data["rows"][-1] == [5, "1", "1/5", "1/5"]

    def test_unknown_demo(self, runner):
        """Unknown ids are usage errors."""
        assert invoke(runner, ["demo", "thm7"]).exit_code == 2

    def test_n_max_too_small(self, runner):
        """n_max must be at least 2."""
        assert invoke(runner, ["demo", "thm4", "--n-max", "1"]).exit_code == 2

    def test_bad_format(self, runner):
        """Unknown formats are usage errors."""
        assert invoke(runner, ["demo", "ex2", "--format", "xml"]).exit_code == 2

    def test_save(self, runner, tmp_path):
        """-o writes the rendered output."""
        target = tmp_path / "ex2.csv"
        result = invoke(runner, ["demo", "ex2", "--n-max", "4", "--format", "csv", "-o", str(target)])
        assert result.exit_code == 0
        assert target.read_text(encoding="utf-8").startswith("n,S(g_n)")

    def test_save_to_directory(self, runner, tmp_path):
        """A directory target gets a file named after the demo with the format's extension."""
        result = invoke(runner, ["demo", "ex2", "--n-max", "4", "--format", "json", "-o", str(tmp_path)])
        assert result.exit_code == 0
        assert json.loads((tmp_path / "ex2.json").read_text(encoding="utf-8"))["demo"] == "ex2"

    def test_save_adds_extension(self, runner, tmp_path):
        """A bare file name takes the format's extension."""
        result = invoke(runner, ["demo", "ex2", "--n-max", "4", "--format", "csv", "-o", str(tmp_path / "report")])
        assert result.exit_code == 0
        assert (tmp_path / "report.csv").exists()

    def test_csv_lists_terms(self, runner):
        """CSV output carries one line per certificate term."""
        result = invoke(runner, ["demo", "ex2", "--n-max", "4", "--format", "csv"])
        assert ",".join(ROW_COLUMNS) in result.stdout.splitlines()

    def test_config_file(self, runner, tmp_path):
        """The YAML file sets defaults; flags still win."""
        path = tmp_path / "lab.yaml"
        path.write_text("n_max: 6\noutput_format: json\nsamples: 5\n", encoding="utf-8")
        result = invoke(runner, ["--config-file", str(path), "demo", "ex3"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["n_max"] == 6
        result = invoke(runner, ["--config-file", str(path), "demo", "ex3", "--n-max", "3"])
        assert json.loads(result.stdout)["n_max"] == 3


class TestCheckCommands:
    """`check` runs single checkers on textual specs."""

    def test_quotient(self, runner):
        """dist_1(e1, span{e1+e2}) = 1."""
        result = invoke(
            runner, ["check", "quotient", "--norm", "l1", "--basis", "[e1+e2]", "--point", "e1", "--format", "json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["rows"][0] == ["value", "1"]
        assert data["rows"][2] == ["point in V", "no"]
        assert data["passed"] is True

    def test_quotient_unsupported_norm(self, runner):
        """Non-polyhedral ambients fail with exit 1."""
        result = invoke(runner, ["check", "quotient", "--norm", "coord:1", "--basis", "e1+e2", "--point", "e1"])
        assert result.exit_code == 1

    def test_parse_error(self, runner):
        """Unparseable specs are usage errors."""
        result = invoke(runner, ["check", "axioms", "--spec", "l2"])
        assert result.exit_code == 2
        assert "Expected a functional" in result.output

    def test_axioms(self, runner):
        """Quotient seminorms pass the sampled axioms."""
        result = invoke(runner, ["check", "axioms", "--spec", "quotient:linf:basis=[e1+e2]", "--samples", "10"])
        assert result.exit_code == 0

    def test_majorize(self, runner):
        """linf <= l1 holds; linf <= coord:1 does not."""
        assert invoke(runner, ["check", "majorize", "--lower", "linf", "--upper", "l1", "--samples", "50"]).exit_code == 0
        assert invoke(runner, ["check", "majorize", "--lower", "linf", "--upper", "coord:1", "--samples", "50"]).exit_code == 1

    def test_equivalence(self, runner):
        """Small constants survive short flat blocks."""
        args = ["check", "equivalence", "--n1", "l1", "--n2", "linf", "--beta", "1/100", "--gamma", "1", "--n-max", "10"]
        assert invoke(runner, args).exit_code == 0
        args[args.index("1/100")] = "1/2"
        assert invoke(runner, args).exit_code == 1

    def test_equivalence_bad_constants(self, runner):
        """beta > gamma fails with exit 1."""
        args = ["check", "equivalence", "--n1", "l1", "--n2", "linf", "--beta", "2", "--gamma", "1"]
        assert invoke(runner, args).exit_code == 1

    def test_equivalence_sweep(self, runner):
        """--betas reports the first refuting term and exits 0 only if every candidate falls."""
        args = ["check", "equivalence", "--n1", "l1", "--n2", "linf", "--betas", "1,1/2", "--format", "json"]
        result = invoke(runner, args)
        assert result.exit_code == 0
        assert json.loads(result.stdout)["reports"][0]["lower_witnesses"] == {"1": 2, "1/2": 3}
        args = ["check", "equivalence", "--n1", "l1", "--n2", "linf", "--betas", "1/100", "--n-max", "50"]
        assert invoke(runner, args).exit_code == 1

    def test_equivalence_sweep_to_directory(self, runner, tmp_path):
        """Checks saved into a directory are named after the command."""
        args = ["check", "equivalence", "--n1", "l1", "--n2", "linf", "--gammas", "1/2", "--format", "json"]
        result = invoke(runner, args + ["-o", str(tmp_path)])
        assert result.exit_code == 0
        assert (tmp_path / "check-equivalence.json").exists()

    def test_equivalence_needs_one_mode(self, runner):
        """Constants and candidate lists are mutually exclusive, and one of them is required."""
        base = ["check", "equivalence", "--n1", "l1", "--n2", "linf"]
        assert invoke(runner, base).exit_code == 2
        assert invoke(runner, base + ["--beta", "1/2"]).exit_code == 2
        assert invoke(runner, base + ["--beta", "1/2", "--gamma", "1", "--betas", "1"]).exit_code == 2

    def test_equivalence_sweep_rejects_nonpositive(self, runner):
        """Candidate constants must be positive."""
        args = ["check", "equivalence", "--n1", "l1", "--n2", "linf", "--betas", "0,1"]
        assert invoke(runner, args).exit_code == 1

    def test_verbose_lists_terms(self, runner):
        """-v adds the per-term rows to table output."""
        args = ["check", "equivalence", "--n1", "l1", "--n2", "linf", "--beta", "1/100", "--gamma", "1", "--n-max", "3"]
        assert "N2(x_n) <= gamma*N1(x_n)" not in invoke(runner, args).stdout
        assert "N2(x_n) <= gamma*N1(x_n)" in invoke(runner, ["-v"] + args).stdout

    def test_positive(self, runner):
        """l1 never vanishes off zero; |xi_1| does."""
        assert invoke(runner, ["check", "positive", "--spec", "l1", "--samples", "50"]).exit_code == 0
        assert invoke(runner, ["check", "positive", "--spec", "coord:1", "--samples", "50"]).exit_code == 1

    def test_lp(self, runner):
        """Random LP certificates verify."""
        assert invoke(runner, ["check", "lp", "--samples", "20"]).exit_code == 0


class TestLpCommand:
    """`lp solve` reads a JSON problem."""

    def test_solve(self, runner, tmp_path):
        """The optimum and its certificate are printed."""
        path = tmp_path / "problem.json"
        path.write_text(
            json.dumps({"objective": [1, 1], "matrix": [[1, 2], [3, 1]], "rhs": [2, 3], "row_kinds": [">=", ">="]}),
            encoding="utf-8",
        )
        result = invoke(runner, ["lp", "solve", str(path), "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["status"] == "optimal"
        assert data["value"] == "7/5"
        assert data["certified"] is True

    def test_malformed(self, runner, tmp_path):
        """Bad documents exit 1."""
        path = tmp_path / "problem.json"
        path.write_text("{not json", encoding="utf-8")
        assert invoke(runner, ["lp", "solve", str(path)]).exit_code == 1
