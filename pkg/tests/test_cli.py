"""
Tests for the command-line entry point.

Each test runs main() against signature and rule files written to a temp
directory and checks stdout and the exit code.
"""

import pytest

from src import cli
from src.constants import DEFAULT_STEP_BOUND, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_NEGATIVE, EXIT_OK


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_prints_type(workspace_files, capsys):
    code, out, _ = run(capsys, "check", "-s", workspace_files / "twocolour.sig", "o2 ; o1")

    assert code == EXIT_OK
    assert out == "o2 ; o1 : dd -> cd\n"


def test_check_empty_term(workspace_files, capsys):
    code, out, _ = run(capsys, "check", "-s", workspace_files / "twocolour.sig", "empty")

    assert code == EXIT_OK
    assert out == "empty : ε -> ε\n"


def test_check_reports_type_error(workspace_files, capsys):
    code, out, err = run(capsys, "check", "-s", workspace_files / "twocolour.sig", "o1 ; o1")

    assert code == EXIT_ERROR
    assert out == ""
    assert err.startswith("error:")


def test_missing_signature_file(tmp_path, capsys):
    code, _, err = run(capsys, "check", "-s", tmp_path / "nope.sig", "o1")

    assert code == EXIT_ERROR
    assert "nope.sig" in err


def test_translate_text(workspace_files, capsys):
    code, out, _ = run(capsys, "translate", "-s", workspace_files / "twocolour.sig", "mult[c]")

    assert code == EXIT_OK
    assert out == "node n0 : c\nleft: n0 n0\nright: n0\n"


def test_translate_dot(workspace_files, capsys):
    code, out, _ = run(capsys, "translate", "-s", workspace_files / "twocolour.sig", "o1", "--format", "dot")

    assert code == EXIT_OK
    assert out.startswith('digraph "cospan"')
    assert "shape=box" in out


def test_equal_terms(workspace_files, capsys):
    code, out, _ = run(capsys, "equal", "-s", workspace_files / "twocolour.sig", "comult[c] ; mult[c]", "id[c]")

    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "EQUAL"
    assert lines[1].startswith("witness: nodes [n0->n0]")


def test_different_terms(workspace_files, capsys):
    code, out, _ = run(capsys, "equal", "-s", workspace_files / "twocolour.sig", "sym[c, c]", "id[c c]")

    assert code == EXIT_NEGATIVE
    assert out == "DIFFERENT\n"


def test_terms_of_different_types(workspace_files, capsys):
    code, out, _ = run(capsys, "equal", "-s", workspace_files / "twocolour.sig", "id[c]", "id[d]")

    assert code == EXIT_NEGATIVE
    assert out.startswith("DIFFERENT (types c -> c and d -> d)")


def test_rewrite_one_step(workspace_files, capsys):
    code, out, _ = run(
        capsys, "rewrite", "-s", workspace_files / "unary.sig", "-r", workspace_files / "branch.rules", "g"
    )

    assert code == EXIT_OK
    assert "# result 0: g_to_f" in out
    assert "# result 1: g_to_h" in out
    assert "# result 2" not in out


def test_rewrite_without_redex(workspace_files, capsys):
    code, out, _ = run(
        capsys, "rewrite", "-s", workspace_files / "unary.sig", "-r", workspace_files / "branch.rules", "f ; h"
    )

    assert code == EXIT_OK
    assert out == "# no rewrite applies\n"


def test_rewrite_trace(workspace_files, capsys):
    code, out, _ = run(
        capsys,
        "rewrite", "-s", workspace_files / "unary.sig", "-r", workspace_files / "branch.rules", "g", "--trace",
    )

    assert code == EXIT_OK
    assert "# rule g_to_f\n## L\n" in out
    assert "## C" in out


def test_rewrite_normalize(workspace_files, capsys):
    code, out, _ = run(
        capsys,
        "rewrite", "-s", workspace_files / "unary.sig", "-r", workspace_files / "diamond.rules", "g ; h",
        "--mode", "normalize",
    )

    assert code == EXIT_OK
    assert "# normal form 0" in out
    assert "# normal form 1" not in out


def test_rewrite_normalize_hits_bound(workspace_files, capsys):
    grow = workspace_files / "grow.rules"
    grow.write_text("rule grow : f => f ; f\n", encoding="utf-8")

    code, _, err = run(
        capsys,
        "rewrite", "-s", workspace_files / "unary.sig", "-r", grow, "f", "--mode", "normalize", "--bound", "2",
    )

    assert code == EXIT_INCONCLUSIVE
    assert "bound 2" in err


def test_rewrite_normalize_forms_at_the_bound(workspace_files, capsys):
    code, out, err = run(
        capsys,
        "rewrite", "-s", workspace_files / "unary.sig", "-r", workspace_files / "branch.rules", "g",
        "--mode", "normalize", "--bound", "1",
    )

    assert code == EXIT_OK
    assert "# normal form 0" in out
    assert "# normal form 1" in out
    assert "search stopped" not in err


def test_duplicate_rule_names_across_files(workspace_files, capsys):
    rules = workspace_files / "branch.rules"
    code, _, err = run(capsys, "rewrite", "-s", workspace_files / "unary.sig", "-r", rules, "-r", rules, "g")

    assert code == EXIT_ERROR
    assert "duplicate rule names" in err


def test_cps_lists_pairs(workspace_files, capsys):
    code, out, _ = run(capsys, "cps", "-s", workspace_files / "unary.sig", "-r", workspace_files / "branch.rules")

    assert code == EXIT_OK
    assert out.startswith("# ")
    assert "critical pairs" in out.splitlines()[0]
    assert "# critical pair 0:" in out
    assert "## J" in out


def test_confluence_not_confluent(workspace_files, capsys):
    code, out, _ = run(
        capsys,
        "confluence", "-s", workspace_files / "unary.sig", "-r", workspace_files / "branch.rules",
        "--assert-terminating",
    )

    assert code == EXIT_NEGATIVE
    assert out.splitlines()[0] == "NOT_CONFLUENT"
    assert "# critical pair" in out


def test_confluence_writes_certificates(workspace_files, capsys):
    certificates = workspace_files / "certs"
    code, out, _ = run(
        capsys,
        "confluence", "-s", workspace_files / "unary.sig", "-r", workspace_files / "diamond.rules",
        "--assert-terminating", "--certificates", certificates,
    )

    assert code == EXIT_OK
    assert out.splitlines()[0] == "CONFLUENT"
    files = sorted(certificates.glob("pair_*.txt"))
    assert files
    assert all("# joined after" in f.read_text(encoding="utf-8") for f in files)


def test_render_term(workspace_files, capsys):
    code, out, _ = run(capsys, "render", "-s", workspace_files / "twocolour.sig", "--term", "o2 ; o1")

    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert out.count("shape=box") == 2


def test_render_graph_file(workspace_files, capsys):
    graph = workspace_files / "g.hyp"
    graph.write_text("node x : c\nnode y : c\nnode z : d\nedge e : o1 (x) -> (y z)\n", encoding="utf-8")

    code, out, _ = run(capsys, "render", "-s", workspace_files / "twocolour.sig", "--graph", graph)

    assert code == EXIT_OK
    assert '"e0" [shape=box, label="o1"]' in out


def test_usage_error_exits_with_error_code(workspace_files, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["confluence", "-s", str(workspace_files / "unary.sig"), "--bound", "0"])

    assert info.value.code == EXIT_ERROR
    assert "must be positive" in capsys.readouterr().err


def test_bound_from_environment(monkeypatch):
    monkeypatch.setenv("HYPERREWRITE_BOUND", "3")

    assert cli._resolve_bound(None, DEFAULT_STEP_BOUND) == 3
    assert cli._resolve_bound(5, DEFAULT_STEP_BOUND) == 5


def test_invalid_bound_falls_back_with_warning(monkeypatch):
    warnings = []
    monkeypatch.setenv("HYPERREWRITE_BOUND", "lots")
    monkeypatch.setattr(cli.logger, "warning", lambda *args: warnings.append(args))

    assert cli._resolve_bound(None, DEFAULT_STEP_BOUND) == DEFAULT_STEP_BOUND
    assert len(warnings) == 1
    assert "HYPERREWRITE_BOUND" in warnings[0]


def test_blank_bound_uses_default(monkeypatch):
    monkeypatch.setenv("HYPERREWRITE_BOUND", "  ")

    assert cli._resolve_bound(None, None) is None
