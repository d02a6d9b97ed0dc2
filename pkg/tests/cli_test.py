from __future__ import annotations

import json
from pathlib import Path

import pytest

from exclo import __version__
from exclo.cli import main


@pytest.fixture(autouse=True)
def default_vertex_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("EXCLO_VERTEX_CAP", raising=False)


def test_rule_out(capsys: pytest.CaptureFixture[str]) -> None:
    # When asking about four copies of the 18-cycle box
    code = main(["rule-out", "4", "18"])

    # Then the odd girth argument rules it out.
    assert code == 0
    assert capsys.readouterr().out == "k=4 n=18: NO_VIOLATION (T13)\n"


def test_rule_out_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--json", "rule-out", "4", "17"]) == 0

    data = json.loads(capsys.readouterr().out)
    assert data == {"k": 4, "n": 17, "verdict": "UNKNOWN", "reason": "open"}


def test_rule_out_out_of_range(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["rule-out", "0", "6"]) == 2
    assert "need k >= 1" in capsys.readouterr().err


def test_graph(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    # Given an output prefix
    out = tmp_path / "square"

    # When exporting the 4-cycle PR box
    code = main(["graph", "--n", "4", "--out", str(out)])

    # Then both files describe the 8-vertex, 12-edge ladder.
    assert code == 0
    assert "p edge 8 12" in (tmp_path / "square.dimacs").read_text()
    document = json.loads((tmp_path / "square.json").read_text())
    assert len(document["vertices"]) == 8
    assert len(document["edges"]) == 12
    assert "8 vertices, 12 edges" in capsys.readouterr().out


def test_graph_with_anti_contexts(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["graph", "--n", "5", "--anti", "0", "1", "2"]) == 0
    assert "10 vertices, 15 edges" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["graph", "--n", "3"],
        ["graph", "--n", "5", "--anti", "0", "1"],
        ["solve", "--k", "2"],
        ["check-coloring", "missing.json", "--bounds", "3", "3"],
    ],
)
def test_usage_errors(argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_product_cap(capsys: pytest.CaptureFixture[str]) -> None:
    # Given 36^4 vertices, past the default cap
    # When building the product
    code = main(["product", "--n", "18", "--k", "4"])

    # Then the budget exit code comes with a pointer to rule-out.
    assert code == 3
    assert "exclo rule-out 4 18" in capsys.readouterr().err


def test_product_cap_from_environment(
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
) -> None:
    monkeypatch.setenv("EXCLO_VERTEX_CAP", "100")

    assert main(["product", "--n", "6", "--k", "2"]) == 3
    assert "rule-out 2 6" in capsys.readouterr().err


def test_product(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["product", "--n", "4", "--k", "2", "--out", str(tmp_path / "p")]) == 0
    assert "64 vertices" in capsys.readouterr().out
    assert (tmp_path / "p.dimacs").exists()

    assert main(["product", "--n", "4", "--k", "2", "--colored"]) == 0
    assert "k=2" in capsys.readouterr().out


def test_solve(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["solve", "--n", "4", "--k", "2"]) == 0
    assert "clique number 5" in capsys.readouterr().out


def test_solve_dimacs_violation(
    tmp_path: Path,
    capsys: pytest.CaptureFixture[str],
) -> None:
    # Given a triangle whose vertices weigh 1/2 each
    path = tmp_path / "triangle.dimacs"
    path.write_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")

    # When searching it for a violation
    code = main(["solve", "--dimacs", str(path), "--weight", "1/2", "--violation"])

    # Then the whole triangle is reported.
    assert code == 0
    assert capsys.readouterr().out == (
        "violation: clique [0, 1, 2] of weight 3/2, excess 1/2\n"
    )


def test_activate_and_check_certificate(
    tmp_path: Path,
    capsys: pytest.CaptureFixture[str],
) -> None:
    # Given a certificate written by the activation search
    path = tmp_path / "certificate.json"
    assert main(["activate", "4", "2", "--certificate", str(path)]) == 0
    assert "excess 1/4" in capsys.readouterr().out

    # When checking it
    code = main(["check-certificate", str(path)])

    # Then it is valid.
    assert code == 0
    assert capsys.readouterr().out.startswith("VALID: clique of 5 joint events")


def test_tampered_certificate(
    tmp_path: Path,
    capsys: pytest.CaptureFixture[str],
) -> None:
    path = tmp_path / "certificate.json"
    assert main(["activate", "5", "2", "--certificate", str(path)]) == 0
    data = json.loads(path.read_text())
    data["weight_sum"] = "2"
    path.write_text(json.dumps(data))
    capsys.readouterr()

    assert main(["check-certificate", str(path)]) == 1
    assert capsys.readouterr().out.startswith("INVALID: ")


def test_activate_without_violation(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--json", "activate", "6", "2"]) == 0
    assert json.loads(capsys.readouterr().out) == {"violation": None}


def test_edge_budget(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["edge-budget", "4", "6"]) == 0
    assert capsys.readouterr().out == (
        "K_17 has 136 edges; one copy must carry 34 of its 18: does not fit\n"
    )


def test_search_and_check_coloring(
    tmp_path: Path,
    capsys: pytest.CaptureFixture[str],
) -> None:
    # Given a triangle-free 2-coloring of K_5 found by the search
    path = tmp_path / "coloring.json"
    assert main(["search-coloring", "5", "2", "3", "3", "--out", str(path)]) == 0
    capsys.readouterr()

    # When checking it against its own bounds and against (3, 5)
    clean = main(["check-coloring", str(path)])
    clean_out = capsys.readouterr().out
    hit = main(["check-coloring", str(path), "--bounds", "3", "5"])
    hit_out = capsys.readouterr().out

    # Then only the second check finds a 5-cycle.
    assert clean == 0
    assert clean_out.startswith("OK: K_5 in 2 colors")
    assert hit == 1
    assert hit_out.startswith("FOUND: color 2")


def test_search_coloring_none(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["search-coloring", "6", "2", "3", "3"]) == 0
    assert capsys.readouterr().out.startswith("no coloring of K_6")


def test_search_coloring_budget(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["search-coloring", "5", "2", "3", "3", "--time-budget", "0"]) == 3
    assert "budget exceeded" in capsys.readouterr().err


def test_verify(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "report.json"

    assert main(["verify", "C7", "--out", str(path)]) == 0
    assert json.loads(path.read_text())["failed"] is False
    assert "C7 k=1 n=4: PASS" in capsys.readouterr().out


def test_verify_rejects_unknown_tags() -> None:
    with pytest.raises(SystemExit) as info:
        main(["verify", "T99"])

    assert info.value.code == 2


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    with pytest.raises(SystemExit):
        main(["--version"])

    assert capsys.readouterr().out.strip() == __version__
