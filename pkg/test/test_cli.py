import json

import pytest

from genergy.main import main
from genergy.models.census import CensusDocument
from genergy.models.cli import ClassifyOutput, EnumerateOutput, VerifyOutput


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_odd_cycle(capsys):
    code, out, _ = run(capsys, "classify", "--family", "cycle", "--n", "5")
    assert code == 0
    assert "G3" in out
    assert "E=IE" in out


def test_classify_graph6(capsys):
    code, out, _ = run(capsys, "classify", "--graph6", "A_")
    assert code == 0
    assert "subclass    G4" in out


def test_classify_complete_four_json(capsys):
    code, out, _ = run(capsys, "classify", "--family", "complete", "--n", "4", "--format", "json")
    assert code == 0
    result = ClassifyOutput.model_validate_json(out)
    assert result.subclass.value == "G1"
    assert {"E=pi*", "E=LEL"} <= set(result.boundary_flags)
    assert result.prediction.note


def test_classify_first_graph_of_file(capsys, graph6_file):
    code, out, _ = run(capsys, "classify", "--file", str(graph6_file(["Bw", "A_"])), "--format", "csv")
    assert code == 0
    assert out.splitlines()[1].startswith("Bw,3,3,")


def test_disconnected_input_exits_two(capsys):
    code, _, err = run(capsys, "classify", "--graph6", "B_")
    assert code == 2
    assert "disconnected" in err


def test_bad_graph6_exits_one(capsys):
    code, _, err = run(capsys, "classify", "--graph6", "A")
    assert code == 1
    assert "byte 1" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["classify"],
        ["classify", "--graph6", "A_", "--family", "path"],
        ["classify", "--family", "path"],
        ["census"],
        ["census", "--n-range", "5..3"],
        ["census", "--n-range", "abc"],
        ["census", "--n", "3", "--tol-abs", "0"],
        ["verify"],
        ["enumerate", "--n", "0"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


@pytest.mark.parametrize(
    "n, row",
    [("3", "3,2,0,0,1,1,0"), ("6", "6,112,58,39,12,3,0")],
)
def test_census_csv(capsys, n, row):
    code, out, _ = run(capsys, "census", "--n", n, "--format", "csv", "--jobs", "1")
    assert code == 0
    assert out == f"n,total,g1,g2,g3,g4,borderline\n{row}\n"


def test_census_range_json_and_ratios(capsys, tmp_path):
    ratios = tmp_path / "ratios.csv"
    code, out, _ = run(
        capsys, "census", "--n-range", "1..5", "--format", "json", "--jobs", "1", "--ratios-out", str(ratios)
    )
    assert code == 0
    document = CensusDocument.model_validate_json(out)
    assert [row.total for row in document.rows] == [1, 1, 2, 6, 21]
    assert ratios.read_text().splitlines()[-1] == "5,0.571429,0.190476,0.190476,0.047619"


def test_census_output_is_identical_across_job_counts(capsys, tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "census", "--n-range", "1..7", "--format", "csv", "--jobs", "1", "--out", str(first))[0] == 0
    assert run(capsys, "census", "--n-range", "1..7", "--format", "csv", "--jobs", "4", "--out", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_census_table(capsys):
    code, out, _ = run(capsys, "census", "--n-range", "3..4", "--jobs", "1")
    assert code == 0
    assert out.splitlines()[0].split() == ["n", "3", "4"]
    assert "tolerance: abs=1e-09 rel=1e-12" in out


def test_tolerance_override_is_echoed(capsys):
    code, out, _ = run(capsys, "census", "--n", "4", "--format", "json", "--tol-abs", "1e-8", "--jobs", "1")
    assert code == 0
    assert json.loads(out)["tolerance"] == {"abs": 1e-8, "rel": 1e-12}


def test_enumerate(capsys):
    code, out, err = run(capsys, "enumerate", "--n", "1")
    assert (code, out) == (0, "@\n")
    assert "1 connected graphs" in err
    code, out, _ = run(capsys, "enumerate", "--n", "4")
    assert len(out.splitlines()) == 6


def test_enumerate_to_file(capsys, tmp_path):
    target = tmp_path / "five.g6"
    code, out, _ = run(capsys, "enumerate", "--n", "5", "--out", str(target))
    assert code == 0
    assert len(target.read_text().splitlines()) == 21
    assert out.startswith("21 ")


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--format", "json")
    assert EnumerateOutput.model_validate_json(out).count == 2


def test_verify_lemma(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "--samples", "100", "--seed", "3")
    assert code == 0
    assert "PASS  100 random sums (seed 3)" in out


def test_verify_theorems_json(capsys):
    code, out, _ = run(capsys, "verify", "--theorems", "--max-n", "10", "--format", "json")
    assert code == 0
    result = VerifyOutput.model_validate_json(out)
    assert result.passed
    assert result.reports[0].suite == "theorems"


def test_verify_conjecture_prints_trend(capsys):
    code, out, _ = run(capsys, "verify", "--conjecture", "--max-n", "5", "--jobs", "1")
    assert code == 0
    assert "PASS  census n=5" in out
    assert "limits: G1=0.5, G2=0.5, G3=0, G4=0" in out


def test_json_logs(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "2", "-v", "--log-format", "json")
    assert code == 0
    records = [json.loads(line) for line in err.splitlines() if line.startswith("{")]
    assert any(r["message"] == "Command started" for r in records)
