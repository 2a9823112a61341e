import json

import pytest

from qplane import atlas, cli
from qplane.atlas import check_n, describe_singularity, dumps, family, stratify, sweep


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_heis_check_ok(capsys):
    code, out, _ = run(["heis-check", "--n", "5"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and set(doc["identities"]) == {"1", "2", "3", "4"}


@pytest.mark.parametrize("n", [3, 6, 9])
def test_n_divisible_by_three_rejected(n, capsys):
    code, _, err = run(["rep", "--n", str(n), "--point", "1,1,1,1"], capsys)
    assert code == 2
    assert "divisible by 3" in err
    with pytest.raises(ValueError):
        check_n(n)


@pytest.mark.parametrize(
    "argv",
    [
        ["rep", "--n", "5"],
        ["rep", "--n", "5", "--point", "1,1"],
        ["rep", "--n", "5", "--point", "1,1,1", "--ideal", "xz", "--chart", "line"],
        ["rep", "--n", "5", "--point", "1,1,1,0"],
        ["tangent", "--n", "5", "--point", "1,1,1,1", "--trace-bound", "0"],
        ["nonsense", "--n", "5"],
        ["sweep", "--n", "5", "--family", "nope"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_math_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli, "verify_generation", lambda n, d: {"ok": False, "failures": [(1, 0, 0)]})
    assert run(["invariants", "--n", "5"], capsys)[0] == 1


def test_arithmetic_error_exit_code(monkeypatch, capsys):
    def boom(*args):
        raise ArithmeticError("relations fail")

    monkeypatch.setattr(atlas, "build_rep", boom)
    assert run(["quiver", "--n", "5", "--point", "1,1,1,1"], capsys)[0] == 1


def test_rep_command(capsys):
    code, out, _ = run(["rep", "--n", "5", "--point", "1,1,1,z"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["relations_hold"]
    assert doc["stratum"]["tag"] == "Azumaya-off-V(xyz)"
    assert doc["conventions"]["version"] == "1"


def test_tangent_command(capsys):
    code, out, _ = run(["tangent", "--n", "5", "--point", "0,1,0,0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert (doc["tangent_dim"], doc["orbit_dim"], doc["normal_dim"]) == (31, 20, 11)


def test_quiver_formats(tmp_path, capsys):
    target = tmp_path / "q.dot"
    assert run(["quiver", "--n", "5", "--point", "0,0,0,0", "--format", "dot", "--out", str(target)], capsys)[0] == 0
    assert target.read_text().startswith("digraph")
    code, out, _ = run(["quiver", "--n", "5", "--point", "0,0,0,0", "--format", "md"], capsys)
    assert code == 0 and "| src | dst |" in out


def test_stabilizer_command(capsys):
    code, out, _ = run(["stabilizer", "--n", "5", "--point", "1,1,0,0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == 5
    assert doc["weighted_quiver"]["stabilizer"]["text"] == "(e1^1 e2^4, rho^1)"


def test_blowup_command(capsys):
    code, out, _ = run(["blowup", "--n", "5", "--ideal", "xz"], capsys)
    assert code == 0
    assert json.loads(out)["certification"]["ok"]


def test_invariants_command(capsys):
    code, out, _ = run(["invariants", "--n", "4", "--degree", "8"], capsys)
    assert code == 0 and json.loads(out)["degree"] == 8


def test_empty_family(capsys):
    code, out, _ = run(["sweep", "--n", "5", "--algebra", "A", "--family", "empty"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["reports"] == [] and doc["errors"] == [] and doc["summary"] == {}


def test_sweep_is_deterministic():
    pts = family("chart-line", 5)
    first = dumps(sweep("chart-line", 5, pts))
    second = dumps(sweep("chart-line", 5, pts))
    assert first == second
    assert dumps(sweep("chart-line", 5, pts, workers=2)) == first


def test_sweep_markdown(capsys):
    code, out, _ = run(["sweep", "--n", "5", "--chart", "line", "--format", "md"], capsys)
    assert code == 0
    assert out.startswith("# chart-line at n=5")


def test_stratify_azumaya():
    r = stratify("A", 5, ("1", "1", "1", "z"))
    assert (r.tangent_dim, r.orbit_dim, r.normal_dim, r.defect) == (27, 24, 3, 0)
    assert r.singularity == "smooth"
    doc = r.to_json()
    assert doc["conventions"]["version"] == "1"


def test_describe_singularity():
    assert describe_singularity("A", "isotypic", None, 5) == "origin-type"
    assert describe_singularity("B-line", "distinct", None, 5) == "non-Azumaya"
    assert describe_singularity("chart-line", "simple", None, 5) == "unreduced"
    assert describe_singularity("B-line", "simple", (0, 3, 1), 5) == "CxC^2/Z_5 (1,-2)"
    assert describe_singularity("A", "simple", (0, 0), 5) == "smooth"
    assert describe_singularity("A", "simple", (0, 3), 5) == "smooth"
    assert describe_singularity("B-line", "simple", (0, 0), 5).startswith("non-smooth")
