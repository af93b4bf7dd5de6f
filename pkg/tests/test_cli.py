from __future__ import annotations

import json

import pytest

from conftest import CORPUS

from frontinv.cli import main


def run_cli(capsys, *args) -> tuple[int, str, str]:
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate(capsys):
    code, out, _ = run_cli(capsys, "validate", str(CORPUS / "trefoil.front"))
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["crossings"] == 3 and data["components"] == 1


def test_validate_error(tmp_path, capsys):
    bad = tmp_path / "bad.front"
    bad.write_text("l1 q2 r1\n")
    code, out, err = run_cli(capsys, "validate", str(bad))
    assert code == 2
    assert "UNKNOWN_TOKEN" in err


def test_invariants(capsys):
    code, out, _ = run_cli(capsys, "invariants", str(CORPUS / "trefoil.front"))
    assert code == 0
    assert json.loads(out) == {"c": 2, "cr": 3, "w": 3, "beta": 1, "r": 0}


def test_rulings_listing(capsys):
    code, out, _ = run_cli(capsys, "rulings", str(CORPUS / "trefoil.front"), "--list")
    data = json.loads(out)
    assert data["count"] == 3
    assert data["polynomial"] == "z^2 + 2"
    assert data["rulings"] == [[1], [1, 2, 3], [3]]


def test_poly_ruling_unknot(capsys):
    code, out, _ = run_cli(capsys, "poly", str(CORPUS / "unknot.front"), "--which", "ruling")
    assert code == 0
    assert json.loads(out) == {"ruling": "1"}


@pytest.mark.parametrize("which", ["ruling", "oruling", "B-leg", "B-topo", "Q"])
def test_poly_all_evaluators_trefoil(capsys, which):
    code, out, _ = run_cli(capsys, "poly", str(CORPUS / "trefoil.front"), "--which", which)
    assert code == 0
    assert json.loads(out) == {which: "z^2 + 2"}


def test_poly_two_variable(capsys):
    code, out, _ = run_cli(capsys, "poly", str(CORPUS / "unlink2.front"), "--which", "kauffman")
    assert json.loads(out) == {"kauffman": "z^-1*a + 1 - z^-1*a^-1"}


def test_poly_trace(tmp_path, capsys):
    trace_path = tmp_path / "trace.jsonl"
    code, out, _ = run_cli(
        capsys,
        "poly",
        str(CORPUS / "trefoil.front"),
        "--which",
        "B-leg",
        "--trace",
        str(trace_path),
    )
    assert code == 0
    lines = [json.loads(line) for line in trace_path.read_text().splitlines()]
    assert lines and all({"rule", "L", "M", "N1", "N2"} <= set(e) for e in lines)


def test_verify_corpus(capsys):
    code, out, _ = run_cli(capsys, "verify", str(CORPUS), "--theorem", "3.1")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["all_agree"] is True
    assert len(report["fronts"]) >= 10
    assert all(rec["agree_3_1"] for rec in report["fronts"].values())


def test_verify_oriented(capsys):
    code, out, _ = run_cli(capsys, "verify", str(CORPUS), "--theorem", "4.1")
    assert code == 0
    report = json.loads(out)
    for rec in report["fronts"].values():
        if "agree_4_1" in rec:
            assert rec["agree_4_1"] is True


def test_verify_corollaries(capsys):
    code, out, _ = run_cli(capsys, "verify", str(CORPUS), "--theorem", "corollaries")
    assert code == 0


def test_verify_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "verify", str(CORPUS))
    _, out2, _ = run_cli(capsys, "verify", str(CORPUS))
    assert out1 == out2


def test_moves_apply(capsys, tmp_path):
    f = tmp_path / "w.front"
    f.write_text("l1 l1 x2 x1 r1 r1\n")
    code, out, _ = run_cli(capsys, "moves", str(f), "--apply", "type2_lo@1")
    assert code == 0
    assert json.loads(out)["front"] == "l1 l2 r1 r1"


def test_moves_random_deterministic(capsys):
    path = str(CORPUS / "trefoil.front")
    _, out1, _ = run_cli(capsys, "moves", path, "--random", "10", "--seed", "3")
    _, out2, _ = run_cli(capsys, "moves", path, "--random", "10", "--seed", "3")
    assert out1 == out2
    assert len(json.loads(out1)["applied"]) == 10


def test_stabilize(capsys):
    code, out, _ = run_cli(
        capsys, "stabilize", str(CORPUS / "unknot.front"), "--site", "1:1"
    )
    assert code == 0
    assert json.loads(out)["front"] == "l1 l1 r2 r1"


def test_pd_export_and_poly_on_pd(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "pd", str(CORPUS / "trefoil.front"))
    assert code == 0
    pd_file = tmp_path / "trefoil.pd"
    pd_file.write_text(out)
    code, out2, _ = run_cli(capsys, "poly", str(pd_file), "--which", "kauffman")
    assert code == 0
    # the distinguished coefficient must still be visible in D
    assert "a" in json.loads(out2)["kauffman"]


def test_crossing_cap(capsys, tmp_path):
    word = "l1 l3 " + "x2 " * 15 + "r1 r1"
    f = tmp_path / "big.front"
    f.write_text(word + "\n")
    code, _, err = run_cli(capsys, "poly", str(f), "--which", "B-topo")
    assert code == 2 and "cap" in err
    code, out, _ = run_cli(capsys, "poly", str(f), "--which", "ruling", "--force")
    assert code == 0
