import argparse
import json
from fractions import Fraction

import pytest

import main


@pytest.fixture
def run(tmp_path):
    """用临时配置运行 CLI，返回 (退出码, 报告内容)"""
    settings = tmp_path / "settings.yaml"
    settings.write_text(
        f"logging:\n  dir: \"{tmp_path / 'logs'}\"\n",
        encoding="utf-8",
    )
    out = tmp_path / "out"

    def _run(*argv):
        code = main.main(["--config", str(settings), "--output-dir", str(out), *argv])
        files = sorted(out.glob("*")) if out.exists() else []
        return code, files

    return _run


def load_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_parse_rational():
    assert main.parse_rational("2/5") == Fraction(2, 5)
    for bad in ("0.5", "2/4", "3/2", "0/3", "1/2/3"):
        with pytest.raises(argparse.ArgumentTypeError):
            main.parse_rational(bad)


def test_parse_int_list():
    assert main.parse_int_list("1-4") == [1, 2, 3, 4]
    assert main.parse_int_list("5,10,20-21") == [5, 10, 20, 21]
    with pytest.raises(argparse.ArgumentTypeError):
        main.parse_int_list("0,3")


def test_float_alpha_rejected(run):
    with pytest.raises(SystemExit) as exc:
        run("count", "--n", "2", "--alpha", "0.5", "--r", "1")
    assert exc.value.code == 2


def test_count(run):
    code, files = run("count", "--n", "2", "--alpha", "1/2", "--r", "1")
    assert code == 0
    doc = load_json(files[0])
    assert doc["data"]["balanced"] == 3 and doc["data"]["unconstrained"] == 3
    assert doc["config"]["params"]["alpha"] == "1/2"
    assert doc["tool"] == main.TOOL_NAME and doc["version"] == main.__version__


def test_count_full_window(run):
    code, files = run("count", "--n", "10", "--alpha", "1/2", "--r", "10")
    assert code == 0
    assert load_json(files[0])["data"]["balanced"] == 1024


def test_count_checks_against_enumeration(run):
    code, files = run("count", "--n", "12", "--alpha", "2/5", "--r", "2")
    assert code == 0
    assert load_json(files[0])["checks"]["oracle_agrees"]
    _, more = run("count", "--n", "30", "--alpha", "2/5", "--r", "2")
    (new,) = set(more) - set(files)
    assert "oracle_agrees" not in load_json(new)["checks"]


def test_identical_runs_are_byte_identical(run):
    _, files = run("count", "--n", "12", "--alpha", "2/5", "--r", "2")
    first = files[0].read_bytes()
    _, files_again = run("count", "--n", "12", "--alpha", "2/5", "--r", "2")
    assert files_again == files
    assert files[0].read_bytes() == first


def test_growth_csv(run):
    code, files = run("--format", "csv", "growth", "--alpha", "1/2", "--r-list", "1-5")
    assert code == 0
    lines = files[0].read_text(encoding="utf-8").splitlines()
    body = [line for line in lines if not line.startswith("#")]
    assert body[0] == "r,perron,e_alpha_r,tilde_e,gap"
    assert len(body) == 6
    assert body[1].startswith("1,2.618033988749")


def test_spectrum(run):
    code, files = run("spectrum", "--alpha", "1/2", "--r-list", "10,40", "--lo", "1.0", "--hi", "3.5")
    assert code == 0
    doc = load_json(files[0])
    assert doc["checks"] == {
        "counts_nondecreasing": True,
        "det_is_one": True,
        "scan_agrees": True,
        "oscillation_property": True,
    }
    assert [row["count"] for row in doc["data"]["rows"]] == [9, 35]


def test_galois(run):
    code, files = run("galois", "--n", "4", "--p", "2")
    assert code == 0
    data = load_json(files[0])["data"]
    assert data["order"] == 8
    assert data["quotient_order"] == 2 and data["quotient_cyclic"]


def test_galois_size_cap_is_an_error(run):
    code, files = run("galois", "--n", "9", "--p", "2")
    assert code == 2
    assert files == []


def test_poly_at_critical_value(run):
    code, files = run("poly", "--n", "2", "--p", "1", "--lambda", "4")
    assert code == 0
    data = load_json(files[0])["data"]
    assert data["lambda_crit"] == "4/1"
    assert data["double_root"] == "1/1"
    assert data["double_root_observed"][0] == pytest.approx(1.0, abs=1e-6)


def test_poly_ordering(run):
    code, files = run("poly", "--n", "5", "--p", "2", "--lambda", "1/2")
    assert code == 0
    doc = load_json(files[0])
    assert doc["checks"]["modulus_pairing"] and doc["checks"]["modulus_ordering"]
    assert doc["data"]["ordering_case"] == "p even, n odd"


def test_asympt(run):
    code, files = run("asympt", "--r", "50", "--s", "50")
    assert code == 0
    assert load_json(files[0])["data"]["rel_error"] <= 0.02


def test_graph_single_vertex(run, tmp_path):
    graph = tmp_path / "g.txt"
    graph.write_text("1\n0 0 0\n0 0 1\n", encoding="utf-8")
    code, files = run("graph", "--file", str(graph), "--alpha", "1/2", "--r", "2")
    assert code == 0
    assert load_json(files[0])["checks"]["reduces_to_words"] is True


def test_graph_bad_file_is_an_error(run, tmp_path):
    graph = tmp_path / "g.txt"
    graph.write_text("1\n0 0 7\n", encoding="utf-8")
    code, _ = run("graph", "--file", str(graph), "--alpha", "1/2", "--r", "2")
    assert code == 2


def test_continuity(run):
    code, files = run("continuity", "--n", "12", "--alpha", "1/2", "--alpha-prime", "3/5", "--r", "2")
    assert code == 0
    data = load_json(files[0])["data"]
    assert data["k_n"] >= 1


def test_continuity_with_sampled_reprojection(run):
    code, files = run(
        "continuity", "--n", "40", "--alpha", "1/2", "--alpha-prime", "3/5", "--r", "3", "--samples", "50"
    )
    assert code == 0
    doc = load_json(files[0])
    assert doc["checks"]["reprojection"]
    assert doc["data"]["reprojection_failures"] == []


def test_continuity_reports_reprojection_gap(run):
    code, files = run(
        "continuity", "--n", "10", "--alpha", "2/5", "--alpha-prime", "3/7", "--r", "1", "--samples", "1000"
    )
    assert code == 1
    doc = load_json(files[0])
    assert not doc["checks"]["reprojection"]
    assert all(1 <= f["step"] <= 10 for f in doc["data"]["reprojection_failures"])


def test_continuity_order_violation(run):
    code, _ = run("continuity", "--n", "12", "--alpha", "3/5", "--alpha-prime", "1/2", "--r", "2")
    assert code == 2


def test_reproject(run):
    code, files = run("reproject", "--word", "0101", "--alpha", "1/2", "--alpha-prime", "3/5", "--r", "2")
    assert code == 0
    doc = load_json(files[0])
    assert all(doc["checks"].values())
    assert doc["data"]["inserted_zeros"] <= doc["data"]["jmax"]


def test_reproject_construction_failure_is_an_error(run):
    code, files = run("reproject", "--word", "0101111000", "--alpha", "2/5", "--alpha-prime", "3/7", "--r", "1")
    assert code == 2
    assert files == []


def test_approx_inverse_sqrt_two(run):
    code, files = run("approx", "--alpha-real", "1/sqrt(2)", "--r-list", "1,2", "--max-den", "41")
    assert code == 0
    doc = load_json(files[0])
    assert all(doc["checks"].values())
    assert doc["data"]["lower"] == "12/17" and doc["data"]["upper"] == "29/41"
    assert doc["data"]["convergents"] == ["2/3", "5/7", "12/17", "29/41"]
    for row in doc["data"]["rows"]:
        assert row["lower_bound"] <= row["upper_bound"]


def test_approx_rejects_rational(run):
    code, files = run("approx", "--alpha-real", "3/4", "--r-list", "2")
    assert code == 2
    assert files == []


def test_failed_check_exits_one(run, monkeypatch):
    monkeypatch.setitem(main.COMMANDS, "asympt", lambda args, config: ({}, {"forced": False}, []))
    code, files = run("asympt", "--r", "5", "--s", "5")
    assert code == 1
    assert load_json(files[0])["checks"] == {"forced": False}
