from pathlib import Path

import pytest

from config import load_config

ROOT = Path(__file__).resolve().parent.parent


def test_default_config_loads():
    config = load_config()
    assert config["spectrum"]["power_tol"] == 1e-12
    assert config["tracking"]["max_steps"] == 65536
    assert config["words"] == {"enumeration_cap": 16, "seed": 20240601}
    assert config["report"]["format"] == "json"
    assert Path(config["report"]["output_dir"]) == ROOT / "reports"
    assert Path(config["logging"]["dir"]) == ROOT / "logs"


def test_partial_file_merges_over_defaults(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("roots:\n  residual: 1.0e-8\nreport:\n  format: csv\n", encoding="utf-8")
    config = load_config(path)
    assert config["roots"]["residual"] == 1e-8
    assert config["roots"]["modulus_equality"] == 1e-8
    assert config["spectrum"]["eigen_residual"] == 1e-9
    assert config["report"]["format"] == "csv"


@pytest.mark.parametrize(
    "text",
    [
        "spectrum:\n  power_tol: -1\n",
        "tracking:\n  samples: 0\n",
        "words:\n  enumeration_cap: 0\n",
        "roots:\n  residual: fast\n",
        "report:\n  format: xml\n",
        "- just\n- a list\n",
    ],
)
def test_invalid_values_rejected(tmp_path, text):
    path = tmp_path / "settings.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ValueError):
        load_config(path)


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("BALWORDS_OUTPUT_DIR", str(tmp_path / "out"))
    assert Path(load_config()["report"]["output_dir"]) == tmp_path / "out"


def test_missing_file():
    with pytest.raises(OSError):
        load_config("/nonexistent/settings.yaml")
