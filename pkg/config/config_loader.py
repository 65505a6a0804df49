import copy
import os
from pathlib import Path

import yaml

_BASE_DIR = Path(__file__).parent.parent

DEFAULTS = {
    "spectrum": {
        "power_tol": 1e-12,
        "power_max_iter": 10**6,
        "eigen_residual": 1e-9,
        "imag_threshold": 1e-8,
    },
    "roots": {"residual": 1e-10, "modulus_equality": 1e-8},
    "tracking": {"samples": 64, "max_steps": 2**16, "eps": 0.1, "critical_ratio": 0.1},
    "words": {"enumeration_cap": 16, "seed": 20240601},
    "report": {"output_dir": "reports", "format": "json"},
    "logging": {"dir": "logs", "file": "balwords.log"},
}

_FORMATS = ("json", "csv")


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config(config_path: str = None) -> dict:
    """加载 YAML 配置并与内置默认值合并，相对路径按仓库根目录解析"""
    if config_path is None:
        config_path = _BASE_DIR / "config" / "settings.yaml"

    with open(config_path, "r", encoding="utf-8") as f:
        loaded = yaml.safe_load(f) or {}
    if not isinstance(loaded, dict):
        raise ValueError(f"配置文件 {config_path} 的顶层必须是映射")

    config = _merge(DEFAULTS, loaded)

    for section in ("spectrum", "roots", "tracking", "words"):
        for key, value in config[section].items():
            if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
                raise ValueError(f"配置项 {section}.{key} 必须是正数，实际 {value!r}")
    if config["report"]["format"] not in _FORMATS:
        raise ValueError(f"report.format 只能是 {_FORMATS}，实际 {config['report']['format']!r}")

    # 环境变量可覆盖输出目录
    output_dir = os.environ.get("BALWORDS_OUTPUT_DIR") or config["report"]["output_dir"]
    config["report"]["output_dir"] = str(_BASE_DIR / output_dir)
    config["logging"]["dir"] = str(_BASE_DIR / config["logging"]["dir"])

    return config
