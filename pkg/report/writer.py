import csv
import hashlib
import io
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

logger = logging.getLogger(__name__)


def normalize(value: Any) -> Any:
    """转成可序列化的纯 Python 值，浮点保留 15 位有效数字"""
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [normalize(v) for v in items]
    if isinstance(value, np.ndarray):
        return normalize(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (complex, np.complexfloating)):
        return [normalize(float(value.real)), normalize(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if value != value or value in (float("inf"), float("-inf")):
            return str(value)
        return float(f"{value:.15g}")
    if value is None or isinstance(value, str):
        return value
    return str(value)


def config_digest(config: Dict[str, Any]) -> str:
    text = json.dumps(normalize(config), sort_keys=True, ensure_ascii=False)
    return hashlib.sha1(text.encode("utf-8")).hexdigest()[:10]


class ReportWriter:
    """将一次运行的结果写成自描述的 JSON 或 CSV 文件，相同配置得到相同字节"""

    def __init__(self, output_dir: str, tool: str = "balwords", version: str = "0.0.0"):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.tool = tool
        self.version = version

    def _report_filename(self, command: str, config: Dict[str, Any], fmt: str) -> str:
        return f"{command}_{config_digest(config)}.{fmt}"

    def render_json(self, command: str, config: Dict[str, Any], data: Dict[str, Any], checks: Dict[str, bool]) -> str:
        document = {
            "tool": self.tool,
            "version": self.version,
            "command": command,
            "config": config,
            "checks": checks,
            "data": data,
        }
        return json.dumps(normalize(document), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def render_csv(
        self,
        command: str,
        config: Dict[str, Any],
        rows: List[Dict[str, Any]],
        checks: Dict[str, bool],
    ) -> str:
        buf = io.StringIO()
        buf.write(f"# tool: {self.tool}\n")
        buf.write(f"# version: {self.version}\n")
        buf.write(f"# command: {command}\n")
        buf.write(f"# config: {json.dumps(normalize(config), sort_keys=True, ensure_ascii=False)}\n")
        buf.write(f"# checks: {json.dumps(normalize(checks), sort_keys=True)}\n")
        rows = [normalize(row) for row in rows]
        if rows:
            columns = list(rows[0].keys())
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow(
                    json.dumps(row[c]) if isinstance(row.get(c), (list, dict)) else row.get(c, "")
                    for c in columns
                )
        return buf.getvalue()

    def send(
        self,
        command: str,
        config: Dict[str, Any],
        data: Dict[str, Any],
        checks: Dict[str, bool],
        fmt: str = "json",
        rows: Optional[List[Dict[str, Any]]] = None,
    ) -> str:
        """写出报告文件并返回路径；CSV 只写 rows，缺省时把 data 当作一行"""
        if fmt == "json":
            content = self.render_json(command, config, data, checks)
        elif fmt == "csv":
            content = self.render_csv(command, config, rows if rows is not None else [data], checks)
        else:
            raise ValueError(f"未知的输出格式：{fmt}")
        file_path = self.output_dir / self._report_filename(command, config, fmt)
        file_path.write_text(content, encoding="utf-8")
        logger.info("报告已写出 | 命令: %s | 文件: %s", command, file_path)
        print(f"[通知] 报告已保存至：{file_path}")
        return str(file_path)
