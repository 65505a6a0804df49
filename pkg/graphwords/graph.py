import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TwoColoredGraph:
    """双色有向多重图

    a1[u][v] 为 u→v 的 0 色边数（走过时 0 的计数加一），
    a2[u][v] 为 u→v 的 1 色边数。
    """

    a1: np.ndarray
    a2: np.ndarray

    def __post_init__(self):
        if self.a1.shape != self.a2.shape or self.a1.ndim != 2 or self.a1.shape[0] != self.a1.shape[1]:
            raise ValueError(f"两个关联矩阵必须是同阶方阵：{self.a1.shape} vs {self.a2.shape}")
        if any(int(v) < 0 for v in self.a1.flat) or any(int(v) < 0 for v in self.a2.flat):
            raise ValueError("边的重数不能为负")

    @property
    def vertices(self) -> int:
        return self.a1.shape[0]

    @property
    def incidence(self) -> np.ndarray:
        """整张图 Γ 的关联矩阵 A1 + A2"""
        return self.a1 + self.a2

    @classmethod
    def from_matrices(cls, a1, a2) -> "TwoColoredGraph":
        return cls(np.array(a1, dtype=object), np.array(a2, dtype=object))

    @classmethod
    def single_vertex(cls) -> "TwoColoredGraph":
        """一个顶点、两种颜色各一条自环：退化为普通 0/1 字"""
        return cls.from_matrices([[1]], [[1]])

    def edges(self) -> Iterator[Tuple[int, int, int, int]]:
        """(u, v, color, multiplicity)"""
        for color, mat in ((0, self.a1), (1, self.a2)):
            for u in range(self.vertices):
                for v in range(self.vertices):
                    m = int(mat[u, v])
                    if m:
                        yield u, v, color, m

    def to_text(self) -> str:
        lines = [str(self.vertices)]
        lines.extend(f"{u} {v} {c} {m}" for u, v, c, m in self.edges())
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> TwoColoredGraph:
    """解析图的文本格式

    第一行（忽略空行与 # 注释）为顶点数 V，之后每行 "u v color multiplicity"，
    color ∈ {0, 1}，multiplicity 省略时为 1；同一条边重复出现时重数累加。
    """
    rows: List[Tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ValueError("图文件为空")

    lineno, first = rows[0]
    try:
        v_count = int(first)
    except ValueError:
        raise ValueError(f"第 {lineno} 行：顶点数必须是整数，实际 {first!r}")
    if v_count < 1:
        raise ValueError(f"第 {lineno} 行：顶点数必须 ≥ 1")

    a1 = np.zeros((v_count, v_count), dtype=object)
    a2 = np.zeros((v_count, v_count), dtype=object)
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) not in (3, 4):
            raise ValueError(f"第 {lineno} 行：应为 'u v color [multiplicity]'，实际 {line!r}")
        try:
            u, v, color = (int(x) for x in parts[:3])
            mult = int(parts[3]) if len(parts) == 4 else 1
        except ValueError:
            raise ValueError(f"第 {lineno} 行：字段必须是整数，实际 {line!r}")
        if not (0 <= u < v_count and 0 <= v < v_count):
            raise ValueError(f"第 {lineno} 行：顶点编号超出 0..{v_count - 1}")
        if color not in (0, 1):
            raise ValueError(f"第 {lineno} 行：颜色只能是 0 或 1")
        if mult < 1:
            raise ValueError(f"第 {lineno} 行：重数必须 ≥ 1")
        (a1 if color == 0 else a2)[u, v] += mult
    graph = TwoColoredGraph(a1, a2)
    logger.debug("解析图 | 顶点: %d | 边: %d", v_count, sum(m for *_, m in graph.edges()))
    return graph


def load_graph(path: Union[str, Path]) -> TwoColoredGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))
