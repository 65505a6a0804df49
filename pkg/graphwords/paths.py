import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from asympt import log_int
from transfer import StepKind, floor_schedule, shift_matrix
from words import BalanceSpec

from .graph import TwoColoredGraph

logger = logging.getLogger(__name__)

EXTRAPOLATION_PERIODS = (10, 20, 30, 40)


@dataclass(frozen=True)
class PathCountTable:
    """counts[v][j]：停在顶点 v、偏差为 j − r 的平衡路径数（j = 1..2r）"""

    counts: Tuple[Tuple[int, ...], ...]
    n: int
    r: int

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def by_deviation(self) -> Tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.counts))

    def state_vector(self) -> List[int]:
        """与 kron_transfer 同序（偏差为主、顶点为次）的状态向量"""
        return [self.counts[v][j] for j in range(2 * self.r) for v in range(len(self.counts))]


@dataclass(frozen=True)
class GraphGrowth:
    value: float
    spectral_radius: float
    irreducible: bool
    r: int


@dataclass(frozen=True)
class ScanRow:
    r: int
    e_alpha_r: float
    tilde_e: float
    irreducible: bool

    @property
    def gap(self) -> float:
        return self.tilde_e - self.e_alpha_r


def _start_vertices(g: TwoColoredGraph, start: Optional[Iterable[int]]) -> List[int]:
    vertices = list(range(g.vertices)) if start is None else sorted(set(start))
    if any(not (0 <= v < g.vertices) for v in vertices):
        raise ValueError(f"起点必须位于 0..{g.vertices - 1}")
    return vertices


def count_balanced_paths(
    g: TwoColoredGraph,
    n: int,
    p: int,
    nper: int,
    r: int,
    start: Optional[Iterable[int]] = None,
) -> PathCountTable:
    """按 (顶点, 偏差) 做动态规划，0 色边使偏差在取整调整前加一"""
    if n < 0:
        raise ValueError("长度不能为负")
    spec = BalanceSpec(p, nper, r)
    size = 2 * r
    table = [[0] * size for _ in range(g.vertices)]
    for v in _start_vertices(g, start):
        table[v][r - 1] = 1
    edges = list(g.edges())
    for k in range(1, n + 1):
        delta = spec.increment(k)
        nxt = [[0] * size for _ in range(g.vertices)]
        for u, v, color, mult in edges:
            shift = (1 if color == 0 else 0) - delta
            row = table[u]
            for j in range(size):
                c = row[j]
                if c and 0 <= j + shift < size:
                    nxt[v][j + shift] += c * mult
        table = nxt
    return PathCountTable(tuple(tuple(row) for row in table), n, r)


def kron_transfer(g: TwoColoredGraph, r: int, kind: StepKind) -> np.ndarray:
    """单步转移 N_+⊗A1ᵀ + E⊗A2ᵀ（不增）或 E⊗A1ᵀ + N_−⊗A2ᵀ（增一）

    状态下标为 j·V + v；A[u][v] 计 u→v 的边，状态是列向量，所以取转置。
    """
    if r < 1:
        raise ValueError(f"半径 r 必须 ≥ 1，实际 r={r}")
    size = 2 * r
    eye = np.eye(size, dtype=np.int64).astype(object)
    a1t, a2t = g.a1.T, g.a2.T
    if kind is StepKind.NO_INCREMENT:
        return np.kron(shift_matrix(size, lower=True), a1t) + np.kron(eye, a2t)
    return np.kron(eye, a1t) + np.kron(shift_matrix(size, lower=False), a2t)


def period_matrix(g: TwoColoredGraph, p: int, nper: int, r: int) -> np.ndarray:
    m = np.eye(2 * r * g.vertices, dtype=np.int64).astype(object)
    for kind in floor_schedule(p, nper):
        m = kron_transfer(g, r, kind).dot(m)
    return m


def is_irreducible(m: np.ndarray) -> bool:
    pattern = csr_matrix((np.asarray(m, dtype=np.float64) != 0).astype(np.int8))
    count, _ = connected_components(pattern, directed=True, connection="strong")
    return count == 1


def graph_growth(g: TwoColoredGraph, p: int, nper: int, r: int) -> GraphGrowth:
    """周期乘积矩阵的谱半径开 nper 次方，即图上的 e_{α,r}"""
    m = period_matrix(g, p, nper, r)
    irreducible = is_irreducible(m)
    if not irreducible:
        logger.warning("周期乘积矩阵可约，增长率取谱半径 | α: %d/%d | r: %d", p, nper, r)
    radius = float(np.max(np.abs(np.linalg.eigvals(m.astype(np.float64)))))
    return GraphGrowth(radius ** (1.0 / nper), radius, irreducible, r)


def unconstrained_count(
    g: TwoColoredGraph,
    n: int,
    p: int,
    nper: int,
    r: int = 1,
    start: Optional[Iterable[int]] = None,
) -> int:
    """只约束终点的路径数：αn − r < |p|_0 ≤ αn + r"""
    BalanceSpec(p, nper, r)
    counts = {v: [0] * (n + 1) for v in range(g.vertices)}
    for v in _start_vertices(g, start):
        counts[v][0] = 1
    edges = list(g.edges())
    for _ in range(n):
        nxt = {v: [0] * (n + 1) for v in range(g.vertices)}
        for u, v, color, mult in edges:
            src, dst = counts[u], nxt[v]
            bump = 1 if color == 0 else 0
            for z in range(n + 1 - bump):
                if src[z]:
                    dst[z + bump] += src[z] * mult
        counts = nxt
    return sum(
        c
        for row in counts.values()
        for z, c in enumerate(row)
        if p * n - r * nper < z * nper <= p * n + r * nper
    )


def unconstrained_growth(
    g: TwoColoredGraph,
    p: int,
    nper: int,
    periods: Sequence[int] = EXTRAPOLATION_PERIODS,
) -> float:
    """ẽ 的图上类比：对 log c(N) = N·log ẽ + γ·log N + c 做最小二乘外推"""
    rows, rhs = [], []
    for k in periods:
        n = k * nper
        c = unconstrained_count(g, n, p, nper)
        if c == 0:
            continue
        rows.append([n, math.log(n), 1.0])
        rhs.append(log_int(c))
    if len(rows) < 3:
        raise ValueError("非零计数不足 3 个，无法外推 ẽ")
    coef, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    return math.exp(coef[0])


def conjecture_scan(g: TwoColoredGraph, p: int, nper: int, r_list: Sequence[int]) -> List[ScanRow]:
    """逐个 r 列出 e_{α,r} 与 ẽ，供人工查看，不做断言"""
    logger.info("开始图增长率扫描 | 顶点: %d | α: %d/%d | r 个数: %d", g.vertices, p, nper, len(r_list))
    limit = unconstrained_growth(g, p, nper)
    rows = []
    for r in r_list:
        growth = graph_growth(g, p, nper, r)
        rows.append(ScanRow(r, growth.value, limit, growth.irreducible))
    return rows
