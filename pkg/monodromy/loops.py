import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from poly import TrackingError, continue_roots, critical_data, small_lambda_roots

from .permutation import Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LoopPath:
    """λ 平面上的闭合折线，首尾都是基点 λ_0"""

    points: Tuple[complex, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("路径至少需要两个点")
        if self.points[0] != self.points[-1]:
            raise ValueError("路径必须回到基点")

    @property
    def base(self) -> complex:
        return self.points[0]

    @classmethod
    def circle(
        cls,
        center: complex,
        radius: float,
        start_angle: float = 0.0,
        samples: int = 64,
        orientation: int = 1,
    ) -> "LoopPath":
        theta = start_angle + orientation * 2 * np.pi * np.arange(samples + 1) / samples
        pts = [complex(center + radius * np.exp(1j * t)) for t in theta]
        pts[-1] = pts[0]
        return cls(tuple(pts), f"circle({center:.6g}, {radius:.3g})")

    def __add__(self, other: "LoopPath") -> "LoopPath":
        if other.base != self.base:
            raise ValueError("拼接的两条路径基点不同")
        return LoopPath(self.points + other.points[1:], f"{self.label}+{other.label}")

    def reversed(self) -> "LoopPath":
        return LoopPath(self.points[::-1], f"-{self.label}")

    def refined(self, factor: int = 2) -> "LoopPath":
        """每条边等分为 factor 段"""
        pts = [self.points[0]]
        for a, b in zip(self.points[:-1], self.points[1:]):
            pts.extend(a + (b - a) * k / factor for k in range(1, factor + 1))
        pts[-1] = pts[0]
        return LoopPath(tuple(pts), self.label)


def base_point(n: int, eps: float = 0.1) -> float:
    """所有生成元回路共用的基点 λ_0 = eps^n，此处根带小 λ 标签"""
    return eps**n


def zero_loop(n: int, eps: float = 0.1, samples: int = 64) -> LoopPath:
    return LoopPath.circle(0.0, base_point(n, eps), samples=samples)


def critical_loop(n: int, p: int, eps: float = 0.1, ratio: float = 0.1, samples: int = 64) -> LoopPath:
    """沿实轴从基点走到 λ_c − ρ，绕 λ_c 一圈（ρ = ratio·λ_c），再原路返回"""
    crit = critical_data(n, p).lambda_crit
    rho = ratio * crit
    lam0 = base_point(n, eps)
    approach = [complex(z) for z in np.geomspace(lam0, crit - rho, samples)]
    approach[0] = complex(lam0)
    around = LoopPath.circle(crit, rho, start_angle=np.pi, samples=samples).points
    # 圆周起点与实轴终点是同一点
    pts = approach + list(around[1:-1]) + [approach[-1]] + approach[-2::-1]
    return LoopPath(tuple(pts), f"critical({crit:.6g})")


def track_roots(
    n: int,
    p: int,
    path: LoopPath,
    start: Optional[np.ndarray] = None,
    eps: float = 0.1,
    max_steps: int = 2**16,
) -> Permutation:
    """沿闭合路径延拓带标签的根，返回标签置换

    start 为空时基点必须是 eps^n，初始标签取小 λ 近似。
    终点的根用线性分配与起点匹配，匹配距离必须小于最小根间距的 1/3。
    """
    if start is None:
        report = small_lambda_roots(n, p, eps)
        if not np.isclose(path.base, report.lam, rtol=1e-12, atol=0):
            raise ValueError(f"基点 {path.base} 不是 eps^n = {report.lam}，请显式给出起始根")
        start = report.roots
    start = np.asarray(start, dtype=complex)
    end = continue_roots(n, p, list(path.points), start, max_steps=max_steps).roots

    cost = np.abs(end[:, None] - start[None, :])
    rows, cols = linear_sum_assignment(cost)
    d = np.abs(start[:, None] - start[None, :])
    np.fill_diagonal(d, np.inf)
    if cost[rows, cols].max() >= d.min() / 3:
        raise TrackingError(f"回到基点后无法唯一匹配 | 最大距离: {cost[rows, cols].max():.3e}")
    images = [0] * n
    for r, c in zip(rows, cols):
        images[r] = int(c)
    perm = Permutation(tuple(images))
    logger.debug("回路置换 | n: %d | p: %d | 路径: %s | 置换: %s", n, p, path.label, perm)
    return perm


def loop_around_zero(
    n: int, p: int, eps: float = 0.1, samples: int = 64, max_steps: int = 2**16
) -> Permutation:
    """|λ| = eps^n 的小圆，小 λ 标签下应为 j ↦ j+1"""
    perm = track_roots(n, p, zero_loop(n, eps, samples), eps=eps, max_steps=max_steps)
    if not perm.is_full_cycle:
        logger.warning("绕 0 回路不是 n-轮换 | n: %d | p: %d | 置换: %s", n, p, perm)
    return perm


def loop_around_critical(
    n: int,
    p: int,
    eps: float = 0.1,
    ratio: float = 0.1,
    samples: int = 64,
    max_steps: int = 2**16,
) -> Permutation:
    """绕 λ_c 的回路，应交换碰撞的一对根"""
    perm = track_roots(n, p, critical_loop(n, p, eps, ratio, samples), eps=eps, max_steps=max_steps)
    if not perm.is_transposition:
        logger.warning("绕 λ_c 回路不是对换 | n: %d | p: %d | 置换: %s", n, p, perm)
    return perm


def predicted_collision(n: int, p: int) -> Tuple[int, int]:
    """按小 λ 标签（取模 n）预测在 λ_c 处碰撞的一对根"""
    if p % 2 == 0:
        pair = (p // 2, -p // 2)
    else:
        pair = ((p - 1) // 2, -(p - 1) // 2 - 1)
    return tuple(sorted(j % n for j in pair))
