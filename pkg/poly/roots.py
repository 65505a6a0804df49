import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import mpmath
import numpy as np
import scipy.optimize
from mpmath.libmp import NoConvergence
from scipy.optimize import linear_sum_assignment

logger = logging.getLogger(__name__)

MAX_DEGREE = 64
CLUSTER_WARNING = 1e-6
# 两个根的相对距离小于此值视为牛顿丢根
DUPLICATE_GUARD = 1e-7
MP_DPS = 40
MP_MAX_STEPS = 2000


class RootSolveError(RuntimeError):
    """求根或牛顿修正失败"""


class TrackingError(RuntimeError):
    """沿 λ 路径延拓根时步长或步数超限"""


@dataclass(frozen=True)
class PolyInstance:
    """P(x) = (x+1)^n − λx^p"""

    n: int
    p: int
    lam: complex

    def __post_init__(self):
        if not (0 < self.p < self.n):
            raise ValueError(f"要求 0 < p < n，实际 n={self.n}, p={self.p}")

    @property
    def q(self) -> int:
        return self.n - self.p

    def at(self, lam: complex) -> "PolyInstance":
        return PolyInstance(self.n, self.p, lam)


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    min_separation: float

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.roots)


@dataclass(frozen=True)
class CriticalData:
    """λ_c = n^n/(p^p q^q) 与二重根 p/q；λ = 0 时 n 个根都是 −1"""

    n: int
    p: int
    lambda_exact: Fraction
    double_root_exact: Fraction
    verified: bool
    lambda_zero_root: float = -1.0

    @property
    def lambda_crit(self) -> float:
        return float(self.lambda_exact)

    @property
    def double_root(self) -> float:
        return float(self.double_root_exact)


@dataclass(frozen=True)
class DoubleRoot:
    """数值探测到的二重根参数"""

    lam: float
    root: float
    residual: float
    scan_points: int


@dataclass(frozen=True)
class SmallLambdaReport:
    """λ = eps^n 时的一阶近似 x_j ≈ γ_j − 1 与匹配后的真实根（按标签 j 排序）"""

    n: int
    p: int
    eps: float
    lam: float
    gammas: np.ndarray
    approximations: np.ndarray
    roots: np.ndarray
    max_error: float

    @property
    def labels(self) -> List[int]:
        return list(range(self.n))


@dataclass
class Continuation:
    """一次延拓的结果：终点处按原标签排列的根"""

    roots: np.ndarray
    steps: int
    halvings: int
    path: List[complex] = field(default_factory=list)


def _shift_coefficients(inst: PolyInstance, s: float) -> np.ndarray:
    """u = x+1 = s·t 后 t^n − (λ/s^n)(s·t − 1)^p 的降幂系数"""
    n, p = inst.n, inst.p
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    c = inst.lam / s**n
    for k in range(p + 1):
        # (s t − 1)^p 中 t^k 的系数
        term = math.comb(p, k) * s**k * (-1) ** (p - k)
        coeffs[n - k] -= c * term
    return coeffs


def _ratio(inst: PolyInstance, x: np.ndarray) -> np.ndarray:
    """ρ = λx^p/(x+1)^n，在对数域里算，避免大根时 (x+1)^n 溢出"""
    with np.errstate(all="ignore"):
        return inst.lam * np.exp(inst.p * np.log(x) - inst.n * np.log(x + 1))


def _polish(inst: PolyInstance, x: np.ndarray, max_iter: int = 50) -> Tuple[np.ndarray, bool]:
    """在 x 坐标下对 1 − ρ(x) = 0 做向量化牛顿修正"""
    x = np.array(x, dtype=complex)
    for _ in range(max_iter):
        rho = _ratio(inst, x)
        with np.errstate(all="ignore"):
            slope = rho * (inst.p / x - inst.n / (x + 1))
            step = np.where(np.isfinite(slope) & (slope != 0), (1 - rho) / slope, 0.0)
        step = np.where(np.isfinite(step), step, 0.0)
        x = x + step
        if np.all(np.abs(step) <= 4e-16 * np.abs(x)):
            break
    converged = bool(np.all(np.isfinite(x)) and np.all(np.abs(step) <= 1e-12 * np.abs(x)))
    return x, converged


def _relative_residuals(inst: PolyInstance, x: np.ndarray) -> np.ndarray:
    """|P(x)| / (|x+1|^n + |λ||x|^p) = |1 − ρ| / (1 + |ρ|)"""
    rho = _ratio(inst, x)
    with np.errstate(all="ignore"):
        res = np.abs(1 - rho) / (1 + np.abs(rho))
    return np.where(np.isfinite(res), res, np.inf)


def _min_separation(x: np.ndarray) -> float:
    if len(x) < 2:
        return math.inf
    d = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def _companion_roots(inst: PolyInstance) -> np.ndarray:
    s = min(1.0, abs(inst.lam) ** (1.0 / inst.n))
    x, _ = _polish(inst, s * np.roots(_shift_coefficients(inst, s)) - 1)
    return x


def _durand_kerner_roots(inst: PolyInstance) -> np.ndarray:
    """mpmath.polyroots 在扩展精度下对展开后的 P 做同时迭代"""
    n, p = inst.n, inst.p
    lam = complex(inst.lam)
    coeffs = [math.comb(n, k) for k in range(n, -1, -1)]
    coeffs[n - p] = coeffs[n - p] - mpmath.mpc(lam.real, lam.imag)
    try:
        with mpmath.workdps(MP_DPS):
            found = mpmath.polyroots(coeffs, maxsteps=MP_MAX_STEPS, extraprec=4 * n)
    except NoConvergence as e:
        raise RootSolveError(f"扩展精度求根未收敛 | n: {n} | p: {p} | λ: {inst.lam}") from e
    return np.array([complex(z) for z in found], dtype=complex)


def _accepted(inst: PolyInstance, x: np.ndarray, tol: float) -> bool:
    if len(x) != inst.n or not np.all(np.isfinite(x)):
        return False
    if float(_relative_residuals(inst, x).max()) > tol:
        return False
    # 牛顿把两个初值拉到同一个根上时会丢根
    gaps = np.abs(x[:, None] - x[None, :]) / np.maximum(1.0, np.abs(x))[:, None]
    np.fill_diagonal(gaps, np.inf)
    return float(gaps.min(initial=np.inf)) > DUPLICATE_GUARD


def roots(inst: PolyInstance, tol: float = 1e-10) -> RootSet:
    """全部 n 个根

    先在平移变量 u = x+1 下用伴随矩阵特征值（numpy.roots）求初值，
    按 |λ|^{1/n} 缩放以免小 λ 时根挤在 −1 附近，再在 x 坐标下牛顿修正。
    残差不达标或有根重合时，改用 mpmath.polyroots 在扩展精度下重解。
    """
    if inst.lam == 0:
        raise ValueError("λ = 0 时 P 有 n 重根 −1，不在求根范围内")
    if inst.n > MAX_DEGREE:
        raise ValueError(f"次数 n={inst.n} 超过上限 {MAX_DEGREE}")
    x = _companion_roots(inst)
    if not _accepted(inst, x, tol):
        logger.debug("伴随矩阵初值未通过，改用扩展精度 | n: %d | p: %d | λ: %s", inst.n, inst.p, inst.lam)
        x = _durand_kerner_roots(inst)
    residuals = _relative_residuals(inst, x)
    worst = float(residuals.max())
    if not np.isfinite(worst) or worst > tol:
        raise RootSolveError(f"根残差 {worst:.3e} 超过容差 {tol:.1e} | n: {inst.n} | p: {inst.p} | λ: {inst.lam}")
    sep = _min_separation(x)
    if sep < CLUSTER_WARNING:
        logger.warning("根聚集 | n: %d | p: %d | λ: %s | 最小间距: %.3e", inst.n, inst.p, inst.lam, sep)
    return RootSet(x, residuals, sep)


def critical_data(n: int, p: int) -> CriticalData:
    """精确有理运算给出 λ_c 与二重根，并验证 P、P′ 同时为零"""
    PolyInstance(n, p, 1.0)
    q = n - p
    lam = Fraction(n**n, p**p * q**q)
    x = Fraction(p, q)
    value = (x + 1) ** n - lam * x**p
    slope = n * (x + 1) ** (n - 1) - p * lam * x ** (p - 1)
    return CriticalData(n, p, lam, x, value == 0 and slope == 0)


def _normalized_system(n: int, p: int):
    """P/(x+1)^n 与 P′/(x+1)^n，量级为 O(1)"""

    def system(z):
        x, lam = z
        ratio = lam * x**p / (x + 1) ** n
        return [1.0 - ratio, n / (x + 1) - p * ratio / x]

    return system


def detect_double_root(n: int, p: int, points: int = 400, tol: float = 1e-12) -> DoubleRoot:
    """不借助闭式公式找出 λ > 0 上的二重根

    在 λ ∈ (10^{-2}, 1.5·2^n) 的对数网格上扫描中点实部为正的根对间距，
    从间距最小的几个局部极小出发，用 scipy.optimize.root 解 P = P′ = 0。
    """
    PolyInstance(n, p, 1.0)
    grid = np.geomspace(1e-2, 1.5 * 2.0**n, points)
    seps = np.full(points, np.inf)
    mids = np.zeros(points)
    for i, lam in enumerate(grid):
        x = roots(PolyInstance(n, p, lam), tol=1e-8).roots
        d = np.abs(x[:, None] - x[None, :])
        mid = (x[:, None] + x[None, :]) / 2
        mask = (mid.real > 0) & ~np.eye(n, dtype=bool)
        if not mask.any():
            continue
        k = np.argmin(np.where(mask, d, np.inf))
        seps[i] = d.flat[k]
        mids[i] = mid.flat[k].real

    interior = [i for i in range(points) if np.isfinite(seps[i])]
    minima = [
        i
        for i in interior
        if seps[i] <= seps[max(i - 1, 0)] and seps[i] <= seps[min(i + 1, points - 1)]
    ]
    minima.sort(key=lambda i: seps[i])
    system = _normalized_system(n, p)
    for i in minima[:5]:
        sol = scipy.optimize.root(system, [mids[i], grid[i]], method="hybr", tol=tol)
        x, lam = sol.x
        if sol.success and x > 0 and lam > 0:
            residual = float(np.max(np.abs(system(sol.x))))
            logger.info("二重根探测 | n: %d | p: %d | λ: %.15g | x: %.15g | 残差: %.2e", n, p, lam, x, residual)
            return DoubleRoot(float(lam), float(x), residual, points)
    raise RootSolveError(f"未能在扫描区间内探测到二重根 | n: {n} | p: {p}")


def small_lambda_roots(n: int, p: int, eps: float) -> SmallLambdaReport:
    """λ = eps^n 时的一阶近似：x_j ≈ eps·exp(2πi(j+h)/n) − 1，p 偶 h=0，p 奇 h=1/2"""
    if not (0 < eps < 1):
        raise ValueError(f"eps 必须位于 (0, 1)，实际 {eps}")
    lam = eps**n
    h = 0.5 * (p % 2)
    gammas = eps * np.exp(2j * np.pi * (np.arange(n) + h) / n)
    approx = gammas - 1
    true_roots = roots(PolyInstance(n, p, lam)).roots

    cost = np.abs(approx[:, None] - true_roots[None, :])
    rows, cols = linear_sum_assignment(cost)
    ordered = true_roots[cols[np.argsort(rows)]]
    errors = np.abs(ordered - approx)
    max_error = float(errors.max())
    if n > 1 and max_error >= eps * math.sin(math.pi / n):
        raise ValueError(f"eps={eps} 过大，一阶近似无法区分各根（最大误差 {max_error:.3e}）")
    logger.debug("小 λ 近似 | n: %d | p: %d | eps: %g | 最大误差: %.3e", n, p, eps, max_error)
    return SmallLambdaReport(n, p, eps, lam, gammas, approx, ordered, max_error)


def dx_dlambda(x: complex, inst: PolyInstance) -> complex:
    """dx/dλ = x(x+1) / (λ((n−p)x − p))"""
    denom = inst.lam * ((inst.n - inst.p) * x - inst.p)
    if abs(denom) < 1e-12 * max(1.0, abs(inst.lam)) * inst.n:
        raise ValueError(f"x={x} 接近二重根 p/(n−p)，导数发散")
    return x * (x + 1) / denom


def dx_dlambda_fd(x: complex, inst: PolyInstance, h: float = 1e-7) -> complex:
    """中心差分：λ±h 处取离 x 最近的根"""
    lo = roots(inst.at(inst.lam - h)).roots
    hi = roots(inst.at(inst.lam + h)).roots
    return (hi[np.argmin(np.abs(hi - x))] - lo[np.argmin(np.abs(lo - x))]) / (2 * h)


def arg_derivative(x: complex, inst: PolyInstance) -> float:
    """d(arg x)/dλ = Im(x′/x)"""
    return float(np.imag(dx_dlambda(x, inst) / x))


def _dx_dlambda_all(x: np.ndarray, n: int, p: int, lam: complex) -> np.ndarray:
    return x * (x + 1) / (lam * ((n - p) * x - p))


def continue_roots(
    n: int,
    p: int,
    path: Sequence[complex],
    start: np.ndarray,
    substeps: int = 1,
    max_steps: int = 2**16,
) -> Continuation:
    """沿折线 path 延拓带标签的根

    每段初始步长为 1/substeps；调用方负责把路径离散得足够细。
    预测用 dx/dλ，修正用牛顿迭代；若某根的位移超过当前最小间距的 1/3，
    或修正后最近邻匹配不再是自身，则步长减半。
    """
    x = np.asarray(start, dtype=complex)
    steps = 0
    halvings = 0
    for a, b in zip(path[:-1], path[1:]):
        a, b = complex(a), complex(b)
        t = 0.0
        h = 1.0 / substeps
        while t < 1.0:
            h = min(h, 1.0 - t)
            lam0 = a + (b - a) * t
            lam1 = a + (b - a) * (t + h)
            sep = _min_separation(x)
            pred = x + _dx_dlambda_all(x, n, p, lam0) * (lam1 - lam0)
            new, ok = _polish(PolyInstance(n, p, lam1), pred, max_iter=8)
            moved = np.abs(new - x)
            nearest = np.argmin(np.abs(new[:, None] - x[None, :]), axis=1)
            if ok and np.all(moved <= sep / 3) and np.all(nearest == np.arange(len(x))) and _min_separation(new) > 0:
                x = new
                t += h
                steps += 1
                h = min(2 * h, 1.0 / substeps)
            else:
                h /= 2
                halvings += 1
                if h < 1.0 / max_steps:
                    raise TrackingError(f"步长低于 1/{max_steps} | λ: {lam0} | 最小间距: {sep:.3e}")
            if steps > max_steps:
                raise TrackingError(f"延拓步数超过上限 {max_steps}")
    logger.debug("延拓完成 | n: %d | p: %d | 步数: %d | 减半: %d", n, p, steps, halvings)
    return Continuation(x, steps, halvings, [complex(z) for z in path])
