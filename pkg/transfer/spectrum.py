import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
import scipy.linalg
from sympy import Poly, Rational
from sympy import sign as sympy_sign

from asympt import tilde_e
from poly import PolyInstance, roots

from .matrix import TransferMatrix, build_M, characteristic_polynomial

logger = logging.getLogger(__name__)

MAX_DENSE_SIZE = 200
# 实根隔离区间的宽度上限
EIGEN_EPS = Rational(1, 10**15)


class ConvergenceError(RuntimeError):
    """幂迭代在上限内没有收敛"""


class SpectrumError(RuntimeError):
    """特征对残差超出容差"""


@dataclass(frozen=True)
class PerronResult:
    value: float
    vector: np.ndarray
    iterations: int


@dataclass(frozen=True)
class GrowthEstimate:
    """e_{α,r} = perron^{1/n}，以及对比用的上界 n^n/(p^p q^q) 与 ẽ_α"""

    p: int
    n: int
    r: int
    perron: float
    e_alpha_r: float
    ceiling: float
    entropy_limit: float

    @property
    def gap(self) -> float:
        return self.entropy_limit - self.e_alpha_r


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    perron: float
    perron_vector: np.ndarray
    tolerance: float
    norm: float
    all_real: bool
    all_positive: bool
    simple: bool
    lossy: bool

    @property
    def oscillation_property(self) -> bool:
        """特征值全部为正、实、单重"""
        return self.all_real and self.all_positive and self.simple

    def real_values(self) -> np.ndarray:
        return np.sort(self.eigenvalues.real)


@dataclass(frozen=True)
class BoundaryFit:
    """中段特征向量对幂序列 x_i^j 的最小二乘拟合结果"""

    eigenvalue: float
    residuals: Dict[int, float]
    winner: int
    separation: float

    @property
    def ratio(self) -> float:
        """落选指数与胜出指数的残差之比"""
        values = sorted(self.residuals.values())
        if len(values) < 2 or values[0] == 0.0:
            return float("inf")
        return values[1] / values[0]


def _float_matrix(M) -> np.ndarray:
    if isinstance(M, TransferMatrix):
        return M.as_float()[0]
    return np.asarray(M, dtype=np.float64)


def perron_root(M, tol: float = 1e-12, max_iter: int = 10**6) -> PerronResult:
    """幂迭代求 Perron 根

    从全 1 向量出发，相邻两次 Rayleigh 商之差小于 tol 时停止。
    """
    a = _float_matrix(M)
    v = np.ones(a.shape[0]) / np.sqrt(a.shape[0])
    rq_prev: Optional[float] = None
    for it in range(1, max_iter + 1):
        w = a @ v
        rq = float(v @ w)
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            raise ConvergenceError("幂迭代得到零向量")
        v = w / nrm
        if rq_prev is not None and abs(rq - rq_prev) < tol * max(1.0, abs(rq)):
            break
        rq_prev = rq
    else:
        raise ConvergenceError(f"幂迭代 {max_iter} 次仍未收敛")
    if np.any(v <= 0):
        raise ConvergenceError("Perron 向量不是严格正的")
    logger.debug("幂迭代收敛 | 迭代次数: %d | 值: %.15g", it, rq)
    return PerronResult(rq, v, it)


def growth_exponent(p: int, n: int, r: int, tol: float = 1e-12, max_iter: int = 10**6) -> GrowthEstimate:
    M = build_M(p, n, r)
    perron = perron_root(M, tol=tol, max_iter=max_iter).value
    return GrowthEstimate(
        p=p,
        n=n,
        r=r,
        perron=perron,
        e_alpha_r=perron ** (1.0 / n),
        ceiling=M.ceiling,
        entropy_limit=tilde_e(p / n),
    )


def perron_ladder(p: int, n: int, r_values: Sequence[int], tol: float = 1e-12) -> List[GrowthEstimate]:
    """沿 r 序列计算 e_{α,r}"""
    logger.info("开始计算增长指数 | α: %d/%d | r 个数: %d", p, n, len(r_values))
    return [growth_exponent(p, n, r, tol=tol) for r in r_values]


def _exact_polynomial(M: TransferMatrix) -> Poly:
    if M.size > MAX_DENSE_SIZE:
        raise ValueError(f"矩阵阶数 {M.size} 超过上限 {MAX_DENSE_SIZE}")
    return characteristic_polynomial(M)


def _null_vector(a: np.ndarray, lam: float) -> np.ndarray:
    """A − λE 最小奇异值对应的右奇异向量"""
    _, _, vh = np.linalg.svd(a - lam * np.eye(a.shape[0]))
    return vh[-1]


def full_spectrum(M: TransferMatrix, tol: float = 1e-9, imag_threshold: float = 1e-8) -> SpectrumReport:
    """全部特征值与特征向量，逐对检查残差

    实性、正性、单重性由 ZZ 上的特征多项式精确判定。全部为实根时，特征值取
    Poly.intervals 的隔离区间中点（宽度 < EIGEN_EPS），特征向量取 A − λE 的零空间；
    否则退回 LAPACK geev（Hessenberg 约化 + 位移 QR）。
    """
    poly = _exact_polynomial(M)
    a, lossy = M.as_float()
    norm = float(np.linalg.norm(a, 2))

    isolated = poly.intervals(eps=EIGEN_EPS)
    real_roots = [float((lo + hi) / 2) for (lo, hi), k in isolated for _ in range(k)]
    all_real = len(real_roots) == M.size
    all_positive = all(interval[0] >= 0 for interval, _ in isolated) and poly.eval(0) != 0
    simple = poly.sqf_part().degree() == M.size

    if all_real:
        values = np.array(sorted(real_roots, reverse=True), dtype=complex)
        vectors = np.column_stack([_null_vector(a, v.real) for v in values]).astype(complex)
    else:
        values, vectors = scipy.linalg.eig(a)
        cutoff = imag_threshold * norm
        values = np.where(np.abs(values.imag) <= cutoff, values.real, values)
        order = np.argsort(-values.real)
        values = values[order]
        vectors = vectors[:, order]
        logger.warning(
            "出现非实特征值 | α: %d/%d | r: %d | 实根个数: %d / %d",
            M.p, M.n, M.r, len(real_roots), M.size,
        )

    residuals = np.linalg.norm(a @ vectors - vectors * values, axis=0) / (
        norm * np.linalg.norm(vectors, axis=0)
    )
    worst = float(residuals.max())
    if worst > tol:
        raise SpectrumError(f"特征对残差 {worst:.3e} 超过容差 {tol:.1e}")

    perron_vec = np.real(vectors[:, 0])
    perron_vec = perron_vec / perron_vec[np.argmax(np.abs(perron_vec))]
    return SpectrumReport(
        eigenvalues=values,
        eigenvectors=vectors,
        residuals=residuals,
        perron=float(values[0].real),
        perron_vector=perron_vec,
        tolerance=tol,
        norm=norm,
        all_real=all_real,
        all_positive=bool(all_positive and all_real),
        simple=simple,
        lossy=lossy,
    )


def _check_interval(M: TransferMatrix, lo: float, hi: float):
    if not (0 <= lo < hi <= M.ceiling * (1 + 1e-15)):
        raise ValueError(f"区间 ({lo}, {hi}) 不在 [0, {M.ceiling}] 内")


def count_spectrum_in(p: int, n: int, r: int, lo: float, hi: float) -> int:
    """M(r) 落在开区间 (lo, hi) 内的特征值个数（计重数）

    对特征多项式的每个无平方因子用 Sturm 序列精确计数，端点换成精确有理数。
    """
    M = build_M(p, n, r)
    _check_interval(M, lo, hi)
    poly = _exact_polynomial(M)
    a, b = Rational(lo), Rational(hi)
    total = 0
    for factor, k in poly.sqf_list()[1]:
        inside = factor.count_roots(a, b) - int(factor.eval(a) == 0) - int(factor.eval(b) == 0)
        total += k * inside
    logger.debug("区间特征值计数 | α: %d/%d | r: %d | 区间: (%g, %g) | 个数: %d", p, n, r, lo, hi, total)
    return total


def oscillation_scan(p: int, n: int, r: int, grid: Sequence[float]) -> int:
    """det(M − λE) 在相邻网格点之间的变号次数

    行列式取 ZZ 上的特征多项式在精确有理网格点处的值，网格点上恰好为零也记一次。
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        return 0
    M = build_M(p, n, r)
    if np.any(np.diff(grid) <= 0):
        raise ValueError("网格必须严格递增")
    if grid[0] <= 0 or grid[-1] >= M.ceiling:
        raise ValueError(f"网格必须位于 (0, {M.ceiling}) 内")
    poly = _exact_polynomial(M)
    # det(M − λE) = (−1)^{2r} det(λE − M)
    signs = [int(sympy_sign(poly.eval(Rational(float(lam))))) for lam in grid]
    changes = 0
    for i, s in enumerate(signs):
        if s == 0:
            changes += 1
        elif i > 0 and signs[i - 1] != 0 and s != signs[i - 1]:
            changes += 1
    logger.debug("振荡扫描 | α: %d/%d | r: %d | 网格: %d | 变号: %d", p, n, r, grid.size, changes)
    return changes


def boundary_recurrence_check(
    p: int,
    n: int,
    r: int,
    eigenvalue: float,
    eigenvector: np.ndarray,
    tol: float = 1e-10,
) -> BoundaryFit:
    """把特征向量拟合成 Σ c_i x_i^j，x_i 取 (x+1)^n = λx^e 的根，e ∈ {p, n−p}

    内部行的方程是 n 阶线性递推，因此整个特征向量都落在 n 个幂序列张成的空间里；
    只有正确的指数 e 能给出机器精度的残差。
    """
    if 2 * r <= 2 * n:
        raise ValueError(f"要求 2r > 2n，实际 r={r}, n={n}")
    lam = float(np.real(eigenvalue))
    v = np.real_if_close(np.asarray(eigenvector)).astype(complex)
    v = v / np.linalg.norm(v)
    j = np.arange(2 * r)

    residuals = {}
    separation = np.inf
    for e in sorted({p, n - p}):
        rs = roots(PolyInstance(n, e, lam), tol=tol)
        separation = min(separation, rs.min_separation)
        basis = rs.roots[np.newaxis, :] ** j[:, np.newaxis]
        scale = np.abs(basis).max(axis=0)
        basis = basis / scale
        coef, *_ = np.linalg.lstsq(basis, v, rcond=None)
        residuals[e] = float(np.linalg.norm(basis @ coef - v))
    winner = min(residuals, key=residuals.get)
    logger.info("边界递推拟合 | α: %d/%d | r: %d | λ: %.6g | 残差: %s | 胜出指数: %d", p, n, r, lam, residuals, winner)
    return BoundaryFit(lam, residuals, winner, float(separation))
