import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .roots import (
    PolyInstance,
    arg_derivative,
    continue_roots,
    critical_data,
    roots,
    small_lambda_roots,
)

logger = logging.getLogger(__name__)

PARITY_CASES = {
    (0, 1): "p even, n odd",
    (1, 1): "p odd, n odd",
    (1, 0): "p odd, n even",
}


@dataclass(frozen=True)
class PairingReport:
    """等模根对是否恰为共轭对"""

    lam: float
    passed: bool
    equal_pairs: List[Tuple[int, int]] = field(default_factory=list)
    violations: List[Tuple[int, int]] = field(default_factory=list)
    ambiguous: List[Tuple[int, int]] = field(default_factory=list)


@dataclass(frozen=True)
class OrderingReport:
    """按模从大到小分组的标签，与奇偶情形给出的模式对比"""

    lam: float
    case: str
    expected: List[FrozenSet[int]]
    observed: List[FrozenSet[int]]

    @property
    def matched(self) -> bool:
        return self.expected == self.observed


@dataclass(frozen=True)
class OrderingScan:
    n: int
    p: int
    reports: List[OrderingReport]

    @property
    def matched(self) -> bool:
        return all(r.matched for r in self.reports)

    @property
    def stable(self) -> bool:
        """整个网格上观察到的模式相同"""
        return len({tuple(r.observed) for r in self.reports}) <= 1


def modulus_pairing_check(inst: PolyInstance, tol: float = 1e-8, values: Optional[np.ndarray] = None) -> PairingReport:
    if abs(np.imag(inst.lam)) > 0:
        raise ValueError(f"λ 必须是实数，实际 {inst.lam}")
    lam = float(np.real(inst.lam))
    crit = critical_data(inst.n, inst.p).lambda_crit
    if lam == 0 or lam == crit:
        raise ValueError(f"λ={lam} 是临界值，根不全是单根")
    x = roots(inst).roots if values is None else np.asarray(values)
    conj_tol = np.sqrt(tol)

    equal, bad, unclear = [], [], []
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            mi, mj = abs(x[i]), abs(x[j])
            scale = max(mi, mj, 1e-300)
            gap = abs(mi - mj) / scale
            conjugate = abs(x[i] - np.conj(x[j])) <= conj_tol * scale
            if gap <= tol:
                equal.append((i, j))
                if not conjugate:
                    bad.append((i, j))
            elif gap <= 100 * tol and not conjugate:
                unclear.append((i, j))
    if unclear:
        logger.warning("等模判定处于容差边缘 | n: %d | p: %d | λ: %g | 对数: %d", inst.n, inst.p, lam, len(unclear))
    return PairingReport(lam, not bad, equal, bad, unclear)


def expected_ordering(n: int, p: int) -> Tuple[str, List[FrozenSet[int]]]:
    """小 λ 标签下 |x_j| 从大到小的分组模式（标签取模 n）"""
    key = (p % 2, n % 2)
    if key not in PARITY_CASES:
        raise ValueError(f"n={n}, p={p} 同为偶数，没有对应的模序模式")
    if key == (0, 1):
        groups = [(m, -m) for m in range((n - 1) // 2, 0, -1)] + [(0,)]
    elif key == (1, 1):
        groups = [((n - 1) // 2,)] + [(m, -m - 1) for m in range((n - 3) // 2, -1, -1)]
    else:
        groups = [(m, -m - 1) for m in range(n // 2 - 1, -1, -1)]
    return PARITY_CASES[key], [frozenset(j % n for j in g) for g in groups]


def group_by_modulus(values: np.ndarray, tol: float = 1e-8) -> List[FrozenSet[int]]:
    """按模降序排列标签，相对差不超过 tol 的并为一组"""
    moduli = np.abs(values)
    order = np.argsort(-moduli, kind="stable")
    groups: List[List[int]] = []
    for idx in order:
        if groups and abs(moduli[groups[-1][0]] - moduli[idx]) <= tol * moduli[groups[-1][0]]:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return [frozenset(g) for g in groups]


def modulus_ordering(
    inst: PolyInstance,
    labeled: Optional[np.ndarray] = None,
    eps: float = 0.1,
    tol: float = 1e-8,
) -> OrderingReport:
    """带小 λ 标签的模序检查

    labeled 为空时，从 λ = eps^n 沿实轴延拓到 inst.lam 得到带标签的根。
    """
    lam = float(np.real(inst.lam))
    crit = critical_data(inst.n, inst.p).lambda_crit
    if abs(np.imag(inst.lam)) > 0 or not (0 < lam < crit):
        raise ValueError(f"λ 必须位于 (0, {crit})，实际 {inst.lam}")
    case, expected = expected_ordering(inst.n, inst.p)
    if labeled is None:
        start = small_lambda_roots(inst.n, inst.p, eps)
        labeled = continue_roots(inst.n, inst.p, _real_path(start.lam, lam), start.roots).roots
    observed = group_by_modulus(labeled, tol)
    return OrderingReport(lam, case, expected, observed)


def _real_path(lo: float, hi: float, points: int = 64) -> List[float]:
    if hi <= lo:
        return [lo, hi]
    return list(np.geomspace(lo, hi, points))


def ordering_scan(n: int, p: int, points: int = 20, eps: float = 0.1, tol: float = 1e-8) -> OrderingScan:
    """在 λ_c·k/(points+1)，k = 1..points 上检查模序，标签沿实轴连续延拓"""
    crit = critical_data(n, p).lambda_crit
    start = small_lambda_roots(n, p, eps)
    current = start.roots
    previous = start.lam
    reports = []
    for k in range(1, points + 1):
        lam = crit * k / (points + 1)
        current = continue_roots(n, p, _real_path(previous, lam), current).roots
        previous = lam
        reports.append(modulus_ordering(PolyInstance(n, p, lam), labeled=current, tol=tol))
    scan = OrderingScan(n, p, reports)
    logger.info("模序扫描 | n: %d | p: %d | 网格: %d | 匹配: %s | 稳定: %s", n, p, points, scan.matched, scan.stable)
    return scan


def pairing_scan(n: int, p: int, points: int = 20, tol: float = 1e-8) -> List[PairingReport]:
    crit = critical_data(n, p).lambda_crit
    return [
        modulus_pairing_check(PolyInstance(n, p, crit * k / (points + 1)), tol=tol)
        for k in range(1, points + 1)
    ]


def arg_rates(inst: PolyInstance, values: Optional[Sequence[complex]] = None) -> List[float]:
    """非实根处的 d(arg x)/dλ"""
    x = roots(inst).roots if values is None else values
    return [arg_derivative(z, inst) for z in x if abs(np.imag(z)) > 1e-12 * max(1.0, abs(z))]
