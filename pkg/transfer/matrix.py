import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
from sympy import Poly, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from words import BalanceSpec, CountVector

logger = logging.getLogger(__name__)

# float64 能精确表示的最大整数
_EXACT_FLOAT_LIMIT = 2**53

LAMBDA = Symbol("lambda")


class StepKind(Enum):
    """单步类型：⌊αk⌋ 不变时作用 E+N_+，加一时作用 E+N_−"""

    NO_INCREMENT = "E+N+"
    INCREMENT = "E+N-"


def floor_schedule(p: int, n: int) -> List[StepKind]:
    """一个周期内 k = 1..n 的步类型序列，恰有 p 个 INCREMENT"""
    spec = BalanceSpec(p, n, 1)
    return [
        StepKind.INCREMENT if spec.increment(k) else StepKind.NO_INCREMENT
        for k in range(1, n + 1)
    ]


def shift_matrix(size: int, lower: bool = True) -> np.ndarray:
    """0-Jordan 块：lower=True 为 N_+（次对角线），否则为 N_− = N_+^t"""
    offset = -1 if lower else 1
    return np.eye(size, k=offset, dtype=np.int64).astype(object)


def step_matrix(kind: StepKind, r: int) -> np.ndarray:
    if r < 1:
        raise ValueError(f"半径 r 必须 ≥ 1，实际 r={r}")
    size = 2 * r
    eye = np.eye(size, dtype=np.int64).astype(object)
    return eye + shift_matrix(size, lower=kind is StepKind.NO_INCREMENT)


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """周期乘积 M(r)，元素为任意精度整数（object 数组）"""

    entries: np.ndarray
    p: int
    n: int
    r: int
    schedule: Tuple[StepKind, ...] = field(default=())

    @property
    def size(self) -> int:
        return 2 * self.r

    @property
    def q(self) -> int:
        return self.n - self.p

    @property
    def ceiling(self) -> float:
        """n^n / (p^p q^q)，谱半径的上界"""
        return self.n**self.n / (self.p**self.p * self.q**self.q)

    def as_float(self) -> Tuple[np.ndarray, bool]:
        """转为 float64，第二个返回值表示是否有元素超过 2^53 而失去精度"""
        lossy = any(abs(int(v)) > _EXACT_FLOAT_LIMIT for v in self.entries.flat)
        if lossy:
            logger.warning("转换为浮点时损失精度 | p/n: %d/%d | r: %d", self.p, self.n, self.r)
        return self.entries.astype(np.float64), lossy

    def apply(self, vector: Sequence[int]) -> List[int]:
        """精确整数矩阵向量乘法"""
        out = self.entries.dot(np.array(list(vector), dtype=object))
        return [int(v) for v in out]

    def apply_power(self, vector: Sequence[int], k: int) -> List[int]:
        out = list(vector)
        for _ in range(k):
            out = self.apply(out)
        return out

    def expected_entry(self, k: int, j: int) -> int:
        """带内元素的二项式值 C(n, k−j+p)（1-based 下标），带外为 0"""
        m = k - j + self.p
        return math.comb(self.n, m) if 0 <= m <= self.n else 0

    def interior_mismatches(self) -> List[Tuple[int, int]]:
        """不在角块 S_u、S_d 中却不等于二项式值的位置"""
        size = self.size
        bad = []
        for k in range(1, size + 1):
            for j in range(1, size + 1):
                in_corner = (k <= self.q and j <= self.n) or (
                    k > size - self.p and j > size - self.n
                )
                if in_corner:
                    continue
                if int(self.entries[k - 1, j - 1]) != self.expected_entry(k, j):
                    bad.append((k, j))
        return bad

    def band_violations(self) -> List[Tuple[int, int]]:
        """j ∉ {k−q, …, k+p} 处的非零元素"""
        size = self.size
        return [
            (k, j)
            for k in range(1, size + 1)
            for j in range(1, size + 1)
            if not (k - self.q <= j <= k + self.p) and int(self.entries[k - 1, j - 1]) != 0
        ]

    def transpose(self) -> "TransferMatrix":
        return TransferMatrix(self.entries.T.copy(), self.p, self.n, self.r, self.schedule)

    def transpose_partner(self) -> "TransferMatrix":
        """α ↔ 1−α 对应的矩阵，恒等于本矩阵的转置"""
        return build_M(self.n - self.p, self.n, self.r)

    def to_list(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.entries]


def build_M(p: int, n: int, r: int) -> TransferMatrix:
    """按步序从右向左相乘，使 b(n) = M·b(0)"""
    schedule = floor_schedule(p, n)
    if r < 1:
        raise ValueError(f"半径 r 必须 ≥ 1，实际 r={r}")
    m = np.eye(2 * r, dtype=np.int64).astype(object)
    for kind in schedule:
        m = step_matrix(kind, r).dot(m)
    logger.debug("构造转移矩阵 | α: %d/%d | r: %d | 最大元素: %s", p, n, r, max(m.flat))
    return TransferMatrix(m, p, n, r, tuple(schedule))


def initial_vector(r: int) -> List[int]:
    return list(CountVector.initial(r).b)


def exact_determinant(M: TransferMatrix) -> int:
    """ZZ 上的精确行列式"""
    rows = [[ZZ(int(v)) for v in row] for row in M.entries]
    dm = DomainMatrix(rows, (M.size, M.size), ZZ)
    return int(dm.det())


def characteristic_polynomial(M: TransferMatrix) -> Poly:
    """det(λE − M) 的 ZZ 系数多项式"""
    rows = [[ZZ(int(v)) for v in row] for row in M.entries]
    coeffs = DomainMatrix(rows, (M.size, M.size), ZZ).charpoly()
    return Poly([int(c) for c in coeffs], LAMBDA, domain=ZZ)
