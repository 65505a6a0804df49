import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class ContractError(ValueError):
    """调用方违反了函数的前置条件"""


class SizeCapError(ValueError):
    """穷举规模超过上限"""


@dataclass(frozen=True)
class Word:
    """0/1 有限字，letters 中每个元素为 0 或 1"""

    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(c not in (0, 1) for c in self.letters):
            raise ValueError(f"字母只能是 0 或 1：{self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"无法解析的 0/1 字：{text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(map(str, self.letters))

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    @property
    def zeros(self) -> int:
        return self.letters.count(0)

    def append(self, letter: int) -> "Word":
        return Word(self.letters + (letter,))


@dataclass(frozen=True)
class BalanceSpec:
    """(α, r) 平衡条件，α = p/period 必须是既约分数"""

    p: int
    period: int
    r: int

    def __post_init__(self):
        if not (0 < self.p < self.period):
            raise ValueError(f"要求 0 < p < period，实际 p={self.p}, period={self.period}")
        if math.gcd(self.p, self.period) != 1:
            raise ValueError(f"α = {self.p}/{self.period} 不是既约分数")
        if self.r < 1:
            raise ValueError(f"半径 r 必须 ≥ 1，实际 r={self.r}")

    @classmethod
    def from_alpha(cls, alpha: Fraction, r: int) -> "BalanceSpec":
        alpha = Fraction(alpha)
        return cls(alpha.numerator, alpha.denominator, r)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.p, self.period)

    @property
    def window(self) -> range:
        """偏差允许的取值 {−r+1, …, r}"""
        return range(-self.r + 1, self.r + 1)

    def floor_at(self, k: int) -> int:
        """⌊αk⌋，纯整数运算"""
        return self.p * k // self.period

    def increment(self, k: int) -> int:
        """Δ_k = ⌊αk⌋ − ⌊α(k−1)⌋ ∈ {0, 1}"""
        return self.floor_at(k) - self.floor_at(k - 1)

    def mirror(self) -> "BalanceSpec":
        """1 − α 对应的条件"""
        return BalanceSpec(self.period - self.p, self.period, self.r)


@dataclass(frozen=True)
class CountVector:
    """b(n)：按偏差 j − r 分类的平衡字计数，j = 1..2r"""

    b: Tuple[int, ...]
    n: int

    @property
    def total(self) -> int:
        return sum(self.b)

    @classmethod
    def initial(cls, r: int) -> "CountVector":
        b = [0] * (2 * r)
        b[r - 1] = 1
        return cls(tuple(b), 0)


def deviation(w: Word, spec: BalanceSpec) -> List[int]:
    """偏差序列 d_k = |w[:k]|_0 − ⌊αk⌋，k = 1..|w|"""
    out = []
    zeros = 0
    for k, c in enumerate(w.letters, 1):
        zeros += c == 0
        out.append(zeros - spec.floor_at(k))
    return out


def is_balanced(w: Word, spec: BalanceSpec, mirrored: bool = False) -> bool:
    """判断 w 是否 (α, r)-平衡

    mirrored=True 时使用镜像窗口 αk − r ≤ |w[:k]|_0 < αk + r，
    即取反映射 0↔1 从 1−α 的平衡字得到的集合。
    """
    p, q, r = spec.p, spec.period, spec.r
    zeros = 0
    for k, c in enumerate(w.letters, 1):
        zeros += c == 0
        if mirrored:
            # αk − r ≤ z < αk + r，乘以 q 后比较
            if not (p * k - r * q <= zeros * q < p * k + r * q):
                return False
        else:
            d = zeros - p * k // q
            if d <= -r or d > r:
                return False
    return True


def enumerate_balanced(n: int, spec: BalanceSpec, max_n: int = 24) -> List[Word]:
    """穷举 {0,1}^n 并过滤，按字典序返回 B_{n,α,r}（仅作小规模对照）"""
    if n < 0:
        raise ValueError("长度不能为负")
    if n > max_n:
        raise SizeCapError(f"穷举长度 n={n} 超过上限 {max_n}")
    result = []
    for letters in itertools.product((0, 1), repeat=n):
        w = Word(letters)
        if is_balanced(w, spec):
            result.append(w)
    logger.debug("穷举完成 | n: %d | α: %s | r: %d | 数量: %d", n, spec.alpha, spec.r, len(result))
    return result


def advance(b: Sequence[int], delta: int) -> List[int]:
    """一步递推：Δ=0 时作用 E+N_+，Δ=1 时作用 E+N_−"""
    size = len(b)
    if delta == 0:
        return [b[j] + (b[j - 1] if j > 0 else 0) for j in range(size)]
    return [b[j] + (b[j + 1] if j + 1 < size else 0) for j in range(size)]


def count_balanced_dp(n: int, spec: BalanceSpec) -> CountVector:
    """动态规划计数 b(n)，O(n·r) 次大整数运算"""
    if n < 0:
        raise ValueError("长度不能为负")
    b = list(CountVector.initial(spec.r).b)
    for k in range(1, n + 1):
        b = advance(b, spec.increment(k))
    return CountVector(tuple(b), n)


def count_unconstrained(n: int, spec: BalanceSpec) -> int:
    """|B̃_{n,α,r}|：只约束末端，Σ_{αn−r < k ≤ αn+r} C(n, k)"""
    if n < 0:
        raise ValueError("长度不能为负")
    p, q, r = spec.p, spec.period, spec.r
    total = 0
    for k in range(n + 1):
        if p * n - r * q < k * q <= p * n + r * q:
            total += math.comb(n, k)
    return total


def complement(w: Word) -> Word:
    """0↔1 取反"""
    return Word(tuple(1 - c for c in w.letters))


def prolong(w: Word, spec: BalanceSpec) -> int:
    """返回使 wc 仍平衡的字母 c，优先取 0"""
    if not is_balanced(w, spec):
        raise ContractError(f"{w} 不是 (α={spec.alpha}, r={spec.r})-平衡字")
    k = len(w) + 1
    zeros = w.zeros
    for c in (0, 1):
        d = zeros + (c == 0) - spec.floor_at(k)
        if -spec.r < d <= spec.r:
            return c
    # 平衡字总能延长，走到这里说明前置检查有误
    raise ContractError(f"{w} 无法延长")


def extend_greedy(w: Word, spec: BalanceSpec, length: int) -> Word:
    """用 prolong 贪心补全到给定长度，得到字典序最小的平衡后缀"""
    letters = list(w.letters)
    zeros = w.zeros
    for k in range(len(letters) + 1, length + 1):
        d0 = zeros + 1 - spec.floor_at(k)
        c = 0 if -spec.r < d0 <= spec.r else 1
        letters.append(c)
        zeros += c == 0
    result = Word(tuple(letters))
    assert is_balanced(result, spec)
    return result


def completion_table(n: int, spec: BalanceSpec) -> List[dict]:
    """后向计数：table[k][d] 为从长度 k、偏差 d 出发补全到长度 n 的方式数"""
    table: List[dict] = [dict() for _ in range(n + 1)]
    table[n] = {d: 1 for d in spec.window}
    for k in range(n - 1, -1, -1):
        delta = spec.increment(k + 1)
        row = {}
        for d in spec.window:
            ways = 0
            for c in (0, 1):
                nd = d + (c == 0) - delta
                ways += table[k + 1].get(nd, 0)
            row[d] = ways
        table[k] = row
    return table


def sample_balanced(
    n: int,
    spec: BalanceSpec,
    rng: np.random.Generator,
    size: int = 1,
    table: Optional[List[dict]] = None,
) -> List[Word]:
    """从 B_{n,α,r} 中均匀抽样"""
    table = table if table is not None else completion_table(n, spec)
    samples = []
    for _ in range(size):
        letters = []
        d = 0
        for k in range(n):
            delta = spec.increment(k + 1)
            d0 = d + 1 - delta
            d1 = d - delta
            w0 = table[k + 1].get(d0, 0)
            w1 = table[k + 1].get(d1, 0)
            # 大整数权重下用整数随机数避免浮点偏差
            pick = int(rng.integers(0, 2**62)) * (w0 + w1) >> 62
            if pick < w0:
                letters.append(0)
                d = d0
            else:
                letters.append(1)
                d = d1
        samples.append(Word(tuple(letters)))
    return samples
