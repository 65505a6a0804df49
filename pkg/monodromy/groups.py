import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from sympy.combinatorics.perm_groups import PermutationGroup

from .loops import loop_around_critical, loop_around_zero, predicted_collision
from .permutation import Permutation

logger = logging.getLogger(__name__)

BFS_MAX_N = 8
SCHREIER_SIMS_MAX_N = 12


class GroupSizeError(ValueError):
    """置换次数超过闭包方法的上限"""


@dataclass(frozen=True)
class GroupReport:
    n: int
    order: int
    is_symmetric: bool
    blocks: Optional[Tuple[FrozenSet[int], ...]]
    quotient_order: int
    quotient_cyclic: bool
    kernel_order: int
    backend: str = "bfs"
    generators: Tuple[Permutation, ...] = field(default_factory=tuple)

    @property
    def block_count(self) -> int:
        return len(self.blocks) if self.blocks else 1

    @property
    def block_size(self) -> int:
        return self.n // self.block_count

    @property
    def wreath_kernel(self) -> bool:
        """核的阶是否为 ((n/t)!)^t"""
        t = self.block_count
        return self.kernel_order == math.factorial(self.n // t) ** t


@dataclass(frozen=True)
class GaloisReport:
    n: int
    p: int
    group: GroupReport
    zero_generator: Permutation
    critical_generator: Permutation
    predicted_pair: Tuple[int, int]

    @property
    def t(self) -> int:
        return math.gcd(self.n, self.p)

    @property
    def expected_order(self) -> int:
        t = self.t
        return t * math.factorial(self.n // t) ** t

    @property
    def observed_pair(self) -> Tuple[int, ...]:
        return tuple(self.critical_generator.moved_points)

    @property
    def collision_matches(self) -> bool:
        """绕 λ_c 交换的一对标签与预测的碰撞对一致"""
        return set(self.observed_pair) == set(self.predicted_pair)

    @property
    def passed(self) -> bool:
        g = self.group
        if not (self.zero_generator.is_full_cycle and self.critical_generator.is_transposition):
            return False
        if not self.collision_matches:
            return False
        if g.order != self.expected_order:
            return False
        if self.t == 1:
            return g.is_symmetric
        return (
            g.block_count == self.t
            and g.quotient_order == self.t
            and g.quotient_cyclic
            and g.wreath_kernel
        )


def closure(generators: Sequence[Permutation], n: int) -> Set[Tuple[int, ...]]:
    """广度优先闭包，元素以像元组哈希"""
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    gens = [g.images for g in generators]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _sympy_group(generators: Sequence[Permutation]) -> PermutationGroup:
    return PermutationGroup([g.to_sympy() for g in generators])


def _as_blocks(labels: Sequence[int]) -> Tuple[FrozenSet[int], ...]:
    groups: Dict[int, Set[int]] = {}
    for i, label in enumerate(labels):
        groups.setdefault(label, set()).add(i)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=min))


def minimal_blocks(
    generators: Sequence[Permutation], n: int, a: int, b: int
) -> Optional[Tuple[FrozenSet[int], ...]]:
    """包含 {a, b} 的最小块系，群不传递时返回 None"""
    if any(len(g) != n for g in generators):
        raise ValueError(f"生成元的次数必须都是 {n}")
    labels = _sympy_group(generators).minimal_block([a, b])
    if labels is False:
        return None
    return _as_blocks(labels)


def block_systems(generators: Sequence[Permutation], n: int) -> List[Tuple[FrozenSet[int], ...]]:
    """全部非平凡的极小块系，按块大小升序"""
    if any(len(g) != n for g in generators):
        raise ValueError(f"生成元的次数必须都是 {n}")
    systems = _sympy_group(generators).minimal_blocks(randomized=False)
    if systems is False:
        logger.debug("群不传递，不计算块系 | n: %d", n)
        return []
    found = {_as_blocks(labels) for labels in systems}
    found = [s for s in found if len(s) > 1]
    return sorted(found, key=lambda s: (len(s[0]), [sorted(b) for b in s]))


def _induced(g: Permutation, blocks: Tuple[FrozenSet[int], ...]) -> Permutation:
    index = {x: i for i, block in enumerate(blocks) for x in block}
    return Permutation(tuple(index[g(next(iter(block)))] for block in blocks))


def _group_order(generators: Sequence[Permutation], n: int, backend: str) -> int:
    if backend == "bfs":
        if n > BFS_MAX_N:
            raise GroupSizeError(f"广度优先闭包只支持 n ≤ {BFS_MAX_N}，实际 n={n}")
        return len(closure(generators, n))
    if backend == "schreier_sims":
        if n > SCHREIER_SIMS_MAX_N:
            raise GroupSizeError(f"稳定子链方法只支持 n ≤ {SCHREIER_SIMS_MAX_N}，实际 n={n}")
        group = _sympy_group(generators)
        group.schreier_sims()
        return int(group.order())
    raise ValueError(f"未知的后端：{backend}")


def generated_group(generators: Sequence[Permutation], n: int, backend: str = "bfs") -> GroupReport:
    """生成群的阶、最细非平凡块系，以及在块上的商作用"""
    if not generators:
        generators = [Permutation.identity(n)]
    if any(len(g) != n for g in generators):
        raise ValueError(f"生成元的次数必须都是 {n}")
    order = _group_order(generators, n, backend)

    systems = block_systems(generators, n)
    blocks = systems[0] if systems else None
    if blocks is None:
        quotient_order, cyclic = 1, True
    else:
        induced = [_induced(g, blocks) for g in generators]
        elements = closure(induced, len(blocks))
        quotient_order = len(elements)
        cyclic = any(Permutation(e).order == quotient_order for e in elements)

    report = GroupReport(
        n=n,
        order=order,
        is_symmetric=order == math.factorial(n),
        blocks=blocks,
        quotient_order=quotient_order,
        quotient_cyclic=cyclic,
        kernel_order=order // quotient_order,
        backend=backend,
        generators=tuple(generators),
    )
    logger.info("群闭包完成 | n: %d | 阶: %d | 块数: %d | 商群阶: %d", n, order, report.block_count, quotient_order)
    return report


def galois_classify(
    n: int,
    p: int,
    eps: float = 0.1,
    ratio: float = 0.1,
    samples: int = 64,
    backend: str = "bfs",
    max_steps: int = 2**16,
) -> GaloisReport:
    """用绕 0 与绕 λ_c 的两条回路生成单值群并分类"""
    if not (0 < p < n):
        raise ValueError(f"要求 0 < p < n，实际 n={n}, p={p}")
    if backend == "bfs" and n > BFS_MAX_N:
        raise GroupSizeError(f"广度优先闭包只支持 n ≤ {BFS_MAX_N}，实际 n={n}")
    logger.info("开始单值群分类 | n: %d | p: %d", n, p)
    sigma = loop_around_zero(n, p, eps=eps, samples=samples, max_steps=max_steps)
    tau = loop_around_critical(n, p, eps=eps, ratio=ratio, samples=samples, max_steps=max_steps)
    group = generated_group([sigma, tau], n, backend=backend)
    report = GaloisReport(n, p, group, sigma, tau, predicted_collision(n, p))
    logger.info(
        "单值群分类 | n: %d | p: %d | 阶: %d | 期望: %d | 对换: %s | 预测碰撞: %s",
        n, p, group.order, report.expected_order, tau, report.predicted_pair,
    )
    return report
