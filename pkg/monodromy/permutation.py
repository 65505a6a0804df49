import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Sequence, Tuple

from sympy.combinatorics import Permutation as SympyPermutation


@dataclass(frozen=True)
class Permutation:
    """{0, …, n−1} 上的置换，images[i] 为 i 的像"""

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"不是置换：{self.images!r}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a] = b
        return cls(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def then(self, other: "Permutation") -> "Permutation":
        """先作用 self 再作用 other"""
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def conjugate(self, by: "Permutation") -> "Permutation":
        return by.inverse().then(self).then(by)

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """非平凡轮换，按最小元素排序"""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    @property
    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    @property
    def order(self) -> int:
        return reduce(math.lcm, self.cycle_type, 1)

    @property
    def moved_points(self) -> List[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    @property
    def is_full_cycle(self) -> bool:
        return self.cycle_type == (len(self.images),)

    @property
    def is_transposition(self) -> bool:
        return self.cycle_type == (2,)

    def to_sympy(self) -> SympyPermutation:
        return SympyPermutation(list(self.images))

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def compose(perms: Iterable[Permutation], n: int) -> Permutation:
    """按顺序依次作用，对应路径拼接"""
    return reduce(Permutation.then, perms, Permutation.identity(n))
