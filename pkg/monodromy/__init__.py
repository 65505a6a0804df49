"""monodromy 包：回路上的根延拓、单值置换与群分类"""
from poly import TrackingError

from .groups import (
    GaloisReport,
    GroupReport,
    GroupSizeError,
    block_systems,
    closure,
    galois_classify,
    generated_group,
    minimal_blocks,
)
from .loops import (
    LoopPath,
    base_point,
    critical_loop,
    loop_around_critical,
    loop_around_zero,
    predicted_collision,
    track_roots,
    zero_loop,
)
from .permutation import Permutation, compose

__all__ = [
    "TrackingError",
    "GaloisReport",
    "GroupReport",
    "GroupSizeError",
    "block_systems",
    "closure",
    "galois_classify",
    "generated_group",
    "minimal_blocks",
    "LoopPath",
    "base_point",
    "critical_loop",
    "loop_around_critical",
    "loop_around_zero",
    "predicted_collision",
    "track_roots",
    "zero_loop",
    "Permutation",
    "compose",
]
