"""graphwords 包：双色图上的平衡路径计数与 Kronecker 转移算子"""
from .graph import TwoColoredGraph, load_graph, parse_graph
from .paths import (
    GraphGrowth,
    PathCountTable,
    ScanRow,
    conjecture_scan,
    count_balanced_paths,
    graph_growth,
    is_irreducible,
    kron_transfer,
    period_matrix,
    unconstrained_count,
    unconstrained_growth,
)

__all__ = [
    "TwoColoredGraph",
    "load_graph",
    "parse_graph",
    "GraphGrowth",
    "PathCountTable",
    "ScanRow",
    "conjecture_scan",
    "count_balanced_paths",
    "graph_growth",
    "is_irreducible",
    "kron_transfer",
    "period_matrix",
    "unconstrained_count",
    "unconstrained_growth",
]
