"""asympt 包：熵极限 ẽ_α 与 1/(1−x−y) 的鞍点渐近"""
from .saddle import (
    AsymptoticEstimate,
    CriticalPoint,
    Direction,
    FormulaError,
    binomial_exact,
    critical_point,
    log_int,
    nth_root_gap,
    pemantle_estimate,
    tilde_e,
)

__all__ = [
    "AsymptoticEstimate",
    "CriticalPoint",
    "Direction",
    "FormulaError",
    "binomial_exact",
    "critical_point",
    "log_int",
    "nth_root_gap",
    "pemantle_estimate",
    "tilde_e",
]
