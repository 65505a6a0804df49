"""words 包：平衡字的精确计数、穷举与 ψ 重投影"""
from .balance import (
    BalanceSpec,
    ContractError,
    CountVector,
    SizeCapError,
    Word,
    complement,
    completion_table,
    count_balanced_dp,
    count_unconstrained,
    deviation,
    enumerate_balanced,
    extend_greedy,
    is_balanced,
    prolong,
    sample_balanced,
)
from .estimates import (
    ContinuityReport,
    ReprojectionError,
    check_continuity,
    continuity_bound,
    continuity_rate,
    is_zero_insertion,
    jmax,
    reproject,
)

__all__ = [
    "BalanceSpec",
    "ContractError",
    "CountVector",
    "SizeCapError",
    "Word",
    "complement",
    "completion_table",
    "count_balanced_dp",
    "count_unconstrained",
    "deviation",
    "enumerate_balanced",
    "extend_greedy",
    "is_balanced",
    "prolong",
    "sample_balanced",
    "ContinuityReport",
    "ReprojectionError",
    "check_continuity",
    "continuity_bound",
    "continuity_rate",
    "is_zero_insertion",
    "jmax",
    "reproject",
]
