"""transfer 包：转移矩阵、Perron 根与谱统计"""
from .matrix import (
    StepKind,
    TransferMatrix,
    build_M,
    characteristic_polynomial,
    exact_determinant,
    floor_schedule,
    initial_vector,
    shift_matrix,
    step_matrix,
)
from .approx import (
    IrrationalGrowth,
    bracket,
    convergents,
    irrational_growth,
    parse_real,
    prefix_counts_agree,
)
from .spectrum import (
    BoundaryFit,
    ConvergenceError,
    GrowthEstimate,
    PerronResult,
    SpectrumError,
    SpectrumReport,
    boundary_recurrence_check,
    count_spectrum_in,
    full_spectrum,
    growth_exponent,
    oscillation_scan,
    perron_ladder,
    perron_root,
)

__all__ = [
    "StepKind",
    "TransferMatrix",
    "build_M",
    "characteristic_polynomial",
    "exact_determinant",
    "floor_schedule",
    "initial_vector",
    "shift_matrix",
    "step_matrix",
    "IrrationalGrowth",
    "bracket",
    "convergents",
    "irrational_growth",
    "parse_real",
    "prefix_counts_agree",
    "BoundaryFit",
    "ConvergenceError",
    "GrowthEstimate",
    "PerronResult",
    "SpectrumError",
    "SpectrumReport",
    "boundary_recurrence_check",
    "count_spectrum_in",
    "full_spectrum",
    "growth_exponent",
    "oscillation_scan",
    "perron_ladder",
    "perron_root",
]
