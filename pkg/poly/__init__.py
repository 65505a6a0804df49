"""poly 包：(x+1)^n − λx^p 的根、临界值与模序"""
from .moduli import (
    OrderingReport,
    OrderingScan,
    PairingReport,
    arg_rates,
    expected_ordering,
    group_by_modulus,
    modulus_ordering,
    modulus_pairing_check,
    ordering_scan,
    pairing_scan,
)
from .roots import (
    Continuation,
    CriticalData,
    DoubleRoot,
    PolyInstance,
    RootSet,
    RootSolveError,
    SmallLambdaReport,
    TrackingError,
    arg_derivative,
    continue_roots,
    critical_data,
    detect_double_root,
    dx_dlambda,
    dx_dlambda_fd,
    roots,
    small_lambda_roots,
)

__all__ = [
    "OrderingReport",
    "OrderingScan",
    "PairingReport",
    "arg_rates",
    "expected_ordering",
    "group_by_modulus",
    "modulus_ordering",
    "modulus_pairing_check",
    "ordering_scan",
    "pairing_scan",
    "Continuation",
    "CriticalData",
    "DoubleRoot",
    "PolyInstance",
    "RootSet",
    "RootSolveError",
    "SmallLambdaReport",
    "TrackingError",
    "arg_derivative",
    "continue_roots",
    "critical_data",
    "detect_double_root",
    "dx_dlambda",
    "dx_dlambda_fd",
    "roots",
    "small_lambda_roots",
]
