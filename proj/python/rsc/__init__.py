"""Random simplicial complexes: cohomology, obstructions and the birth-time process."""

from ._rsc import (
    Complex,
    Direction,
    E_constant,
    RscError,
    cohomology,
    critical_window_expectation,
    criticality,
    exact_expected_Xjk,
    find_M_copies,
    find_Mhat_copies,
    full_complex,
    hitting_time,
    is_cohom_connected,
    mc_expectations,
    sample,
)

__all__ = [
    "Complex",
    "Direction",
    "E_constant",
    "RscError",
    "cohomology",
    "critical_window_expectation",
    "criticality",
    "exact_expected_Xjk",
    "find_M_copies",
    "find_Mhat_copies",
    "full_complex",
    "hitting_time",
    "is_cohom_connected",
    "mc_expectations",
    "sample",
]
