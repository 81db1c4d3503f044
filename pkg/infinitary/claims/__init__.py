"""Executable checks of the series bounds behind infinite excess entropy."""

from .report import Check, ClaimReport, reports_frame
from .recurrence import kac_consistency
from .bounds import gap_vs_sync, rate_floor, verify_alternative_rate, verify_kac, verify_sync
from .even import dense_word_probabilities, verify_even, verify_oracle
from .hpm import hpm_block_entropy_lower, hpm_hmu_upper, verify_hpm, verify_hpm_growth
from .bc import (
    bc_prob_Wt,
    bc_claim3,
    bc_claim4,
    verify_claim4,
    bc_claim5,
    bc_claim6,
    harmonic_divergence,
    block_return_probability,
    first_return_distribution,
    kac_return_series,
    stationary_balance,
    stationarity_residuals,
    root_descent_law,
    verify_return_times,
    verify_block_returns,
    lumped_vs_exact,
)
from .suite import SuiteRunner, Task, run_suite, run_task

__all__ = [
    "Check",
    "ClaimReport",
    "reports_frame",
    "kac_consistency",
    "gap_vs_sync",
    "rate_floor",
    "verify_alternative_rate",
    "verify_kac",
    "verify_sync",
    "dense_word_probabilities",
    "verify_even",
    "verify_oracle",
    "hpm_block_entropy_lower",
    "hpm_hmu_upper",
    "verify_hpm",
    "verify_hpm_growth",
    "bc_prob_Wt",
    "bc_claim3",
    "bc_claim4",
    "verify_claim4",
    "bc_claim5",
    "bc_claim6",
    "harmonic_divergence",
    "block_return_probability",
    "first_return_distribution",
    "kac_return_series",
    "stationary_balance",
    "stationarity_residuals",
    "root_descent_law",
    "verify_return_times",
    "verify_block_returns",
    "lumped_vs_exact",
    "SuiteRunner",
    "Task",
    "run_suite",
    "run_task",
]
