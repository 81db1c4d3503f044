"""Trajectory sampling and empirical estimates."""

from .sampler import (
    Trajectory,
    sample_stationary_state,
    sample_path,
    sample_trajectory,
    return_times,
    mean_return_time,
)

__all__ = [
    "Trajectory",
    "sample_stationary_state",
    "sample_path",
    "sample_trajectory",
    "return_times",
    "mean_return_time",
]
