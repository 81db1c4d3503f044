"""Checks that hold for every stationary machine."""

import logging
from typing import Optional

from .recurrence import kac_consistency
from .report import Check, ClaimReport
from ..analysis import (
    alternative_rate,
    entropy_gap_curve,
    generic_rate_lower_bound,
    hmu_curve,
    sync_curve,
)
from ..toolkit.hmm import MachineSpec, StateKey
from ..toolkit.math import Enclosure

logger = logging.getLogger(__name__)

CHECK_SLACK = 1e-12


def rate_floor(spec: MachineSpec, t_max: int = 10, mass_tol: float = 1e-6,
               rate_tol: float = 1e-10) -> ClaimReport:
    """h_mu(t) never certifiably below sum_sigma pi_sigma h_sigma."""
    report = ClaimReport("rate-floor", f"{spec.name}: h_mu(t) >= sum pi h")
    floor = generic_rate_lower_bound(spec, rate_tol)
    curve = hmu_curve(spec, t_max, mass_tol, with_gaps=False)
    for t in range(1, t_max + 1):
        report.add(Check.not_below("rate-floor", t, curve.rate[t], floor, CHECK_SLACK,
                                   spec.name))
    return report


def verify_sync(spec: MachineSpec, t: int = 20, mass_tol: float = 1e-4,
                bound: Optional[float] = 1e-3) -> ClaimReport:
    """P(NS_t) upper enclosures nonincreasing, and below ``bound`` at length t."""
    report = ClaimReport("sync", f"{spec.name}: P(NS_t) nonincreasing")
    curve = sync_curve(spec, t, mass_tol)
    uppers = [e.upper for e in curve]
    monotone = all(b <= a for a, b in zip(uppers, uppers[1:]))
    report.add(Check.holds("sync-monotone", t, monotone, uppers[-1], spec.name))
    if bound is not None:
        report.add(Check.at_most("sync-bound", t, curve[t], bound, spec.name))
    return report


def gap_vs_sync(spec: MachineSpec, t_max: int = 6, mass_tol: float = 1e-6) -> ClaimReport:
    """Gap sum over L_t at most lg|X| P(NS_t)."""
    report = ClaimReport("gap-sync", f"{spec.name}: gap sum <= lg|X| P(NS_t)")
    gaps = entropy_gap_curve(spec, t_max, mass_tol)
    sync = sync_curve(spec, t_max, mass_tol)
    log_size = spec.alphabet.log_size
    for t in range(t_max + 1):
        bound = log_size * sync[t].upper + CHECK_SLACK
        report.add(Check.at_most("gap-sync", t, Enclosure.point(gaps[t].lower), bound, spec.name))
    return report


def verify_alternative_rate(spec: MachineSpec, t: int = 4, mass_tol: float = 1e-8,
                            rate_tol: float = 1e-10) -> ClaimReport:
    """sum_w P(w) htilde_w reproduces the entropy rate at every length."""
    report = ClaimReport("alternative-rate", f"{spec.name}: sum P(w) htilde_w = h_mu")
    rate = generic_rate_lower_bound(spec, rate_tol)
    for length in range(1, t + 1):
        value = alternative_rate(spec, length, mass_tol)
        report.add(Check.holds("alternative-rate", length, value.overlaps(rate, CHECK_SLACK),
                               value.midpoint, f"h_mu in {rate}"))
    return report


def verify_kac(spec: MachineSpec, state: StateKey, expected: float) -> ClaimReport:
    """Return-time enclosure of a state contains the expected value."""
    report = ClaimReport("kac", f"{spec.name}: E[return time to {state}] = 1/pi")
    value = kac_consistency(spec, state)
    report.add(Check.holds("kac", None, value.contains(expected, CHECK_SLACK), value.midpoint,
                           f"{state}: {value}"))
    return report
