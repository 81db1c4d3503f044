"""Series bounds behind the infinite excess entropy of the HPM process.

Two facts drive the argument:

* every phase of a component i <= t/2 produces its own length-t word, so
  H[X^t] is at least the entropy those phases contribute;
* only words with no 0 leave the next symbol uncertain, and those come from
  components i > t/2, so h_mu(t+1) <= sum_{i>t/2} mu_i.
"""

import logging

import numpy as np

from .report import Check, ClaimReport
from ..analysis import hmu_curve
from ..errors import ParamError
from ..processes import component_series, component_term, hpm_machine, hpm_normalizer
from ..toolkit.math import Enclosure, partial_sum

logger = logging.getLogger(__name__)

CHUNK = 1 << 20


def hpm_block_entropy_lower(t: int, tol: float = 1e-10) -> float:
    """sum_{i=2}^{floor(t/2)} mu_i lg(i^2 lg^2 i / C), a lower bound on H[X^t]."""
    if t < 4:
        raise ParamError("the bound needs at least one whole component: t >= 4")
    c = hpm_normalizer(tol).midpoint
    last = t // 2
    total = 0.0
    lo = 2
    while lo <= last:
        hi = min(last + 1, lo + CHUNK)
        i = np.arange(lo, hi, dtype=float)
        lg2 = np.log2(i) ** 2
        total += float(np.sum(c / (i * lg2) * np.log2(i * i * lg2 / c)))
        lo = hi
    return total


def hpm_hmu_upper(t: int, tol: float = 1e-10) -> Enclosure:
    """Enclosure of sum_{i > t/2} mu_i, an upper bound on h_mu(t+1)."""
    if t < 1:
        raise ParamError("t must be at least 1")
    first = max(2, t // 2 + 1)
    # sum_{i >= first} = S - sum_{i < first}
    head = partial_sum(component_term, 2, first)
    rest = (component_series(2, tol) - head).clip(0.0)
    return hpm_normalizer(tol) * rest


def verify_hpm(t_max: int = 40, mass_tol: float = 1e-6, slack: float = 1e-9) -> ClaimReport:
    """Check the enumerated entropy curve against both series bounds."""
    report = ClaimReport("hpm-infinitary", "H[X^t] lower series and h_mu(t+1) upper series")
    spec = hpm_machine(horizon=t_max + 1)
    curve = hmu_curve(spec, t_max + 1, mass_tol, with_gaps=False)
    for t in range(1, t_max + 1):
        bound = hpm_hmu_upper(t)
        report.add(Check.at_most("hpm-hmu-upper", t, curve.rate[t + 1], bound.upper + slack,
                                 "h_mu(t+1) <= sum_{i>t/2} mu_i"))
    for t in range(4, t_max + 2):
        lower = hpm_block_entropy_lower(t)
        report.add(Check.at_least("hpm-block-lower", t, curve.block[t], lower - slack,
                                  "H[X^t] >= phase entropy of components i <= t/2"))
    excess = [curve.excess(t) for t in range(1, t_max + 2)]
    increasing = all(b.lower > a.lower for a, b in zip(excess, excess[1:]))
    report.add(Check.holds("hpm-excess-increasing", t_max + 1, increasing, excess[-1].lower,
                           "partial excess entropy strictly increasing"))
    return report


def verify_hpm_growth(small: int = 100, large: int = 1_000_000, margin: float = 0.5) -> ClaimReport:
    """Unbounded growth of the block-entropy lower bound, from the series alone."""
    report = ClaimReport("hpm-growth", "block-entropy lower bound grows without limit")
    ts = [small, 10 * small, large]
    values = [hpm_block_entropy_lower(t) for t in ts]
    report.add(Check.holds("hpm-growth-monotone", None, all(np.diff(values) >= 0.0), values[-1]))
    growth = Enclosure.point(values[-1] - values[0])
    report.add(Check.at_least("hpm-growth", large, growth, margin,
                              f"H lower bound at t={large} minus at t={small}"))
    tails = [hpm_hmu_upper(t).upper for t in ts]
    report.add(Check.holds("hpm-hmu-vanishing", None, all(np.diff(tails) <= 0.0), tails[-1],
                           "sum_{i>t/2} mu_i nonincreasing"))
    return report
