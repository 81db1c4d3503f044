"""Series evaluators and checks for the BC process.

The mechanism behind the infinite excess entropy: length-t words made only of
copy symbols (the set W_t) have probability of order C/t, every such word
leaves at least 1/300 bit of prediction gap, so h_mu(t+1) - h_mu decays no
faster than C/(3600 t) and the partial excess-entropy sums diverge.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import digamma

from .report import Check, ClaimReport
from ..analysis import (
    entropy_gap_curve,
    gap_from_forward,
    iter_word_tables,
    mixed_state,
    table_gap_sum,
    word_table,
)
from ..errors import ParamError
from ..processes import (
    BC_TAG,
    DEFAULT_Q0,
    ROOT,
    bc_machine,
    bc_normalizer,
    closed_form_root_mass,
    return_probability,
    trigamma,
)
from ..toolkit.hmm import MachineSpec, SparseDistribution, StateKey, propagate, step
from ..toolkit.hmm import step_stationarity_residual, word_probability
from ..toolkit.math import Enclosure, integral_test_bracket

logger = logging.getLogger(__name__)

DESCENT_SYMBOLS = (0, 1)
COPY_SYMBOLS = (2, 3)

CLAIM3_LOWER = 1.0 / 12.0
CLAIM3_UPPER = 6.0
CONDITIONAL_BOUND = 1.0 / 150.0
HTILDE_BOUND = 1.0 / 300.0
H_BOUND = 1.0 / 150.0
GAP_DIVISOR = 3600.0
BLOCK_BOUND = 1.0 / 6.0

EXACT_MASS_TOL = 1e-12


def _copy_term(t: int) -> Callable:
    # (i - t + 1) p_i / i^2: return states at depth i with at least t copies left
    def term(i):
        return (i - t + 1.0) * (2.0 * i + 1.0) / (i * i * (i + 1.0) ** 2)

    return term


def bc_prob_Wt(t: int, q0: float = DEFAULT_Q0, tol: float = 1e-12) -> Enclosure:
    """Enclosure of P(W_t) = C sum_{i>=t} 2^i [pi_i1^1 p_i + sum_{k=2}^{i-t+1} pi_i1^k].

    Each depth contributes C (i - t + 1) p_i / i^2; the terms decrease from
    i = 2t + 2 on, where the integral-test bracket takes over.
    """
    if t < 1:
        raise ParamError("t must be at least 1")
    _, c = bc_normalizer(q0)
    series = integral_test_bracket(_copy_term(t), t, tol, monotone_from=2 * t + 2)
    return c * series


def copy_word_mass(spec: MachineSpec, t_max: int) -> List[Tuple[float, float]]:
    """(enumerated P(W_t), tail) for t = 0..t_max from a restricted word table."""
    return [
        (table.mass, table.tail)
        for table in iter_word_tables(spec, t_max, EXACT_MASS_TOL, reduce=True,
                                      symbols=COPY_SYMBOLS, keep_forward=False)
    ]


def bc_claim3(t_max: int = 50, q0: float = DEFAULT_Q0, spec: Optional[MachineSpec] = None,
              enumerate_to: int = 8) -> ClaimReport:
    """C/(12t) <= P(W_t) <= 6C/t, with trigamma and enumeration cross-checks."""
    report = ClaimReport("claim3", "C/12t <= P(W_t) <= 6C/t")
    _, c = bc_normalizer(q0)
    series = {t: bc_prob_Wt(t, q0) for t in range(1, max(t_max, enumerate_to) + 1)}
    for t in range(1, t_max + 1):
        p = series[t]
        report.add(Check.at_least("claim3-lower", t, p, c.upper * CLAIM3_LOWER / t))
        report.add(Check.at_most("claim3-upper", t, p, c.lower * CLAIM3_UPPER / t))
        closed = c * float(trigamma(t))
        report.add(Check.overlapping("claim3-trigamma", t, p, closed, 1e-13 * closed.upper,
                                     "P(W_t) = C psi_1(t)"))
    if enumerate_to > 0:
        if spec is None:
            spec = bc_machine(q0, horizon=enumerate_to)
        reach = min(enumerate_to, spec.horizon or enumerate_to)
        for t, (mass, tail) in enumerate(copy_word_mass(spec, reach)):
            if t == 0:
                continue
            p = series[t]
            report.add(Check.agrees("claim3-enumeration", t, mass, p.midpoint,
                                    1e-9 + tail + p.width, "series vs word table"))
    return report


def copy_representatives(t: int) -> List[str]:
    """Two distinct words of W_t."""
    return ["2" * t, "3" + "2" * (t - 1)]


def copy_conditional(spec: MachineSpec, w: str, eps: float = EXACT_MASS_TOL) -> Enclosure:
    """P(next symbol in {2,3} | first symbols = w)."""
    spec.check_horizon(len(w) + 1)
    state = mixed_state(spec, w, eps)
    children = propagate(state.distribution, spec)
    named = math.fsum(children[c].named_mass for c in COPY_SYMBOLS if c in children)
    return Enclosure(named, min(1.0, named + state.distribution.tail))


def bc_claim4(t: int, spec: Optional[MachineSpec] = None, q0: float = DEFAULT_Q0) -> Enclosure:
    """P(X_t in {2,3} | X_0..X_{t-1} = 2^t).

    Raises:
        ZeroProbabilityError: If the word probability cannot be certified
    """
    if spec is None:
        spec = bc_machine(q0, horizon=t + 1)
    return copy_conditional(spec, "2" * t)


def verify_claim4(t_max: int = 8, spec: Optional[MachineSpec] = None,
                  q0: float = DEFAULT_Q0) -> ClaimReport:
    """Conditional bound on two words per t, the ratio route and the 2 <-> 3 symmetry."""
    report = ClaimReport("claim4", "P(X_t in {2,3} | w) >= 1/150 for w in W_t")
    if spec is None:
        spec = bc_machine(q0, horizon=t_max + 1)
    for t in range(1, t_max + 1):
        values = []
        for w in copy_representatives(t):
            value = copy_conditional(spec, w)
            values.append(value)
            report.add(Check.at_least("claim4", t, value, CONDITIONAL_BOUND, f"w={w}"))
        ratio = bc_prob_Wt(t + 1, q0) / bc_prob_Wt(t, q0)
        report.add(Check.overlapping("claim4-ratio", t, values[0], ratio, 1e-12,
                                     "P(W_{t+1}) / P(W_t)"))
        mirrored = copy_conditional(spec, "3" * t)
        report.add(Check.agrees("claim4-symmetry", t, values[0].midpoint, mirrored.midpoint,
                                1e-10, "w=2^t vs w=3^t"))
    return report


def bc_claim5(t: int, spec: Optional[MachineSpec] = None, q0: float = DEFAULT_Q0,
              sample_cap: int = 100_000) -> ClaimReport:
    """htilde_w <= 1/300 and h_w >= 1/150 for the enumerated words of W_t."""
    report = ClaimReport("claim5", "htilde_w <= 1/300 and h_w >= 1/150 on W_t")
    if spec is None:
        spec = bc_machine(q0, horizon=t + 1)
    table = word_table(spec, t, EXACT_MASS_TOL, reduce=True, symbols=COPY_SYMBOLS)
    root_entropy = spec.state_entropy(ROOT)
    worst_htilde = 0.0
    worst_h = math.inf
    worst_root = 0.0
    checked = 0
    for word, _, count in list(table.items())[:sample_cap]:
        v = table.forward[word]
        h_w, htilde_w = gap_from_forward(spec, v)
        worst_htilde = max(worst_htilde, htilde_w.upper)
        worst_h = min(worst_h, h_w.lower)
        worst_root = max(worst_root, abs(htilde_w.midpoint - v.get(ROOT) / v.total * root_entropy))
        checked += count
    described = f"{checked} words"
    report.add(Check.at_most("claim5-htilde", t, Enclosure.point(worst_htilde), HTILDE_BOUND,
                             described))
    report.add(Check.at_least("claim5-h", t, Enclosure.point(worst_h), H_BOUND, described))
    report.add(Check.agrees("claim5-root", t, worst_root, 0.0, 1e-12,
                            "htilde_w = phi(w)_root H[(p0,q0,q0)]"))
    return report


def harmonic_divergence(T: int, c: float) -> float:
    """sum_{t=1}^{T} C/(3600 t) = C (psi(T+1) + gamma) / 3600."""
    if T < 1:
        raise ParamError("T must be at least 1")
    return float(c * (digamma(T + 1.0) + np.euler_gamma) / GAP_DIVISOR)


def bc_claim6(t_max: int = 10, spec: Optional[MachineSpec] = None, q0: float = DEFAULT_Q0,
              mass_tol: float = 1e-6, divergence_at: int = 1_000_000) -> ClaimReport:
    """h_mu(t+1) - h_mu >= C/(3600 t), certified from enumerated gap sums only."""
    report = ClaimReport("claim6", "h_mu(t+1) - h_mu >= C/(3600 t)")
    if spec is None:
        spec = bc_machine(q0, horizon=t_max + 1)
    _, c = bc_normalizer(q0)
    gaps = entropy_gap_curve(spec, t_max, mass_tol)
    for t in range(1, t_max + 1):
        bound = c.upper / (GAP_DIVISOR * t)
        ratio = gaps[t].lower / bound
        report.add(Check.at_least("claim6", t, gaps[t], bound, f"gap/bound = {ratio:.4g}"))

    for table in iter_word_tables(spec, t_max, EXACT_MASS_TOL, reduce=True,
                                  symbols=COPY_SYMBOLS):
        t = table.length
        if t == 0:
            continue
        restricted = table_gap_sum(spec, table)
        bound = bc_prob_Wt(t, q0).upper * HTILDE_BOUND
        report.add(Check.at_least("claim6-copy-words", t, restricted, bound,
                                  "sum over W_t >= P(W_t)/300"))

    small = harmonic_divergence(1000, c.lower)
    large = harmonic_divergence(divergence_at, c.lower)
    report.add(Check.holds("claim6-divergence", divergence_at, large > small, large,
                           f"sum_(t<=T) C/(3600 t): {small:.4g} at T=1000"))
    return report


def _edge_probability(spec: MachineSpec, source: StateKey, target: StateKey) -> float:
    return math.fsum(e.probability for e in spec.edges(source) if e.target == target)


def _breadths(i: int) -> List[int]:
    return sorted({1, 2, (1 << i) - 1, 1 << i} & set(range(1, (1 << i) + 1)))


def _return_weight_term(i):
    # p_i / i^2, the stationary inflow into the root from depth i relative to C
    return (2.0 * i + 1.0) / (i * i * (i + 1.0) ** 2)


def stationary_balance(q0: float = DEFAULT_Q0, max_depth: int = 20,
                       bound_depth: int = 30) -> ClaimReport:
    """Per-state balance pi(sigma) = sum of inflows, and the pi_ij sandwich bounds."""
    report = ClaimReport("claim2", "stationary weights of the tree states")
    exact = bc_machine(q0)
    weight = exact.stationary_weight
    root, c = bc_normalizer(q0)
    p0 = 1.0 - 2.0 * q0

    worst_abs = 0.0
    worst_rel = 0.0
    checked = 0
    for i in range(1, max_depth + 1):
        for j in _breadths(i):
            for k in range(1, i + 1):
                key = StateKey(BC_TAG, (i, j, k))
                if k > 1:
                    source = StateKey(BC_TAG, (i, j, k - 1))
                elif i == 1:
                    source = ROOT
                else:
                    source = StateKey(BC_TAG, (i - 1, (j + 1) // 2, 1))
                inflow = weight(source) * _edge_probability(exact, source, key)
                deviation = abs(weight(key) - inflow)
                worst_abs = max(worst_abs, deviation)
                worst_rel = max(worst_rel, deviation / weight(key))
                checked += 1
    report.add(Check.agrees("claim2-balance", max_depth, worst_abs, 0.0, 1e-12,
                            f"{checked} tree states, max relative deviation {worst_rel:.3g}"))
    report.add(Check.agrees("claim2-balance-relative", max_depth, worst_rel, 0.0, 1e-10))

    returns = integral_test_bracket(_return_weight_term, 1, 1e-12)
    root_inflow = c * returns + p0 * root.midpoint
    report.add(Check.agrees("claim2-root", 0, weight(ROOT), root_inflow.midpoint,
                            root_inflow.width + root.width + 1e-12,
                            "p0 pi_01 + C sum p_i/i^2"))

    worst_low = math.inf
    worst_high = 0.0
    for i in range(1, bound_depth + 1):
        scale = (1 << i) * i * i / c.midpoint
        total = math.fsum(weight(StateKey(BC_TAG, (i, 1, k))) for k in range(1, i + 1))
        worst_low = min(worst_low, total * scale)
        worst_high = max(worst_high, total * scale)
    report.add(Check.at_least("claim2-lower", bound_depth, Enclosure.point(worst_low), 1.0 - 1e-12,
                              "pi_ij 2^i i^2 / C >= 1"))
    report.add(Check.at_most("claim2-upper", bound_depth, Enclosure.point(worst_high), 3.0,
                             "pi_ij 2^i i^2 / C <= 3"))

    closed = closed_form_root_mass(q0)
    report.add(Check.agrees("claim2-root-closed-form", 0, root.midpoint, closed,
                            root.width + 1e-14, "1/(1 + 2 q0 (pi^2/3 - 1))"))
    return report


def stationarity_residuals(q0: float = DEFAULT_Q0, horizon: int = 20,
                           eps_values: Sequence[float] = (1e-4, 1e-6)) -> ClaimReport:
    """||pi_eps T - pi_eps||_1 on the lumped presentation, and on the exact tree."""
    report = ClaimReport("claim1-stationarity", "stationarity residual <= 2 eps")
    lumped = bc_machine(q0, horizon=horizon)
    for eps in eps_values:
        residual = step_stationarity_residual(lumped, eps)
        report.add(Check.at_most("stationarity-lumped", None, Enclosure.point(residual),
                                 2.0 * eps, f"eps={eps:g}"))
    exact = bc_machine(q0)
    eps = 1e-3
    tail = exact.support(eps).tail
    residual = step_stationarity_residual(exact, eps)
    report.add(Check.at_most("stationarity-exact", None, Enclosure.point(residual),
                             2.0 * max(eps, tail) + 1e-12, f"eps={eps:g}, tail={tail:.3g}"))
    return report


def root_descent_law(q0: float = DEFAULT_Q0, t_max: int = 10) -> ClaimReport:
    """P(first t symbols are 0/1 | root) = (1 - p0)/t^2."""
    report = ClaimReport("claim1-descent", "P_root(V_t) = (1 - p0)/t^2")
    exact = bc_machine(q0)
    start = SparseDistribution.point(ROOT)
    for table in iter_word_tables(exact, t_max, 1e-14, symbols=DESCENT_SYMBOLS, start=start,
                                  keep_forward=False):
        t = table.length
        if t == 0:
            continue
        expected = 2.0 * q0 / (t * t)
        report.add(Check.agrees("descent-law", t, table.mass, expected, 1e-12 * expected))
    return report


def _return_time_term(t):
    return (2.0 * t + 1.0) / (t * (t + 1.0) ** 2)


def kac_return_series(q0: float = DEFAULT_Q0, tol: float = 1e-12) -> Enclosure:
    """E_root[return time] = p0 + sum_t P_root(V_t) p_t 2t = p0 + 2(1 - p0) sum_t p_t / t."""
    p0 = 1.0 - 2.0 * q0
    series = integral_test_bracket(_return_time_term, 1, tol / (4.0 * q0))
    return series * (2.0 * (1.0 - p0)) + p0


def first_return_distribution(spec: MachineSpec, max_length: int = 12,
                              start: StateKey = ROOT) -> np.ndarray:
    """P(first return to ``start`` at time n) for n = 0..max_length, by propagation over states."""
    dist = SparseDistribution.point(start)
    returns = np.zeros(max_length + 1)
    for n in range(1, max_length + 1):
        dist = step(dist, spec)
        returns[n] = dist.get(start)
        dist = SparseDistribution({k: m for k, m in dist.items() if k != start}, 0.0)
    return returns


def verify_return_times(q0: float = DEFAULT_Q0, max_length: int = 12) -> ClaimReport:
    """Kac identity for the root and the parity of first return times."""
    report = ClaimReport("claim1-recurrence", "root return times")
    root, _ = bc_normalizer(q0)
    series = kac_return_series(q0)
    kac = root.reciprocal()
    report.add(Check.agrees("kac-series", None, series.midpoint, kac.midpoint,
                            series.width + kac.width + 1e-12, "E[tau] = 1/pi_01"))
    returns = first_return_distribution(bc_machine(q0), max_length)
    odd = [n for n in range(3, max_length + 1, 2) if returns[n] != 0.0]
    report.add(Check.holds("return-parity", max_length, not odd, float(len(odd)),
                           "no first return at odd times > 1"))
    p0 = 1.0 - 2.0 * q0
    report.add(Check.agrees("return-time-1", 1, returns[1], p0, 1e-15))
    report.add(Check.agrees("return-time-2", 2, returns[2], (1.0 - p0) * float(return_probability(1)),
                            1e-15))
    return report


def block_return_probability(t: int, i: int) -> float:
    """P(next t symbols in W_t | state in R_ij) = p_i (1 + i - t) / (1 + (i - 1) p_i) for i >= t."""
    if i < t:
        return 0.0
    p = float(return_probability(i))
    return p * (1.0 + i - t) / (1.0 + (i - 1) * p)


def verify_block_returns(q0: float = DEFAULT_Q0,
                         pairs: Sequence[Tuple[int, int]] = ((2, 4), (3, 6), (4, 8))) -> ClaimReport:
    """P(W_t | R_ij) >= 1/6 for i >= 2t, analytically and by forward computation."""
    report = ClaimReport("block-returns", "P(Future^t in W_t | R_ij) >= 1/6")
    exact = bc_machine(q0)
    for t, i in pairs:
        analytic = block_return_probability(t, i)
        report.add(Check.at_least("block-returns", t, Enclosure.point(analytic), BLOCK_BOUND,
                                  f"i={i}"))
        keys = [StateKey(BC_TAG, (i, 1, k)) for k in range(1, i + 1)]
        weights = [exact.stationary_weight(k) for k in keys]
        total = math.fsum(weights)
        start = SparseDistribution({k: w / total for k, w in zip(keys, weights)})
        table = word_table(exact, t, 1e-14, symbols=COPY_SYMBOLS, start=start,
                           keep_forward=False)
        report.add(Check.agrees("block-returns-forward", t, table.mass, analytic, 1e-12,
                                f"i={i}"))
    return report


def lumped_vs_exact(q0: float = DEFAULT_Q0, horizon: int = 6, eps: float = 1e-4,
                    words: Sequence[str] = ("4", "44", "40", "04", "02", "0132", "2323")
                    ) -> ClaimReport:
    """Word probabilities of the lumped presentation lie in the exact machine's enclosures."""
    report = ClaimReport("lumped-exact", "lumped presentation reproduces word probabilities")
    lumped = bc_machine(q0, horizon=horizon)
    exact = bc_machine(q0)
    for w in words:
        value = word_probability(lumped, w, eps)
        reference = word_probability(exact, w, eps)
        report.add(Check.holds("lumped-exact", len(w), reference.contains(value.midpoint, 1e-12),
                               value.midpoint, f"w={w}, exact in {reference}"))
    return report
