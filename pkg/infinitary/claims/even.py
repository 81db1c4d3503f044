"""Even Process checks against an exhaustive dense-matrix oracle."""

import itertools
import logging
from typing import Dict

import numpy as np

from .bounds import CHECK_SLACK
from .report import Check, ClaimReport
from ..analysis import entropy_gap_curve, gap_bound_from_sync, hmu_curve, word_table
from ..errors import ParamError
from ..processes import even_machine
from ..toolkit.hmm import MachineSpec, is_unifilar
from ..toolkit.math import binary_entropy

logger = logging.getLogger(__name__)

ORACLE_TOL = 1e-12


def dense_word_probabilities(spec: MachineSpec, t: int) -> Dict[str, float]:
    """P(w) = pi T^(w_1) ... T^(w_t) 1 for every positive-probability word, by brute force.

    Only for tail-free finite machines.
    """
    support = spec.support(0.5)
    if support.tail != 0.0:
        raise ParamError(f"{spec.name} has no finite exact support")
    keys = sorted(support.masses)
    index = {k: s for s, k in enumerate(keys)}
    n = len(keys)
    matrices = np.zeros((spec.alphabet.size, n, n))
    for key in keys:
        for edge in spec.edges(key):
            matrices[edge.symbol.code, index[key], index[edge.target]] += edge.probability
    pi = np.array([support.masses[k] for k in keys])
    glyphs = spec.alphabet.glyphs
    result: Dict[str, float] = {}
    for codes in itertools.product(range(spec.alphabet.size), repeat=t):
        row = pi
        for code in codes:
            row = row @ matrices[code]
        p = float(row.sum())
        if p > 0.0:
            result["".join(glyphs[c] for c in codes)] = p
    return result


def verify_oracle(spec: MachineSpec, t_max: int = 10) -> ClaimReport:
    """Word tables agree with the dense oracle word by word."""
    report = ClaimReport("oracle", f"{spec.name}: word tables vs dense enumeration")
    for t in range(1, t_max + 1):
        table = word_table(spec, t, ORACLE_TOL, keep_forward=False)
        oracle = dense_word_probabilities(spec, t)
        entries = table.expanded()
        worst = max(abs(entries.get(w, 0.0) - p) for w, p in oracle.items())
        same_words = set(entries) == set(oracle)
        report.add(Check.holds("oracle-words", t, same_words and table.tail == 0.0,
                               float(len(entries))))
        report.add(Check.agrees("oracle-probability", t, worst, 0.0, ORACLE_TOL))
        report.add(Check.agrees("oracle-mass", t, table.mass, 1.0, ORACLE_TOL))
    return report


def verify_even(p: float = 0.5, mass_tol: float = 1e-10, gap_length: int = 6) -> ClaimReport:
    """Unifilarity, entropy-rate convergence and the gap identity of the Even Process."""
    spec = even_machine(p)
    report = ClaimReport("even", f"Even Process p={p:g}")
    report.add(Check.holds("even-unifilar", None, is_unifilar(spec)))

    rate = spec.entropy_rate(1e-12)
    expected = binary_entropy(p) / (2.0 - p)
    report.add(Check.agrees("even-rate", None, rate.midpoint, expected, CHECK_SLACK,
                            "h_mu = h_b(p)/(2-p)"))

    curve = hmu_curve(spec, 20, mass_tol)
    report.add(Check.at_most("even-hmu-20", 20, curve.rate[20] - rate, 1e-3,
                             "h_mu(20) - h_mu"))
    sync_bound = gap_bound_from_sync(spec, 9, mass_tol)
    report.add(Check.at_most("even-hmu-10", 10, curve.rate[10] - rate,
                             sync_bound.upper + CHECK_SLACK, "h_mu(10) - h_mu <= lg2 P(NS_9)"))

    gaps = entropy_gap_curve(spec, gap_length, mass_tol)
    for t in range(gap_length + 1):
        difference = curve.rate[t + 1] - rate
        report.add(Check.holds("even-gap-identity", t, gaps[t].overlaps(difference, CHECK_SLACK),
                               gaps[t].midpoint, f"h_mu(t+1) - h_mu in {difference}"))
    return report
