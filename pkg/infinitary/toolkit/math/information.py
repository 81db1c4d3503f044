"""Shannon entropy helpers (all logarithms base 2)."""

from typing import Sequence, Union

import numpy as np
from scipy.special import entr

LN2 = float(np.log(2.0))

ArrayLike = Union[Sequence[float], np.ndarray]


def entropy_bits(probabilities: ArrayLike) -> float:
    """Entropy of a (not necessarily normalised) nonnegative vector, in bits.

    Zero entries contribute nothing. No renormalisation is applied, so partial
    tables give the partial sum -sum p lg p.
    """
    p = np.asarray(probabilities, dtype=float)
    return float(np.sum(entr(p))) / LN2


def weighted_entropy_bits(probabilities: ArrayLike, multiplicities: ArrayLike) -> float:
    """-sum m_k p_k lg p_k for classes of m_k equiprobable outcomes."""
    p = np.asarray(probabilities, dtype=float)
    m = np.asarray(multiplicities, dtype=float)
    return float(np.dot(m, entr(p))) / LN2


def binary_entropy(x: float) -> float:
    """h_b(x) in bits; defined as 0 at the endpoints."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return entropy_bits([x, 1.0 - x])


def branching_entropy(p: float, q: float) -> float:
    """H[(p, q, q)], the entropy of one stay branch and two symmetric branches."""
    return entropy_bits([p, q, q])


def continuity_radius(distance: float, alphabet_size: int) -> float:
    """Largest entropy change between distributions on alphabet_size outcomes at total variation distance <= distance.

    Uses the sharp continuity bound T lg(d - 1) + h_b(T), valid for T <= 1 - 1/d;
    beyond that the full range lg d is returned.
    """
    d = alphabet_size
    if distance <= 0.0:
        return 0.0
    if d <= 1:
        return 0.0
    if distance >= 1.0 - 1.0 / d:
        return float(np.log2(d))
    return distance * float(np.log2(d - 1)) + binary_entropy(distance)
