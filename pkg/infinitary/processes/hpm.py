"""Heavy-tailed periodic mixture (HPM).

Component i >= 2 is the period-i cycle sigma_i1 -1-> sigma_i2 -1-> ... sigma_ii -0-> sigma_i1,
i.e. i-1 ones followed by a zero. Component i carries stationary mass
mu_i = C / (i lg^2 i), split evenly over its i phases.
"""

import logging
import math
from typing import Dict, List

import numpy as np

from ..errors import ParamError, UnknownStateError
from ..optimization import memoize
from ..toolkit.hmm import Alphabet, Edge, MachineSpec, SparseDistribution, StateKey
from ..toolkit.math import LN2, Enclosure, integral_test_bracket

logger = logging.getLogger(__name__)

HPM_TAG = "hpm"
FAR_TAG = "hpm_far"
ONES_TAG = "hpm_ones"
HPM_ALPHABET = Alphabet.of("01")
DEFAULT_MAX_STATES = 200_000


def component_term(i):
    """1 / (i lg^2 i), the unnormalised mass of component i."""
    return 1.0 / (i * np.log2(i) ** 2)


def phase_term(i):
    """1 / (i^2 lg^2 i), the unnormalised mass of one phase of component i."""
    return 1.0 / (i * i * np.log2(i) ** 2)


def _component_tail_integral(n: float) -> float:
    # int_n^inf dx / (x lg^2 x) = ln^2(2) / ln(n)
    return LN2 * LN2 / math.log(n)


@memoize(maxsize=256)
def component_series(start: int, tol: float) -> Enclosure:
    """Enclosure of sum_{i >= start} 1/(i lg^2 i)."""
    if start < 2:
        raise ParamError("HPM components start at i = 2")
    return integral_test_bracket(
        component_term, start, tol, antiderivative_tail=_component_tail_integral
    )


@memoize(maxsize=256)
def phase_series(start: int, tol: float) -> Enclosure:
    """Enclosure of sum_{i >= start} 1/(i^2 lg^2 i)."""
    if start < 2:
        raise ParamError("HPM components start at i = 2")
    return integral_test_bracket(phase_term, start, tol)


@memoize(maxsize=32)
def hpm_normalizer(tol: float = 1e-10) -> Enclosure:
    """Enclosure of C = 1 / sum_{i>=2} 1/(i lg^2 i) of width <= tol."""
    if tol <= 0:
        raise ParamError("tol must be positive")
    # the series exceeds 1, so 1/S is at least as tight as S
    return component_series(2, tol).reciprocal()


def _check_phase_key(key: StateKey, horizon=None) -> None:
    if key.tag != HPM_TAG or len(key.indices) != 2:
        raise UnknownStateError(f"{key} is not an HPM phase state")
    i, j = key.indices
    if i < 2 or not 1 <= j <= i or (horizon is not None and i > horizon):
        raise UnknownStateError(f"{key} is not an HPM phase state (i >= 2, 1 <= j <= i)")


def _phase_edges(key: StateKey) -> List[Edge]:
    i, j = key.indices
    if j < i:
        return [Edge(HPM_ALPHABET[1], 1.0, StateKey(HPM_TAG, (i, j + 1)))]
    return [Edge(HPM_ALPHABET[0], 1.0, StateKey(HPM_TAG, (i, 1)))]


def hpm_machine(horizon=None, tol: float = 1e-10, max_states: int = DEFAULT_MAX_STATES) -> MachineSpec:
    """HPM machine.

    Without a horizon the machine has the exact countable state set
    {sigma_ij : i >= 2, 1 <= j <= i} and its support enumerator cuts whole
    components, declaring the rest as tail. With ``horizon=M`` components
    i <= M stay explicit and the states of longer components are pooled by
    the number of 1s left before their next 0 (``hpm_far(d)``, d < M, and one
    ``hpm_ones`` pool for d >= M). The pooled chain is stationary, has no tail
    and reproduces every word of length <= M exactly.

    Args:
        horizon: Pooling length M, or None for the exact presentation
        tol: Width of the normaliser enclosure
        max_states: State cap of the exact support enumerator

    Returns:
        MachineSpec
    """
    normalizer = hpm_normalizer(tol)
    c = normalizer.midpoint
    uncertainty = normalizer.width / normalizer.lower

    def weight(key: StateKey) -> float:
        _check_phase_key(key)
        i = key.indices[0]
        return float(c * phase_term(i))

    def expand(key: StateKey) -> List[Edge]:
        _check_phase_key(key)
        return _phase_edges(key)

    supports: Dict[float, SparseDistribution] = {}

    def support(eps: float) -> SparseDistribution:
        if eps not in supports:
            masses: Dict[StateKey, float] = {}
            named = 0.0
            i = 2
            while 1.0 - named > eps and len(masses) + i <= max_states:
                w = float(c * phase_term(i))
                for j in range(1, i + 1):
                    masses[StateKey(HPM_TAG, (i, j))] = w
                named += i * w
                i += 1
            tail = max(0.0, 1.0 - named)
            if tail > eps:
                logger.warning(
                    "HPM support capped at %d states (components i <= %d); tail %.3g > eps %.3g",
                    len(masses), i - 1, tail, eps,
                )
            supports[eps] = SparseDistribution(masses, tail)
        cached = supports[eps]
        return SparseDistribution(dict(cached.masses), cached.tail)

    exact = MachineSpec(
        "hpm",
        HPM_ALPHABET,
        expand,
        weight,
        support,
        state_entropy=lambda key: 0.0,
        entropy_rate=lambda t: Enclosure.point(0.0),
        weight_uncertainty=uncertainty,
        params={"C": c},
    )
    if horizon is None:
        return exact
    return _pooled_hpm(exact, int(horizon), c, uncertainty)


def _pooled_hpm(exact: MachineSpec, horizon: int, c: float, uncertainty: float) -> MachineSpec:
    if horizon < 1:
        raise ParamError("HPM horizon must be at least 1")
    m = horizon
    far_mass = c * phase_series(m + 1, 1e-15).midpoint
    explicit_mass = c * float(np.sum(component_term(np.arange(2, m + 1, dtype=float))))
    ones_mass = 1.0 - explicit_mass - m * far_mass
    leak = far_mass / ones_mass
    ones = StateKey(ONES_TAG, ())

    def expand(key: StateKey) -> List[Edge]:
        if key.tag == HPM_TAG:
            _check_phase_key(key, horizon=m)
            return _phase_edges(key)
        if key == ones:
            return [
                Edge(HPM_ALPHABET[1], 1.0 - leak, ones),
                Edge(HPM_ALPHABET[1], leak, StateKey(FAR_TAG, (m - 1,))),
            ]
        if key.tag == FAR_TAG and len(key.indices) == 1 and 0 <= key.indices[0] < m:
            d = key.indices[0]
            if d == 0:
                return [Edge(HPM_ALPHABET[0], 1.0, ones)]
            return [Edge(HPM_ALPHABET[1], 1.0, StateKey(FAR_TAG, (d - 1,)))]
        raise UnknownStateError(f"{key} is not a state of the HPM presentation with horizon {m}")

    def weight(key: StateKey) -> float:
        if key.tag == HPM_TAG:
            _check_phase_key(key, horizon=m)
            return float(c * phase_term(key.indices[0]))
        if key == ones:
            return ones_mass
        if key.tag == FAR_TAG and len(key.indices) == 1 and 0 <= key.indices[0] < m:
            return far_mass
        raise UnknownStateError(f"{key} is not a state of the HPM presentation with horizon {m}")

    masses: Dict[StateKey, float] = {}
    for i in range(2, m + 1):
        w = float(c * phase_term(i))
        for j in range(1, i + 1):
            masses[StateKey(HPM_TAG, (i, j))] = w
    for d in range(m):
        masses[StateKey(FAR_TAG, (d,))] = far_mass
    masses[ones] = ones_mass

    return MachineSpec(
        "hpm",
        HPM_ALPHABET,
        expand,
        weight,
        lambda eps: SparseDistribution(dict(masses), 0.0),
        state_entropy=lambda key: 0.0,
        is_atomic=lambda key: key.tag == HPM_TAG,
        horizon=m,
        entropy_rate=lambda t: Enclosure.point(0.0),
        underlying=exact,
        weight_uncertainty=uncertainty,
        params={"C": c, "horizon": m},
    )
