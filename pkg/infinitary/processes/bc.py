"""Branching copy (BC) process.

From the root, a walk descends a binary tree (symbols 0/1) and at depth i
either descends further (each child with probability q_i) or returns with
probability p_i, re-emitting the descent path as copy symbols (0 -> 2,
1 -> 3) before arriving back at the root. The root loops on symbol 4 with
probability p0.

States of the exact machine are ``StateKey("bc", (i, j, k))``: depth i,
breadth j in 1..2^i (j - 1 written in i bits, most significant first, is
the path) and return position k in 1..max(i, 1). The root is (0, 1, 1).

The lumped presentation used for word-level analysis keeps exact tree
states for walks observed from the root and groups the remaining states by
what an observer can know about them:

* ``bc_down(i, *s)``: depth-i states still descending whose last |s| path
  bits are s;
* ``bc_down_pool(J, *s)``: the same for every depth above J;
* ``bc_up(n, *s)``: returning states with n copy symbols left, the last |s|
  of them known to be s;
* ``bc_up_pool``: returning states with more than ``horizon`` unknown copy
  symbols left.

Every lump's members share their future given the lump, and within a lump
the stationary conditional over members is known in closed form, so the
lumped chain reproduces all words of length <= horizon exactly.
"""

import logging
import math
from typing import Dict, List, Tuple

import numpy as np
from scipy.special import polygamma

from ..errors import ParamError, UnknownStateError
from ..optimization import memoize
from ..toolkit.hmm import Alphabet, Edge, MachineSpec, SparseDistribution, StateKey
from ..toolkit.math import Enclosure, branching_entropy, integral_test_bracket

logger = logging.getLogger(__name__)

BC_TAG = "bc"
DOWN_TAG = "bc_down"
DOWN_POOL_TAG = "bc_down_pool"
UP_TAG = "bc_up"
UP_POOL_TAG = "bc_up_pool"

BC_ALPHABET = Alphabet.of("01234")
ROOT = StateKey(BC_TAG, (0, 1, 1))
UP_POOL = StateKey(UP_POOL_TAG, ())

DEFAULT_Q0 = 1e-4
ROOT_ENTROPY_BUDGET = 1.0 / 300.0
DEFAULT_MAX_STATES = 200_000


def descent_probability(i, q0: float = DEFAULT_Q0):
    """q_i: probability of each child at depth i (q0 at the root)."""
    if np.isscalar(i) and i == 0:
        return q0
    return i * i / (2.0 * (i + 1.0) ** 2)


def return_probability(i, q0: float = DEFAULT_Q0):
    """p_i = 1 - 2 q_i: probability of starting the return at depth i."""
    if np.isscalar(i) and i == 0:
        return 1.0 - 2.0 * q0
    return (2.0 * i + 1.0) / (i + 1.0) ** 2


def trigamma(x):
    """psi_1(x) = sum_{k>=0} 1/(x+k)^2."""
    return polygamma(1, x)


def copy_symbol(i: int, j: int, m: int) -> int:
    """Code of the m-th copy symbol on the return from sigma_ij: path bit m mapped 0->2, 1->3."""
    return 2 + (((j - 1) >> (i - m)) & 1)


def bc_root_entropy_check(q0: float) -> Tuple[float, bool]:
    """Root branching entropy H[(p0, q0, q0)] and whether it is within 1/300 bit."""
    if not 0.0 < q0 < 0.5:
        raise ParamError(f"q0 must lie in (0, 1/2), got {q0}")
    value = branching_entropy(1.0 - 2.0 * q0, q0)
    return value, value <= ROOT_ENTROPY_BUDGET


def _require_budget(q0: float) -> None:
    value, passed = bc_root_entropy_check(q0)
    if not passed:
        raise ParamError(
            f"q0={q0} gives root entropy {value:.4g} bits above the {ROOT_ENTROPY_BUDGET:.4g} budget"
        )


def _excursion_term(i):
    # stationary mass at depth i relative to C: 1/i^2 (k = 1) plus (i-1) p_i / i^2 (k >= 2)
    return (1.0 + (i - 1.0) * (2.0 * i + 1.0) / (i + 1.0) ** 2) / (i * i)


@memoize(maxsize=64)
def bc_normalizer(q0: float = DEFAULT_Q0, tol: float = 1e-10) -> Tuple[Enclosure, Enclosure]:
    """Enclosures of the root mass pi_01^1 and C = pi_01^1 (1 - p0), each of width <= tol."""
    _require_budget(q0)
    leave = 2.0 * q0
    series = integral_test_bracket(_excursion_term, 1, tol / leave)
    root = (1.0 + series * leave).reciprocal()
    return root, root * leave


def _branching_term(i):
    p = (2.0 * i + 1.0) / (i + 1.0) ** 2
    q = 0.5 * (1.0 - p)
    return (-p * np.log2(p) - 2.0 * q * np.log2(q)) / (i * i)


@memoize(maxsize=64)
def branching_series(tol: float) -> Enclosure:
    """sum_{i>=1} H[(p_i, q_i, q_i)] / i^2."""
    return integral_test_bracket(_branching_term, 1, tol)


@memoize(maxsize=1024)
def pool_state_entropy(depth: int) -> float:
    """Mean H[(p_i, q_i, q_i)] over depths i > depth, weighted by 1/i^2."""
    total = integral_test_bracket(_branching_term, depth + 1, 1e-9 / (depth + 1)).midpoint
    return float(total / trigamma(depth + 1))


def bc_entropy_rate(q0: float, tol: float = 1e-10) -> Enclosure:
    """Enclosure of sum_sigma pi_sigma h_sigma; only the root and k = 1 states branch."""
    root, c = bc_normalizer(q0, min(tol, 1e-10))
    series = branching_series(tol / 4.0)
    return root * branching_entropy(1.0 - 2.0 * q0, q0) + c * series


def _check_tree_key(key: StateKey) -> Tuple[int, int, int]:
    if key.tag != BC_TAG or len(key.indices) != 3:
        raise UnknownStateError(f"{key} is not a BC tree state")
    i, j, k = key.indices
    if i == 0:
        if (j, k) != (1, 1):
            raise UnknownStateError(f"{key}: the root is (0, 1, 1)")
    elif i < 0 or not 1 <= j <= (1 << i) or not 1 <= k <= i:
        raise UnknownStateError(f"{key} violates 1 <= j <= 2^i, 1 <= k <= i")
    return i, j, k


def bc_machine(q0: float = DEFAULT_Q0, horizon=None, tol: float = 1e-10,
               max_states: int = DEFAULT_MAX_STATES) -> MachineSpec:
    """BC machine.

    Args:
        q0: Root descent probability per child
        horizon: Word length up to which the lumped presentation is exact;
            None gives the exact tree presentation
        tol: Width of the normaliser enclosures
        max_states: State cap of the exact support enumerator

    Returns:
        MachineSpec
    """
    _require_budget(q0)
    root_mass, normalizer = bc_normalizer(q0, tol)
    pi01 = root_mass.midpoint
    c = normalizer.midpoint
    p0 = 1.0 - 2.0 * q0
    uncertainty = root_mass.width / root_mass.lower
    d0, d1, _, _, loop = (BC_ALPHABET[x] for x in range(5))

    def expand(key: StateKey) -> List[Edge]:
        i, j, k = _check_tree_key(key)
        if i == 0:
            return [
                Edge(d0, q0, StateKey(BC_TAG, (1, 1, 1))),
                Edge(d1, q0, StateKey(BC_TAG, (1, 2, 1))),
                Edge(loop, p0, ROOT),
            ]
        copy = BC_ALPHABET[copy_symbol(i, j, k)]
        after = ROOT if k == i else StateKey(BC_TAG, (i, j, k + 1))
        if k > 1:
            return [Edge(copy, 1.0, after)]
        q = descent_probability(i)
        return [
            Edge(d0, q, StateKey(BC_TAG, (i + 1, 2 * j - 1, 1))),
            Edge(d1, q, StateKey(BC_TAG, (i + 1, 2 * j, 1))),
            Edge(copy, return_probability(i), after),
        ]

    def weight(key: StateKey) -> float:
        i, j, k = _check_tree_key(key)
        if i == 0:
            return pi01
        first = c / (i * i) * 2.0 ** (-i)
        return first if k == 1 else first * return_probability(i)

    supports: Dict[float, SparseDistribution] = {}

    def support(eps: float) -> SparseDistribution:
        if eps not in supports:
            masses: Dict[StateKey, float] = {ROOT: pi01}
            named = pi01
            i = 1
            while 1.0 - named > eps and len(masses) + i * (1 << i) <= max_states:
                first = c / (i * i) * 2.0 ** (-i)
                later = first * return_probability(i)
                for j in range(1, (1 << i) + 1):
                    masses[StateKey(BC_TAG, (i, j, 1))] = first
                    for k in range(2, i + 1):
                        masses[StateKey(BC_TAG, (i, j, k))] = later
                named += c / (i * i) * (1.0 + (i - 1) * return_probability(i))
                i += 1
            tail = max(0.0, 1.0 - named)
            if tail > eps:
                logger.warning(
                    "BC support capped at depth %d (%d states); tail %.3g > eps %.3g",
                    i - 1, len(masses), tail, eps,
                )
            supports[eps] = SparseDistribution(masses, tail)
        cached = supports[eps]
        return SparseDistribution(dict(cached.masses), cached.tail)

    exact = MachineSpec(
        "bc",
        BC_ALPHABET,
        expand,
        weight,
        support,
        entropy_rate=lambda t: bc_entropy_rate(q0, t),
        weight_uncertainty=uncertainty,
        params={"q0": q0, "pi01": pi01, "C": c},
    )
    if horizon is None:
        return exact
    return _lumped_bc(exact, q0, int(horizon), pi01, c, uncertainty)


def _lumped_bc(exact: MachineSpec, q0: float, horizon: int, pi01: float, c: float,
               uncertainty: float) -> MachineSpec:
    if horizon < 1:
        raise ParamError("BC horizon must be at least 1")
    h = horizon
    explicit_depth = h + 1
    p0 = 1.0 - 2.0 * q0
    d0, d1, c2, c3, _ = (BC_ALPHABET[x] for x in range(5))
    root_entropy = branching_entropy(p0, q0)

    def up(n: int, known: Tuple[int, ...]) -> StateKey:
        if n == 0:
            return ROOT
        if n - len(known) > h:
            return UP_POOL
        return StateKey(UP_TAG, (n,) + known)

    def split(key: StateKey) -> Tuple[int, Tuple[int, ...]]:
        if not key.indices:
            raise UnknownStateError(f"{key} is not a BC lump")
        head, known = key.indices[0], tuple(key.indices[1:])
        if any(b not in (0, 1) for b in known):
            raise UnknownStateError(f"{key}: known path bits must be 0 or 1")
        return head, known

    def returning(n: int, known: Tuple[int, ...], probability: float) -> List[Edge]:
        """Edges emitting the next copy symbol of a walk with n symbols left."""
        if n > len(known):
            rest = up(n - 1, known)
            return [Edge(c2, probability / 2.0, rest), Edge(c3, probability / 2.0, rest)]
        copy = BC_ALPHABET[2 + known[0]]
        return [Edge(copy, probability, up(n - 1, known[1:]))]

    def expand(key: StateKey) -> List[Edge]:
        # walks observed from the root keep their exact tree states
        if key.tag == BC_TAG:
            return exact.expand(key)
        if key == UP_POOL:
            leak = 1.0 / ((h + 2) ** 2 * trigamma(h + 2))
            target = StateKey(UP_TAG, (h,))
            return [
                Edge(c2, (1.0 - leak) / 2.0, UP_POOL),
                Edge(c2, leak / 2.0, target),
                Edge(c3, (1.0 - leak) / 2.0, UP_POOL),
                Edge(c3, leak / 2.0, target),
            ]
        if key.tag == DOWN_TAG:
            i, known = split(key)
            if i < 1 or len(known) >= i:
                raise UnknownStateError(f"{key}: need 1 <= i and |s| < i")
            q = descent_probability(i)
            edges = [
                Edge(d0, q, StateKey(DOWN_TAG, (i + 1,) + known + (0,))),
                Edge(d1, q, StateKey(DOWN_TAG, (i + 1,) + known + (1,))),
            ]
            return edges + returning(i, known, return_probability(i))
        if key.tag == DOWN_POOL_TAG:
            depth, known = split(key)
            if depth != explicit_depth + len(known):
                raise UnknownStateError(f"{key}: pool depth must be {explicit_depth} + |s|")
            a = trigamma(depth + 2) / (2.0 * trigamma(depth + 1))
            back = 1.0 - 2.0 * a
            return [
                Edge(d0, a, StateKey(DOWN_POOL_TAG, (depth + 1,) + known + (0,))),
                Edge(d1, a, StateKey(DOWN_POOL_TAG, (depth + 1,) + known + (1,))),
                Edge(c2, back / 2.0, UP_POOL),
                Edge(c3, back / 2.0, UP_POOL),
            ]
        if key.tag == UP_TAG:
            n, known = split(key)
            if n < 1 or len(known) > n or n - len(known) > h:
                raise UnknownStateError(f"{key}: need 1 <= n, |s| <= n, n - |s| <= {h}")
            return returning(n, known, 1.0)
        raise UnknownStateError(f"{key} is not a state of the lumped BC presentation")

    def weight(key: StateKey) -> float:
        if key.tag == BC_TAG:
            return exact.stationary_weight(key)
        if key == UP_POOL:
            return float(c * trigamma(h + 2))
        head, known = split(key)
        share = 2.0 ** (-len(known))
        if key.tag == DOWN_TAG:
            return c / (head * head) * share
        if key.tag == DOWN_POOL_TAG:
            return float(c * trigamma(head + 1)) * share
        if key.tag == UP_TAG:
            return c / ((head + 1) ** 2) * share
        raise UnknownStateError(f"{key} is not a state of the lumped BC presentation")

    def descending_class(depth: int) -> StateKey:
        if depth <= explicit_depth:
            return StateKey(DOWN_TAG, (depth,))
        return StateKey(DOWN_POOL_TAG, (explicit_depth,))

    def returning_class(remaining: int) -> StateKey:
        if remaining <= h:
            return StateKey(UP_TAG, (remaining,))
        return UP_POOL

    def stationary_class(key: StateKey) -> StateKey:
        if key == ROOT or key == UP_POOL:
            return key
        if key.tag == BC_TAG:
            i, _, k = key.indices
            return descending_class(i) if k == 1 else returning_class(i - k + 1)
        if key.tag == DOWN_TAG:
            return descending_class(key.indices[0])
        if key.tag == DOWN_POOL_TAG:
            return StateKey(DOWN_POOL_TAG, (explicit_depth,))
        return returning_class(key.indices[0])

    def state_entropy(key: StateKey) -> float:
        if key == ROOT:
            return root_entropy
        if key.tag == BC_TAG:
            i, _, k = key.indices
            if k > 1:
                return 0.0
            return branching_entropy(return_probability(i), descent_probability(i))
        if key.tag == DOWN_TAG:
            i = key.indices[0]
            return branching_entropy(return_probability(i), descent_probability(i))
        if key.tag == DOWN_POOL_TAG:
            return pool_state_entropy(key.indices[0])
        return 0.0

    def mirror(key: StateKey) -> StateKey:
        # swap 0 <-> 1 in every path bit
        if key.tag == BC_TAG:
            i, j, k = key.indices
            return StateKey(BC_TAG, (i, (1 << i) + 1 - j, k))
        if not key.indices:
            return key
        return StateKey(key.tag, (key.indices[0],) + tuple(1 - b for b in key.indices[1:]))

    masses: Dict[StateKey, float] = {ROOT: pi01}
    for i in range(1, explicit_depth + 1):
        masses[StateKey(DOWN_TAG, (i,))] = c / (i * i)
    masses[StateKey(DOWN_POOL_TAG, (explicit_depth,))] = float(c * trigamma(explicit_depth + 1))
    for n in range(1, h + 1):
        masses[StateKey(UP_TAG, (n,))] = c / ((n + 1) ** 2)
    masses[UP_POOL] = float(c * trigamma(h + 2))

    return MachineSpec(
        "bc",
        BC_ALPHABET,
        expand,
        weight,
        lambda eps: SparseDistribution(dict(masses), 0.0),
        state_entropy=state_entropy,
        stationary_class=stationary_class,
        is_atomic=lambda key: key.tag == BC_TAG,
        horizon=h,
        relabel=mirror,
        entropy_rate=lambda t: bc_entropy_rate(q0, t),
        underlying=exact,
        weight_uncertainty=uncertainty,
        params={"q0": q0, "pi01": pi01, "C": c, "horizon": h},
    )


def closed_form_root_mass(q0: float) -> float:
    """pi_01^1 = 1 / (1 + 2 q0 (pi^2/3 - 1)), from summing the excursion series in closed form."""
    return 1.0 / (1.0 + 2.0 * q0 * (math.pi ** 2 / 3.0 - 1.0))
