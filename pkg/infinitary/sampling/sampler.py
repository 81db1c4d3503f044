"""Random walks on machines.

Every draw uses ``numpy.random.default_rng`` (PCG64) seeded explicitly, so a
seed and a machine determine a trajectory exactly.
"""

from dataclasses import dataclass, field
import logging
from typing import List, Optional

import numpy as np

from ..claims.recurrence import kac_consistency
from ..errors import ParamError, ReturnParityError
from ..toolkit.hmm import MachineSpec, StateKey
from ..toolkit.stats import EstimateReport, mean_estimate

logger = logging.getLogger(__name__)

DEFAULT_EPS = 1e-6
DEFAULT_MAX_STEPS = 10_000_000


@dataclass
class Trajectory:
    """Sampled states and emitted symbol codes.

    ``states[n]`` is the state before the n-th symbol; ``states[-1]`` is the
    state after the last one, so there is one more state than symbols.
    """

    seed: Optional[int]
    glyphs: str
    states: List[StateKey] = field(default_factory=list)
    symbols: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    @property
    def length(self) -> int:
        return int(self.symbols.size)

    @property
    def word(self) -> str:
        return "".join(self.glyphs[c] for c in self.symbols)

    def to_text(self) -> str:
        """One glyph per symbol, newline-terminated."""
        return self.word + "\n"


def _draw(rng: np.random.Generator, weights: np.ndarray) -> int:
    cumulative = np.cumsum(weights)
    index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    return min(index, weights.size - 1)


def sample_stationary_state(spec: MachineSpec, rng: np.random.Generator,
                            eps: float = DEFAULT_EPS) -> StateKey:
    """Inverse-CDF draw from the eps-truncated stationary vector, renormalised.

    The draw is within total variation eps (or the support's declared tail)
    of the stationary law.
    """
    support = spec.support(eps)
    keys = sorted(support.masses)
    if not keys:
        raise ParamError(f"{spec.name} has an empty support at eps={eps}")
    weights = np.array([support.masses[k] for k in keys])
    return keys[_draw(rng, weights)]


def sample_path(spec: MachineSpec, rng: np.random.Generator, start: StateKey,
                length: int, seed: Optional[int] = None) -> Trajectory:
    """Walk ``length`` edges from ``start``, choosing each edge by its probability."""
    if length < 0:
        raise ParamError("length must be nonnegative")
    states = [start]
    symbols = np.zeros(length, dtype=np.int64)
    state = start
    for n in range(length):
        edges = spec.edges(state)
        edge = edges[_draw(rng, np.array([e.probability for e in edges]))]
        symbols[n] = edge.symbol.code
        state = edge.target
        states.append(state)
    return Trajectory(seed, spec.alphabet.glyphs, states, symbols)


def sample_trajectory(spec: MachineSpec, seed: int, length: int,
                      eps: float = DEFAULT_EPS) -> Trajectory:
    """Stationary start followed by a path, both from one seeded generator."""
    rng = np.random.default_rng(seed)
    start = sample_stationary_state(spec, rng, eps)
    return sample_path(spec, rng, start, length, seed)


def return_times(spec: MachineSpec, rng: np.random.Generator, state: StateKey, n: int,
                 max_steps: int = DEFAULT_MAX_STEPS) -> np.ndarray:
    """n consecutive first-return times to ``state``, starting from it."""
    if n < 1:
        raise ParamError("at least one return is required")
    times = np.zeros(n, dtype=np.int64)
    current = state
    steps = 0
    for r in range(n):
        elapsed = 0
        while True:
            edges = spec.edges(current)
            current = edges[_draw(rng, np.array([e.probability for e in edges]))].target
            elapsed += 1
            steps += 1
            if current == state:
                break
            if steps >= max_steps:
                raise ParamError(f"no return to {state} within {max_steps} steps")
        times[r] = elapsed
    return times


def mean_return_time(spec: MachineSpec, rng: np.random.Generator, state: StateKey, n: int,
                     check_parity: bool = False) -> EstimateReport:
    """Empirical mean return time next to the Kac value 1/pi(state).

    With ``check_parity`` every return longer than one step must have even
    length; the count of those returns is kept under ``details["long_returns"]``.

    Raises:
        ReturnParityError: If ``check_parity`` is set and a return of odd
            length greater than one was sampled
    """
    times = return_times(spec, rng, state, n)
    if check_parity:
        odd = int(np.count_nonzero((times > 1) & (times % 2 == 1)))
        if odd:
            raise ReturnParityError(state, odd, n)
    report = mean_estimate(times, f"E[return time to {state}]", kac_consistency(spec, state))
    if check_parity:
        report.details["odd_returns"] = 0.0
        report.details["long_returns"] = float(np.count_nonzero(times > 1))
    report.details["max_return"] = float(times.max())
    return report
