"""Kac return times from stationary weights."""

from ..errors import ParamError
from ..toolkit.hmm import MachineSpec, StateKey
from ..toolkit.math import Enclosure


def kac_consistency(spec: MachineSpec, state: StateKey, eps: float = 1e-9) -> Enclosure:
    """Enclosure of 1/pi(state), the expected return time to ``state``.

    The stationary weight carries the machine's relative normaliser
    uncertainty; eps is added to it as relative rounding slack.

    Raises:
        ParamError: If the state has zero stationary weight or eps is outside (0, 1)
    """
    if not 0.0 < eps < 1.0:
        raise ParamError(f"eps must lie in (0, 1), got {eps}")
    weight = spec.stationary_weight(state)
    if weight <= 0.0:
        raise ParamError(f"{state} has no stationary weight; its return time is not finite")
    u = spec.weight_uncertainty + eps
    if u >= 1.0:
        raise ParamError(f"weight of {state} is too uncertain for a return-time enclosure")
    return Enclosure(1.0 / (weight * (1.0 + u)), 1.0 / (weight * (1.0 - u)))
