"""Machine lookup by name."""

from typing import Callable, Dict, Optional

from .bc import DEFAULT_Q0, bc_machine
from .finite import even_machine, iid_machine, nonunifilar_machine
from .hpm import hpm_machine
from ..errors import ParamError
from ..toolkit.hmm import MachineSpec

MACHINES = ("even", "hpm", "bc", "iid", "nonunifilar")


def build_machine(name: str, p: float = 0.5, q0: float = DEFAULT_Q0,
                  horizon: Optional[int] = None) -> MachineSpec:
    """Builtin machine by name.

    ``horizon`` selects the pooled (HPM) or lumped (BC) presentation that is
    exact for words up to that length; finite machines ignore it.

    Raises:
        ParamError: If the name is unknown or a parameter is out of range
    """
    builders: Dict[str, Callable[[], MachineSpec]] = {
        "even": lambda: even_machine(p),
        "hpm": lambda: hpm_machine(horizon=horizon),
        "bc": lambda: bc_machine(q0, horizon=horizon),
        "iid": lambda: iid_machine((p, 1.0 - p)),
        "nonunifilar": nonunifilar_machine,
    }
    try:
        builder = builders[name]
    except KeyError:
        raise ParamError(f"unknown machine {name!r}; expected one of {', '.join(MACHINES)}") from None
    return builder()
