"""Finite-state machines: the Even Process and small reference machines."""

from typing import Optional, Sequence

from ..errors import ParamError
from ..toolkit.hmm import MachineSpec, finite_machine


def even_machine(p: float = 0.5) -> MachineSpec:
    """Even Process: blocks of 1s bounded by 0s have even length.

    sigma_1 emits 0 (prob p, stay) or 1 (prob 1-p, to sigma_2); sigma_2 emits 1
    and returns to sigma_1.
    """
    if not 0.0 < p < 1.0:
        raise ParamError(f"Even Process parameter p must lie in (0, 1), got {p}")
    return finite_machine(
        "even",
        "01",
        {
            "0": [[p, 0.0], [0.0, 0.0]],
            "1": [[0.0, 1.0 - p], [1.0, 0.0]],
        },
        stationary=[1.0 / (2.0 - p), (1.0 - p) / (2.0 - p)],
        params={"p": p},
    )


def iid_machine(probabilities: Sequence[float] = (0.5, 0.5), glyphs: Optional[str] = None) -> MachineSpec:
    """Single-state machine emitting i.i.d. symbols."""
    probabilities = [float(x) for x in probabilities]
    if any(x <= 0.0 for x in probabilities) or abs(sum(probabilities) - 1.0) > 1e-12:
        raise ParamError("i.i.d. probabilities must be positive and sum to 1")
    glyphs = glyphs or "".join(str(i) for i in range(len(probabilities)))
    if len(glyphs) != len(probabilities):
        raise ParamError("one glyph per probability is required")
    return finite_machine(
        "iid",
        glyphs,
        {g: [[x]] for g, x in zip(glyphs, probabilities)},
        stationary=[1.0],
        params={"probabilities": probabilities},
    )


def nonunifilar_machine() -> MachineSpec:
    """Two-state machine whose first state emits 0 into both states."""
    return finite_machine(
        "nonunifilar",
        "01",
        {
            "0": [[0.5, 0.25], [0.0, 0.0]],
            "1": [[0.25, 0.0], [1.0, 0.0]],
        },
    )
