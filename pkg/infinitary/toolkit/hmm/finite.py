"""Finite machines given by labelled transition matrices."""

from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from .definition import Alphabet, Edge, MachineSpec, StateKey
from .distribution import SparseDistribution
from ..math import Enclosure, entropy_bits
from ...errors import ParamError, UnknownStateError


def stationary_distribution(transition: np.ndarray) -> np.ndarray:
    """Stationary vector of an irreducible row-stochastic matrix.

    Grassmann-Taksar-Heyman state reduction: subtraction-free, so accurate
    even for nearly decomposable chains.
    """
    a = np.array(transition, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ParamError("transition matrix must be square")
    for k in range(n - 1, 0, -1):
        s = a[k, :k].sum()
        if s <= 0.0:
            raise ParamError("transition matrix is reducible; no unique stationary vector")
        a[:k, k] /= s
        a[:k, :k] += np.outer(a[:k, k], a[k, :k])
    pi = np.zeros(n)
    pi[0] = 1.0
    for k in range(1, n):
        pi[k] = pi[:k] @ a[:k, k]
    return pi / pi.sum()


def finite_machine(
    name: str,
    glyphs: str,
    matrices: Mapping[str, Sequence[Sequence[float]]],
    stationary: Optional[Sequence[float]] = None,
    params: Optional[Dict] = None,
) -> MachineSpec:
    """Build a MachineSpec from labelled matrices T^(x).

    States are keyed ``StateKey(name, (s,))`` with s = 1..N.

    Args:
        name: Machine name, also the state-key tag
        glyphs: Alphabet glyphs in code order
        matrices: Glyph -> N x N substochastic matrix; the sum must be stochastic
        stationary: Known stationary vector (solved by state reduction otherwise)
        params: Parameters recorded on the spec

    Returns:
        MachineSpec with exact (tail-free) support
    """
    alphabet = Alphabet.of(glyphs)
    labelled = {g: np.asarray(m, dtype=float) for g, m in matrices.items()}
    for glyph in labelled:
        alphabet.symbol(glyph)
    n = next(iter(labelled.values())).shape[0]
    total = sum(labelled.values())
    if np.any(np.abs(total.sum(axis=1) - 1.0) > 1e-12):
        raise ParamError(f"{name}: labelled matrices do not sum to a stochastic matrix")

    pi = np.asarray(stationary, dtype=float) if stationary is not None else (
        stationary_distribution(total)
    )
    keys = [StateKey(name, (s + 1,)) for s in range(n)]
    index = {k: s for s, k in enumerate(keys)}

    edges: Dict[StateKey, List[Edge]] = {k: [] for k in keys}
    for symbol in alphabet:
        matrix = labelled.get(symbol.glyph)
        if matrix is None:
            continue
        for s, t in zip(*np.nonzero(matrix)):
            edges[keys[s]].append(Edge(symbol, float(matrix[s, t]), keys[t]))

    def lookup(key: StateKey) -> int:
        try:
            return index[key]
        except KeyError:
            raise UnknownStateError(f"{key} is not a state of {name}") from None

    def expand(key: StateKey) -> List[Edge]:
        return edges[keys[lookup(key)]]

    def weight(key: StateKey) -> float:
        return float(pi[lookup(key)])

    def support(eps: float) -> SparseDistribution:
        return SparseDistribution({k: float(pi[s]) for s, k in enumerate(keys) if pi[s] > 0.0})

    h = np.array(
        [entropy_bits([sum(e.probability for e in edges[k] if e.symbol == x) for x in alphabet])
         for k in keys]
    )

    def rate(tol: float) -> Enclosure:
        return Enclosure.point(float(pi @ h))

    return MachineSpec(
        name,
        alphabet,
        expand,
        weight,
        support,
        entropy_rate=rate,
        params=params,
    )
