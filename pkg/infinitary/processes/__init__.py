"""Builtin machines: Even Process, HPM, BC and small reference machines."""

from .finite import even_machine, iid_machine, nonunifilar_machine
from .hpm import hpm_machine, hpm_normalizer, component_series, phase_series, component_term
from .bc import (
    BC_ALPHABET,
    BC_TAG,
    ROOT,
    DEFAULT_Q0,
    ROOT_ENTROPY_BUDGET,
    bc_machine,
    bc_normalizer,
    bc_root_entropy_check,
    bc_entropy_rate,
    closed_form_root_mass,
    copy_symbol,
    descent_probability,
    return_probability,
    trigamma,
)
from .registry import MACHINES, build_machine

__all__ = [
    "MACHINES",
    "build_machine",
    "even_machine",
    "iid_machine",
    "nonunifilar_machine",
    "hpm_machine",
    "hpm_normalizer",
    "component_series",
    "phase_series",
    "component_term",
    "BC_ALPHABET",
    "BC_TAG",
    "ROOT",
    "DEFAULT_Q0",
    "ROOT_ENTROPY_BUDGET",
    "bc_machine",
    "bc_normalizer",
    "bc_root_entropy_check",
    "bc_entropy_rate",
    "closed_form_root_mass",
    "copy_symbol",
    "descent_probability",
    "return_probability",
    "trigamma",
]
