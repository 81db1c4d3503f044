"""Claim suites per builtin machine."""

import logging
from typing import Any, Callable, Dict, List, NamedTuple, Optional

from .bc import (
    bc_claim3,
    bc_claim5,
    bc_claim6,
    lumped_vs_exact,
    root_descent_law,
    stationarity_residuals,
    stationary_balance,
    verify_block_returns,
    verify_claim4,
    verify_return_times,
)
from .bounds import gap_vs_sync, rate_floor, verify_alternative_rate, verify_kac, verify_sync
from .even import verify_even, verify_oracle
from .hpm import verify_hpm, verify_hpm_growth
from .report import ClaimReport
from ..config import RunConfig
from ..errors import ParamError
from ..optimization import parallel_map
from ..processes import ROOT, build_machine, closed_form_root_mass, hpm_normalizer
from ..toolkit.hmm import StateKey

ORACLE_LENGTH = 10
CLAIM3_LENGTH = 50
ENUMERATION_LENGTH = 8
SYNC_LENGTH = 20
GAP_SYNC_LENGTH = 6
FLOOR_LENGTH = 10
BC_SYNC_MASS_TOL = 1e-4


class Task(NamedTuple):
    """One independent check; ``machine`` holds build_machine arguments when the check takes a spec."""

    func: Callable[..., ClaimReport]
    machine: Optional[Dict[str, Any]]
    kwargs: Dict[str, Any]


def run_task(task: Task) -> ClaimReport:
    """Build the task's machine (if any) and run its check; picklable for process pools."""
    if task.machine is None:
        return task.func(**task.kwargs)
    return task.func(build_machine(**task.machine), **task.kwargs)


class SuiteRunner:
    """Runs the claim suite applicable to one machine.

    Args:
        config: Run configuration (machine, parameters, t_max, mass_tol, jobs)
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.logger = logging.getLogger(self.__class__.__name__)

    def tasks(self) -> List[Task]:
        builders = {"even": self._even_tasks, "hpm": self._hpm_tasks, "bc": self._bc_tasks}
        try:
            return builders[self.config.machine]()
        except KeyError:
            raise ParamError(f"no claim suite for machine {self.config.machine!r}") from None

    def run(self) -> List[ClaimReport]:
        tasks = self.tasks()
        self.logger.info("running %d checks for %s with %d jobs",
                         len(tasks), self.config.machine, self.config.jobs)
        reports = parallel_map(run_task, tasks, n_workers=self.config.jobs)
        for report in reports:
            self.logger.info(report.summary())
        return reports

    def _even_tasks(self) -> List[Task]:
        c = self.config
        even = {"name": "even", "p": c.p}
        floor = {"t_max": min(c.t_max, FLOOR_LENGTH), "mass_tol": c.mass_tol}
        return [
            Task(verify_even, None, {"p": c.p}),
            Task(verify_oracle, even, {"t_max": min(c.t_max, ORACLE_LENGTH)}),
            Task(verify_sync, even, {"t": SYNC_LENGTH, "mass_tol": c.mass_tol, "bound": None}),
            Task(gap_vs_sync, even, {"t_max": GAP_SYNC_LENGTH, "mass_tol": c.mass_tol}),
            Task(rate_floor, even, floor),
            Task(rate_floor, {"name": "iid", "p": c.p}, floor),
            Task(rate_floor, {"name": "nonunifilar"}, floor),
            Task(verify_alternative_rate, {"name": "nonunifilar"}, {}),
            Task(verify_kac, even, {"state": StateKey("even", (1,)), "expected": 2.0 - c.p}),
        ]

    def _hpm_tasks(self) -> List[Task]:
        c = self.config
        floor_length = min(c.t_max, FLOOR_LENGTH)
        return [
            Task(verify_hpm, None, {"t_max": c.t_max, "mass_tol": c.mass_tol}),
            Task(verify_hpm_growth, None, {}),
            Task(rate_floor, {"name": "hpm", "horizon": floor_length},
                 {"t_max": floor_length, "mass_tol": c.mass_tol}),
            Task(verify_kac, {"name": "hpm"},
                 {"state": StateKey("hpm", (2, 1)), "expected": 4.0 / hpm_normalizer().midpoint}),
        ]

    def _bc_tasks(self) -> List[Task]:
        c = self.config
        q0 = c.q0
        enumerated = min(c.t_max, ENUMERATION_LENGTH)
        floor_length = min(c.t_max, FLOOR_LENGTH)
        tasks = [
            Task(stationary_balance, None, {"q0": q0}),
            Task(stationarity_residuals, None, {"q0": q0}),
            Task(root_descent_law, None, {"q0": q0}),
            Task(verify_return_times, None, {"q0": q0}),
            Task(verify_block_returns, None, {"q0": q0}),
            Task(lumped_vs_exact, None, {"q0": q0}),
            Task(bc_claim3, None, {"t_max": CLAIM3_LENGTH, "q0": q0,
                                   "enumerate_to": ENUMERATION_LENGTH}),
            Task(verify_claim4, None, {"t_max": enumerated, "q0": q0}),
        ]
        tasks += [Task(bc_claim5, None, {"t": t, "q0": q0}) for t in range(1, enumerated + 1)]
        tasks += [
            Task(bc_claim6, None, {"t_max": c.t_max, "q0": q0, "mass_tol": c.mass_tol}),
            Task(verify_sync, {"name": "bc", "q0": q0, "horizon": SYNC_LENGTH + 1},
                 {"t": SYNC_LENGTH, "mass_tol": BC_SYNC_MASS_TOL}),
            Task(gap_vs_sync, {"name": "bc", "q0": q0, "horizon": GAP_SYNC_LENGTH + 1},
                 {"t_max": GAP_SYNC_LENGTH, "mass_tol": c.mass_tol}),
            Task(rate_floor, {"name": "bc", "q0": q0, "horizon": floor_length},
                 {"t_max": floor_length, "mass_tol": c.mass_tol}),
            Task(verify_kac, {"name": "bc", "q0": q0},
                 {"state": ROOT, "expected": 1.0 / closed_form_root_mass(q0)}),
        ]
        return tasks


def run_suite(config: RunConfig) -> List[ClaimReport]:
    """Run every check for ``config.machine``; reports come back in a fixed order."""
    return SuiteRunner(config).run()
