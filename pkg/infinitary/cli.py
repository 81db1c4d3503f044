"""Command-line interface.

    infinitary curves --machine hpm --t-max 30
    infinitary verify --machine bc --t-max 10 --jobs 4
    infinitary sample --machine even --length 100000 --seed 7 --out even.txt

Exit codes: 0 success, 1 invalid configuration, 2 enumeration budget
exhausted, 3 a verification check failed.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError

from .analysis import block_entropies, hmu_curve, iter_word_tables
from .claims import reports_frame, run_suite
from .config import RunConfig
from .errors import BudgetError, InfinitaryError, InsufficientDataError, ReturnParityError
from .io import OutputFormat, render, write_rows, write_trajectories
from .processes import ROOT, build_machine
from .sampling import mean_return_time, sample_trajectory
from .toolkit.hmm import StateKey
from .toolkit.stats import empirical_block_entropy, word_frequency_fit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_BUDGET = 2
EXIT_FAILED = 3

SUMMARY_LENGTH = 3
# BC leaves its root with probability 2 q0, so long returns need many draws
RETURN_SAMPLES = {"even": 10_000, "bc": 200_000}
REPORT_COLUMNS = ["claim", "t", "value", "bound", "passed", "relation", "delta", "description"]


class ConfigError(Exception):
    """Invalid command line."""


class ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors map to the configuration exit code."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog="infinitary", description="Certified information measures of "
                            "countable-state hidden Markov processes")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    common = ArgumentParser(add_help=False)
    # SUPPRESS keeps unset flags out of the namespace so EM_* variables can fill them
    common.add_argument("--machine", choices=["even", "hpm", "bc"], default=argparse.SUPPRESS)
    common.add_argument("--p", type=float, default=argparse.SUPPRESS, help="Even Process parameter")
    common.add_argument("--q0", type=float, default=argparse.SUPPRESS, help="BC root descent probability")
    common.add_argument("--mass-tol", dest="mass_tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--t-max", dest="t_max", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="Output file (stdout if omitted)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat],
                        default=argparse.SUPPRESS)
    common.add_argument("--length", type=int, default=argparse.SUPPRESS, help="Trajectory length")
    common.add_argument("--max-words", dest="max_words", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--log-level", dest="log_level", default=argparse.SUPPRESS)

    commands.add_parser("curves", parents=[common], help="Block entropy and h_mu(t) enclosures")
    commands.add_parser("verify", parents=[common], help="Run the claim suite for a machine")
    commands.add_parser("sample", parents=[common], help="Sample a trajectory and compare estimates")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from explicitly given flags, then EM_* variables, then defaults."""
    given = {k: v for k, v in vars(args).items() if k != "command"}
    return RunConfig(**given)


def cmd_curves(config: RunConfig) -> int:
    horizon = config.t_max if config.machine in ("hpm", "bc") else None
    spec = build_machine(config.machine, config.p, config.q0, horizon)
    curve = hmu_curve(spec, config.t_max, config.mass_tol, max_words=config.max_words)
    write_rows(curve.to_frame(), config.out, config.format)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    reports = run_suite(config)
    frame = reports_frame(reports)[REPORT_COLUMNS]
    write_rows(frame, config.out, config.format)
    failed = [r for r in reports if not r.passed]
    for report in failed:
        logger.error(report.summary())
    return EXIT_FAILED if failed else EXIT_OK


def _return_state(machine: str) -> Optional[StateKey]:
    # HPM has no single recurrent class containing every state
    return {"even": StateKey("even", (1,)), "bc": ROOT}.get(machine)


def sample_summary(config: RunConfig, symbols: np.ndarray) -> pd.DataFrame:
    """Sampled estimates next to their exact values.

    The fits and the return time need a single recurrent class, so HPM
    trajectories (one cycle each) only get the block entropies.
    """
    horizon = SUMMARY_LENGTH if config.machine in ("hpm", "bc") else None
    lumped = build_machine(config.machine, config.p, config.q0, horizon)
    exact = block_entropies(lumped, SUMMARY_LENGTH, config.mass_tol)
    state = _return_state(config.machine)
    tables = list(iter_word_tables(lumped, SUMMARY_LENGTH, config.mass_tol, keep_forward=False))
    rows: List[dict] = []
    for t in range(1, SUMMARY_LENGTH + 1):
        try:
            rows.append(empirical_block_entropy([symbols], t, lumped.alphabet.size,
                                                exact=exact[t]).as_row())
        except InsufficientDataError as exc:
            logger.warning("skipping H[X^%d]: %s", t, exc)
        if state is None:
            continue
        try:
            fit = word_frequency_fit([symbols], t, lumped.alphabet.glyphs, tables[t].expanded())
        except InsufficientDataError as exc:
            logger.warning("skipping word counts of length %d: %s", t, exc)
            continue
        if fit.rejects():
            logger.warning("%s: sampled word counts reject the exact law (p = %.3g)",
                           fit.quantity, fit.pvalue)
        rows.append(fit.as_row())
    if state is not None:
        spec = build_machine(config.machine, config.p, config.q0)
        rng = np.random.default_rng(config.seed + 1)
        report = mean_return_time(spec, rng, state, RETURN_SAMPLES[config.machine],
                                  check_parity=config.machine == "bc")
        rows.append(report.as_row())
    return pd.DataFrame(rows)


def cmd_sample(config: RunConfig) -> int:
    spec = build_machine(config.machine, config.p, config.q0)
    trajectory = sample_trajectory(spec, config.seed, config.length, config.mass_tol)
    summary = sample_summary(config, trajectory.symbols)
    write_trajectories([trajectory], config.out)
    if config.out is None:
        sys.stderr.write(render(summary, config.format))
    else:
        write_rows(summary, None, config.format)
    return EXIT_OK


COMMANDS = {"curves": cmd_curves, "verify": cmd_verify, "sample": cmd_sample}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = load_config(args)
    except ConfigError as exc:
        sys.stderr.write(f"infinitary: error: {exc}\n")
        return EXIT_CONFIG
    except ValidationError as exc:
        sys.stderr.write(f"infinitary: invalid configuration\n{exc}\n")
        return EXIT_CONFIG

    logging.basicConfig(
        level=config.log_level.value,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](config)
    except BudgetError as exc:
        logger.error("%s", exc)
        return EXIT_BUDGET
    except ReturnParityError as exc:
        logger.error("%s", exc)
        return EXIT_FAILED
    except (InfinitaryError, ValueError) as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
