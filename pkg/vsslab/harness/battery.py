"""Fuzz campaigns over strategies, schedulers and seeds

Usage:
    from vsslab.harness.battery import fuzz_battery

    table = fuzz_battery("3KKK", grid=[(4, 1), (7, 2)], trials=25)
    assert table["violations"].sum() == 0
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pandas as pd

from vsslab.adversary.schedulers import SCHEDULERS
from vsslab.adversary.strategies import STRATEGIES
from vsslab.errors import ConfigInvalid
from vsslab.harness.catalogue import SYNC, family_of
from vsslab.harness.scenario import RunReport, ScenarioConfig, run_scenario
from vsslab.utils.config import CONFIG

logger = logging.getLogger(__name__)

WORST_METRICS = ("p2p_bits", "bc_bits", "rounds_total", "async_steps")

COLUMNS = [
    "scheme",
    "n",
    "t",
    "strategy",
    "scheduler",
    "corrupt",
    "trials",
    "violations",
    "passed",
    "discarded",
    "bottoms",
    *(f"max_{m}" for m in WORST_METRICS),
    "first_violation",
]


def battery_cells(
    scheme: str,
    grid: Iterable[Tuple[int, int]],
    strategies: Optional[Sequence[str]] = None,
    schedulers: Optional[Sequence[str]] = None,
) -> List[Tuple[int, int, str, str]]:
    """(n, t, strategy, scheduler) cells; synchronous schemes ignore the scheduler"""
    strategies = list(strategies or STRATEGIES)
    schedulers = list(schedulers or SCHEDULERS)
    if family_of(scheme) == SYNC:
        schedulers = ["fifo"]
    return [(n, t, s, k) for (n, t), s, k in itertools.product(grid, strategies, schedulers)]


Placement = Union[str, Sequence[int], None]


def placement(corrupt: Placement, n: int, t: int, dealer: int = 1) -> Optional[Tuple[int, ...]]:
    """
    The corrupt set of one grid point.

    None leaves the choice to the scenario (the dealer for dealer strategies,
    the last t other parties otherwise); "dealer" corrupts the dealer alone;
    "others" the last t non-dealer parties; a sequence is used as given.
    """
    if corrupt is None:
        return None
    if corrupt == "dealer":
        return (dealer,)
    if corrupt == "others":
        others = [j for j in range(1, n + 1) if j != dealer]
        return tuple(others[-t:]) if t else ()
    if isinstance(corrupt, str):
        raise ConfigInvalid(f"unknown corrupt placement '{corrupt}', use dealer, others or party ids")
    return tuple(int(j) for j in corrupt)


def _run_cell(base: ScenarioConfig) -> List[RunReport]:
    reports = []
    for k in range(base.trials):
        reports.append(run_scenario(replace(base, seed=base.seed + k, trials=1)))
    return reports


def summarize(cfg: ScenarioConfig, reports: Sequence[RunReport]) -> Dict[str, Any]:
    """One battery row from the reports of one cell"""
    failing = [r for r in reports if not r.passed]
    row: Dict[str, Any] = {
        "scheme": cfg.scheme,
        "n": cfg.n,
        "t": cfg.t,
        "strategy": cfg.adversary,
        "scheduler": cfg.scheduler,
        "corrupt": ",".join(map(str, cfg.corrupt_set())),
        "trials": len(reports),
        "violations": sum(len(r.violations) for r in reports),
        "passed": not failing,
        "discarded": sum(1 for r in reports if r.discarded),
        "bottoms": sum(r.bottom_count for r in reports),
    }
    for metric in WORST_METRICS:
        row[f"max_{metric}"] = max((r.metrics.get(metric, 0) for r in reports), default=0)
    row["first_violation"] = f"seed {failing[0].seed}: {failing[0].violations[0]}" if failing else ""
    return row


def fuzz_battery(
    scheme: str,
    grid: Iterable[Tuple[int, int]],
    strategies: Optional[Sequence[str]] = None,
    schedulers: Optional[Sequence[str]] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    p: Optional[int] = None,
    secret: Any = 0,
    workers: int = 1,
    corrupt: Placement = None,
) -> pd.DataFrame:
    """
    Run every (n, t) x strategy x scheduler cell for a number of seeds.

    Args:
        scheme: Scheme id
        grid: (n, t) pairs inside the scheme's bounds
        strategies: Strategy ids (default: all built-in strategies)
        schedulers: Scheduler ids (default: all; synchronous schemes use fifo)
        trials: Seeds per cell (default: harness.trials)
        seed: First seed (default: harness.seed)
        p: Field modulus (default: field.p)
        secret: Dealer input for every run
        workers: Processes to spread cells over; 1 runs in this process
        corrupt: "dealer", "others" or party ids (default: chosen per strategy)

    Returns:
        DataFrame with one row per cell, sorted by (n, t, strategy, scheduler)

    Raises:
        ConfigInvalid: if a grid point is outside the scheme's bounds
    """
    trials = trials or CONFIG["harness"]["trials"]
    seed = CONFIG["harness"]["seed"] if seed is None else seed
    p = p or CONFIG["field"]["p"]

    configs = []
    for n, t, strategy, scheduler in battery_cells(scheme, grid, strategies, schedulers):
        cfg = ScenarioConfig(
            scheme=scheme,
            n=n,
            t=t,
            p=p,
            secret=secret,
            adversary=strategy,
            scheduler=scheduler,
            seed=seed,
            trials=trials,
            corrupt=placement(corrupt, n, t),
        )
        cfg.validate()
        configs.append(cfg)
    logger.info(f"{scheme}: {len(configs)} cells x {trials} seeds")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, configs))
    else:
        results = [_run_cell(cfg) for cfg in configs]

    rows = [summarize(cfg, reports) for cfg, reports in zip(configs, results)]
    for row in rows:
        if not row["passed"]:
            logger.warning(
                f"{scheme} n={row['n']} t={row['t']} {row['strategy']}/{row['scheduler']}: {row['first_violation']}"
            )
    table = pd.DataFrame(rows, columns=COLUMNS)
    return table.sort_values(["n", "t", "strategy", "scheduler"]).reset_index(drop=True)
