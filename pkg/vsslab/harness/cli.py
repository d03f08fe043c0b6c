"""Command-line entry point

Usage:
    vsslab run --scheme 7BGW --n 4 --t 1 --secret 3
    vsslab run --config scenario.yaml --seed 7 --out runs/7bgw
    vsslab privacy --scheme 1GIKR --n 5 --t 1 --field-p 5
    vsslab battery --scheme 3KKK --grid 4:1,7:2 --trials 25
    vsslab list-schemes

Exit codes: 0 pass, 1 violation (or a distinguishable view), 2 config error.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import yaml

from vsslab.errors import ConfigInvalid, EnumerationTooLarge, NonLinearView
from vsslab.harness.battery import fuzz_battery
from vsslab.harness.catalogue import catalogue_table
from vsslab.harness.privacy import privacy_all_singletons, privacy_exhaustive_check
from vsslab.harness.scenario import ScenarioConfig, parse_parties, run_trials
from vsslab.storage.reports import save_battery
from vsslab.utils.config import CONFIG

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2

SEED_ENV = "VSSLAB_SEED"

# flag dest -> scenario key
SCENARIO_FLAGS = {
    "scheme": "scheme",
    "n": "n",
    "t": "t",
    "d": "d",
    "L": "L",
    "field_p": "field_p",
    "secret": "secret",
    "adversary": "adversary",
    "corrupt": "corrupt",
    "scheduler": "scheduler",
    "seed": "seed",
    "trials": "trials",
    "out": "out",
}


def _scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scheme", help="Scheme id (see list-schemes)")
    parser.add_argument("--n", type=int, help="Number of parties")
    parser.add_argument("--t", type=int, help="Corruption threshold")
    parser.add_argument("--d", type=int, help="Sharing degree (PCR)")
    parser.add_argument("--L", type=int, help="Number of secrets (CHP)")
    parser.add_argument("--field-p", dest="field_p", type=int, help="Prime field modulus")
    parser.add_argument("--secret", help="Secret, or comma-separated secrets for CHP")
    parser.add_argument("--adversary", help="Strategy id")
    parser.add_argument("--corrupt", help="Comma-separated corrupt party ids")
    parser.add_argument("--scheduler", help="Scheduler id (asynchronous schemes)")
    parser.add_argument("--seed", type=int, help=f"Seed (fallback: ${SEED_ENV}, then harness.seed)")
    parser.add_argument("--trials", type=int, help="Runs with consecutive seeds")
    parser.add_argument("--config", help="YAML scenario file; flags override it")
    parser.add_argument("--out", help="Directory for report.json and transcript.log")
    parser.add_argument("--store", action="store_true", help="Save reports to the run database")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vsslab", description="Perfectly-secure VSS lab")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run one scenario")
    _scenario_flags(run)

    privacy = commands.add_parser("privacy", help="Exact privacy check with an honest dealer")
    privacy.add_argument("--scheme", required=True)
    privacy.add_argument("--n", type=int, required=True)
    privacy.add_argument("--t", type=int, required=True)
    privacy.add_argument("--field-p", dest="field_p", type=int, default=5)
    privacy.add_argument("--secret", default="0,1", help="The two secrets to compare, s0,s1")
    privacy.add_argument("--corrupt", help="Corrupt set (default: every single non-dealer party)")
    privacy.add_argument("--method", choices=("enumerate", "linear", "auto"), default="auto")
    privacy.add_argument("--max-states", dest="max_states", type=int)

    battery = commands.add_parser("battery", help="Strategies x schedulers x seeds")
    battery.add_argument("--scheme", required=True)
    battery.add_argument("--grid", help="Comma-separated n:t pairs, e.g. 4:1,7:2")
    battery.add_argument("--n", type=int)
    battery.add_argument("--t", type=int)
    battery.add_argument("--field-p", dest="field_p", type=int)
    battery.add_argument("--adversary", help="Comma-separated strategy ids (default: all)")
    battery.add_argument("--scheduler", help="Comma-separated scheduler ids (default: all)")
    battery.add_argument("--seed", type=int)
    battery.add_argument("--trials", type=int)
    battery.add_argument("--corrupt", help="dealer, others or comma-separated party ids (default: per strategy)")
    battery.add_argument("--workers", type=int, default=1)
    battery.add_argument("--out", help="CSV file for the summary table")
    battery.add_argument("--store", action="store_true", help="Append the table to the run database")

    commands.add_parser("list-schemes", help="Print the scheme catalogue")
    return parser


def configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, str(CONFIG["logging"]["level"]).upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def env_seed() -> Optional[int]:
    raw = os.environ.get(SEED_ENV)
    if raw in (None, ""):
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigInvalid(f"{SEED_ENV}={raw!r} is not an integer") from None


def scenario_from_args(args: argparse.Namespace) -> ScenarioConfig:
    """Flags over file values; the seed falls back to VSSLAB_SEED, then harness.seed"""
    flags: Dict[str, Any] = {
        key: getattr(args, dest) for dest, key in SCENARIO_FLAGS.items() if getattr(args, dest) is not None
    }
    if args.store:
        flags["store"] = True
    if args.config:
        cfg = ScenarioConfig.from_file(args.config, flags)
    else:
        cfg = ScenarioConfig.from_mapping(flags)
    if args.seed is None and not _file_sets_seed(args.config):
        seed = env_seed()
        if seed is not None:
            cfg.seed = seed
    return cfg


def _file_sets_seed(path: Optional[str]) -> bool:
    if not path:
        return False
    with open(path) as f:
        values = yaml.safe_load(f) or {}
    return isinstance(values, dict) and values.get("seed") is not None


def parse_grid(args: argparse.Namespace) -> List[Tuple[int, int]]:
    if args.grid:
        try:
            return [(int(a), int(b)) for a, b in (cell.split(":") for cell in args.grid.split(","))]
        except ValueError:
            raise ConfigInvalid(f"cannot read grid {args.grid!r}; expected n:t pairs such as 4:1,7:2") from None
    if args.n is None or args.t is None:
        raise ConfigInvalid("battery needs --grid or both --n and --t")
    return [(args.n, args.t)]


def _split(value: Optional[str]) -> Optional[List[str]]:
    return [v.strip() for v in value.split(",") if v.strip()] if value else None


# commands


def cmd_run(args: argparse.Namespace) -> int:
    cfg = scenario_from_args(args)
    reports = run_trials(cfg)
    if len(reports) == 1:
        print(reports[0].to_json())
    else:
        summary = [
            {"seed": r.seed, "status": r.status, "violations": len(r.violations), **r.metrics} for r in reports
        ]
        print(json.dumps(summary, indent=2))
    failing = [r for r in reports if not r.passed]
    for report in failing:
        for violation in report.violations:
            print(f"VIOLATION seed {report.seed}: {violation}", file=sys.stderr)
    return EXIT_VIOLATION if failing else EXIT_PASS


def cmd_privacy(args: argparse.Namespace) -> int:
    secrets = _split(args.secret) or []
    if len(secrets) != 2:
        raise ConfigInvalid(f"privacy compares two secrets, got {args.secret!r}")
    try:
        s0, s1 = (int(s) for s in secrets)
    except ValueError:
        raise ConfigInvalid(f"cannot read two secrets from {args.secret!r}") from None
    if args.corrupt:
        results = [
            privacy_exhaustive_check(
                args.scheme,
                args.n,
                args.t,
                args.field_p,
                s0,
                s1,
                parse_parties(args.corrupt),
                method=args.method,
                max_states=args.max_states,
            )
        ]
    else:
        results = privacy_all_singletons(
            args.scheme, args.n, args.t, args.field_p, s0, s1, method=args.method, max_states=args.max_states
        )
    for result in results:
        print(result)
    return EXIT_PASS if all(r.equal for r in results) else EXIT_VIOLATION


def _placement(value: Optional[str]):
    if value is None or value in ("dealer", "others"):
        return value
    return parse_parties(value)


def cmd_battery(args: argparse.Namespace) -> int:
    table = fuzz_battery(
        args.scheme,
        parse_grid(args),
        strategies=_split(args.adversary),
        schedulers=_split(args.scheduler),
        trials=args.trials,
        seed=args.seed if args.seed is not None else env_seed(),
        p=args.field_p,
        workers=args.workers,
        corrupt=_placement(args.corrupt),
    )
    print(table.drop(columns=["first_violation"]).to_string(index=False))
    if args.out:
        table.to_csv(args.out, index=False)
    if args.store:
        save_battery(table, label=args.scheme)
    failing = table[~table["passed"]]
    for _, row in failing.iterrows():
        print(f"VIOLATION {row['strategy']}/{row['scheduler']} n={row['n']}: {row['first_violation']}", file=sys.stderr)
    return EXIT_VIOLATION if len(failing) else EXIT_PASS


def cmd_list_schemes(args: argparse.Namespace) -> int:
    print(catalogue_table().to_string(index=False))
    return EXIT_PASS


COMMANDS = {
    "run": cmd_run,
    "privacy": cmd_privacy,
    "battery": cmd_battery,
    "list-schemes": cmd_list_schemes,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (ConfigInvalid, EnumerationTooLarge, NonLinearView) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
