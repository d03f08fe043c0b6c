"""Run one scenario end to end and check it against the scheme's contract

A scenario names a scheme, its parameters, the adversary and the scheduler.
run_scenario() executes sharing and reconstruction on the right engine,
collects metrics and lists every violation of the scheme's guarantee. An
empty violation list is a pass.

Usage:
    from vsslab.harness.scenario import ScenarioConfig, run_scenario

    cfg = ScenarioConfig(scheme="7BGW", n=4, t=1, secret=3)
    report = run_scenario(cfg)
    report.metrics["rounds_total"]   # 7
"""

import json
import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import yaml

from vsslab.adversary.base import Adversary, CorruptionSpec
from vsslab.adversary.schedulers import make_scheduler
from vsslab.adversary.strategies import DEALER_STRATEGIES, make_strategy
from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly
from vsslab.avss_async.runner import AvssConfig, run_avss_reconstruction, run_avss_sharing
from vsslab.avss_hybrid.registry import hybrid_class
from vsslab.avss_hybrid.runner import run_hybrid_sharing, run_pr_reconstruction
from vsslab.errors import ConfigInvalid, Livelock
from vsslab.harness.catalogue import ASYNC, SYNC, scheme_info
from vsslab.netsim.engine_config import EngineConfig
from vsslab.netsim.protocol import BOTTOM
from vsslab.outcome import SHARED, SharingOutcome
from vsslab.storage.reports import save_report
from vsslab.utils.config import CONFIG
from vsslab.vss_sync.registry import scheme_class
from vsslab.vss_sync.runner import run_reconstruction, run_sharing

logger = logging.getLogger(__name__)

Secret = Union[int, List[int]]


def parse_parties(value: Any) -> Tuple[int, ...]:
    """Party ids from a list or a comma-separated string"""
    if value is None or value == "":
        return ()
    if isinstance(value, int) and not isinstance(value, bool):
        return (value,)
    if isinstance(value, str):
        value = [v for v in value.replace(" ", "").split(",") if v]
    try:
        return tuple(sorted({int(v) for v in value}))
    except (TypeError, ValueError):
        raise ConfigInvalid(f"cannot read party ids from {value!r}") from None


def parse_secret(value: Any) -> Secret:
    """An integer, or a list of integers for multi-secret schemes"""
    if isinstance(value, str):
        parts = [v for v in value.replace(" ", "").split(",") if v]
        value = parts if len(parts) > 1 else (parts[0] if parts else 0)
    try:
        if isinstance(value, (list, tuple)):
            return [int(v) for v in value]
        return int(value)
    except (TypeError, ValueError):
        raise ConfigInvalid(f"cannot read a secret from {value!r}") from None


@dataclass
class ScenarioConfig:
    scheme: str
    n: int
    t: int
    d: Optional[int] = None
    L: Optional[int] = None
    p: int = field(default_factory=lambda: CONFIG["field"]["p"])
    secret: Secret = 0
    adversary: str = "passive"
    corrupt: Optional[Tuple[int, ...]] = None  # None: chosen from the strategy
    adversary_params: Dict[str, Any] = field(default_factory=dict)
    scheduler: str = "fifo"
    seed: int = field(default_factory=lambda: CONFIG["harness"]["seed"])
    dealer: int = 1
    trials: int = 1
    out: Optional[Path] = None
    store: bool = False

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "ScenarioConfig":
        """
        Build a config from file or flag values.

        Keys follow the command-line flags (field_p for the modulus). The
        adversary may be a strategy id or a mapping with strategy, corrupt
        and params.

        Raises:
            ConfigInvalid: on unknown keys or unreadable values
        """
        values = dict(values)
        if "field_p" in values:
            values["p"] = values.pop("field_p")
        adversary = values.get("adversary")
        if isinstance(adversary, Mapping):
            values["adversary"] = adversary.get("strategy", "passive")
            if "corrupt" in adversary:
                values.setdefault("corrupt", adversary["corrupt"])
            values.setdefault("adversary_params", dict(adversary.get("params") or {}))
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigInvalid(f"unknown scenario keys: {', '.join(unknown)}")
        for key in ("scheme", "n", "t"):
            if values.get(key) is None:
                raise ConfigInvalid(f"scenario needs '{key}'")
        try:
            for key in ("n", "t", "p", "seed", "dealer", "trials"):
                if values.get(key) is not None:
                    values[key] = int(values[key])
            for key in ("d", "L"):
                if values.get(key) is not None:
                    values[key] = int(values[key])
        except (TypeError, ValueError) as exc:
            raise ConfigInvalid(f"bad numeric value: {exc}") from None
        if "secret" in values:
            values["secret"] = parse_secret(values["secret"])
        if values.get("corrupt") is not None:
            values["corrupt"] = parse_parties(values["corrupt"])
        if values.get("out") is not None:
            values["out"] = Path(values["out"])
        values = {k: v for k, v in values.items() if v is not None}
        return cls(**values)

    @classmethod
    def from_file(cls, path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None) -> "ScenarioConfig":
        """YAML scenario file; overrides (e.g. command-line flags) win"""
        path = Path(path)
        if not path.exists():
            raise ConfigInvalid(f"scenario file not found: {path}")
        with open(path) as f:
            values = yaml.safe_load(f) or {}
        if not isinstance(values, dict):
            raise ConfigInvalid(f"scenario file {path} must hold a mapping")
        values.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return cls.from_mapping(values)

    @property
    def family(self) -> str:
        return scheme_info(self.scheme).family

    def corrupt_set(self) -> Tuple[int, ...]:
        """The given corrupt set, or a default that fits the strategy"""
        if self.corrupt is not None:
            return tuple(self.corrupt)
        if self.adversary == "passive" or self.t == 0:
            return ()
        if self.adversary in DEALER_STRATEGIES:
            return (self.dealer,)
        others = [j for j in range(1, self.n + 1) if j != self.dealer]
        return tuple(others[-self.t :])

    def field_params(self) -> FieldParams:
        L = 0
        if self.scheme == "CHP":
            L = min(self.L or self.n - 3 * self.t, self.n - 3 * self.t)
        return FieldParams.default(self.n, self.p, max(L, 0))

    def engine_config(self, params: Optional[FieldParams] = None) -> EngineConfig:
        params = params or self.field_params()
        common = dict(params=params, t=self.t, seed=self.seed, dealer=self.dealer, timing=self.family)
        if self.family == ASYNC:
            return AvssConfig(**common, scheme=self.scheme, d=self.d, L=self.L)
        return EngineConfig(**common)

    def validate(self) -> None:
        """
        Raise ConfigInvalid (ConfigBound, FieldTooSmall) unless the scenario can run.
        """
        info = scheme_info(self.scheme)
        if self.n < 1 or self.t < 0:
            raise ConfigInvalid(f"need n >= 1 and t >= 0, got n={self.n}, t={self.t}")
        if not 1 <= self.dealer <= self.n:
            raise ConfigInvalid(f"dealer P{self.dealer} outside 1..{self.n}")
        if self.trials < 1:
            raise ConfigInvalid(f"trials must be positive, got {self.trials}")
        if self.scheme != "CHP" and isinstance(self.secret, list):
            raise ConfigInvalid(f"{self.scheme} shares a single secret")
        CorruptionSpec(frozenset(self.corrupt_set()), self.adversary, self.adversary_params).validate(self.n, self.t)
        make_strategy(self.adversary, self.p)
        make_scheduler(self.scheduler)
        if info.family == SYNC:
            scheme_class(self.scheme).check_bounds(self.n, self.t)
            self.field_params()
        elif info.family == ASYNC:
            self.engine_config().validate()
        else:
            hybrid_class(self.scheme).check_bounds(self.n, self.t)
            self.field_params()

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["corrupt"] = list(self.corrupt_set())
        values["out"] = str(self.out) if self.out is not None else None
        return values


@dataclass
class RunReport:
    scheme: str
    status: str
    seed: int
    outputs: Dict[int, Any]
    shares: Dict[int, Any]
    committed: Any
    metrics: Dict[str, int]
    rec_metrics: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    records: Dict[int, Dict[str, Any]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def discarded(self) -> bool:
        return self.status == "dealer-discarded"

    @property
    def bottom_count(self) -> int:
        return sum(1 for v in self.outputs.values() if v is BOTTOM)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scheme": self.scheme,
            "status": self.status,
            "seed": self.seed,
            "discarded": self.discarded,
            "bottom_count": self.bottom_count,
            "outputs": {str(pid): _jsonable(v) for pid, v in sorted(self.outputs.items())},
            "shares": {str(pid): _jsonable(v) for pid, v in sorted(self.shares.items())},
            "committed": _jsonable(self.committed),
            "metrics": dict(self.metrics),
            "rec_metrics": dict(self.rec_metrics),
            "violations": list(self.violations),
            "config": {k: _jsonable(v) for k, v in self.config.items()},
            "records": {str(pid): _jsonable(r) for pid, r in sorted(self.records.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _jsonable(value: Any) -> Any:
    if value is BOTTOM:
        return "BOTTOM"
    if isinstance(value, UniPoly):
        return list(value.coeffs)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    if isinstance(value, Path):
        return str(value)
    return value


# contracts


def _all_equal(values: Sequence[Any]) -> bool:
    return all(v == values[0] for v in values)


def check_contract(cfg: ScenarioConfig, outcome: SharingOutcome, outputs: Dict[int, Any]) -> List[str]:
    """Violations of the scheme's guarantee in one finished run"""
    info = scheme_info(cfg.scheme)
    honest_dealer = cfg.dealer not in cfg.corrupt_set()
    violations: List[str] = []
    if info.guarantee == "WPS":
        return _check_wps(cfg, outcome, honest_dealer)

    if info.family != SYNC:
        terminated = [pid for pid, r in outcome.records.items() if r.get("terminated")]
        if honest_dealer and len(terminated) < len(outcome.honest):
            violations.append(f"honest dealer but only {sorted(terminated)} terminated sharing")
        elif terminated and len(terminated) < len(outcome.honest):
            violations.append(f"sharing terminated at {sorted(terminated)} but not at every honest party")
        if not terminated:
            return violations
        missing = [pid for pid, v in outputs.items() if v is None]
        if missing:
            violations.append(f"reconstruction did not terminate at {missing}")
            return violations

    values = [outputs[pid] for pid in sorted(outputs)]
    if honest_dealer:
        expected = _expected_secret(cfg)
        wrong = {pid: v for pid, v in outputs.items() if v != expected}
        if wrong:
            violations.append(f"honest dealer shared {expected} but outputs were {wrong}")
        return violations

    if info.guarantee == "WSS":
        allowed = {_key(outcome.committed), _key(BOTTOM)}
        bad = {pid: v for pid, v in outputs.items() if _key(v) not in allowed}
        if bad:
            violations.append(f"outputs {bad} are neither the committed {outcome.committed} nor BOTTOM")
        return violations

    if not _all_equal(values):
        violations.append(f"honest outputs disagree: {outputs}")
    elif outcome.committed is not None and values and values[0] != outcome.committed:
        violations.append(f"outputs {values[0]} differ from the committed value {outcome.committed}")
    if info.guarantee == "Type-II VSS" and info.degree != "RSS" and not outcome.discarded:
        if outcome.committed_poly is None:
            violations.append("honest shares do not lie on one sharing polynomial")
    return violations


def _key(value: Any) -> Any:
    return "BOTTOM" if value is BOTTOM else repr(value)


def _expected_secret(cfg: ScenarioConfig) -> Any:
    if cfg.scheme == "CHP":
        secrets = cfg.secret if isinstance(cfg.secret, list) else [cfg.secret]
        L = cfg.L or cfg.n - 3 * cfg.t
        values = [int(s) % cfg.p for s in secrets][:L]
        return values + [0] * (L - len(values))
    return int(cfg.secret) % cfg.p


def _check_wps(cfg: ScenarioConfig, outcome: SharingOutcome, honest_dealer: bool) -> List[str]:
    violations: List[str] = []
    params = cfg.field_params()
    done = {pid: party.output for pid, party in outcome.honest.items() if party.terminated}
    if honest_dealer:
        f = outcome.parties[cfg.dealer].dealt
        if len(done) < len(outcome.honest):
            violations.append(f"honest dealer but only {sorted(done)} terminated")
        wrong = {pid: v for pid, v in done.items() if v != f(params.alpha(pid))}
        if wrong:
            violations.append(f"outputs {wrong} are not f(alpha_i)")
        return violations
    if not done:
        return violations
    f_star = outcome.committed_poly
    if f_star is None:
        violations.append(f"honest outputs {done} fix no degree-t polynomial")
        return violations
    bad = {pid: v for pid, v in done.items() if v is not BOTTOM and v != f_star(params.alpha(pid))}
    if bad:
        violations.append(f"outputs {bad} are neither f*(alpha_i) nor BOTTOM")
    correct = sum(1 for v in done.values() if v is not BOTTOM)
    if correct < cfg.t + 1:
        violations.append(f"only {correct} honest parties hold f*(alpha_i), need {cfg.t + 1}")
    return violations


# execution


def build_adversary(cfg: ScenarioConfig) -> Adversary:
    strategy = make_strategy(cfg.adversary, cfg.p, seed=cfg.seed, params=cfg.adversary_params)
    return Adversary(cfg.corrupt_set(), strategy)


def execute(cfg: ScenarioConfig) -> Tuple[SharingOutcome, Dict[int, Any]]:
    """Sharing then reconstruction on the scheme's engine; (outcome, honest outputs)"""
    family = cfg.family
    engine_cfg = cfg.engine_config()
    adversary = build_adversary(cfg)
    victim = None
    if cfg.scheduler == "honest-last":
        honest = [j for j in range(1, cfg.n + 1) if j not in cfg.corrupt_set() and j != cfg.dealer]
        victim = honest[-1] if honest else None
    scheduler = make_scheduler(cfg.scheduler, seed=cfg.seed, victim=victim)

    if family == SYNC:
        outcome = run_sharing(cfg.scheme, engine_cfg, cfg.secret, adversary)
        outputs = run_reconstruction(outcome)
        if not scheme_class(cfg.scheme).dealer_holds_share:
            outputs.pop(cfg.dealer, None)
        return outcome, outputs
    if family == ASYNC:
        outcome = run_avss_sharing(engine_cfg, cfg.secret, adversary, scheduler)
        if outcome.status != SHARED:
            return outcome, {pid: None for pid in outcome.honest}
        rec_scheduler = make_scheduler(cfg.scheduler, seed=cfg.seed + 1, victim=victim)
        return outcome, run_avss_reconstruction(outcome, scheduler=rec_scheduler)

    cls = hybrid_class(cfg.scheme)
    outcome = run_hybrid_sharing(cls, engine_cfg, cfg.secret, adversary, scheduler)
    if cls.scheme_id == "WPS":
        return outcome, dict(outcome.shares)
    if outcome.status != SHARED:
        return outcome, {pid: None for pid in outcome.honest}
    rec_scheduler = make_scheduler(cfg.scheduler, seed=cfg.seed + 1, victim=victim)
    return outcome, run_pr_reconstruction(outcome, scheduler=rec_scheduler)


def run_scenario(cfg: ScenarioConfig) -> RunReport:
    """
    Run a scenario and check it against the scheme's contract.

    Deterministic for a fixed seed. Writes report.json and transcript.log
    under cfg.out when given, and stores the report when cfg.store is set.

    Raises:
        ConfigInvalid: with a readable reason if the scenario cannot run
    """
    cfg.validate()
    try:
        outcome, outputs = execute(cfg)
    except Livelock as exc:
        logger.warning(f"{cfg.scheme} seed {cfg.seed}: {exc}")
        return RunReport(
            scheme=cfg.scheme,
            status="livelock",
            seed=cfg.seed,
            outputs={},
            shares={},
            committed=None,
            metrics={},
            violations=[f"livelock: {exc}"],
            config=cfg.to_dict(),
        )

    violations = check_contract(cfg, outcome, outputs)
    for violation in violations:
        logger.warning(f"{cfg.scheme} seed {cfg.seed}: {violation}")
    report = RunReport(
        scheme=cfg.scheme,
        status=outcome.status,
        seed=cfg.seed,
        outputs=outputs,
        shares=dict(outcome.shares),
        committed=outcome.committed,
        metrics=outcome.metrics.to_dict(),
        rec_metrics=outcome.rec_transcript.metrics.to_dict() if outcome.rec_transcript else {},
        violations=violations,
        config=cfg.to_dict(),
        records=outcome.records,
    )
    if cfg.out is not None:
        write_artifacts(report, outcome, cfg.out)
    if cfg.store:
        save_report(report)
    return report


def run_trials(cfg: ScenarioConfig) -> List[RunReport]:
    """cfg.trials runs with seeds cfg.seed, cfg.seed + 1, ..."""
    reports = []
    for k in range(cfg.trials):
        trial = ScenarioConfig(**{**asdict(cfg), "seed": cfg.seed + k, "trials": 1})
        if cfg.out is not None and cfg.trials > 1:
            trial.out = Path(cfg.out) / f"seed-{trial.seed}"
        reports.append(run_scenario(trial))
    return reports


def write_artifacts(report: RunReport, outcome: SharingOutcome, out: Union[str, Path]) -> Path:
    """report.json and transcript.log (plus rec_transcript.log) under out"""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report.to_json() + "\n")
    outcome.transcript.write(out / "transcript.log")
    if outcome.rec_transcript is not None:
        outcome.rec_transcript.write(out / "rec_transcript.log")
    logger.info(f"artifacts written to {out}")
    return out
