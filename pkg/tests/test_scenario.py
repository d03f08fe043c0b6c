"""Scenario configuration, execution and contract checks"""

import json

import pytest
import yaml

from vsslab.errors import ConfigBound, ConfigInvalid
from vsslab.harness.catalogue import CATALOGUE, catalogue_table, scheme_info
from vsslab.harness.scenario import (
    ScenarioConfig,
    parse_parties,
    parse_secret,
    run_scenario,
    run_trials,
)
from vsslab.storage import reports as storage

P = 2**31 - 1

# smallest (n, t) per scheme; CHP and PR run at their own bounds
SMALLEST = {
    "BCG": (5, 1),
    "PCR": (5, 1),
    "CHP": (5, 1),
    "WPS": (4, 1),
    "PR": (4, 1),
    "2GIKR": (5, 1),
    "1GIKR": (5, 1),
}


class TestParsing:
    def test_parties(self):
        assert parse_parties("3, 1,3") == (1, 3)
        assert parse_parties([2, 4]) == (2, 4)
        assert parse_parties(5) == (5,)
        assert parse_parties("") == ()
        with pytest.raises(ConfigInvalid):
            parse_parties("a,b")

    def test_secret(self):
        assert parse_secret("7") == 7
        assert parse_secret("1,2,3") == [1, 2, 3]
        assert parse_secret([4, "5"]) == [4, 5]
        with pytest.raises(ConfigInvalid):
            parse_secret("x")

    def test_from_mapping(self):
        cfg = ScenarioConfig.from_mapping(
            {"scheme": "BCG", "n": "5", "t": 1, "field_p": 97, "adversary": {"strategy": "crash", "corrupt": "5"}}
        )
        assert cfg.p == 97
        assert cfg.adversary == "crash"
        assert cfg.corrupt == (5,)

    def test_unknown_key(self):
        with pytest.raises(ConfigInvalid, match="colour"):
            ScenarioConfig.from_mapping({"scheme": "BCG", "n": 5, "t": 1, "colour": "red"})

    def test_missing_key(self):
        with pytest.raises(ConfigInvalid):
            ScenarioConfig.from_mapping({"scheme": "BCG", "n": 5})

    def test_from_file_with_overrides(self, tmp_path):
        path = tmp_path / "scenario.yaml"
        path.write_text(yaml.safe_dump({"scheme": "CHP", "n": 5, "t": 1, "secret": [1, 2], "seed": 3}))
        cfg = ScenarioConfig.from_file(path, {"seed": 9, "scheduler": None})
        assert cfg.secret == [1, 2]
        assert cfg.seed == 9
        assert cfg.scheduler == "fifo"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigInvalid):
            ScenarioConfig.from_file(tmp_path / "absent.yaml")


class TestDefaults:
    def test_corrupt_set_follows_strategy(self):
        assert ScenarioConfig("7BGW", 7, 2).corrupt_set() == ()
        assert ScenarioConfig("7BGW", 7, 2, adversary="inconsistent-dealer").corrupt_set() == (1,)
        assert ScenarioConfig("7BGW", 7, 2, adversary="garble").corrupt_set() == (6, 7)
        assert ScenarioConfig("7BGW", 7, 2, adversary="garble", dealer=7).corrupt_set() == (5, 6)

    def test_chp_gets_beta_points(self):
        params = ScenarioConfig("CHP", 9, 2, L=10).field_params()
        assert len(params.betas) == 3


class TestValidation:
    def test_two_round_scheme_at_four_parties(self):
        with pytest.raises(ConfigInvalid):
            ScenarioConfig("2GIKR", 4, 1).validate()

    def test_bound_is_a_config_error(self):
        with pytest.raises(ConfigBound):
            ScenarioConfig("BCG", 4, 1).validate()

    def test_too_many_corrupt(self):
        with pytest.raises(ConfigInvalid):
            ScenarioConfig("7BGW", 4, 1, adversary="garble", corrupt=(3, 4)).validate()

    def test_field_too_small(self):
        with pytest.raises(ConfigInvalid):
            ScenarioConfig("7BGW", 7, 2, p=7).validate()

    def test_unknown_scheme_strategy_scheduler(self):
        with pytest.raises(ConfigInvalid):
            ScenarioConfig("9XYZ", 4, 1).validate()
        with pytest.raises(ConfigInvalid):
            ScenarioConfig("7BGW", 4, 1, adversary="sneaky").validate()
        with pytest.raises(ConfigInvalid):
            ScenarioConfig("BCG", 5, 1, scheduler="psychic").validate()

    def test_secret_vector_only_for_batches(self):
        with pytest.raises(ConfigInvalid):
            ScenarioConfig("7BGW", 4, 1, secret=[1, 2]).validate()


class TestRunScenario:
    def test_seven_round_reference_run(self):
        report = run_scenario(ScenarioConfig("7BGW", 4, 1, p=P, secret=3, seed=1))
        assert report.status == "shared"
        assert report.passed
        assert report.metrics["rounds_total"] == 7
        assert report.metrics["rounds_with_broadcast"] == 5
        assert set(report.outputs.values()) == {3}

    @pytest.mark.parametrize("scheme", sorted(CATALOGUE))
    def test_every_scheme_passes_with_passive_adversary(self, scheme):
        n, t = SMALLEST.get(scheme, (4, 1))
        report = run_scenario(ScenarioConfig(scheme, n, t, p=P, secret=11, adversary="passive"))
        assert report.passed, report.violations

    @pytest.mark.parametrize("scheme", ["BCG", "PCR", "CHP", "PR"])
    def test_asynchronous_schemes_under_corrupt_first(self, scheme):
        n, t = SMALLEST[scheme]
        cfg = ScenarioConfig(scheme, n, t, p=P, secret=4, adversary="garble", scheduler="corrupt-first")
        report = run_scenario(cfg)
        assert report.passed, report.violations
        assert report.rec_metrics["async_steps"] > 0

    @pytest.mark.parametrize("scheduler", ["lifo", "corrupt-first"])
    def test_hybrid_avss_with_splitting_party(self, scheduler):
        cfg = ScenarioConfig(
            "PR", 4, 1, p=P, secret=6, adversary="inconsistent-dealer", corrupt=(4,), scheduler=scheduler, seed=1
        )
        report = run_scenario(cfg)
        assert report.passed, report.violations
        assert report.status == "shared"
        assert report.outputs == {1: 6, 2: 6, 3: 6}

    def test_one_round_inconsistent_dealer(self):
        for seed in range(1, 6):
            cfg = ScenarioConfig("1GIKR", 5, 1, p=P, secret=2, adversary="inconsistent-dealer", seed=seed)
            report = run_scenario(cfg)
            assert report.passed, report.violations
            assert 1 not in report.outputs

    def test_deterministic(self):
        cfg = ScenarioConfig("PCR", 5, 1, p=P, secret=6, adversary="garble", scheduler="random", seed=4)
        first = run_scenario(cfg).to_json()
        assert run_scenario(cfg).to_json() == first

    def test_artifacts(self, tmp_path):
        out = tmp_path / "runs" / "bgw"
        run_scenario(ScenarioConfig("5BGW", 4, 1, p=P, secret=3, out=out))
        report = json.loads((out / "report.json").read_text())
        assert report["status"] == "shared"
        assert report["outputs"] == {"1": 3, "2": 3, "3": 3, "4": 3}
        assert (out / "transcript.log").read_text().splitlines()
        assert (out / "rec_transcript.log").exists()

    def test_trials_use_consecutive_seeds(self, tmp_path):
        cfg = ScenarioConfig("3KKK", 4, 1, p=P, secret=1, seed=5, trials=3, out=tmp_path)
        reports = run_trials(cfg)
        assert [r.seed for r in reports] == [5, 6, 7]
        assert (tmp_path / "seed-6" / "report.json").exists()

    def test_stored_when_asked(self, tmp_path, monkeypatch):
        db = tmp_path / "runs.db"
        monkeypatch.setattr(storage, "get_db_path", lambda: db)
        run_scenario(ScenarioConfig("5BGW", 4, 1, p=P, secret=3, store=True))
        assert len(storage.load_reports(db_path=db)) == 1


class TestCatalogue:
    def test_table(self):
        table = catalogue_table()
        assert len(table) == len(CATALOGUE) == 16
        assert list(table["scheme"])[:2] == ["7BGW", "5BGW"]

    def test_signatures_match_schemes(self):
        assert scheme_info("3KKK").signature == (3, 1)
        assert scheme_info("BCG").signature is None

    def test_unknown(self):
        with pytest.raises(ConfigInvalid):
            scheme_info("nope")
