"""Run report storage in SQLite"""

import pandas as pd

from vsslab.harness.scenario import ScenarioConfig, run_scenario
from vsslab.storage.reports import (
    get_database_stats,
    load_battery,
    load_reports,
    save_battery,
    save_report,
    save_reports_batch,
    search_reports,
)

P = 2**31 - 1


def report(scheme="5BGW", seed=1, adversary="passive", n=4, t=1):
    return run_scenario(ScenarioConfig(scheme, n, t, p=P, secret=3, seed=seed, adversary=adversary))


def test_save_once(tmp_path):
    db = tmp_path / "runs.db"
    first = report()
    assert save_report(first, db_path=db)
    assert not save_report(first, db_path=db)
    assert len(load_reports(db_path=db)) == 1


def test_dict_form_and_defaults(tmp_path):
    db = tmp_path / "runs.db"
    assert save_report(report("PCR", n=5).to_dict(), db_path=db)
    row = load_reports(db_path=db).iloc[0]
    # unset d and L are stored as the scheme default
    assert row["d"] == -1
    assert row["L"] == -1
    assert row["metrics"]["async_steps"] > 0


def test_batch_and_search(tmp_path):
    db = tmp_path / "runs.db"
    runs = [report(seed=s) for s in (1, 2)] + [report("3KKK", adversary="garble")]
    stats = save_reports_batch(runs + runs[:1], db_path=db)
    assert stats == {"saved": 3, "skipped": 1, "errors": 0}

    assert len(search_reports(scheme="5BGW", db_path=db)) == 2
    assert len(search_reports(adversary="garble", db_path=db)) == 1
    assert len(search_reports(status="shared", limit=2, db_path=db)) == 2
    assert search_reports(violations_only=True, db_path=db).empty
    assert list(load_reports(limit=1, db_path=db)["seed"]) == [1]


def test_database_stats(tmp_path):
    db = tmp_path / "runs.db"
    save_reports_batch([report(), report("3KKK")], db_path=db)
    stats = get_database_stats(db_path=db)
    assert stats["total_runs"] == 2
    assert stats["failing_runs"] == 0
    assert stats["by_scheme"] == {"3KKK": 1, "5BGW": 1}
    assert stats["by_status"] == {"shared": 2}


def test_battery_tables(tmp_path):
    db = tmp_path / "runs.db"
    table = pd.DataFrame([{"scheme": "BCG", "n": 5, "t": 1, "violations": 0}])
    assert save_battery(table, label="nightly", db_path=db) == 1
    save_battery(table, label="other", db_path=db)
    assert len(load_battery(db_path=db)) == 2
    nightly = load_battery("nightly", db_path=db)
    assert list(nightly["label"]) == ["nightly"]


def test_missing_database(tmp_path):
    db = tmp_path / "absent.db"
    assert search_reports(db_path=db).empty
    assert load_battery(db_path=db).empty
    assert get_database_stats(db_path=db)["total_runs"] == 0
