"""Fuzz battery over strategies, schedulers and seeds"""

import pytest

from vsslab.adversary.schedulers import SCHEDULERS
from vsslab.adversary.strategies import STRATEGIES
from vsslab.errors import ConfigInvalid
from vsslab.harness.battery import COLUMNS, battery_cells, fuzz_battery, placement

P = 2**31 - 1

# smallest (n, t) each scheme runs at
SMALLEST = {
    "7BGW": (4, 1),
    "5BGW": (4, 1),
    "4GIKR": (4, 1),
    "3GIKR": (4, 1),
    "3FGGRS-WSS": (4, 1),
    "3FGGRS": (4, 1),
    "3KKK-WSS": (4, 1),
    "3KKK": (4, 1),
    "3AKP": (4, 1),
    "2GIKR": (5, 1),
    "1GIKR": (5, 1),
    "BCG": (5, 1),
    "PCR": (5, 1),
    "CHP": (5, 1),
    "WPS": (4, 1),
    "PR": (4, 1),
}
ASYNCHRONOUS = ["BCG", "PCR", "CHP", "PR"]
DEALER_ATTACKS = ["inconsistent-dealer", "crash", "garble"]


def assert_clean(table):
    failing = table[~table["passed"]]
    assert failing.empty, failing[["strategy", "scheduler", "corrupt", "first_violation"]].to_string()
    assert table["violations"].sum() == 0


class TestCells:
    def test_synchronous_schemes_ignore_scheduler(self):
        cells = battery_cells("3KKK", [(4, 1)], ["passive", "crash"], ["fifo", "lifo"])
        assert cells == [(4, 1, "passive", "fifo"), (4, 1, "crash", "fifo")]

    def test_asynchronous_cells(self):
        cells = battery_cells("BCG", [(5, 1), (9, 2)], ["garble"], ["fifo", "lifo"])
        assert len(cells) == 4


class TestPlacement:
    def test_default_left_to_scenario(self):
        assert placement(None, 5, 1) is None

    def test_dealer(self):
        assert placement("dealer", 5, 1) == (1,)
        assert placement("dealer", 5, 1, dealer=3) == (3,)

    def test_others(self):
        assert placement("others", 9, 2) == (8, 9)
        assert placement("others", 4, 1, dealer=4) == (3,)
        assert placement("others", 4, 0) == ()

    def test_explicit_ids(self):
        assert placement([2, 3], 9, 2) == (2, 3)

    def test_unknown_keyword(self):
        with pytest.raises(ConfigInvalid):
            placement("everyone", 4, 1)

    def test_too_many_corrupt(self):
        with pytest.raises(ConfigInvalid):
            fuzz_battery("BCG", [(5, 1)], strategies=["crash"], schedulers=["fifo"], trials=1, p=P, corrupt=[4, 5])


class TestFuzzBattery:
    def test_synchronous_scheme(self):
        table = fuzz_battery(
            "3KKK",
            [(4, 1)],
            strategies=["passive", "crash", "garble", "inconsistent-dealer", "wrong-share-at-rec"],
            trials=3,
            p=P,
            secret=5,
        )
        assert list(table.columns) == COLUMNS
        assert len(table) == 5
        assert table["violations"].sum() == 0
        assert table["passed"].all()
        assert (table["trials"] == 3).all()
        assert (table["max_rounds_total"] == 3).all()
        corrupt = dict(zip(table["strategy"], table["corrupt"]))
        assert corrupt["inconsistent-dealer"] == "1"
        assert corrupt["garble"] == "4"
        assert corrupt["passive"] == ""

    def test_asynchronous_scheme(self):
        table = fuzz_battery(
            "BCG",
            [(5, 1)],
            strategies=["crash", "garble"],
            schedulers=["fifo", "lifo", "corrupt-first", "honest-last"],
            trials=2,
            p=P,
        )
        assert len(table) == 8
        assert table["passed"].all()
        assert (table["max_async_steps"] > 0).all()
        assert (table["first_violation"] == "").all()

    @pytest.mark.parametrize("scheme", ASYNCHRONOUS)
    def test_dealer_strategies_on_other_parties(self, scheme):
        table = fuzz_battery(
            scheme,
            [SMALLEST[scheme]],
            strategies=["inconsistent-dealer", "garble"],
            schedulers=["lifo", "corrupt-first"],
            trials=3,
            p=P,
            secret=7,
            corrupt="others",
        )
        assert (table["corrupt"] == str(SMALLEST[scheme][0])).all()
        assert_clean(table)

    def test_sorted_rows(self):
        table = fuzz_battery("5BGW", [(7, 2), (4, 1)], strategies=["passive"], trials=1, p=P)
        assert list(zip(table["n"], table["t"])) == [(4, 1), (7, 2)]

    def test_grid_outside_bounds(self):
        with pytest.raises(ConfigInvalid):
            fuzz_battery("2GIKR", [(4, 1)], strategies=["passive"], trials=1, p=P)


@pytest.mark.slow
class TestFullBatteries:
    """25 seeds per cell at each scheme's smallest (n, t)"""

    @pytest.mark.parametrize("scheme", sorted(SMALLEST))
    def test_honest_dealer(self, scheme):
        table = fuzz_battery(
            scheme, [SMALLEST[scheme]], strategies=STRATEGIES, trials=25, seed=1, p=P, secret=11, corrupt="others"
        )
        assert_clean(table)
        assert (table["discarded"] == 0).all()

    @pytest.mark.parametrize("scheme", sorted(SMALLEST))
    def test_corrupt_dealer(self, scheme):
        table = fuzz_battery(
            scheme, [SMALLEST[scheme]], strategies=DEALER_ATTACKS, trials=25, seed=1, p=P, secret=11, corrupt="dealer"
        )
        assert_clean(table)

    @pytest.mark.parametrize("scheme", ASYNCHRONOUS)
    def test_adversarial_schedulers_terminate(self, scheme):
        table = fuzz_battery(
            scheme,
            [SMALLEST[scheme]],
            strategies=["passive", "crash", "garble", "inconsistent-dealer"],
            schedulers=["corrupt-first", "honest-last"],
            trials=25,
            seed=1,
            p=P,
            secret=11,
            corrupt="others",
        )
        assert_clean(table)
        assert len(table) == 8
        assert set(table["scheduler"]) <= set(SCHEDULERS)
