"""Scenarios, contracts, the privacy oracle, batteries and the CLI"""

from vsslab.harness.battery import fuzz_battery
from vsslab.harness.privacy import PrivacyResult, privacy_exhaustive_check
from vsslab.harness.scenario import RunReport, ScenarioConfig, check_contract, run_scenario, run_trials

__all__ = [
    "ScenarioConfig",
    "RunReport",
    "check_contract",
    "run_scenario",
    "run_trials",
    "PrivacyResult",
    "privacy_exhaustive_check",
    "fuzz_battery",
]
