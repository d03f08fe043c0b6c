"""vsslab - perfectly-secure verifiable secret sharing lab"""

__version__ = "0.1.0"

from vsslab.harness.battery import fuzz_battery
from vsslab.harness.catalogue import CATALOGUE, catalogue_table, scheme_info
from vsslab.harness.privacy import privacy_exhaustive_check
from vsslab.harness.scenario import RunReport, ScenarioConfig, run_scenario, run_trials

__all__ = [
    "CATALOGUE",
    "catalogue_table",
    "scheme_info",
    "ScenarioConfig",
    "RunReport",
    "run_scenario",
    "run_trials",
    "privacy_exhaustive_check",
    "fuzz_battery",
    "__version__",
]
