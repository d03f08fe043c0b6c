"""Static Byzantine adversaries and delivery schedulers"""

from vsslab.adversary.base import Adversary, AdversaryView, CorruptionSpec, Strategy
from vsslab.adversary.schedulers import SCHEDULERS, Scheduler, make_scheduler
from vsslab.adversary.strategies import STRATEGIES, make_strategy

__all__ = [
    "Adversary",
    "AdversaryView",
    "CorruptionSpec",
    "Strategy",
    "SCHEDULERS",
    "Scheduler",
    "make_scheduler",
    "STRATEGIES",
    "make_strategy",
]
