"""Asynchronous AVSS schemes: BCG, PCR and CHP"""

from vsslab.avss_async.registry import ASYNC_SCHEMES, avss_class
from vsslab.avss_async.runner import AvssConfig, run_avss_reconstruction, run_avss_sharing

__all__ = ["ASYNC_SCHEMES", "avss_class", "AvssConfig", "run_avss_sharing", "run_avss_reconstruction"]
