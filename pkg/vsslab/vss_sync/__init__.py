"""Synchronous VSS and WSS schemes"""

from vsslab.vss_sync.registry import SYNC_SCHEMES, scheme_class
from vsslab.vss_sync.runner import run_reconstruction, run_sharing

__all__ = ["SYNC_SCHEMES", "scheme_class", "run_sharing", "run_reconstruction"]
