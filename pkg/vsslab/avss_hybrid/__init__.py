"""Hybrid-model schemes: WPS and the PR AVSS built on it"""

from vsslab.avss_hybrid.registry import HYBRID_SCHEMES, hybrid_class
from vsslab.avss_hybrid.runner import run_hybrid_sharing, run_pr_reconstruction, run_pr_sharing, run_wps

__all__ = [
    "HYBRID_SCHEMES",
    "hybrid_class",
    "run_hybrid_sharing",
    "run_wps",
    "run_pr_sharing",
    "run_pr_reconstruction",
]
