"""Hybrid-model scheme classes by id"""

from typing import Dict, Type

from vsslab.avss_hybrid.pr import PrParty
from vsslab.avss_hybrid.wps import HybridVssParty, WpsParty
from vsslab.errors import ConfigInvalid

HYBRID_SCHEMES: Dict[str, Type[HybridVssParty]] = {cls.scheme_id: cls for cls in (WpsParty, PrParty)}


def hybrid_class(scheme: str) -> Type[HybridVssParty]:
    try:
        return HYBRID_SCHEMES[scheme]
    except KeyError:
        raise ConfigInvalid(
            f"unknown hybrid scheme '{scheme}'; choose from {', '.join(HYBRID_SCHEMES)}"
        ) from None
