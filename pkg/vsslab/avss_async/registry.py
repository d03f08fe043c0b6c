"""Asynchronous scheme classes by id"""

from typing import Dict, Type

from vsslab.avss_async.base import AsyncVssParty
from vsslab.avss_async.bcg import Bcg
from vsslab.avss_async.chp import Chp
from vsslab.avss_async.pcr import Pcr
from vsslab.errors import ConfigInvalid

ASYNC_SCHEMES: Dict[str, Type[AsyncVssParty]] = {cls.scheme_id: cls for cls in (Bcg, Pcr, Chp)}


def avss_class(scheme: str) -> Type[AsyncVssParty]:
    try:
        return ASYNC_SCHEMES[scheme]
    except KeyError:
        raise ConfigInvalid(
            f"unknown asynchronous scheme '{scheme}'; choose from {', '.join(ASYNC_SCHEMES)}"
        ) from None
