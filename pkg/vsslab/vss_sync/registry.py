"""Synchronous scheme classes by id"""

from typing import Dict, Type

from vsslab.errors import ConfigInvalid
from vsslab.vss_sync.akp import Akp
from vsslab.vss_sync.base import SyncVssParty
from vsslab.vss_sync.bgw import Bgw5, Bgw7
from vsslab.vss_sync.fggrs import Fggrs
from vsslab.vss_sync.gikr import Gikr1, Gikr2, Gikr4
from vsslab.vss_sync.kkk import Kkk
from vsslab.vss_sync.rss import Gikr3
from vsslab.vss_sync.wss import FggrsWss, KkkWss

SYNC_SCHEMES: Dict[str, Type[SyncVssParty]] = {
    cls.scheme_id: cls
    for cls in (Bgw7, Bgw5, Gikr4, Gikr3, FggrsWss, Fggrs, KkkWss, Kkk, Akp, Gikr2, Gikr1)
}


def scheme_class(scheme: str) -> Type[SyncVssParty]:
    try:
        return SYNC_SCHEMES[scheme]
    except KeyError:
        raise ConfigInvalid(
            f"unknown synchronous scheme '{scheme}'; choose from {', '.join(SYNC_SCHEMES)}"
        ) from None
