"""Scheme catalogue: one entry per scheme id

Usage:
    from vsslab.harness.catalogue import catalogue_table, scheme_info

    scheme_info("3KKK").signature    # (3, 1)
    print(catalogue_table().to_string(index=False))
"""

from dataclasses import asdict, dataclass
from typing import Dict, Optional, Tuple

import pandas as pd

from vsslab.errors import ConfigInvalid

SYNC = "sync"
ASYNC = "async"
HYBRID = "hybrid"

SQUARE = "O(n^2 log|F|)"
CUBE = "O(n^3 log|F|)"


@dataclass(frozen=True)
class SchemeInfo:
    scheme: str
    family: str
    guarantee: str
    bound: str
    signature: Optional[Tuple[int, int]]  # (rounds, broadcast rounds) of the sharing phase
    rec_rounds: str
    p2p: str
    bc: str
    degree: str

    def as_row(self) -> Dict[str, str]:
        row = asdict(self)
        row["signature"] = "-" if self.signature is None else f"({self.signature[0]}, {self.signature[1]})"
        return row


def _sync(scheme, guarantee, bound, signature, p2p=SQUARE, bc=SQUARE, degree="t") -> SchemeInfo:
    return SchemeInfo(scheme, SYNC, guarantee, bound, signature, "1", p2p, bc, degree)


CATALOGUE: Dict[str, SchemeInfo] = {
    info.scheme: info
    for info in (
        _sync("7BGW", "Type-II VSS", "n > 3t", (7, 5)),
        _sync("5BGW", "Type-II VSS", "n > 3t", (5, 3)),
        _sync("4GIKR", "Type-II VSS", "n > 3t", (4, 3)),
        _sync("3GIKR", "Type-II VSS", "n > 3t", (3, 2), "O(n C(n,t) log|G|)", "O(n C(n,t) log|G|)", "RSS"),
        _sync("3FGGRS-WSS", "WSS", "n > 3t", (3, 2), CUBE, CUBE),
        _sync("3FGGRS", "Type-I VSS", "n > 3t", (3, 2), CUBE, CUBE, "-"),
        _sync("3KKK-WSS", "WSS", "n > 3t", (3, 1), CUBE, CUBE),
        _sync("3KKK", "Type-II VSS", "n > 3t", (3, 1), CUBE, CUBE),
        _sync("3AKP", "Type-II VSS", "n > 3t", (3, 2), CUBE, CUBE),
        _sync("2GIKR", "Type-II VSS", "n > 4t", (2, 1)),
        _sync("1GIKR", "Type-I VSS", "n = 5, t = 1", (1, 0), "O(n log|F|)", "-", "-"),
        SchemeInfo("BCG", ASYNC, "Type-II VSS", "n > 4t", None, "OEC", SQUARE, "O(n^2 log n)", "t"),
        SchemeInfo("PCR", ASYNC, "Type-II VSS", "n > 4t", None, "OEC", SQUARE, "O(n^2 log n)", "t <= d < n - 2t"),
        SchemeInfo("CHP", ASYNC, "Type-II VSS", "n > 4t", None, "OEC", "O(L n^2 log|F|)", "O(n^2 log n)", "t"),
        SchemeInfo("WPS", HYBRID, "WPS", "n > 3t", None, "-", CUBE, CUBE, "t"),
        SchemeInfo("PR", HYBRID, "Type-II VSS", "n > 3t", None, "OEC", "O(n^4 log|F|)", "O(n^4 log|F|)", "t"),
    )
}


def scheme_info(scheme: str) -> SchemeInfo:
    try:
        return CATALOGUE[scheme]
    except KeyError:
        raise ConfigInvalid(f"unknown scheme '{scheme}'; choose from {', '.join(CATALOGUE)}") from None


def family_of(scheme: str) -> str:
    return scheme_info(scheme).family


def catalogue_table() -> pd.DataFrame:
    """All schemes as a DataFrame, in catalogue order"""
    return pd.DataFrame([info.as_row() for info in CATALOGUE.values()])
