"""Protocol messages and envelopes

A Message is the typed payload a protocol sends: a msgtype string, structural
metadata (party ids, flags) and a tuple of field elements or polynomials.
An Envelope is a message in flight with its accounting size.

Receivers never trust a payload's shape. as_value / as_poly / poly_list /
value_list read an expected element and fall back to zero (the default
substitution rule) when the element is missing or malformed.

Usage:
    from vsslab.netsim.messages import Message, Phase, as_poly

    msg = Message("poly", elems=(row, col), phase=Phase.DEAL)
    f = as_poly(msg, 0, degree=t, p=p)
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple, Union

from vsslab.algebra.poly import UniPoly

Element = Union[int, UniPoly]


class Kind(str, Enum):
    P2P = "p2p"
    BROADCAST = "broadcast"
    ACAST = "acast"


class Phase(str, Enum):
    """Which part of a protocol produced a message; strategies key on it"""

    DEAL = "deal"
    PAD = "pad"
    PAD_REPORT = "pad-report"
    SHARE = "share"
    REC = "rec"


@dataclass(frozen=True)
class Message:
    msgtype: str
    meta: Tuple[Any, ...] = ()
    elems: Tuple[Element, ...] = ()
    phase: Phase = Phase.SHARE
    instance: Tuple[Any, ...] = ()

    def field_elements(self) -> int:
        """Number of field elements carried"""
        total = 0
        for e in self.elems:
            total += max(len(e.coeffs), 1) if isinstance(e, UniPoly) else 1
        return total

    def id_count(self) -> int:
        """Number of integer metadata entries (party ids, indices, flags)"""
        return _count_ints(self.meta)

    def with_elems(self, elems: Sequence[Element]) -> "Message":
        return replace(self, elems=tuple(elems))


@dataclass(frozen=True)
class AcastFrame:
    """Internal traffic of one reliable-broadcast instance"""

    step: str  # init | echo | ready
    origin: int
    tag: Tuple[Any, ...]
    message: Message

    @property
    def msgtype(self) -> str:
        return f"acast-{self.step}:{self.message.msgtype}"

    @property
    def phase(self) -> Phase:
        return self.message.phase


Payload = Union[Message, AcastFrame]


@dataclass(frozen=True)
class Outgoing:
    """A send request before the engine numbers it"""

    sender: int
    kind: Kind
    receiver: Optional[int]
    payload: Payload


@dataclass(frozen=True)
class Envelope:
    id: int
    kind: Kind
    sender: int
    receiver: Optional[int]
    round: Optional[int]
    payload: Payload
    size_bits: int
    field_elements: int = 0

    @property
    def msgtype(self) -> str:
        return self.payload.msgtype


def _count_ints(meta: Any) -> int:
    if isinstance(meta, bool):
        return 1
    if isinstance(meta, int):
        return 1
    if isinstance(meta, (tuple, list, frozenset, set)):
        return sum(_count_ints(m) for m in meta)
    return 0


def element_bits(p: int) -> int:
    return max(1, math.ceil(math.log2(p)))


def id_bits(n: int) -> int:
    return max(1, math.ceil(math.log2(n + 1)))


def size_of(payload: Payload, p: int, n: int) -> Tuple[int, int]:
    """(size in bits, field elements) of a payload; framing excluded"""
    message = payload.message if isinstance(payload, AcastFrame) else payload
    elements = message.field_elements()
    ids = message.id_count() + (1 if isinstance(payload, AcastFrame) else 0)
    return elements * element_bits(p) + ids * id_bits(n), elements


# Default substitution readers


def as_value(msg: Optional[Message], index: int, p: int) -> int:
    if msg is None or index >= len(msg.elems):
        return 0
    value = msg.elems[index]
    if isinstance(value, bool) or not isinstance(value, int):
        return 0
    return value % p


def as_poly(msg: Optional[Message], index: int, degree: int, p: int) -> UniPoly:
    if msg is None or index >= len(msg.elems):
        return UniPoly.zero(p)
    return coerce_poly(msg.elems[index], degree, p)


def coerce_poly(value: Any, degree: int, p: int) -> UniPoly:
    if isinstance(value, UniPoly) and value.p == p and value.degree <= degree:
        return value
    return UniPoly.zero(p)


def value_list(msg: Optional[Message], count: int, p: int, offset: int = 0) -> List[int]:
    """count values starting at offset, zeros where missing"""
    return [as_value(msg, offset + k, p) for k in range(count)]


def meta_parties(msg: Optional[Message], n: int, index: int = 0) -> List[int]:
    """A tuple of valid party ids stored at meta[index]; [] if malformed"""
    if msg is None or index >= len(msg.meta):
        return []
    raw = msg.meta[index]
    if not isinstance(raw, (tuple, list)):
        return []
    out = []
    for party in raw:
        if isinstance(party, int) and not isinstance(party, bool) and 1 <= party <= n:
            if party not in out:
                out.append(party)
    return out


def meta_flag(msg: Optional[Message], index: int = 0) -> bool:
    if msg is None or index >= len(msg.meta):
        return False
    return msg.meta[index] is True or msg.meta[index] == 1
