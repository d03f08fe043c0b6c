"""Exact privacy oracle for small fields

With an honest dealer and a passive adversary the corrupt parties' view of
the sharing phase is a function of the honest parties' randomness. The
oracle compares the view distributions for two secrets exactly:

- "enumerate" replays the sharing phase once per randomness tape, every tape
  of field elements the honest parties can draw, and compares the multisets
  of views. Refused with EnumerationTooLarge above the state limit.
- "linear" uses that honest passive executions are affine in the tape: the
  view is v0 + A * tape. Two uniform affine images are equal iff both
  linear parts span the same space and the offsets differ by a vector of
  that span. The map is evaluated on the zero and unit tapes and affinity is
  verified on random tapes before answering.
- "auto" enumerates when the state count allows it and falls back to the
  linear method otherwise.

Usage:
    from vsslab.harness.privacy import privacy_exhaustive_check

    result = privacy_exhaustive_check("1GIKR", n=5, t=1, p=5, s0=0, s1=1, corrupt_set={2})
    result.verdict    # "Equal"
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Type, Union

from vsslab.adversary.base import Adversary
from vsslab.adversary.schedulers import make_scheduler
from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly
from vsslab.avss_async.base import AsyncVssParty
from vsslab.avss_async.registry import ASYNC_SCHEMES
from vsslab.avss_hybrid.registry import HYBRID_SCHEMES
from vsslab.avss_hybrid.wps import HybridVssParty
from vsslab.codes.reed_solomon import solve_linear
from vsslab.errors import ConfigInvalid, EnumerationTooLarge, NonLinearView
from vsslab.netsim.asynchronous import run_async
from vsslab.netsim.hybrid import run_hybrid
from vsslab.netsim.messages import AcastFrame
from vsslab.netsim.sync import run_sync
from vsslab.netsim.transcript import Transcript
from vsslab.utils.config import CONFIG
from vsslab.utils.rng import CountingRng, RandomSource, SeededRng, TapeRng
from vsslab.vss_sync.registry import SYNC_SCHEMES

logger = logging.getLogger(__name__)

EQUAL = "Equal"
DISTINGUISHABLE = "Distinguishable"

View = Tuple[Any, ...]


@dataclass
class PrivacyResult:
    scheme: str
    corrupt: Tuple[int, ...]
    method: str
    runs: int
    equal: bool
    witness: Any = None

    @property
    def verdict(self) -> str:
        return EQUAL if self.equal else DISTINGUISHABLE

    def __str__(self) -> str:
        text = f"{self.scheme} corrupt={list(self.corrupt)}: {self.verdict} ({self.method}, {self.runs} runs)"
        if self.witness is not None:
            text += f"\n  witness: {self.witness}"
        return text


def resolve_scheme(scheme: Union[str, Type]) -> Type:
    if not isinstance(scheme, str):
        return scheme
    for registry in (SYNC_SCHEMES, ASYNC_SCHEMES, HYBRID_SCHEMES):
        if scheme in registry:
            return registry[scheme]
    raise ConfigInvalid(f"unknown scheme '{scheme}'")


class SharingView:
    """Replays one scheme's sharing phase and extracts the corrupt parties' view."""

    def __init__(self, cls: Type, n: int, t: int, p: int, corrupt: Iterable[int], dealer: int = 1):
        self.cls = cls
        self.params = FieldParams.default(n, p, self.extra_points(cls, n, t))
        self.t = t
        self.dealer = dealer
        self.corrupt = tuple(sorted(corrupt))
        self.honest = [pid for pid in self.params.parties if pid not in self.corrupt]
        cls.check_bounds(n, t)
        if dealer in self.corrupt:
            raise ConfigInvalid("privacy is defined for an honest dealer; remove the dealer from the corrupt set")

    @staticmethod
    def extra_points(cls: Type, n: int, t: int) -> int:
        """Beta points for batched asynchronous schemes"""
        if issubclass(cls, AsyncVssParty) and cls.default_L(n, t) > 1:
            return cls.default_L(n, t)
        return 0

    def transcript(self, secret: int, rngs: Dict[int, RandomSource]) -> Transcript:
        params, t = self.params, self.t
        parties = {
            pid: self.cls(pid, params, t, rngs[pid], dealer=self.dealer, secret=secret if pid == self.dealer else None)
            for pid in params.parties
        }
        adversary = Adversary(self.corrupt)
        if issubclass(self.cls, HybridVssParty):
            return run_hybrid(parties, adversary, make_scheduler("fifo"), params)
        if issubclass(self.cls, AsyncVssParty):
            return run_async(parties, adversary, make_scheduler("fifo"), params)
        return run_sync(parties, adversary, "share", params)

    def corrupt_rngs(self) -> Dict[int, RandomSource]:
        return {pid: SeededRng(0, ("corrupt", pid)) for pid in self.corrupt}

    def view(self, secret: int, honest_rngs: Dict[int, RandomSource]) -> View:
        rngs = {**self.corrupt_rngs(), **honest_rngs}
        transcript = self.transcript(secret, rngs)
        return tuple(
            (c, env.sender, env.kind.value, env.payload) for c in self.corrupt for env in transcript.delivered_to(c)
        )

    def draws(self, secret: int) -> Dict[int, int]:
        """Number of random elements each honest party draws"""
        counters = {pid: CountingRng(seed=pid) for pid in self.honest}
        self.view(secret, counters)
        return {pid: c.draws for pid, c in counters.items()}

    def tape_view(self, secret: int, tape: Sequence[int], layout: Dict[int, int]) -> View:
        rngs: Dict[int, RandomSource] = {}
        start = 0
        for pid in self.honest:
            rngs[pid] = TapeRng(tape[start : start + layout[pid]])
            start += layout[pid]
        return self.view(secret, rngs)


# linear method helpers


def flatten(view: View, p: int, width: int) -> Tuple[Tuple, List[int]]:
    """(shape, field elements) of a view; polynomials are padded to width coefficients"""
    shape: List[Tuple] = []
    values: List[int] = []
    for party, sender, kind, payload in view:
        if isinstance(payload, AcastFrame):
            head = (party, sender, kind, payload.step, payload.origin, payload.tag)
            msg = payload.message
        else:
            head = (party, sender, kind)
            msg = payload
        cells = []
        for element in msg.elems:
            if isinstance(element, UniPoly):
                if len(element.coeffs) > width:
                    raise NonLinearView(f"polynomial of degree {element.degree} in a view of width {width}")
                cells.append("poly")
                values += list(element.coeffs) + [0] * (width - len(element.coeffs))
            else:
                cells.append("int")
                values.append(int(element) % p)
        shape.append(head + (msg.msgtype, msg.instance, msg.meta, msg.phase.value, tuple(cells)))
    return tuple(shape), values


@dataclass
class AffineView:
    shape: Tuple
    offset: List[int]
    columns: List[List[int]]  # one per tape position

    def rows(self) -> List[List[int]]:
        return [[col[i] for col in self.columns] for i in range(len(self.offset))]

    def spans(self, vector: List[int], p: int) -> bool:
        return solve_linear(self.rows(), vector, p) is not None


def affine_view(
    sharing: SharingView,
    secret: int,
    layout: Dict[int, int],
    checks: int = 8,
    seed: int = 0,
) -> AffineView:
    """
    Read the view as an affine map of the tape.

    Raises:
        NonLinearView: if the view's shape changes or a random tape is off the map
    """
    p = sharing.params.p
    width = sharing.params.n + 1
    size = sum(layout.values())

    def view_at(tape: Sequence[int]) -> Tuple[Tuple, List[int]]:
        return flatten(sharing.tape_view(secret, tape, layout), p, width)

    shape, offset = view_at([0] * size)
    columns = []
    for k in range(size):
        unit = [0] * size
        unit[k] = 1
        unit_shape, values = view_at(unit)
        if unit_shape != shape:
            raise NonLinearView(f"view shape changes with tape position {k}")
        columns.append([(v - o) % p for v, o in zip(values, offset)])

    rng = SeededRng(seed, ("affinity", secret))
    for _ in range(checks):
        tape = [rng.element(p) for _ in range(size)]
        tape_shape, values = view_at(tape)
        predicted = [(o + sum(c[i] * x for c, x in zip(columns, tape))) % p for i, o in enumerate(offset)]
        if tape_shape != shape or values != predicted:
            raise NonLinearView(f"view is not affine in the tape (checked tape {tape})")
    return AffineView(shape, offset, columns)


def compare_affine(v0: AffineView, v1: AffineView, p: int) -> Tuple[bool, Any]:
    if v0.shape != v1.shape:
        return False, "views have different shapes"
    for k, col in enumerate(v1.columns):
        if not v0.spans(col, p):
            return False, f"tape position {k} moves the second view outside the first view's span"
    for k, col in enumerate(v0.columns):
        if not v1.spans(col, p):
            return False, f"tape position {k} moves the first view outside the second view's span"
    difference = [(b - a) % p for a, b in zip(v0.offset, v1.offset)]
    if not v0.spans(difference, p):
        return False, f"offset difference {difference} is outside the span"
    return True, None


# the oracle


def privacy_exhaustive_check(
    scheme: Union[str, Type],
    n: int,
    t: int,
    p: int,
    s0: Any,
    s1: Any,
    corrupt_set: Iterable[int],
    method: str = "enumerate",
    max_states: Optional[int] = None,
    dealer: int = 1,
) -> PrivacyResult:
    """
    Compare the corrupt parties' view distributions for secrets s0 and s1.

    Args:
        scheme: Scheme id, or a party class with the scheme interface
        n, t, p: Parties, threshold and field modulus
        s0, s1: The two secrets (lists of L secrets for CHP)
        corrupt_set: Passive corrupt parties (the dealer stays honest)
        method: "enumerate", "linear" or "auto"
        max_states: Enumeration limit (default: harness.privacy_max_states)
        dealer: The dealer's id

    Returns:
        PrivacyResult with verdict Equal or Distinguishable and a witness

    Raises:
        EnumerationTooLarge: if enumeration needs more than max_states runs
        NonLinearView: if the linear method finds the view is not affine
    """
    if method not in ("enumerate", "linear", "auto"):
        raise ConfigInvalid(f"unknown privacy method '{method}'")
    cls = resolve_scheme(scheme)
    name = scheme if isinstance(scheme, str) else getattr(cls, "scheme_id", "") or cls.__name__
    sharing = SharingView(cls, n, t, p, corrupt_set, dealer)
    max_states = max_states or CONFIG["harness"]["privacy_max_states"]

    layout = sharing.draws(s0)
    if sharing.draws(s1) != layout:
        raise NonLinearView(f"honest parties draw {layout} for one secret and differently for the other")
    size = sum(layout.values())
    states = p**size
    logger.info(f"{name}: {size} random elements, {states} tapes per secret")

    if method == "auto":
        method = "enumerate" if states <= max_states else "linear"

    if method == "enumerate":
        if states > max_states:
            raise EnumerationTooLarge(f"{states} tapes per secret exceed the limit of {max_states}")
        counts = []
        for secret in (s0, s1):
            counter: Counter = Counter()
            for tape in itertools.product(range(p), repeat=size):
                counter[sharing.tape_view(secret, tape, layout)] += 1
            counts.append(counter)
        equal = counts[0] == counts[1]
        witness = None
        if not equal:
            view = next(v for v in counts[0].keys() | counts[1].keys() if counts[0][v] != counts[1][v])
            witness = {"view": view, "count_s0": counts[0][view], "count_s1": counts[1][view]}
        return PrivacyResult(name, sharing.corrupt, "enumerate", 2 * states, equal, witness)

    v0 = affine_view(sharing, s0, layout)
    v1 = affine_view(sharing, s1, layout)
    equal, witness = compare_affine(v0, v1, p)
    return PrivacyResult(name, sharing.corrupt, "linear", 2 * (size + 9), equal, witness)


def privacy_all_singletons(
    scheme: Union[str, Type],
    n: int,
    t: int,
    p: int,
    s0: Any,
    s1: Any,
    method: str = "auto",
    max_states: Optional[int] = None,
    dealer: int = 1,
) -> List[PrivacyResult]:
    """One check per single corrupt non-dealer party"""
    return [
        privacy_exhaustive_check(scheme, n, t, p, s0, s1, {c}, method=method, max_states=max_states, dealer=dealer)
        for c in range(1, n + 1)
        if c != dealer
    ]
