"""Batched t-sharing of L secrets

One batch carries up to n - 3t secrets q_1(0), ..., q_B(0) in a single F of
degree (n - 2t - 1, t) with F(beta_k, y) = q_k. It is certified exactly like
the d-sharing scheme at d = n - 2t - 1; after that every P_j sends g_j(alpha_i)
to P_i, who recovers its row f_i by OEC over all parties and keeps
f_i(beta_k) = q_k(alpha_i). More than n - 3t secrets run as several batches
side by side, each with its own instance tag.
"""

import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from vsslab.algebra.bivariate import EmbedMode, embed_bivariate
from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly, sample_sharing_poly
from vsslab.avss_async.base import AsyncVssParty, BivariateSharing, feed
from vsslab.avss_async.pcr import EFSharing
from vsslab.codes.oec import OecState
from vsslab.dealer import build_dealings
from vsslab.errors import ConfigBound, FieldTooSmall
from vsslab.netsim.messages import Message, as_value
from vsslab.vss_sync.base import Commitment, shamir_commitment

logger = logging.getLogger(__name__)


def batch_sizes(n: int, t: int, L: int) -> List[int]:
    """Split L secrets into batches of at most n - 3t"""
    size = n - 3 * t
    sizes = [size] * (L // size)
    if L % size:
        sizes.append(L % size)
    return sizes


class RowRecoverySharing(EFSharing):
    """EF-certified sharing whose parties finish by recovering their rows."""

    def __init__(self, host: AsyncVssParty, degrees: Tuple[int, int], tag: Tuple = ()):
        super().__init__(host, degrees, tag)
        self.column: Optional[UniPoly] = None
        self.row_points: Dict[int, int] = {}
        self.row_oec: Optional[OecState] = None

    def on_message(self, sender: int, msg: Message) -> None:
        if msg.msgtype == "row-point":
            if sender not in self.row_points:
                self.row_points[sender] = as_value(msg, 0, self.host.p)
                self._feed_row(sender)
            return
        super().on_message(sender, msg)

    def on_accept(self) -> None:
        host = self.host
        self.row_oec = OecState.start(host.parties, self.l, host.t)
        for j in sorted(self.row_points):
            self._feed_row(j)
        super().on_accept()

    def recovered(self, column: UniPoly) -> None:
        if self.column is not None:
            return
        self.column = column
        host = self.host
        for j in host.parties:
            host.send(j, self._msg("row-point", elems=(column(host.alpha(j)),)))

    def _feed_row(self, j: int) -> None:
        if self.row_oec is None or self.row_oec.done:
            return
        self.row_oec = feed(self.row_oec, j, self.row_points[j], self.host.params)
        if self.row_oec.done:
            logger.debug(f"P{self.host.pid} recovered its row in {self.tag}")
            self.finish(self.row_oec.result)


class Chp(AsyncVssParty):
    scheme_id = "CHP"

    @classmethod
    def check_bounds(cls, n: int, t: int, d: Optional[int] = None, L: Optional[int] = None) -> None:
        super().check_bounds(n, t, d, L)
        if L is not None and L < 1:
            raise ConfigBound(f"CHP needs L >= 1, got {L}")

    @classmethod
    def check_field(cls, params: FieldParams, t: int, L: Optional[int] = None) -> None:
        """The batch needs n - 3t points beta_k besides the alphas"""
        n = params.n
        width = min(L or n - 3 * t, n - 3 * t)
        if params.p <= 2 * n - 3 * t:
            raise FieldTooSmall(f"CHP needs |F| > 2n - 3t = {2 * n - 3 * t}, got p={params.p}")
        if len(params.betas) < width:
            raise FieldTooSmall(f"CHP needs {width} beta points, field params carry {len(params.betas)}")

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.record["batches"] = len(self.instances)

    @property
    def d_max(self) -> int:
        return self.n - 2 * self.t - 1

    @property
    def sizes(self) -> List[int]:
        return batch_sizes(self.n, self.t, self.L)

    @property
    def secret_count(self) -> int:
        return self.L

    @classmethod
    def default_L(cls, n: int, t: int) -> int:
        return n - 3 * t

    def build_instances(self) -> Sequence[BivariateSharing]:
        return [
            RowRecoverySharing(self, (self.d_max, self.t), ("batch", b)) for b in range(len(self.sizes))
        ]

    def secret_vector(self) -> List[int]:
        raw = self.secret if isinstance(self.secret, (list, tuple)) else [self.secret or 0]
        values = [int(s) % self.p for s in raw][: self.L]
        return values + [0] * (self.L - len(values))

    def deal(self) -> None:
        t, p, rng = self.t, self.p, self.rng
        shape = (self.d_max, t)
        betas = self.params.betas
        secrets = self.secret_vector()
        start = 0
        for b, size in enumerate(self.sizes):
            chunk = secrets[start : start + size]
            start += size

            def build(values: Sequence[int]):
                qs = [sample_sharing_poly(s, t, rng, p) for s in values]
                return embed_bivariate(qs, EmbedMode.MULTI_BETA, shape, rng, betas=betas)

            self.instances[("batch", b)].deal(build_dealings(self, build, chunk))

    def share_from(self, results: Mapping[Tuple, UniPoly]) -> List[int]:
        values: List[int] = []
        for b, size in enumerate(self.sizes):
            row = results[("batch", b)]
            values += [row(self.params.beta(k)) for k in range(1, size + 1)]
        return values

    @classmethod
    def committed_value(cls, honest: Mapping[int, "Chp"]) -> Commitment:
        """Per-secret commitments: ([s*_k], [q*_k]); (None, None) if any secret has none"""
        done = {pid: party for pid, party in honest.items() if isinstance(party.share, list)}
        if not done:
            return None, None
        count = next(iter(done.values())).L
        values: List[Any] = []
        polys: List[Any] = []
        for k in range(count):
            view = {pid: _ShareView(party, party.share[k]) for pid, party in done.items()}
            value, poly = shamir_commitment(view)
            if poly is None:
                return None, None
            values.append(value)
            polys.append(poly)
        return values, polys


class _ShareView:
    """One coordinate of a party's share vector, shaped for shamir_commitment"""

    def __init__(self, party: AsyncVssParty, share: int):
        self.params = party.params
        self.t = party.t
        self.share = share
