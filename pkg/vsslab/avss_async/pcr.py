"""d-sharing AVSS certified by an (E, F) expansion of a star

F has degree (d, t) with F(x, 0) = q for a degree-d q, t <= d < n - 2t.
The dealer keeps every distinct star it finds, grows each into (E, F) after
every graph update and broadcasts (C, D, E, F) for the first pair, in order
of discovery, with |E| >= 3t+1 and |F| >= 3t+1. Parties of F keep their
column; the others recover g_i from the values f_j(alpha_i) of E by OEC. The
share is g_i(0) = q(alpha_i).
"""

import logging
from typing import List, Mapping, Optional, Sequence, Tuple

from vsslab.algebra.bivariate import EmbedMode, embed_bivariate
from vsslab.algebra.poly import UniPoly, sample_sharing_poly
from vsslab.avss_async.base import AsyncVssParty, BivariateSharing
from vsslab.dealer import build_dealings
from vsslab.errors import ConfigBound
from vsslab.graphs.star import EFPair, Star, expand_ef, find_star, is_ef_valid
from vsslab.netsim.messages import Message, meta_parties

logger = logging.getLogger(__name__)

# index of f_j(alpha_i) inside a cross message
ROW_VALUE = 0


def _sorted(parties) -> Tuple[int, ...]:
    return tuple(sorted(parties))


class EFSharing(BivariateSharing):
    certificate_msg = "ef"

    def __init__(self, host: AsyncVssParty, degrees: Tuple[int, int], tag: Tuple = ()):
        super().__init__(host, degrees, tag)
        self.stars: List[Star] = []

    @property
    def d(self) -> int:
        return self.l

    def parse(self, msg: Message) -> Optional[EFPair]:
        n = self.host.n
        C, D, E, F = (meta_parties(msg, n, k) for k in range(4))
        if not (C and D and E and F):
            return None
        return EFPair(frozenset(E), frozenset(F), Star.of(C, D))

    def valid(self, ef: EFPair) -> bool:
        return is_ef_valid(self.G, ef, self.host.n, self.host.t, self.d)

    def search(self) -> None:
        host = self.host
        n, t = host.n, host.t
        star = find_star(self.G, n, t)
        if star is not None and star not in self.stars:
            self.stars.append(star)
            logger.debug(f"P{host.pid} found star #{len(self.stars)}: C={sorted(star.C)}, D={sorted(star.D)}")
        for star in self.stars:
            ef = expand_ef(self.G, star, self.d, t)
            if len(ef.E) >= 3 * t + 1 and len(ef.F) >= 3 * t + 1:
                self.announce((_sorted(star.C), _sorted(star.D), _sorted(ef.E), _sorted(ef.F)))
                return

    def on_accept(self) -> None:
        ef: EFPair = self.accepted
        if self.host.pid in ef.F:
            self.recovered(self.col)
        else:
            self.complete_by_oec(sorted(ef.E), ROW_VALUE)


class Pcr(AsyncVssParty):
    scheme_id = "PCR"

    @classmethod
    def check_bounds(cls, n: int, t: int, d: Optional[int] = None, L: Optional[int] = None) -> None:
        super().check_bounds(n, t, d, L)
        d = t if d is None else d
        if not t <= d < n - 2 * t:
            raise ConfigBound(f"PCR needs t <= d < n - 2t, got d={d}, n={n}, t={t}")

    @property
    def rec_degree(self) -> int:
        return self.d

    def build_instances(self) -> Sequence[BivariateSharing]:
        return [EFSharing(self, (self.d, self.t))]

    def deal(self) -> None:
        d, t, p, rng = self.d, self.t, self.p, self.rng

        def build(s: int):
            return embed_bivariate(sample_sharing_poly(s, d, rng, p), EmbedMode.AT_Y0, (d, t), rng)

        self.instances[()].deal(build_dealings(self, build, self.secret_value))

    def share_from(self, results: Mapping[Tuple, UniPoly]) -> int:
        return results[()](0)
