"""t-sharing AVSS certified by a star

F has degree (t, t) with F(0, y) = q. The dealer broadcasts the first star
(C, D) it finds in its consistency graph. Parties of C keep their row; every
other party recovers f_i from the values g_j(alpha_i) of D by OEC. The share
is f_i(0) = q(alpha_i).
"""

from typing import Mapping, Optional, Sequence, Tuple

from vsslab.algebra.bivariate import EmbedMode, embed_bivariate
from vsslab.algebra.poly import UniPoly, sample_sharing_poly
from vsslab.avss_async.base import AsyncVssParty, BivariateSharing
from vsslab.dealer import build_dealings
from vsslab.graphs.star import Star, find_star, is_star
from vsslab.netsim.messages import Message, meta_parties

# index of g_j(alpha_i) inside a cross message
COL_VALUE = 1


class StarSharing(BivariateSharing):
    certificate_msg = "star"

    def parse(self, msg: Message) -> Optional[Star]:
        n = self.host.n
        C, D = meta_parties(msg, n, 0), meta_parties(msg, n, 1)
        return Star.of(C, D) if C and D else None

    def valid(self, star: Star) -> bool:
        return is_star(self.G, star, self.host.n, self.host.t)

    def search(self) -> None:
        star = find_star(self.G, self.host.n, self.host.t)
        if star is not None:
            self.announce((tuple(sorted(star.C)), tuple(sorted(star.D))))

    def on_accept(self) -> None:
        star: Star = self.accepted
        if self.host.pid in star.C:
            self.finish(self.row)
        else:
            self.complete_by_oec(sorted(star.D), COL_VALUE)


class Bcg(AsyncVssParty):
    scheme_id = "BCG"

    def build_instances(self) -> Sequence[BivariateSharing]:
        return [StarSharing(self, (self.t, self.t))]

    def deal(self) -> None:
        t, p, rng = self.t, self.p, self.rng

        def build(s: int):
            return embed_bivariate(sample_sharing_poly(s, t, rng, p), EmbedMode.AT_X0, (t, t), rng)

        self.instances[()].deal(build_dealings(self, build, self.secret_value))

    def share_from(self, results: Mapping[Tuple, UniPoly]) -> int:
        return results[()](0)
