"""Dealer-side state shared by every protocol family

A corrupt dealer whose strategy splits the dealing builds a second dealing for
a shifted secret; receivers are told apart by the strategy's dealing_index.
Sub-protocols with their own dealer (batches, embedded instances) use
build_dealings / pick_dealing directly.
"""

from typing import Any, Callable, List, Optional, Sequence, Union

Secret = Union[int, Sequence[int]]


def shifted(secret: Secret, p: int) -> Secret:
    """secret + 1, componentwise for a secret vector"""
    if isinstance(secret, (list, tuple)):
        return [(int(s) + 1) % p for s in secret]
    return (int(secret) + 1) % p


def build_dealings(host: Any, build: Callable[[Any], Any], secret: Secret) -> List[Any]:
    """[build(secret)], plus build(secret + 1) when host's strategy splits the dealing"""
    dealings = [build(secret)]
    if host.splits_dealing():
        dealings.append(build(shifted(secret, host.p)))
    return dealings


def pick_dealing(host: Any, dealings: Sequence[Any], receiver: int) -> Any:
    k = host.dealing_index(receiver)
    return dealings[k] if 0 <= k < len(dealings) else dealings[0]


class DealerRole:
    """Mixin for parties that may act as the dealer; needs pid, p, dealer, secret."""

    dealings: List[Any]

    @property
    def is_dealer(self) -> bool:
        return self.pid == self.dealer

    @property
    def secret_value(self) -> int:
        return int(self.secret or 0) % self.p

    def prepare_dealings(self, build: Callable[[Any], Any], secret: Optional[Secret] = None) -> None:
        """
        Build the dealer's material for its secret.

        A corrupt dealer whose strategy splits the dealing also builds a
        second one for secret + 1; dealing_for() then decides per receiver.
        """
        self.dealings = build_dealings(self, build, self.secret_value if secret is None else secret)

    def dealing_for(self, receiver: int) -> Any:
        return pick_dealing(self, self.dealings, receiver)

    @property
    def F(self) -> Any:
        """The dealer's primary dealing, used for public resolutions"""
        return self.dealings[0]
