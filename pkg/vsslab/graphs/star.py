"""Star certificates and graph pruning

An (n, t)-star (C, D) in a consistency graph has C ⊆ D, |C| >= n - 2t,
|D| >= n - t and every party of C adjacent to every party of D. Whenever the
graph contains a clique of n - t parties, find_star returns a star in
polynomial time:

1. take a maximum matching M of the complement graph;
2. C = parties neither matched nor the third corner of a complement
   triangle over a matched edge;
3. D = parties with no complement edge into C.

expand_ef grows a star into the (E, F) pair used by d-sharing AVSS, and
prune_low_degree is the fixpoint pruning of weak-secret-sharing
reconstruction.

Usage:
    from vsslab.graphs.star import find_star, is_star

    star = find_star(G, n=5, t=1)
    if star is not None:
        assert is_star(G, star, n=5, t=1)
"""

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Set

import networkx as nx

from vsslab.graphs.consistency import ConsistencyGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Star:
    C: FrozenSet[int]
    D: FrozenSet[int]

    @classmethod
    def of(cls, C: Iterable[int], D: Iterable[int]) -> "Star":
        return cls(frozenset(C), frozenset(D))


@dataclass(frozen=True)
class EFPair:
    E: FrozenSet[int]
    F: FrozenSet[int]
    star: Star


def is_star(G: ConsistencyGraph, star: Star, n: int, t: int) -> bool:
    """Check the (n, t)-star definition in G"""
    C, D = star.C, star.D
    if not C <= D or len(C) < n - 2 * t or len(D) < n - t:
        return False
    if not D <= G.nodes:
        return False
    return all(G.has_edge(c, d) for c in C for d in D)


def find_star(G: ConsistencyGraph, n: int, t: int) -> Optional[Star]:
    """
    Find an (n, t)-star in G.

    Args:
        G: Consistency graph over parties 1..n
        n: Number of parties
        t: Corruption threshold

    Returns:
        A valid Star, or None. A star is always found when G contains a
        clique of size n - t.
    """
    complement = G.complement()
    matching = nx.max_weight_matching(complement, maxcardinality=True)
    matched: Set[int] = {v for edge in matching for v in edge}

    triangle_heads = set()
    for u, w in matching:
        triangle_heads |= set(complement.adj[u]) & set(complement.adj[w])
    triangle_heads -= matched

    C = G.nodes - matched - triangle_heads
    D = {v for v in G.nodes if not set(complement.adj[v]) & C}

    star = Star.of(C, D)
    if is_star(G, star, n, t):
        return star
    logger.debug(f"no star: |C|={len(C)}, |D|={len(D)}, n={n}, t={t}")
    return None


def brute_force_star(G: ConsistencyGraph, n: int, t: int) -> Optional[Star]:
    """
    Exhaustive reference search.

    A star exists iff some clique C of size >= n - 2t has >= n - t parties in
    the common closed neighbourhood of its members; that neighbourhood is the
    largest D for C.
    """
    nodes = sorted(G.nodes)
    for size in range(len(nodes), max(n - 2 * t, 0) - 1, -1):
        for C in itertools.combinations(nodes, size):
            common = set(nodes)
            for c in C:
                common &= G.closed_neighbors(c)
            if set(C) <= common and len(common) >= n - t:
                return Star.of(C, common)
    return None


def has_clique(G: ConsistencyGraph, size: int) -> bool:
    """Whether G has a clique of at least size parties"""
    if size <= 1:
        return size <= 0 or bool(G.nodes)
    return any(len(clique) >= size for clique in nx.find_cliques(G.graph))


def expand_ef(G: ConsistencyGraph, star: Star, d: int, t: int) -> EFPair:
    """
    Expand a star into (E, F).

    F = D plus every party with >= 2t+1 neighbours in C;
    E = every party with >= d+t+1 neighbours in F.

    Args:
        G: Consistency graph
        star: A star valid in G
        d: Sharing degree
        t: Corruption threshold

    Returns:
        EFPair; recomputing on a larger graph never shrinks E or F
    """
    F = set(star.D)
    F |= {j for j in G.nodes if G.degree_within(j, star.C) >= 2 * t + 1}
    E = {j for j in G.nodes if G.degree_within(j, F) >= d + t + 1}
    return EFPair(frozenset(E), frozenset(F), star)


def is_ef_valid(G: ConsistencyGraph, ef: EFPair, n: int, t: int, d: int) -> bool:
    """Acceptance test for a (C, D, E, F) certificate in G"""
    if len(ef.E) < 3 * t + 1 or len(ef.F) < 3 * t + 1:
        return False
    if not ef.E <= G.nodes or not ef.F <= G.nodes:
        return False
    if not is_star(G, ef.star, n, t):
        return False
    if any(G.degree_within(j, ef.star.C) < 2 * t + 1 for j in ef.F):
        return False
    return all(G.degree_within(j, ef.F) >= d + t + 1 for j in ef.E)


def prune_low_degree(
    G: ConsistencyGraph, threshold: int, nodes: Optional[Iterable[int]] = None
) -> Set[int]:
    """
    Repeatedly drop parties with fewer than threshold neighbours (self
    included) among the survivors.

    Args:
        G: Consistency graph
        threshold: Minimum closed-neighbourhood size, usually n - t
        nodes: Starting party set (default: all parties)

    Returns:
        The surviving set; independent of removal order
    """
    alive = set(G.nodes if nodes is None else nodes)
    changed = True
    while changed:
        changed = False
        for party in sorted(alive):
            if G.degree_within(party, alive) < threshold:
                alive.discard(party)
                changed = True
    return alive
