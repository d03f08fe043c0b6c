"""Consistency graphs

Each party keeps an undirected graph over the parties; an edge (j, k) records
that P_j and P_k confirmed each other's cross-values. Edges are only ever
added. Every party counts as adjacent to itself, so closed neighbourhoods are
used throughout.

Usage:
    from vsslab.graphs.consistency import ConsistencyGraph

    G = ConsistencyGraph(n=4)
    G.add_edge(1, 2)
    G.closed_neighbors(1)     # {1, 2}
"""

from typing import Iterable, Optional, Set

import networkx as nx


class ConsistencyGraph:
    """Monotone graph on parties 1..n backed by networkx."""

    def __init__(self, n: int, edges: Iterable = ()):
        self.n = n
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(1, n + 1))
        for j, k in edges:
            self.add_edge(j, k)

    @classmethod
    def complete(cls, n: int) -> "ConsistencyGraph":
        G = cls(n)
        G.graph.add_edges_from(nx.complete_graph(range(1, n + 1)).edges)
        return G

    def _check(self, party: int) -> None:
        if not 1 <= party <= self.n:
            raise ValueError(f"party {party} outside 1..{self.n}")

    def add_edge(self, j: int, k: int) -> bool:
        """Insert (j, k); returns True if the edge is new"""
        self._check(j)
        self._check(k)
        if j == k or self.graph.has_edge(j, k):
            return False
        self.graph.add_edge(j, k)
        return True

    def has_edge(self, j: int, k: int) -> bool:
        return j == k or self.graph.has_edge(j, k)

    @property
    def nodes(self) -> Set[int]:
        return set(self.graph.nodes)

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def closed_neighbors(self, party: int) -> Set[int]:
        return set(self.graph.adj[party]) | {party}

    def degree_within(self, party: int, among: Iterable[int]) -> int:
        """|N[party] ∩ among|, self included when party is in among"""
        return len(self.closed_neighbors(party) & set(among))

    def complement(self, nodes: Optional[Iterable[int]] = None) -> nx.Graph:
        """Simple complement (no self-loops), optionally restricted to nodes"""
        sub = self.graph.subgraph(nodes) if nodes is not None else self.graph
        return nx.complement(sub)

    def copy(self) -> "ConsistencyGraph":
        G = ConsistencyGraph(self.n)
        G.graph.add_edges_from(self.graph.edges)
        return G

    def __repr__(self) -> str:
        return f"ConsistencyGraph(n={self.n}, edges={sorted(tuple(sorted(e)) for e in self.graph.edges)})"
