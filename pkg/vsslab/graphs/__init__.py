"""Consistency graphs, star certificates and pruning"""

from vsslab.graphs.consistency import ConsistencyGraph
from vsslab.graphs.star import EFPair, Star, expand_ef, find_star, is_star, prune_low_degree

__all__ = ["ConsistencyGraph", "EFPair", "Star", "expand_ef", "find_star", "is_star", "prune_low_degree"]
