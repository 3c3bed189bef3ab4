"""Topological types of rayless rooted trees.

Symbolic trees with countable multiplicities and ordinal-indexed family
segments, tree-order-preserving topological-minor embedding between them,
and two ordinal ranks.
"""

__version__ = "0.1.0"

from .ordinal import Ordinal, compare, fundamental_sequence, is_limit, nat, successor
from .tree import W, FiniteTree, TreeExpr, canonicalize, family, leaf, node, truncate
from .finite import canonical_code, embed_rooted, embed_rooted_oracle, embed_unrooted
from .symbolic import embeds, equivalent, family_capacity, fit_feasible, least_family_index
from .ranks import nw_rank, schmidt_rank
from .theta import gamma, lemma_soundness_check, leq_gamma, leq_theta, theta
from .dsl import parse_ordinal, parse_tree, print_tree, to_dot

__all__ = [
    "Ordinal", "compare", "fundamental_sequence", "is_limit", "nat", "successor",
    "W", "FiniteTree", "TreeExpr", "canonicalize", "family", "leaf", "node", "truncate",
    "canonical_code", "embed_rooted", "embed_rooted_oracle", "embed_unrooted",
    "embeds", "equivalent", "family_capacity", "fit_feasible", "least_family_index",
    "nw_rank", "schmidt_rank",
    "gamma", "lemma_soundness_check", "leq_gamma", "leq_theta", "theta",
    "parse_ordinal", "parse_tree", "print_tree", "to_dot",
]
