"""Ordinal ranks of symbolic trees.

``schmidt_rank`` is the finite-deletion rank of rayless graphs: finite trees
have rank 0, and a tree has rank ``a`` when one finite vertex set splits it
into pieces of rank below ``a``.  On expressions it unfolds to a recursion
over the root's children:

* ``C^m`` with ``m`` finite contributes ``rank(C)``: the root plus a
  witness set in each of the ``m`` copies is still finite, and ``C`` itself
  is a subgraph;
* ``C^w`` contributes ``rank(C) + 1``: deleting the root suffices, while any
  finite set misses infinitely many copies, which keeps a component of rank
  at least ``rank(C)``;
* a segment ``l`` contributes ``l``: deleting the root leaves the family
  trees of rank ``a < l``, and a finite set misses almost all of them.

Each clause is a lower bound by monotonicity under minors (the tree
contains ``C``, ``node(C^w)`` and ``family(l)`` respectively) and the
maximum is an upper bound by the witness sets above.

``nw_rank`` assigns 0 when every upward closure is equivalent to the tree,
and otherwise the least ``a`` bounding the ranks of all non-equivalent
upward closures strictly.  Equivalence is always decided by the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

from .ordinal import ZERO, Ordinal, compare, format_ordinal, ordinal_max, successor
from .symbolic import equivalent, equivalent_family_index
from .tree import W, TreeExpr, segment_bounds, size, suffixes


@dataclass(frozen=True)
class RankResult:
    value: Ordinal
    trace: Tuple[Tuple[str, Ordinal], ...] = field(default=(), compare=False)

    def __str__(self):
        return format_ordinal(self.value)


@lru_cache(maxsize=None)
def _schmidt(t: TreeExpr) -> RankResult:
    if size(t) is not W:
        return RankResult(ZERO)
    trace: List[Tuple[str, Ordinal]] = []
    for c, m in t.children:
        h = _schmidt(c).value
        trace.append((c.code, successor(h) if m is W else h))
    if t.segment is not None:
        trace.append((f"seg<{format_ordinal(t.segment)}", t.segment))
    return RankResult(ordinal_max(v for _, v in trace), tuple(trace))


def schmidt_rank(t: TreeExpr) -> RankResult:
    return _schmidt(t)


@lru_cache(maxsize=None)
def _nw(t: TreeExpr) -> RankResult:
    trace: List[Tuple[str, Ordinal]] = []
    for s in sorted(suffixes(t), key=lambda e: e.code):
        if s == t or equivalent(s, t):
            continue
        trace.append((s.code, successor(_nw(s).value)))
    same = equivalent_family_index(t)
    for bound in sorted(segment_bounds(t), key=lambda o: o._key):
        # family(a) has rank a (checked separately on the ordinal grid); the
        # supremum of a + 1 over a < bound is bound itself, and dropping the
        # single index equivalent to t (if any) leaves that supremum unchanged.
        if same is not None and compare(same, bound) < 0:
            note = f"fam<{format_ordinal(bound)}!{format_ordinal(same)}"
        else:
            note = f"fam<{format_ordinal(bound)}"
        trace.append((note, bound))
    return RankResult(ordinal_max(v for _, v in trace), tuple(trace))


def nw_rank(t: TreeExpr) -> RankResult:
    return _nw(t)


def rank_pair(t: TreeExpr) -> Tuple[Ordinal, Ordinal]:
    return schmidt_rank(t).value, nw_rank(t).value


def clear_caches() -> None:
    """Drop memoised ranks (used for cold-start timing)."""
    _schmidt.cache_clear()
    _nw.cache_clear()
