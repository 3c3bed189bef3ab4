"""Embedding decisions between symbolic trees.

The finite recursion carries over unchanged: ``T`` embeds into ``S`` iff it
fits at the root of ``S`` or embeds below one of its children.  What
changes is the child-assignment step, which now has to place possibly
infinitely many demand copies into possibly infinitely many capacity
copies.  :func:`fit_feasible` decides that in three parts:

1. A capacity with multiplicity ``w`` is an unbounded host, and so is a
   segment: a demand ``D`` with least family index ``a < l`` can go to any
   of the infinitely many copies ``family(b)``, ``a <= b < l``, so countably
   many such demands can be placed greedily.
2. Every demand compatible with an unbounded host is sent there.  A
   ``w``-demand without such a host is infeasible; the remaining finite
   demands must be transported into the finite capacities.
3. A demand segment ``l_T`` needs every ``family(a)``, ``a < l_T``, hosted
   by the capacity segment or by a ``w``-capacity of large enough family
   capacity; whatever is left over would be infinite.

Because the family is a chain (``family(a) <= family(b)`` for ``a <= b``),
comparisons against segments reduce to the two ordinals computed by
:func:`least_family_index` and :func:`family_capacity`.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from .matching import max_transport
from .ordinal import ZERO, Ordinal, compare, ordinal_max, successor
from .tree import W, Mult, TreeExpr


class MemoTable:
    """Embedding decisions keyed by ``(code T, code S, mode)``.

    Writes are idempotent (the same key always gets the same value), so
    concurrent readers and writers cannot change any observable answer.
    ``limit`` caps the number of stored entries; 0 means unlimited.
    """

    def __init__(self, limit: int = 0):
        self.limit = limit
        self._data: Dict[Tuple[str, str, str], bool] = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value: bool) -> None:
        if self.limit and len(self._data) >= self.limit:
            return
        with self._lock:
            self._data.setdefault(key, value)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)


def _env_limit() -> int:
    raw = os.environ.get("TTT_MEMO_LIMIT", "0")
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


MEMO = MemoTable(_env_limit())


@dataclass(frozen=True)
class DemandCapacityInstance:
    """Child-assignment problem between two nodes.

    ``compatible`` holds index pairs ``(i, j)`` with demand ``i`` embeddable
    into capacity ``j``.  ``demand_index[i]`` is the least family index of
    demand ``i`` (tested against ``capacity_segment``) and
    ``capacity_bound[j]`` the family capacity of capacity ``j`` (tested
    against ``demand_segment``).
    """

    demands: Tuple[Mult, ...]
    capacities: Tuple[Mult, ...]
    compatible: FrozenSet[Tuple[int, int]]
    demand_index: Tuple[Optional[Ordinal], ...] = ()
    capacity_bound: Tuple[Ordinal, ...] = ()
    demand_segment: Optional[Ordinal] = None
    capacity_segment: Optional[Ordinal] = None


def fit_feasible(inst: DemandCapacityInstance) -> bool:
    """True iff demand copies inject into compatible capacity copies."""
    unbounded = [j for j, m in enumerate(inst.capacities) if m is W]
    seg = inst.capacity_segment
    leftover = []
    for i, m in enumerate(inst.demands):
        hosted = any((i, j) in inst.compatible for j in unbounded)
        if not hosted and seg is not None and i < len(inst.demand_index):
            idx = inst.demand_index[i]
            hosted = idx is not None and compare(idx, seg) < 0
        if hosted:
            continue
        if m is W:
            return False
        leftover.append(i)

    if inst.demand_segment is not None:
        bounds = [inst.capacity_bound[j] for j in unbounded]
        reach = ordinal_max(bounds + ([seg] if seg is not None else []))
        if compare(reach, inst.demand_segment) < 0:
            return False

    if not leftover:
        return True
    finite = [j for j, m in enumerate(inst.capacities) if m is not W]
    pos = {j: k for k, j in enumerate(finite)}
    row = {i: k for k, i in enumerate(leftover)}
    edges = [(row[i], pos[j]) for i, j in inst.compatible if i in row and j in pos]
    supply = [inst.demands[i] for i in leftover]
    flow = max_transport(supply, [inst.capacities[j] for j in finite], edges)
    return flow == sum(supply)


@lru_cache(maxsize=None)
def least_family_index(d: TreeExpr) -> Ordinal:
    """Least ``a`` with ``d <= family(a)``."""
    if d.is_leaf:
        return ZERO
    explicit = [least_family_index(c) for c, _ in d.children]
    top = ordinal_max(explicit)
    seg = d.segment
    # family(seg) hosts d at its root when every explicit child sits below seg;
    # otherwise the cheapest host is family(top + 1) = node(family(top)^w).
    if seg is not None and (not explicit or compare(top, seg) < 0):
        return seg
    return successor(ordinal_max([top] + ([seg] if seg is not None else [])))


def _unbounded_reach(children: Sequence[Tuple[TreeExpr, Mult]],
                     segment: Optional[Ordinal]) -> Ordinal:
    hosts = [family_capacity(c) for c, m in children if m is W]
    return ordinal_max(hosts + ([segment] if segment is not None else []))


@lru_cache(maxsize=None)
def family_capacity(c: TreeExpr) -> Ordinal:
    """Least upper bound of ``a + 1`` over all ``a`` with ``family(a) <= c``.

    At the root of ``c``, ``family(a)`` fits exactly for ``a <= u``, where
    ``u`` is the largest bound offered by unbounded hosts; below the root
    only finite-multiplicity children can add anything new.
    """
    if c.is_leaf:
        return successor(ZERO)
    at_root = successor(_unbounded_reach(c.children, c.segment))
    below = [family_capacity(x) for x, m in c.children if m is not W]
    return ordinal_max([at_root] + below)


def _instance(t: TreeExpr, s: TreeExpr) -> DemandCapacityInstance:
    compatible = frozenset(
        (i, j)
        for i, (d, _) in enumerate(t.children)
        for j, (c, _) in enumerate(s.children)
        if embeds(d, c)
    )
    return DemandCapacityInstance(
        demands=tuple(m for _, m in t.children),
        capacities=tuple(m for _, m in s.children),
        compatible=compatible,
        demand_index=tuple(least_family_index(d) for d, _ in t.children),
        capacity_bound=tuple(family_capacity(c) for c, _ in s.children),
        demand_segment=t.segment,
        capacity_segment=s.segment,
    )


def fits_at_root(t: TreeExpr, s: TreeExpr, memo: MemoTable = MEMO) -> bool:
    """``t`` embeds into ``s`` with the root of ``t`` sent to the root of ``s``."""
    if t.is_leaf:
        return True
    if s.is_leaf:
        return False
    key = (t.code, s.code, "at-root")
    hit = memo.get(key)
    if hit is not None:
        return hit
    result = fit_feasible(_instance(t, s))
    memo.put(key, result)
    return result


def embeds(t: TreeExpr, s: TreeExpr, memo: MemoTable = MEMO) -> bool:
    """Decide ``t <= s`` for the (possibly infinite) trees denoted."""
    if t.is_leaf:
        return True
    if s.is_leaf:
        return False
    key = (t.code, s.code, "anywhere")
    hit = memo.get(key)
    if hit is not None:
        return hit
    result = (
        fits_at_root(t, s, memo)
        or any(embeds(t, c, memo) for c, _ in s.children)
        or (s.segment is not None
            and compare(least_family_index(t), s.segment) < 0)
    )
    memo.put(key, result)
    return result


def equivalent(t: TreeExpr, s: TreeExpr, memo: MemoTable = MEMO) -> bool:
    """Same topological type: mutual embeddability."""
    return embeds(t, s, memo) and embeds(s, t, memo)


def equivalent_family_index(t: TreeExpr) -> Optional[Ordinal]:
    """The ``a`` with ``family(a)`` equivalent to ``t``, if there is one."""
    a = least_family_index(t)
    return a if compare(a, family_capacity(t)) < 0 else None
