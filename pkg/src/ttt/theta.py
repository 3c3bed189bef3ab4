"""Node invariants and the lifted orderings used to cross-check embeddings.

For a node ``t`` of ``T``, the gamma value records how many successors ``s``
have ``up(s)`` equivalent to ``T`` and which other subtrees hang below ``t``.
Theta collects the gamma values of all nodes.  Both live in multisets over
equivalence-class representatives with counts in ``{1, ..., w}``, compared
by injective domination; pairs are ordered componentwise.

Nodes inside segment copies are not enumerated.  A node whose upward closure
is ``family(b)`` has gamma ``(0, {})`` if ``b = 0``, ``(0, {family(c)^w})``
if ``b = c + 1`` and ``(0, {}; seg=b)`` at limits; inside a segment each of
these occurs infinitely often.  Theta records them as a *family block*
``fam<L``: the values for every ``b < L``, each with count ``w``.  These
values form a chain in ``b``, so the block plugs into the same feasibility
check as a segment of children does.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .dsl import print_tree
from .ordinal import ZERO, Ordinal, compare, format_ordinal, ordinal_max, successor
from .symbolic import (
    DemandCapacityInstance,
    embeds,
    equivalent,
    equivalent_family_index,
    family_capacity,
    fit_feasible,
    least_family_index,
)
from .tree import W, Mult, TreeExpr, height, segment_bounds, suffixes

Count = Mult  # 0 allowed for equiv_count only


def _mult_key(m) -> str:
    return str(m)


@dataclass(frozen=True)
class GammaValue:
    equiv_count: Count
    others: Tuple[Tuple[TreeExpr, Mult], ...] = ()
    segment: Optional[Ordinal] = None

    @property
    def key(self):
        return (
            _mult_key(self.equiv_count),
            tuple((c.code, _mult_key(m)) for c, m in self.others),
            None if self.segment is None else format_ordinal(self.segment),
        )

    def __eq__(self, other):
        return isinstance(other, GammaValue) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        parts = [print_tree(c) + ("" if m == 1 else f"^{m}") for c, m in self.others]
        inner = ",".join(parts)
        if self.segment is not None:
            inner += f";seg={format_ordinal(self.segment)}"
        return f"({self.equiv_count},{{{inner}}})"


@dataclass(frozen=True)
class ThetaValue:
    entries: Tuple[Tuple[GammaValue, Mult], ...]
    family_block: Optional[Ordinal] = None

    def __str__(self):
        parts = [f"{g}:{m}" for g, m in self.entries]
        if self.family_block is not None:
            parts.append(f"fam<{format_ordinal(self.family_block)}:w")
        return "{" + ", ".join(parts) + "}"


class NotASuffix(ValueError):
    pass


def _class_rep_key(t: TreeExpr):
    return (len(t.code), t.code)


def gamma(T: TreeExpr, s: TreeExpr) -> GammaValue:
    """Gamma of a node of ``T`` whose upward closure is ``s``."""
    if s not in suffixes(T):
        raise NotASuffix(f"{print_tree(s)} is not an upward closure of {print_tree(T)}")
    return _gamma(T, s)


@lru_cache(maxsize=None)
def _gamma(T: TreeExpr, s: TreeExpr) -> GammaValue:
    same: Count = 0
    classes: List[List] = []  # [members, count]
    for c, m in s.children:
        if equivalent(c, T):
            same = same + m
            continue
        for cls in classes:
            if equivalent(cls[0][0], c):
                cls[0].append(c)
                cls[1] = cls[1] + m
                break
        else:
            classes.append([[c], m])
    if s.segment is not None:
        idx = equivalent_family_index(T)
        if idx is not None and compare(idx, s.segment) < 0:
            # unreachable on well-founded expressions: T would contain
            # family(s.segment) and be equivalent to a strictly smaller family
            raise RuntimeError(f"segment copy equivalent to {print_tree(T)}")
    others = sorted(
        ((min(members, key=_class_rep_key), count) for members, count in classes),
        key=lambda p: p[0].code,
    )
    return GammaValue(same, tuple(others), s.segment)


@lru_cache(maxsize=None)
def theta(T: TreeExpr) -> ThetaValue:
    counts: Dict[TreeExpr, Mult] = {T: 1}
    order = sorted(suffixes(T), key=lambda e: (height(e)._key, e.code), reverse=True)
    for s in order:
        for c, m in s.children:
            counts[c] = counts.get(c, 0) + counts[s] * m
    merged: Dict[GammaValue, Mult] = {}
    for s in order:
        g = _gamma(T, s)
        merged[g] = merged.get(g, 0) + counts[s]
    entries = tuple(sorted(merged.items(), key=lambda p: repr(p[0].key)))
    bounds = segment_bounds(T)
    block = ordinal_max(bounds) if bounds else None
    return ThetaValue(entries, block)


def format_theta(v: ThetaValue) -> str:
    return str(v)


def _count_leq(a: Count, b: Count) -> bool:
    if b is W:
        return True
    return a is not W and a <= b


@lru_cache(maxsize=None)
def leq_gamma(g: GammaValue, h: GammaValue) -> bool:
    if not _count_leq(g.equiv_count, h.equiv_count):
        return False
    inst = DemandCapacityInstance(
        demands=tuple(m for _, m in g.others),
        capacities=tuple(m for _, m in h.others),
        compatible=frozenset(
            (i, j)
            for i, (d, _) in enumerate(g.others)
            for j, (c, _) in enumerate(h.others)
            if embeds(d, c)
        ),
        demand_index=tuple(least_family_index(d) for d, _ in g.others),
        capacity_bound=tuple(family_capacity(c) for c, _ in h.others),
        demand_segment=g.segment,
        capacity_segment=h.segment,
    )
    return fit_feasible(inst)


def gamma_family_index(g: GammaValue) -> Optional[Ordinal]:
    """Least ``b`` whose family-node gamma dominates ``g`` (None if none)."""
    if g.equiv_count != 0:
        return None
    if not g.others and g.segment is None:
        return ZERO
    return least_family_index(TreeExpr(g.others, g.segment))


def gamma_family_reach(g: GammaValue) -> Ordinal:
    """Least upper bound of ``b + 1`` over family-node gammas below ``g``."""
    hosts = [family_capacity(c) for c, m in g.others if m is W]
    if g.segment is not None:
        hosts.append(g.segment)
    return successor(ordinal_max(hosts))


def leq_theta(a: ThetaValue, b: ThetaValue) -> bool:
    inst = DemandCapacityInstance(
        demands=tuple(m for _, m in a.entries),
        capacities=tuple(m for _, m in b.entries),
        compatible=frozenset(
            (i, j)
            for i, (g, _) in enumerate(a.entries)
            for j, (h, _) in enumerate(b.entries)
            if leq_gamma(g, h)
        ),
        demand_index=tuple(gamma_family_index(g) for g, _ in a.entries),
        capacity_bound=tuple(gamma_family_reach(h) for h, _ in b.entries),
        demand_segment=a.family_block,
        capacity_segment=b.family_block,
    )
    return fit_feasible(inst)


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not-applicable"


def lemma_soundness_check(T: TreeExpr, S: TreeExpr) -> Verdict:
    """Theta domination must imply embedding; VIOLATED means an engine bug."""
    if not leq_theta(theta(T), theta(S)):
        return Verdict.NOT_APPLICABLE
    return Verdict.HOLDS if embeds(T, S) else Verdict.VIOLATED
