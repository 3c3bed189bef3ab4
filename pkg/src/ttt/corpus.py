"""Enumeration and seeded sampling of canonical tree expressions."""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator, List, Sequence, Tuple

from .ordinal import OMEGA, Ordinal, nat, omega_power
from .tree import LEAF, W, FiniteTree, Mult, TreeExpr, expr_size, family, node

DEFAULT_MULTS: Tuple[Mult, ...] = (1, 2, W)


def family_grid() -> List[Ordinal]:
    """0, 1, 2, 3, w, w+1, w*2, w^2."""
    w1 = Ordinal(OMEGA.terms + nat(1).terms)
    w2 = omega_power(nat(1), 2)
    return [nat(0), nat(1), nat(2), nat(3), OMEGA, w1, w2, omega_power(nat(2))]


class CorpusBudgetExceeded(ValueError):
    pass


MAX_ENUM_SIZE = 6


def _subsets(pool: Sequence[Tuple[TreeExpr, int]], budget: int, start: int
             ) -> Iterator[Tuple[TreeExpr, ...]]:
    if budget == 0:
        yield ()
        return
    for k in range(start, len(pool)):
        shape, sz = pool[k]
        if sz <= budget:
            for rest in _subsets(pool, budget - sz, k + 1):
                yield (shape,) + rest


def enumerate_shapes(max_size: int, mults: Sequence[Mult] = DEFAULT_MULTS,
                     segments: Sequence[Ordinal] = ()) -> List[TreeExpr]:
    """All canonical expressions with at most ``max_size`` constructors.

    Children of a node are distinct shapes, each with a multiplicity from
    ``mults``; a node may additionally carry one segment from ``segments``
    (counting as one constructor).  Order: by size, then canonical code.
    """
    if max_size > MAX_ENUM_SIZE:
        raise CorpusBudgetExceeded(f"max_size={max_size} exceeds {MAX_ENUM_SIZE}")
    if max_size < 1:
        return []
    by_size: List[List[TreeExpr]] = [[], [LEAF]]
    for s in range(2, max_size + 1):
        pool = [(t, k) for k in range(1, s) for t in by_size[k]]
        found = set()
        for seg in (None,) + tuple(segments):
            budget = s - 1 - (seg is not None)
            if budget == 0 and seg is not None:
                found.add(node(segment=seg))
                continue
            for shapes in _subsets(pool, budget, 0):
                if not shapes:
                    continue
                for ms in product(mults, repeat=len(shapes)):
                    found.add(node(*zip(shapes, ms), segment=seg))
        by_size.append(sorted((t for t in found if expr_size(t) == s),
                              key=lambda t: t.code))
    return [t for level in by_size for t in level]


def random_corpus(count: int, seed: int = 0, max_size: int = 4,
                  mults: Sequence[Mult] = DEFAULT_MULTS,
                  segments: Sequence[Ordinal] = (OMEGA,)) -> List[TreeExpr]:
    """Uniform seeded sample (without replacement) of canonical shapes."""
    pool = enumerate_shapes(max_size, mults, segments)
    if count >= len(pool):
        return pool
    rng = random.Random(seed)
    return sorted(rng.sample(pool, count), key=lambda t: (expr_size(t), t.code))


def symbolic_corpus(seed: int = 0, count: int = 500, max_size: int = 5) -> List[TreeExpr]:
    """Default corpus for the symbolic suites: a seeded sample of small
    shapes together with the family trees of the ordinal grid."""
    trees = random_corpus(count, seed=seed, max_size=max_size)
    seen = set(trees)
    for a in family_grid():
        f = family(a)
        if f not in seen:
            trees.append(f)
            seen.add(f)
    return trees


def all_rooted_trees(max_n: int) -> List[FiniteTree]:
    """One representative per rooted isomorphism class, up to ``max_n`` vertices."""
    from .finite import canonical_code

    level = {canonical_code(FiniteTree((-1,))): FiniteTree((-1,))}
    out = list(level.values())
    for _ in range(1, max_n):
        nxt = {}
        for t in level.values():
            for v in range(t.n):
                g = FiniteTree(t.parent + (v,))
                nxt.setdefault(canonical_code(g), g)
        level = dict(sorted(nxt.items()))
        out.extend(level.values())
    return out


def random_tree(rng: random.Random, n: int) -> FiniteTree:
    """Random recursive tree: vertex ``v`` attaches to a uniform earlier vertex."""
    return FiniteTree((-1,) + tuple(rng.randrange(v) for v in range(1, n)))
