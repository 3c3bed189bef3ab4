"""Symbolic rooted rayless trees.

A :class:`TreeExpr` is either a leaf or a node listing its children as
``(shape, multiplicity)`` pairs, where a multiplicity is a positive integer
or :data:`W` (countably many copies).  A node may also carry a *segment*:
a limit ordinal ``l`` standing for one extra child ``family(a)`` for every
``a < l``.

Expressions built through :func:`node` are canonical: child shapes are
pairwise distinct, sorted by canonical code, and equal shapes are merged by
saturating multiplicity addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .ordinal import (
    ZERO,
    Ordinal,
    format_ordinal,
    fundamental_sequence,
    is_limit,
    nat,
    ordinal_max,
    successor,
)


class _Omega:
    """The multiplicity ``w``: absorbs finite additions, exceeds every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "W"

    def __str__(self):
        return "w"

    def __reduce__(self):
        return (_Omega, ())

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            return 0
        return self

    __rmul__ = __mul__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __hash__(self):
        return hash("w")


W = _Omega()
Mult = Union[int, _Omega]


def format_mult(m: Mult) -> str:
    return str(m)


def check_mult(m: Mult) -> Mult:
    if m is W:
        return m
    if isinstance(m, bool) or not isinstance(m, int):
        raise TypeError(f"multiplicity must be a positive int or W, got {m!r}")
    if m < 1:
        raise ValueError("multiplicity must be >= 1")
    return m


class MalformedTree(ValueError):
    pass


Child = Tuple["TreeExpr", Mult]


@dataclass(frozen=True, eq=False)
class TreeExpr:
    children: Tuple[Child, ...] = ()
    segment: Optional[Ordinal] = None

    def __post_init__(self):
        if self.segment is not None and not is_limit(self.segment):
            raise MalformedTree(f"segment ordinal {self.segment} is not a limit")
        for shape, m in self.children:
            if not isinstance(shape, TreeExpr):
                raise TypeError(f"child shape must be a TreeExpr, got {shape!r}")
            check_mult(m)

    @property
    def is_leaf(self) -> bool:
        return not self.children and self.segment is None

    @cached_property
    def code(self) -> str:
        """Depth-first string of the expression; the memoization key."""
        if self.is_leaf:
            return "L"
        inner = ",".join(f"{c.code}^{m}" for c, m in self.children)
        if self.segment is not None:
            inner += f";{format_ordinal(self.segment)}"
        return f"N({inner})"

    @cached_property
    def is_canonical(self) -> bool:
        codes = [c.code for c, _ in self.children]
        return (
            all(a < b for a, b in zip(codes, codes[1:]))
            and all(c.is_canonical for c, _ in self.children)
        )

    def __eq__(self, other):
        if not isinstance(other, TreeExpr):
            return NotImplemented
        return self is other or self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        from .dsl import print_tree

        return f"TreeExpr({print_tree(self)})"


LEAF = TreeExpr()


def leaf() -> TreeExpr:
    return LEAF


def node(*children: Union[TreeExpr, Child], segment: Optional[Ordinal] = None) -> TreeExpr:
    """Build a canonical node; bare shapes count as multiplicity 1."""
    pairs = [c if isinstance(c, tuple) else (c, 1) for c in children]
    return canonicalize(TreeExpr(tuple(pairs), segment))


def canonicalize(t: TreeExpr) -> TreeExpr:
    if t.is_leaf:
        return LEAF
    if t.is_canonical:
        return t
    merged: Dict[str, List] = {}
    for shape, m in t.children:
        c = canonicalize(shape)
        if c.code in merged:
            merged[c.code][1] = merged[c.code][1] + m
        else:
            merged[c.code] = [c, m]
    kids = tuple((merged[k][0], merged[k][1]) for k in sorted(merged))
    return TreeExpr(kids, t.segment)


def family(alpha: Union[Ordinal, int]) -> TreeExpr:
    """The lower-bound family: leaf, then ``node(family(a)^w)`` at successors
    and a bare segment node at limits."""
    return _family(nat(alpha) if isinstance(alpha, int) else alpha)


@lru_cache(maxsize=None)
def _family(alpha: Ordinal) -> TreeExpr:
    k = alpha.finite_part
    base = Ordinal(alpha.terms[:-1]) if k else alpha
    t = LEAF if base.is_zero else TreeExpr((), base)
    for _ in range(k):
        t = TreeExpr(((t, W),))
    return t


@lru_cache(maxsize=None)
def family_index(t: TreeExpr) -> Optional[Ordinal]:
    """Return ``a`` if ``t`` is literally ``family(a)``, else None."""
    if t.is_leaf:
        return ZERO
    if not t.children:
        return t.segment
    if t.segment is None and len(t.children) == 1 and t.children[0][1] is W:
        inner = family_index(t.children[0][0])
        if inner is not None:
            return successor(inner)
    return None


@lru_cache(maxsize=None)
def height(t: TreeExpr) -> Ordinal:
    if t.is_leaf:
        return ZERO
    hs = [successor(height(c)) for c, _ in t.children]
    if t.segment is not None:
        # sup of height(family(a)) + 1 = a + 1 over a < l
        hs.append(t.segment)
    return ordinal_max(hs)


@lru_cache(maxsize=None)
def size(t: TreeExpr) -> Mult:
    if t.is_leaf:
        return 1
    if t.segment is not None:
        return W
    total: Mult = 1
    for c, m in t.children:
        total = total + m * size(c)
    return total


@lru_cache(maxsize=None)
def suffixes(t: TreeExpr) -> FrozenSet[TreeExpr]:
    """Distinct upward-closure shapes reachable through explicit children.

    Nodes inside segment copies are not enumerated; see :func:`segment_bounds`.
    """
    out = {t}
    for c, _ in t.children:
        out |= suffixes(c)
    return frozenset(out)


@lru_cache(maxsize=None)
def segment_bounds(t: TreeExpr) -> FrozenSet[Ordinal]:
    out = {t.segment} if t.segment is not None else set()
    for c, _ in t.children:
        out |= segment_bounds(c)
    return frozenset(out)


def expr_size(t: TreeExpr) -> int:
    """Number of constructors in the expression; a segment counts as one."""
    return 1 + sum(expr_size(c) for c, _ in t.children) + (t.segment is not None)


def depth(t: TreeExpr) -> int:
    return 0 if not t.children else 1 + max(depth(c) for c, _ in t.children)


class TruncationBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FiniteTree:
    """A finite rooted tree on vertices ``0..n-1``; vertex 0 is the root."""

    parent: Tuple[int, ...]

    def __post_init__(self):
        p = self.parent
        if not p or p[0] != -1:
            raise ValueError("vertex 0 must be the root (parent -1)")
        n = len(p)
        for v in range(1, n):
            if not 0 <= p[v] < n or p[v] == v:
                raise ValueError(f"bad parent index for vertex {v}")
        # acyclicity: every vertex reaches the root
        state = [0] * n
        state[0] = 2
        for v in range(n):
            path = []
            u = v
            while state[u] == 0:
                state[u] = 1
                path.append(u)
                u = p[u]
            if state[u] == 1:
                raise ValueError("parent indices contain a cycle")
            for w in path:
                state[w] = 2

    @property
    def n(self) -> int:
        return len(self.parent)

    def __len__(self):
        return len(self.parent)

    @cached_property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        kids: List[List[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def preorder(self) -> Tuple[int, ...]:
        order, stack = [], [0]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return tuple(order)

    @classmethod
    def from_children(cls, kids: Sequence[Sequence[int]]) -> "FiniteTree":
        parent = [-1] * len(kids)
        for v, ks in enumerate(kids):
            for k in ks:
                parent[k] = v
        return cls(tuple(parent))

    def reroot(self, r: int) -> "FiniteTree":
        """The same unrooted tree, rooted at ``r`` and relabelled in preorder."""
        adj: List[List[int]] = [list(k) for k in self.children]
        for v, p in enumerate(self.parent):
            if p >= 0:
                adj[v].append(p)
        label = {r: 0}
        parent = [-1]
        stack = [r]
        while stack:
            v = stack.pop()
            for u in sorted(adj[v], reverse=True):
                if u not in label:
                    label[u] = len(parent)
                    parent.append(label[v])
                    stack.append(u)
        return FiniteTree(tuple(parent))


def path(n: int) -> FiniteTree:
    """Rooted path on ``n`` vertices, rooted at an end."""
    return FiniteTree(tuple(range(-1, n - 1)))


def star(k: int) -> FiniteTree:
    """Root joined to ``k`` leaves."""
    return FiniteTree((-1,) + (0,) * k)


def truncate(t: TreeExpr, n: int, max_vertices: int = 200_000) -> FiniteTree:
    """Replace every ``w`` by ``n`` and every segment ``l`` by the ``n`` children
    ``family(l[i])``, ``i < n``; vertices are numbered in depth-first order."""
    if n < 1:
        raise ValueError("truncation parameter must be >= 1")
    parent: List[int] = []

    def build(e: TreeExpr, p: int) -> None:
        if len(parent) >= max_vertices:
            raise TruncationBudgetExceeded(
                f"truncation exceeds {max_vertices} vertices")
        v = len(parent)
        parent.append(p)
        for c, m in e.children:
            for _ in range(n if m is W else m):
                build(c, v)
        if e.segment is not None:
            for i in range(n):
                build(family(fundamental_sequence(e.segment, i)), v)

    build(t, -1)
    return FiniteTree(tuple(parent))


def lift(f: FiniteTree, v: int = 0) -> TreeExpr:
    """Read a finite tree back as a (canonical) expression."""
    memo: Dict[int, TreeExpr] = {}
    for u in reversed(f.preorder):
        kids = f.children[u]
        memo[u] = LEAF if not kids else node(*(memo[k] for k in kids))
    return memo[v]


__all__ = [
    "W", "Mult", "TreeExpr", "LEAF", "leaf", "node", "canonicalize", "family",
    "family_index", "height", "size", "suffixes", "segment_bounds", "expr_size",
    "FiniteTree", "path", "star", "truncate", "lift", "MalformedTree",
    "TruncationBudgetExceeded", "check_mult", "format_mult",
]
