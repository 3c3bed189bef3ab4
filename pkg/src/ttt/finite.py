"""Tree-order-preserving topological-minor embedding of finite rooted trees.

``T <= S`` holds when some subdivision of ``T`` sits inside ``S`` with the
root-to-leaf order kept.  In a tree, internal disjointness of the
subdivision paths reduces to one local condition: the images of two
siblings must meet exactly at the image of their parent.  The decision
therefore splits into two tables over pairs of vertices, memoised by
rooted isomorphism class:

* ``fit(t, s)``  -- ``up(t)`` embeds with ``t`` sent to ``s``: the children
  of ``t`` can be matched to distinct successors ``s'`` of ``s`` with
  ``anywhere(c, s')``;
* ``anywhere(t, s)`` -- ``fit(t, s)`` or ``anywhere(t, s')`` for a successor.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Tuple

from .matching import has_perfect_left_matching, max_matching
from .ordinal import fundamental_sequence
from .tree import LEAF, W, FiniteTree, TreeExpr, family

EmbeddingWitness = Dict[int, int]


def canonical_code(t: FiniteTree, v: int = 0) -> str:
    """AHU code of the subtree rooted at ``v``; equal iff rooted-isomorphic."""
    codes: Dict[int, str] = {}
    for u in reversed(t.preorder):
        codes[u] = "(" + "".join(sorted(codes[c] for c in t.children[u])) + ")"
    return codes[v]


class ClassForest:
    """Rooted isomorphism classes shared by the trees under comparison.

    A class is identified by the sorted tuple of its children's classes.
    Classes can come from explicit :class:`FiniteTree` vertices or straight
    from an expression truncation, which never has to be materialised:
    ``truncate(t, n)`` and :meth:`add_truncation` yield the same class.
    """

    def __init__(self):
        self.intern: Dict[Tuple[int, ...], int] = {}
        self.kids: List[Tuple[int, ...]] = []
        self.vertices: List[int] = []
        self._trunc: Dict[Tuple[str, int], int] = {}
        self._lifted: Dict[int, TreeExpr] = {}
        self.anywhere = lru_cache(maxsize=None)(self._anywhere)
        self.fit = lru_cache(maxsize=None)(self._fit)

    def _class(self, key: Tuple[int, ...]) -> int:
        cls = self.intern.get(key)
        if cls is None:
            cls = self.intern[key] = len(self.kids)
            self.kids.append(key)
            self.vertices.append(1 + sum(self.vertices[c] for c in key))
        return cls

    def add_tree(self, t: FiniteTree) -> List[int]:
        ids = [0] * t.n
        for u in reversed(t.preorder):
            ids[u] = self._class(tuple(sorted(ids[c] for c in t.children[u])))
        return ids

    def add_truncation(self, e: TreeExpr, n: int) -> int:
        """Class of ``truncate(e, n)``."""
        memo_key = (e.code, n)
        hit = self._trunc.get(memo_key)
        if hit is not None:
            return hit
        kids: List[int] = []
        for c, m in e.children:
            kids.extend([self.add_truncation(c, n)] * (n if m is W else m))
        if e.segment is not None:
            kids.extend(self.add_truncation(family(fundamental_sequence(e.segment, i)), n)
                        for i in range(n))
        cls = self._class(tuple(sorted(kids)))
        self._trunc[memo_key] = cls
        return cls

    def max_degree(self, cls: int) -> int:
        """Largest number of children of any vertex in the class."""
        best, seen, stack = 0, set(), [cls]
        while stack:
            c = stack.pop()
            if c not in seen:
                seen.add(c)
                best = max(best, len(self.kids[c]))
                stack.extend(self.kids[c])
        return best

    def lift(self, cls: int) -> TreeExpr:
        """Re-read a class as a (finite) tree expression."""
        out = self._lifted.get(cls)
        if out is None:
            counts = Counter(self.kids[cls])
            # distinct classes lift to distinct canonical shapes
            kids = sorted(((self.lift(k), m) for k, m in counts.items()), key=lambda c: c[0].code)
            out = self._lifted[cls] = TreeExpr(tuple(kids)) if kids else LEAF
        return out

    def _anywhere(self, a: int, b: int) -> bool:
        if self.fit(a, b):
            return True
        return any(self.anywhere(a, c) for c in sorted(set(self.kids[b])))

    def _fit(self, a: int, b: int) -> bool:
        ka, kb = self.kids[a], self.kids[b]
        if len(ka) > len(kb) or self.vertices[a] > self.vertices[b]:
            return False
        if not ka:
            return True
        adj = [[j for j, y in enumerate(kb) if self.anywhere(x, y)] for x in ka]
        return has_perfect_left_matching(adj, len(kb))

    def embeds(self, a: int, b: int) -> bool:
        return self.anywhere(a, b)


def _witness(forest: ClassForest, T: FiniteTree, S: FiniteTree,
             tid: List[int], sid: List[int]) -> Optional[EmbeddingWitness]:
    fit, anywhere = forest.fit, forest.anywhere

    def locate(t: int, s: int) -> int:
        # first vertex u of up(s), in preorder, with fit(t, u)
        a = tid[t]
        while not fit(a, sid[s]):
            s = next(c for c in S.children[s] if anywhere(a, sid[c]))
        return s

    start = next((s for s in S.preorder if fit(tid[0], sid[s])), None)
    if start is None:
        return None
    phi: EmbeddingWitness = {}
    stack = [(0, start)]
    while stack:
        t, s = stack.pop()
        phi[t] = s
        tk, sk = T.children[t], S.children[s]
        adj = [[j for j, y in enumerate(sk) if anywhere(tid[x], sid[y])] for x in tk]
        match = max_matching(adj, len(sk))
        for x, j in zip(tk, match):
            stack.append((x, locate(x, sk[j])))
    return phi


def embed_rooted(T: FiniteTree, S: FiniteTree) -> Optional[EmbeddingWitness]:
    """Return an embedding witness of ``T`` into ``S`` or None.

    Ties are broken deterministically: the root goes to the first feasible
    vertex in preorder and children follow the first maximum matching found.
    """
    forest = ClassForest()
    tid, sid = forest.add_tree(T), forest.add_tree(S)
    return _witness(forest, T, S, tid, sid)


def embeds_rooted(T: FiniteTree, S: FiniteTree) -> bool:
    forest = ClassForest()
    a = forest.add_tree(T)[0]
    b = forest.add_tree(S)[0]
    return forest.embeds(a, b)


def embed_unrooted(T: FiniteTree, S: FiniteTree) -> bool:
    """Subdivision-of-``T``-in-``S`` test for the underlying unrooted trees.

    Rooting ``T`` anywhere is enough: any unrooted embedding becomes a
    rooted one once ``S`` is rooted at the image of ``T``'s root.
    """
    if T.n > S.n:
        return False
    return any(embeds_rooted(T, S.reroot(r)) for r in range(S.n))


class OracleBudgetExceeded(ValueError):
    pass


def _ancestors(t: FiniteTree) -> List[frozenset]:
    anc: List[frozenset] = [frozenset()] * t.n
    for v in t.preorder:
        p = t.parent[v]
        anc[v] = frozenset({v}) | (anc[p] if p >= 0 else frozenset())
    return anc


def _meet(anc: List[frozenset], depth: List[int], x: int, y: int) -> int:
    return max(anc[x] & anc[y], key=lambda v: depth[v])


def embed_rooted_oracle(T: FiniteTree, S: FiniteTree,
                        max_t: int = 9, max_s: int = 9) -> bool:
    """Exhaustive search over injective vertex maps, independent of the DP.

    A map is accepted iff it is order-preserving and every pair of siblings
    is sent to vertices whose meet in ``S`` is the image of their parent.
    """
    if T.n > max_t or S.n > max_s:
        raise OracleBudgetExceeded(
            f"oracle budget is |T| <= {max_t}, |S| <= {max_s}; got {T.n}, {S.n}")
    if T.n > S.n:
        return False
    anc_t, anc_s = _ancestors(T), _ancestors(S)
    depth_s = [len(a) for a in anc_s]
    order = list(T.preorder)
    phi = [-1] * T.n
    used = [False] * S.n

    def consistent(v: int, s: int) -> bool:
        for x in anc_t[v]:
            if x != v and phi[x] not in anc_s[s]:
                return False
        p = T.parent[v]
        if p >= 0:
            for y in T.children[p]:
                if y != v and phi[y] >= 0 and _meet(anc_s, depth_s, s, phi[y]) != phi[p]:
                    return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for s in range(S.n):
            if not used[s] and consistent(v, s):
                phi[v], used[s] = s, True
                if search(k + 1):
                    return True
                phi[v], used[s] = -1, False
        return False

    return search(0)


def validate_witness(T: FiniteTree, S: FiniteTree, phi: EmbeddingWitness) -> List[str]:
    """Return the list of violated witness invariants (empty when valid)."""
    problems = []
    if sorted(phi) != list(range(T.n)):
        problems.append("map is not total on T")
        return problems
    if len(set(phi.values())) != T.n:
        problems.append("map is not injective")
    anc_t, anc_s = _ancestors(T), _ancestors(S)
    depth_s = [len(a) for a in anc_s]
    for y in range(T.n):
        for x in anc_t[y]:
            if phi[x] not in anc_s[phi[y]]:
                problems.append(f"order not preserved on {x} <= {y}")
    for x in range(T.n):
        for y1, y2 in permutations(T.children[x], 2):
            if _meet(anc_s, depth_s, phi[y1], phi[y2]) != phi[x]:
                problems.append(f"siblings {y1},{y2} do not meet at the image of {x}")
    return problems
