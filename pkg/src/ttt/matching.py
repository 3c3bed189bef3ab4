"""Bipartite matching kernels.

Two kernels with deliberately different mechanics: :func:`max_matching`
works on explicit vertex lists (used by the finite embedding engine), and
:func:`max_transport` pushes integer counts through a demand/capacity graph
(used by the symbolic feasibility check, where copies are not expanded).
"""

from __future__ import annotations

from collections import deque
from typing import Dict, List, Sequence, Tuple


def max_matching(adj: Sequence[Sequence[int]], n_right: int) -> List[int]:
    """Maximum matching by augmenting paths.

    ``adj[i]`` lists the right vertices compatible with left vertex ``i``.
    Returns ``match_left`` with ``-1`` for unmatched left vertices.  Left
    vertices are tried in order and neighbours in list order, so the result
    is deterministic.
    """
    match_right = [-1] * n_right
    match_left = [-1] * len(adj)

    def augment(i: int, seen: List[bool]) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_right[j] < 0 or augment(match_right[j], seen):
                match_right[j] = i
                match_left[i] = j
                return True
        return False

    # greedy pass first: witnesses then follow the first free choice
    for i, row in enumerate(adj):
        j = next((j for j in row if match_right[j] < 0), -1)
        if j >= 0:
            match_right[j], match_left[i] = i, j
    for i in range(len(adj)):
        if adj[i] and match_left[i] < 0:
            augment(i, [False] * n_right)
    return match_left


def has_perfect_left_matching(adj: Sequence[Sequence[int]], n_right: int) -> bool:
    if len(adj) > n_right:
        return False
    return all(j >= 0 for j in max_matching(adj, n_right))


def max_transport(
    supply: Sequence[int],
    capacity: Sequence[int],
    edges: Sequence[Tuple[int, int]],
) -> int:
    """Largest total flow from demand types to capacity types.

    Demand type ``i`` offers ``supply[i]`` units, capacity type ``j`` accepts
    ``capacity[j]`` units, and units travel only along ``edges`` ``(i, j)``
    (uncapacitated).  Edmonds-Karp on the induced network; the running time
    does not depend on the magnitudes of the counts.
    """
    n_d, n_c = len(supply), len(capacity)
    src, dst = n_d + n_c, n_d + n_c + 1
    size = n_d + n_c + 2
    cap: List[Dict[int, int]] = [dict() for _ in range(size)]
    big = sum(supply) + 1

    def add(u: int, v: int, c: int) -> None:
        cap[u][v] = cap[u].get(v, 0) + c
        cap[v].setdefault(u, 0)

    for i, s in enumerate(supply):
        if s:
            add(src, i, s)
    for j, c in enumerate(capacity):
        if c:
            add(n_d + j, dst, c)
    for i, j in edges:
        add(i, n_d + j, big)

    flow = 0
    while True:
        prev = [-1] * size
        prev[src] = src
        queue = deque([src])
        while queue and prev[dst] < 0:
            u = queue.popleft()
            for v, c in cap[u].items():
                if c > 0 and prev[v] < 0:
                    prev[v] = u
                    queue.append(v)
        if prev[dst] < 0:
            return flow
        push = big
        v = dst
        while v != src:
            u = prev[v]
            push = min(push, cap[u][v])
            v = u
        v = dst
        while v != src:
            u = prev[v]
            cap[u][v] -= push
            cap[v][u] += push
            v = u
        flow += push
