"""Desk-scale census of topological types."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .corpus import DEFAULT_MULTS, MAX_ENUM_SIZE, CorpusBudgetExceeded, enumerate_shapes
from .dsl import print_tree
from .ordinal import Ordinal, format_ordinal
from .ranks import rank_pair
from .symbolic import equivalent
from .tree import Mult, TreeExpr, expr_size


@dataclass(frozen=True)
class ClassRow:
    schmidt_rank: Ordinal
    nw_rank: Ordinal
    class_count: int
    representative: str


@dataclass
class ClassReport:
    rows: List[ClassRow]
    params: Dict[str, object] = field(default_factory=dict)
    classes: List[List[TreeExpr]] = field(default_factory=list, repr=False)

    @property
    def class_count(self) -> int:
        return sum(r.class_count for r in self.rows)

    def to_tsv(self) -> str:
        return "".join(
            f"{format_ordinal(r.schmidt_rank)}\t{format_ordinal(r.nw_rank)}\t"
            f"{r.class_count}\t{r.representative}\n"
            for r in self.rows
        )

    def to_json(self) -> str:
        return json.dumps({
            "params": self.params,
            "total_classes": self.class_count,
            "rows": [
                {"schmidt": format_ordinal(r.schmidt_rank), "nw": format_ordinal(r.nw_rank),
                 "count": r.class_count, "representative": r.representative}
                for r in self.rows
            ],
        }, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{'schmidt':>8} {'nw':>8} {'classes':>8}  representative"]
        for r in self.rows:
            lines.append(f"{format_ordinal(r.schmidt_rank):>8} {format_ordinal(r.nw_rank):>8}"
                         f" {r.class_count:>8}  {r.representative}")
        lines.append(f"total: {self.class_count} classes")
        return "\n".join(lines) + "\n"


def _sort_key(t: TreeExpr):
    return (expr_size(t), t.code)


def partition(trees: Sequence[TreeExpr], threads: int = 1) -> List[List[TreeExpr]]:
    """Equivalence classes of ``trees``; independent of thread count."""
    trees = sorted(set(trees), key=_sort_key)
    pairs = [(i, j) for i in range(len(trees)) for j in range(i + 1, len(trees))]

    def check(p: Tuple[int, int]) -> bool:
        return equivalent(trees[p[0]], trees[p[1]])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(check, pairs, chunksize=64))
    else:
        verdicts = [check(p) for p in pairs]

    root = list(range(len(trees)))

    def find(i: int) -> int:
        while root[i] != i:
            root[i] = root[root[i]]
            i = root[i]
        return i

    for (i, j), same in zip(pairs, verdicts):
        if same:
            a, b = find(i), find(j)
            root[max(a, b)] = min(a, b)
    groups: Dict[int, List[TreeExpr]] = {}
    for i, t in enumerate(trees):
        groups.setdefault(find(i), []).append(t)
    return [groups[k] for k in sorted(groups)]


def classify_trees(trees: Sequence[TreeExpr], threads: int = 1,
                   params: Optional[Dict[str, object]] = None) -> ClassReport:
    classes = partition(trees, threads)
    by_rank: Dict[Tuple, List[List[TreeExpr]]] = {}
    ranks: Dict[Tuple, Tuple[Ordinal, Ordinal]] = {}
    for cls in classes:
        s, n = rank_pair(cls[0])
        key = (s._key, n._key)
        ranks[key] = (s, n)
        by_rank.setdefault(key, []).append(cls)
    rows = []
    for key in sorted(by_rank, key=lambda k: (ranks[k][0], ranks[k][1])):
        s, n = ranks[key]
        reps = [cls[0] for cls in by_rank[key]]
        rows.append(ClassRow(s, n, len(reps), print_tree(min(reps, key=_sort_key))))
    return ClassReport(rows, dict(params or {}), classes)


def classify_corpus(max_size: int = 3, mults: Sequence[Mult] = DEFAULT_MULTS,
                    segments: Sequence[Ordinal] = (), threads: int = 1,
                    budget: int = MAX_ENUM_SIZE) -> ClassReport:
    """Enumerate canonical shapes up to ``max_size`` and census them."""
    if max_size > budget:
        raise CorpusBudgetExceeded(f"max_size={max_size} exceeds budget {budget}")
    trees = enumerate_shapes(max_size, mults, segments)
    params = {
        "max_size": max_size,
        "mults": [str(m) for m in mults],
        "segments": [format_ordinal(s) for s in segments],
    }
    return classify_trees(trees, threads, params)
