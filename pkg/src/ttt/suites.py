"""Invariant suites binding the engines to their expected properties.

Every suite is deterministic for a given seed.  A violation carries a
command line that reproduces the failing decision on its own.
"""

from __future__ import annotations

import json
import random
import shlex
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .corpus import (
    all_rooted_trees,
    enumerate_shapes,
    family_grid,
    random_tree,
    symbolic_corpus,
)
from .dsl import parse_tree, print_tree, to_dot
from .finite import (
    ClassForest,
    canonical_code,
    embed_rooted,
    embed_rooted_oracle,
    validate_witness,
)
from .ordinal import OMEGA, compare, format_ordinal
from .ranks import nw_rank, schmidt_rank
from .symbolic import embeds, equivalent
from .theta import Verdict, leq_theta, lemma_soundness_check, theta
from .tree import (
    FiniteTree,
    TreeExpr,
    TruncationBudgetExceeded,
    family,
    height,
    lift,
    suffixes,
)


@dataclass
class Violation:
    description: str
    repro: str


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    violations: List[Violation] = field(default_factory=list)
    stats: Dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def fail(self, description: str, repro: str) -> None:
        self.violations.append(Violation(description, repro))

    def merge(self, other: "SuiteResult") -> None:
        self.checks += other.checks
        self.violations.extend(other.violations)
        for k, v in other.stats.items():
            self.stats[f"{other.name}.{k}"] = v

    def to_text(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"suite {self.name}: {status} ({self.checks} checks, "
                 f"{len(self.violations)} violations)"]
        for v in self.violations:
            lines.append(f"  violation: {v.description}")
            lines.append(f"    repro: {v.repro}")
        for k in sorted(self.stats):
            lines.append(f"  stat {k}: {self.stats[k]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "suite": self.name,
            "ok": self.ok,
            "checks": self.checks,
            "violations": [{"description": v.description, "repro": v.repro}
                           for v in self.violations],
            "stats": {k: self.stats[k] for k in sorted(self.stats)},
        }, indent=2, sort_keys=True) + "\n"


def _q(t: TreeExpr) -> str:
    return shlex.quote(print_tree(t))


def _repro(cmd: str, *trees: TreeExpr, flags: str = "") -> str:
    args = " ".join(_q(t) for t in trees)
    return f"ttt {cmd}{(' ' + flags) if flags else ''} {args}"


def _finite_repro(T: FiniteTree, S: FiniteTree) -> str:
    return _repro("embed", lift(T), lift(S), flags="--finite --oracle")


# -- finite engine ---------------------------------------------------------


def check_finite_pair(T: FiniteTree, S: FiniteTree, res: SuiteResult) -> bool:
    phi = embed_rooted(T, S)
    want = embed_rooted_oracle(T, S)
    res.checks += 1
    if (phi is not None) != want:
        res.fail(f"engine says {phi is not None}, oracle says {want}", _finite_repro(T, S))
        return want
    if phi is not None:
        problems = validate_witness(T, S, phi)
        res.checks += 1
        if problems:
            res.fail("invalid witness: " + "; ".join(problems), _finite_repro(T, S))
    return want


def suite_oracle_finite(seed: int = 0, max_n: int = 6, random_pairs: int = 10_000,
                        random_max_n: int = 9) -> SuiteResult:
    res = SuiteResult("oracle-finite")
    trees = all_rooted_trees(max_n)
    agree = {}
    for i, T in enumerate(trees):
        for j, S in enumerate(trees):
            agree[i, j] = check_finite_pair(T, S, res)
    res.stats["exhaustive_pairs"] = len(agree)
    res.stats["exhaustive_true"] = sum(agree.values())

    # mutual embedding forces isomorphism for finite trees
    codes = [canonical_code(t) for t in trees]
    for i in range(len(trees)):
        for j in range(len(trees)):
            if agree[i, j] and agree[j, i]:
                res.checks += 1
                if codes[i] != codes[j]:
                    res.fail("mutually embeddable but not isomorphic",
                             _finite_repro(trees[i], trees[j]))
    # transitivity over all triples
    n = len(trees)
    for i in range(n):
        for j in range(n):
            if not agree[i, j]:
                continue
            for k in range(n):
                if agree[j, k]:
                    res.checks += 1
                    if not agree[i, k]:
                        res.fail("transitivity fails", _finite_repro(trees[i], trees[k]))

    rng = random.Random(seed)
    hits = 0
    for _ in range(random_pairs):
        a, b = sorted((rng.randint(1, random_max_n), rng.randint(1, random_max_n)))
        T, S = random_tree(rng, a), random_tree(rng, b)
        hits += check_finite_pair(T, S, res)
    res.stats["random_pairs"] = random_pairs
    res.stats["random_true"] = hits
    return res


# -- symbolic engine vs truncations ---------------------------------------


def truncation_witness(T: TreeExpr, S: TreeExpr, n: int, max_N: int = 8,
                       forest: Optional[ClassForest] = None) -> Optional[int]:
    """Smallest ``N <= max_N`` with ``truncate(T, n)`` embedding into
    ``truncate(S, N)``, or None."""
    forest = forest if forest is not None else ClassForest()
    small = forest.add_truncation(T, n)
    for N in range(1, max_N + 1):
        if forest.embeds(small, forest.add_truncation(S, N)):
            return N
    return None


def truncation_corpus() -> List[TreeExpr]:
    """Every canonical shape of size <= 4 (segment w allowed) plus small
    families.  No truncation at n <= 4 has a vertex with more than 8
    children, so the N <= 8 search bound is never the obstacle here."""
    trees = enumerate_shapes(4, segments=(OMEGA,))
    for a in family_grid()[:6]:
        if family(a) not in trees:
            trees.append(family(a))
    return trees


def suite_truncation(seed: int = 0, trees: Optional[Sequence[TreeExpr]] = None,
                     ns: Sequence[int] = (1, 2, 3, 4)) -> SuiteResult:
    res = SuiteResult("truncation")
    trees = list(trees) if trees is not None else symbolic_corpus(seed)
    forest = ClassForest()
    needed: Dict[int, int] = {}
    refuted = monitored = wide = 0
    late_hits = {True: 0, False: 0}
    latest = 0
    unrefuted: List[str] = []
    for T in trees:
        for S in trees:
            if embeds(T, S):
                for n in ns:
                    res.checks += 1
                    N = truncation_witness(T, S, n, forest=forest)
                    if N is None:
                        # diagnosis only: the check itself stays failed
                        d = forest.max_degree(forest.add_truncation(T, n))
                        late = truncation_witness(T, S, n, max_N=4 * 8, forest=forest)
                        late_hits[late is not None] += 1
                        latest = max(latest, late or 0)
                        wide += d > 8
                        res.fail(f"truncate(T,{n}) embeds into no truncation of S with N <= 8"
                                 f" (max out-degree {d}, first witness at N = {late})",
                                 _repro("embed", T, S))
                    else:
                        needed[N] = needed.get(N, 0) + 1
            else:
                # monitored diagnostic: some small truncation of T already fails
                monitored += 1
                if any(not embeds(forest.lift(forest.add_truncation(T, n)), S) for n in ns):
                    refuted += 1
                else:
                    unrefuted.append(_repro("embed", T, S))
    res.stats["corpus"] = len(trees)
    if res.violations:
        res.stats["violations_out_degree_over_8"] = wide
        res.stats["violations_witnessed_at_N<=32"] = late_hits[True]
        res.stats["violations_largest_N_needed"] = latest
    res.stats["N_needed"] = ",".join(f"{k}:{needed[k]}" for k in sorted(needed))
    res.stats["refutation_monitored"] = monitored
    res.stats["refutation_by_truncation"] = refuted
    res.stats["refutation_unwitnessed"] = len(unrefuted)
    if unrefuted:
        res.stats["refutation_unwitnessed_first"] = unrefuted[0]
    return res


# -- ranks -----------------------------------------------------------------


def suite_ranks_family(seed: int = 0) -> SuiteResult:
    res = SuiteResult("ranks-family")
    for a in family_grid():
        f = family(a)
        for label, fn in (("schmidt", schmidt_rank), ("nw", nw_rank)):
            res.checks += 1
            got = fn(f).value
            if got != a:
                res.fail(f"{label}_rank(family({format_ordinal(a)})) = {format_ordinal(got)}",
                         f"ttt rank --{label} {_q(f)}")
        res.checks += 1
        if height(f) != a:
            res.fail(f"height(family({format_ordinal(a)})) = {format_ordinal(height(f))}",
                     f"ttt rank --nw {_q(f)}")
    return res


def suite_monotonicity(seed: int = 0, corpus: Optional[Sequence[TreeExpr]] = None,
                       watchdog: float = 60.0) -> SuiteResult:
    res = SuiteResult("monotonicity")
    trees = list(corpus) if corpus is not None else symbolic_corpus(seed)
    for t in trees:
        start = time.perf_counter()
        r = nw_rank(t).value
        elapsed = time.perf_counter() - start
        s = schmidt_rank(t).value
        h = height(t)
        res.checks += 4
        if elapsed > watchdog:
            res.fail(f"nw_rank took {elapsed:.1f}s", f"ttt rank --nw {_q(t)}")
        if compare(r, h) != 0:
            res.fail(f"nw_rank {r} != height {h}", f"ttt rank --nw {_q(t)}")
        if compare(s, h) > 0:
            res.fail(f"schmidt_rank {s} > height {h}", f"ttt rank --schmidt {_q(t)}")
        # every proper suffix is strictly lower
        if any(u != t and compare(height(u), h) >= 0 for u in suffixes(t)):
            res.fail("suffix not strictly lower", f"ttt parse {_q(t)}")
    pairs = 0
    for H in trees:
        for G in trees:
            if embeds(H, G):
                pairs += 1
                res.checks += 1
                if schmidt_rank(H).value > schmidt_rank(G).value:
                    res.fail("schmidt rank decreases along an embedding", _repro("embed", H, G))
                if embeds(G, H):
                    res.checks += 1
                    if (schmidt_rank(H).value != schmidt_rank(G).value
                            or nw_rank(H).value != nw_rank(G).value):
                        res.fail("equivalent trees with different ranks", _repro("equiv", H, G))
    res.stats["corpus"] = len(trees)
    res.stats["embedding_pairs"] = pairs
    return res


# -- chain and quasi-order laws --------------------------------------------


def suite_chain(seed: int = 0, corpus: Optional[Sequence[TreeExpr]] = None,
                triples: int = 20_000) -> SuiteResult:
    res = SuiteResult("chain")
    grid = family_grid()
    for a in grid:
        for b in grid:
            res.checks += 1
            want = compare(a, b) <= 0
            if embeds(family(a), family(b)) != want:
                res.fail(f"family chain broken at {format_ordinal(a)}, {format_ordinal(b)}",
                         _repro("embed", family(a), family(b)))
    distinct = sum(
        1 for i, a in enumerate(grid) for b in grid[i + 1:]
        if not equivalent(family(a), family(b))
    )
    res.stats["distinct_family_pairs"] = distinct

    trees = list(corpus) if corpus is not None else symbolic_corpus(seed)
    for t in trees:
        res.checks += 1
        if not embeds(t, t):
            res.fail("not reflexive", _repro("embed", t, t))
    rng = random.Random(seed)
    up = {t: [s for s in trees if embeds(t, s)] for t in trees}
    tested = 0
    for _ in range(triples):
        a = rng.choice(trees)
        b = rng.choice(up[a])
        c = rng.choice(up[b])
        tested += 1
        res.checks += 1
        if not embeds(a, c):
            res.fail("transitivity fails", _repro("embed", a, c))
        if equivalent(a, b) and equivalent(b, c) and not equivalent(a, c):
            res.fail("equivalence not transitive", _repro("equiv", a, c))
    res.stats["transitive_triples"] = tested
    return res


# -- theta -----------------------------------------------------------------


def suite_theta_soundness(seed: int = 0, corpus: Optional[Sequence[TreeExpr]] = None
                          ) -> SuiteResult:
    res = SuiteResult("theta-soundness")
    trees = list(corpus) if corpus is not None else symbolic_corpus(seed)
    counts = {v: 0 for v in Verdict}
    converse = 0
    for T in trees:
        for S in trees:
            v = lemma_soundness_check(T, S)
            counts[v] += 1
            res.checks += 1
            if v is Verdict.VIOLATED:
                res.fail("theta domination without embedding", _repro("embed", T, S))
            elif v is Verdict.NOT_APPLICABLE and embeds(T, S):
                converse += 1
    rng = random.Random(seed)
    for _ in range(2000):
        a, b, c = (rng.choice(trees) for _ in range(3))
        ta, tb, tc = theta(a), theta(b), theta(c)
        res.checks += 1
        if not leq_theta(ta, ta):
            res.fail("theta order not reflexive", f"ttt theta {_q(a)}")
        if leq_theta(ta, tb) and leq_theta(tb, tc) and not leq_theta(ta, tc):
            res.fail("theta order not transitive", f"ttt theta {_q(a)}")
        if equivalent(a, b):
            res.checks += 1
            if not (leq_theta(ta, tb) and leq_theta(tb, ta)):
                res.fail("equivalent trees with incomparable theta", _repro("equiv", a, b))
    res.stats["corpus"] = len(trees)
    for v in Verdict:
        res.stats[v.value] = counts[v]
    res.stats["converse_failures"] = converse
    return res


# -- dsl -------------------------------------------------------------------


def suite_dsl_roundtrip(seed: int = 0, corpus: Optional[Sequence[TreeExpr]] = None
                        ) -> SuiteResult:
    res = SuiteResult("dsl-roundtrip")
    trees = list(corpus) if corpus is not None else symbolic_corpus(seed)
    trees += [family(a) for a in family_grid()]
    for t in trees:
        for compact in (False, True):
            res.checks += 1
            text = print_tree(t, compact_families=compact)
            back = parse_tree(text)
            if back != t:
                res.fail(f"round trip changed {text}", f"ttt parse {shlex.quote(text)}")
            elif print_tree(back, compact_families=compact) != text:
                res.fail(f"print not stable for {text}", f"ttt parse {shlex.quote(text)}")
    for t in trees[:100]:
        res.checks += 1
        try:
            if to_dot(t, 2) != to_dot(t, 2):
                res.fail("DOT output not stable", f"ttt dot --depth 2 {_q(t)}")
        except TruncationBudgetExceeded:
            res.stats["dot_budget_skips"] = res.stats.get("dot_budget_skips", 0) + 1
    res.stats["corpus"] = len(trees)
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "oracle-finite": suite_oracle_finite,
    "truncation": suite_truncation,
    "monotonicity": suite_monotonicity,
    "chain": suite_chain,
    "theta-soundness": suite_theta_soundness,
    "ranks-family": suite_ranks_family,
    "dsl-roundtrip": suite_dsl_roundtrip,
}


class UnknownSuite(KeyError):
    pass


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    if name == "all":
        total = SuiteResult("all")
        start = time.perf_counter()
        for key in SUITES:
            total.merge(run_suite(key, seed))
        total.seconds = time.perf_counter() - start
        return total
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from "
                           f"{', '.join(list(SUITES) + ['all'])}")
    start = time.perf_counter()
    res = SUITES[name](seed=seed)
    res.seconds = time.perf_counter() - start
    return res
