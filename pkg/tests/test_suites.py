import json

import pytest

from ttt.corpus import symbolic_corpus
from ttt.dsl import parse_tree as P
from ttt.suites import (
    UnknownSuite,
    run_suite,
    suite_chain,
    suite_monotonicity,
    suite_oracle_finite,
    suite_theta_soundness,
    suite_truncation,
    truncation_corpus,
    truncation_witness,
)
from ttt.tree import family

SMALL = symbolic_corpus(0, count=60, max_size=4)


def test_ranks_family_suite():
    res = run_suite("ranks-family")
    assert res.ok and res.checks == 24


def test_dsl_suite():
    assert run_suite("dsl-roundtrip").ok


def test_oracle_suite_small():
    res = suite_oracle_finite(max_n=4, random_pairs=300, random_max_n=7)
    assert res.ok
    assert res.stats["exhaustive_pairs"] == 8 * 8


def test_small_symbolic_suites():
    assert suite_chain(corpus=SMALL, triples=500).ok
    assert suite_monotonicity(corpus=SMALL).ok
    assert suite_theta_soundness(corpus=SMALL).ok


def test_truncation_witness_values():
    assert truncation_witness(P("node(leaf^3)"), P("node(leaf^w)"), 4) == 3
    assert truncation_witness(family(1), family(2), 4) == 4
    assert truncation_witness(P("node(leaf^w)"), P("node(leaf^3)"), 4) is None


def test_truncation_suite_on_exhaustive_small_corpus():
    res = suite_truncation(trees=truncation_corpus())
    assert res.ok
    assert res.stats["corpus"] == 113


def test_truncation_violations_are_diagnosed():
    T, S = P("node(leaf^w,node(leaf^w)^2;seg=w)"), P("node(node(family(w)^w)^w)")
    res = suite_truncation(trees=[T, S])
    assert not res.ok
    assert res.stats["violations_out_degree_over_8"] == len(res.violations)
    assert res.stats["violations_largest_N_needed"] == 10
    v = res.violations[0]
    assert v.repro.startswith("ttt embed ")


def test_outputs_are_reproducible():
    a = suite_chain(seed=5, corpus=SMALL, triples=300)
    b = suite_chain(seed=5, corpus=SMALL, triples=300)
    assert a.to_text() == b.to_text()
    assert json.loads(a.to_json())["checks"] == a.checks


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")
