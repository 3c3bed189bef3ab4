import random

import pytest

from ttt.corpus import all_rooted_trees, random_tree
from ttt.finite import (
    ClassForest,
    OracleBudgetExceeded,
    canonical_code,
    embed_rooted,
    embed_rooted_oracle,
    embed_unrooted,
    embeds_rooted,
    validate_witness,
)
from ttt.dsl import parse_tree as P
from ttt.tree import FiniteTree, family, path, star, truncate

CHERRY = star(2)


def subdivided_star(k):
    # root, then k paths of length 2
    parent = [-1]
    for _ in range(k):
        parent.append(0)
        parent.append(len(parent) - 1)
    return FiniteTree(tuple(parent))


def test_rooted_examples():
    assert embed_rooted(path(2), path(3)) == {0: 0, 1: 1}
    assert embed_rooted(CHERRY, path(3)) is None
    phi = embed_rooted(star(3), subdivided_star(3))
    assert phi is not None
    assert validate_witness(star(3), subdivided_star(3), phi) == []


def test_oracle_examples():
    t = FiniteTree((-1, 0, 0, 1, 1))
    assert embed_rooted_oracle(t, t)
    assert not embed_rooted_oracle(CHERRY, path(3))
    assert not embed_rooted_oracle(path(5), star(3))


def test_oracle_refuses_large_inputs():
    with pytest.raises(OracleBudgetExceeded):
        embed_rooted_oracle(path(10), path(10))


def test_unrooted_examples():
    assert embed_unrooted(CHERRY, path(3))
    assert not embed_unrooted(star(4), path(10))
    t = FiniteTree((-1, 0, 1, 1, 0))
    assert embed_unrooted(t, t)


def test_canonical_code_examples():
    a = FiniteTree((-1, 0, 0, 1, 1, 2))
    b = FiniteTree((-1, 0, 0, 2, 2, 1))
    assert canonical_code(a) == canonical_code(b)
    assert canonical_code(path(3)) != canonical_code(CHERRY)
    assert canonical_code(FiniteTree((-1,))) == "()"


def test_rooted_tree_counts():
    # OEIS A000081 partial sums
    assert len(all_rooted_trees(6)) == 1 + 1 + 2 + 4 + 9 + 20


def test_exhaustive_agreement_small():
    trees = all_rooted_trees(5)
    for T in trees:
        for S in trees:
            phi = embed_rooted(T, S)
            assert (phi is not None) == embed_rooted_oracle(T, S)
            if phi is not None:
                assert validate_witness(T, S, phi) == []


def test_random_agreement():
    rng = random.Random(7)
    for _ in range(300):
        T, S = random_tree(rng, rng.randint(1, 7)), random_tree(rng, rng.randint(1, 8))
        assert embeds_rooted(T, S) == embed_rooted_oracle(T, S)


def test_validator_catches_bad_maps():
    assert validate_witness(CHERRY, path(3), {0: 0, 1: 1, 2: 2})
    assert validate_witness(path(2), path(3), {0: 1, 1: 0})
    assert validate_witness(path(2), path(3), {0: 0})


def test_witness_is_deterministic():
    T, S = star(2), FiniteTree((-1, 0, 0, 0, 1, 2))
    assert embed_rooted(T, S) == embed_rooted(T, S) == {0: 0, 1: 1, 2: 2}


def test_forest_truncation_matches_materialized():
    forest = ClassForest()
    for e in (family(2), P("node(leaf^w, node(leaf^2)^w)"), P("node(leaf;seg=w)")):
        for n in (1, 2, 3):
            direct = forest.add_tree(truncate(e, n))[0]
            assert forest.add_truncation(e, n) == direct
