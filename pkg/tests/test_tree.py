import pytest

from ttt.dsl import parse_ordinal, parse_tree as P
from ttt.finite import canonical_code, embeds_rooted
from ttt.corpus import family_grid
from ttt.ordinal import OMEGA
from ttt.tree import (
    LEAF,
    W,
    FiniteTree,
    MalformedTree,
    TruncationBudgetExceeded,
    canonicalize,
    family,
    family_index,
    height,
    lift,
    node,
    path,
    size,
    star,
    suffixes,
    truncate,
)


def test_canonicalize_merges_and_absorbs():
    assert node((LEAF, 2), (LEAF, 3)) == node((LEAF, 5))
    assert node((LEAF, W), (LEAF, W)) == node((LEAF, W))
    assert node((LEAF, W), (LEAF, 2)).code == "N(L^w)"


def test_canonicalize_sorts_by_code():
    a = node((node((LEAF, W)), 1), (LEAF, 1))
    b = node((LEAF, 1), (node((LEAF, W)), 1))
    assert a == b
    assert a.code == "N(L^1,N(L^w)^1)"
    assert canonicalize(a) == a


def test_family_examples():
    assert family(1) == node((LEAF, W))
    assert family(2) == node((node((LEAF, W)), W))
    assert family(OMEGA) == node(segment=OMEGA)
    assert family(0) == LEAF


def test_family_index_recovers_grid():
    for a in family_grid():
        assert family_index(family(a)) == a
    assert family_index(P("node(leaf^2)")) is None


def test_segment_must_be_limit():
    with pytest.raises(MalformedTree):
        node(segment=parse_ordinal("w+1"))


def test_truncate_examples():
    assert canonical_code(truncate(P("node(leaf^w)"), 2)) == canonical_code(star(2))
    assert truncate(LEAF, 5).n == 1
    f = truncate(family(OMEGA), 2)
    want = FiniteTree.from_children([[]])
    assert f.n == 1 + truncate(family(1), 2).n + truncate(family(2), 2).n
    assert want.n == 1
    assert truncate(family(2), 2).parent == (-1, 0, 1, 1, 0, 4, 4)


def test_truncate_budget():
    with pytest.raises(TruncationBudgetExceeded):
        truncate(family(parse_ordinal("w^2")), 8, max_vertices=1000)


def test_height_size_suffixes_examples():
    assert height(family(OMEGA)) == OMEGA
    assert size(P("node(leaf^3)")) == 4
    assert size(family(1)) is W
    t = P("node(node(leaf^2)^w)")
    assert suffixes(t) == {LEAF, P("node(leaf^2)"), t}


def test_height_of_grid():
    for a in family_grid():
        assert height(family(a)) == a


def test_truncations_grow():
    for t in (family(2), P("node(leaf^w, node(leaf)^2)"), family(OMEGA)):
        for n in range(1, 4):
            assert embeds_rooted(truncate(t, n), truncate(t, n + 1))


def test_finite_tree_validation():
    with pytest.raises(ValueError):
        FiniteTree((-1, 2, 1))
    with pytest.raises(ValueError):
        FiniteTree((0,))


def test_path_star_reroot():
    assert path(3).parent == (-1, 0, 1)
    assert star(3).parent == (-1, 0, 0, 0)
    r = path(4).reroot(2)
    assert sorted(len(c) for c in r.children) == [0, 0, 1, 2]


def test_lift_roundtrip():
    t = P("node(node(leaf^2), leaf^3)")
    assert lift(truncate(t, 1)) == t
