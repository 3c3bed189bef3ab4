import random

from hypothesis import given, settings, strategies as st

from ttt.dsl import parse_ordinal, parse_tree, print_tree
from ttt.finite import ClassForest, embed_rooted, embed_rooted_oracle, embeds_rooted
from ttt.matching import has_perfect_left_matching
from ttt.ordinal import OMEGA, Ordinal, compare, fundamental_sequence, nat, successor
from ttt.symbolic import DemandCapacityInstance, embeds, equivalent, fit_feasible
from ttt.tree import LEAF, W, FiniteTree, TreeExpr, canonicalize, family, truncate

# ordinals below w^w^2 in CNF
exponents = st.builds(lambda a, b: Ordinal(((nat(1), a), (nat(0), b)) if a and b else
                                            ((nat(1), a),) if a else ((nat(0), b),) if b else ()),
                      st.integers(0, 2), st.integers(0, 3))


@st.composite
def ordinals(draw):
    exps = sorted(set(draw(st.lists(exponents, max_size=3))), reverse=True)
    return Ordinal(tuple((e, draw(st.integers(1, 3))) for e in exps))


limits = ordinals().filter(lambda a: a.is_limit)
mults = st.sampled_from([1, 2, 3, W])


def trees(max_leaves=6):
    def extend(children):
        return st.builds(
            lambda kids, seg: TreeExpr(tuple(kids), seg),
            st.lists(st.tuples(children, mults), min_size=1, max_size=3),
            st.one_of(st.none(), st.sampled_from([OMEGA, parse_ordinal("w*2")])),
        )
    return st.recursive(st.just(LEAF), extend, max_leaves=max_leaves)


canonical_trees = trees().map(canonicalize)


def finite_trees(max_n):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(*[st.integers(0, max(0, v - 1)) for v in range(1, n)]).map(
            lambda ps: FiniteTree((-1,) + tuple(ps))))


@given(ordinals(), ordinals(), ordinals())
def test_compare_total_order(a, b, c):
    assert compare(a, b) == -compare(b, a)
    assert (compare(a, b) == 0) == (a == b)
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0


@given(limits, st.integers(0, 48))
def test_fundamental_sequences_increase(lam, i):
    x, y = fundamental_sequence(lam, i), fundamental_sequence(lam, i + 1)
    assert x < y < lam


@given(ordinals())
def test_successor_is_immediate(a):
    s = successor(a)
    assert s > a and not s.is_limit
    assert parse_ordinal(str(s)) == s


@given(trees())
def test_canonicalize_idempotent(t):
    c = canonicalize(t)
    assert c.is_canonical
    assert canonicalize(c) == c


@given(canonical_trees)
def test_print_parse_round_trip(t):
    assert parse_tree(print_tree(t)) == t
    assert parse_tree(print_tree(t, compact_families=True)) == t


@settings(max_examples=60)
@given(canonical_trees)
def test_embeds_reflexive_and_between_leaf_and_top(t):
    assert embeds(t, t)
    assert embeds(LEAF, t)
    assert equivalent(t, t)


@settings(max_examples=40, deadline=None)
@given(canonical_trees, st.integers(1, 3))
def test_truncations_increase(t, n):
    forest = ClassForest()
    assert forest.embeds(forest.add_truncation(t, n), forest.add_truncation(t, n + 1))
    if n == 1:
        assert embeds_rooted(truncate(t, 1), truncate(t, 2))


@settings(max_examples=300)
@given(finite_trees(7), finite_trees(8))
def test_finite_engine_matches_oracle(T, S):
    assert (embed_rooted(T, S) is not None) == embed_rooted_oracle(T, S)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3),
       st.lists(st.integers(1, 3), min_size=1, max_size=3),
       st.data())
def test_fit_feasible_matches_expanded_matching(demands, capacities, data):
    pairs = [(i, j) for i in range(len(demands)) for j in range(len(capacities))]
    compatible = frozenset(data.draw(st.sets(st.sampled_from(pairs))))
    inst = DemandCapacityInstance(tuple(demands), tuple(capacities), compatible)
    left = [i for i, d in enumerate(demands) for _ in range(d)]
    right = [j for j, c in enumerate(capacities) for _ in range(c)]
    adj = [[k for k, j in enumerate(right) if (i, j) in compatible] for i in left]
    assert fit_feasible(inst) == has_perfect_left_matching(adj, len(right))


def test_canonicalize_idempotent_bulk():
    rng = random.Random(0)

    def grow(depth):
        if depth == 0 or rng.random() < 0.3:
            return LEAF
        kids = tuple((grow(depth - 1), rng.choice([1, 2, W])) for _ in range(rng.randint(1, 3)))
        return TreeExpr(kids, rng.choice([None, None, OMEGA]))

    for _ in range(10_000):
        c = canonicalize(grow(3))
        assert canonicalize(c) == c and c.is_canonical


def test_family_chain_random_pairs():
    rng = random.Random(1)
    grid = [nat(0), nat(2), OMEGA, parse_ordinal("w+2"), parse_ordinal("w*2+1"),
            parse_ordinal("w^2"), parse_ordinal("w^2+w")]
    for _ in range(30):
        a, b = rng.choice(grid), rng.choice(grid)
        assert embeds(family(a), family(b)) == (compare(a, b) <= 0)
