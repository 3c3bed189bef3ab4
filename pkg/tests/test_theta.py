import pytest

from ttt.dsl import parse_tree as P
from ttt.ordinal import OMEGA
from ttt.theta import (
    NotASuffix,
    Verdict,
    gamma,
    gamma_family_index,
    gamma_family_reach,
    lemma_soundness_check,
    leq_gamma,
    leq_theta,
    theta,
)
from ttt.tree import family


def test_gamma_examples():
    assert str(gamma(P("leaf"), P("leaf"))) == "(0,{})"
    assert str(gamma(P("node(leaf^w)"), P("node(leaf^w)"))) == "(0,{leaf^w})"
    assert str(gamma(P("node(leaf^w)"), P("leaf"))) == "(0,{})"


def test_gamma_rejects_foreign_suffix():
    with pytest.raises(NotASuffix):
        gamma(P("node(leaf)"), P("node(leaf^2)"))


def test_theta_examples():
    assert str(theta(P("leaf"))) == "{(0,{}):1}"
    assert str(theta(P("node(leaf^w)"))) == "{(0,{leaf^w}):1, (0,{}):w}"
    assert str(theta(P("node(leaf^2)"))) == "{(0,{leaf^2}):1, (0,{}):2}"
    assert str(theta(family(2))) == "{(0,{leaf^w}):w, (0,{node(leaf^w)^w}):1, (0,{}):w}"
    assert str(theta(family(OMEGA))) == "{(0,{;seg=w}):1, fam<w:w}"


def test_leq_examples():
    g = gamma(P("node(leaf^3)"), P("node(leaf^3)"))
    h = gamma(P("node(leaf^w)"), P("node(leaf^w)"))
    assert leq_gamma(g, h) and not leq_gamma(h, g)
    assert leq_theta(theta(P("node(leaf^3)")), theta(P("node(leaf^w)")))
    assert not leq_theta(theta(P("node(leaf^w)")), theta(P("node(leaf^3)")))


def test_family_block_helpers():
    assert gamma_family_index(gamma(family(OMEGA), family(OMEGA))) == OMEGA
    assert gamma_family_reach(gamma(P("node(leaf^w)"), P("node(leaf^w)"))) == 2


def test_soundness_examples():
    assert lemma_soundness_check(P("node(leaf^3)"), P("node(leaf^w)")) is Verdict.HOLDS
    assert lemma_soundness_check(family(2), family(2)) is Verdict.HOLDS
    assert lemma_soundness_check(P("node(leaf^w)"), P("node(leaf^3)")) is Verdict.NOT_APPLICABLE
    assert Verdict.HOLDS.value == "holds"


def test_theta_chain_on_families():
    fams = [family(k) for k in range(4)] + [family(OMEGA)]
    for i, a in enumerate(fams):
        for b in fams[i:]:
            assert leq_theta(theta(a), theta(b))
