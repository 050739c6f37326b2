import pytest

from fraisse.core import FINGRAPH, FINLINORD, FINSET, Arrow, ExplicitCategory, chain, finset, graph, opposite
from fraisse.properties import (
    FAILS,
    HOLDS,
    ListFamily,
    check_amalgamation,
    check_jep,
    find_cocone,
    find_pushout,
    is_cofinal,
    is_dominating,
    is_pushout_up_to,
    one_point_family,
    replay_amalgamation,
    replay_jep,
)

CATS = [FINGRAPH, FINLINORD, FINSET]


def v_shape():
    """Two arrows out of one object with nothing closing them."""
    z, x, y = finset(1, "z"), finset(1, "x"), finset(1, "y")
    return ExplicitCategory("vee", [z, x, y], [Arrow(z, x, (0,)), Arrow(z, y, (0,))])


def two_points():
    return ExplicitCategory("two", [finset(1, "p"), finset(1, "q")])


@pytest.mark.parametrize("cat", CATS, ids=lambda c: c.name)
def test_builtin_categories_amalgamate_and_embed_jointly(cat):
    assert check_amalgamation(cat, 3).verdict == HOLDS
    assert check_jep(cat, 3).verdict == HOLDS


def test_counterexample_category_fails_with_replayable_witness():
    cat = v_shape()
    rep = check_amalgamation(cat, 1)
    assert rep.verdict == FAILS
    assert not replay_amalgamation(cat, rep.witness, 2)
    assert "witness=" in "\n".join(rep.records())


def test_jep_failure_is_replayable():
    cat = two_points()
    rep = check_jep(cat, 1)
    assert rep.verdict == FAILS
    assert not replay_jep(cat, rep.witness, 2)


def test_cocone_found_for_graph_span():
    k1, k2 = graph(1), graph(2, [(0, 1)])
    f = Arrow(k1, k2, (0,))
    f2, g2 = find_cocone(FINGRAPH, f, f, 4)
    assert FINGRAPH.compose(f2, f) == FINGRAPH.compose(g2, f)


def test_sets_pushout_is_union():
    z, x = finset(1), finset(2)
    f = Arrow(z, x, (0,))
    h, k = find_pushout(FINSET, f, f, 3)
    assert h.target.size == 3
    assert is_pushout_up_to(FINSET, f, f, h, k, 3)


def test_pushout_implies_amalgamation_on_span():
    z, x = chain(1), chain(2)
    for f in FINLINORD.hom(z, x):
        for g in FINLINORD.hom(z, x):
            if find_pushout(FINLINORD, f, g, 3) is not None:
                assert find_cocone(FINLINORD, f, g, 6) is not None


def test_verdicts_monotone_in_bound():
    for cat in CATS:
        assert check_amalgamation(cat, 2).holds
        assert check_amalgamation(cat, 1).holds


def test_one_point_family_dominates_graphs():
    rep = is_dominating(FINGRAPH, one_point_family(FINGRAPH, 5), 4)
    assert rep.holds
    assert any("(D1)/(D2)" in n for n in rep.notes)


def test_single_hom_set_does_not_dominate():
    k1, k2 = graph(1), graph(2, [(0, 1)])
    rep = is_dominating(FINGRAPH, ListFamily(FINGRAPH.hom(k1, k2)), 3)
    assert rep.verdict == FAILS
    assert rep.witness[0] == "clause 1"


def test_cofinality_examples():
    assert is_cofinal(FINLINORD, [chain(4)], 4).holds
    assert not is_cofinal(FINGRAPH, [graph(n) for n in range(1, 4)], 3).holds
    assert not is_cofinal(FINGRAPH, [], 3).holds


def test_reversed_amalgamation_via_opposite():
    # pullbacks of orders: spans in the opposite category
    rep = check_amalgamation(opposite(FINLINORD), 2)
    assert rep.verdict in (HOLDS, FAILS)
    if rep.verdict == FAILS:
        assert not replay_amalgamation(opposite(FINLINORD), rep.witness, 4)
