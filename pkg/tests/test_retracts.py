import random

import pytest
from hypothesis import given, settings, strategies as st

from fraisse.core import FINGRAPH_HOM, FINSET, Arrow, compose, finset, graph, identity
from fraisse.errors import MismatchedEndpoints, NoCoherentRetractions
from fraisse.retracts import (
    RP_FINSET,
    RPArrow,
    greedy_lift,
    lift_sequence,
    pointed_constraint,
    proper_amalgamate,
    random_retractive_span,
    rp_compose,
    rp_functoriality_failures,
    rp_identity,
    sets_counterexample,
    verify_proper,
)
from fraisse.sequences import chain_sequence


def _pair(src, dst, e, r):
    return RPArrow(Arrow.from_dict(src, dst, e), Arrow.from_dict(dst, src, r))


A, AB, ABC = finset(["a"]), finset(["a", "b"]), finset(["a", "b", "c"])


def test_pair_must_be_a_retraction():
    with pytest.raises(ValueError):
        _pair(AB, ABC, {"a": "a", "b": "b"}, {"a": "b", "b": "a", "c": "a"})
    with pytest.raises(MismatchedEndpoints):
        RPArrow(Arrow(A, AB, ("a",)), Arrow(AB, AB, ("a", "b")))


def test_compose_sets_example():
    f = _pair(A, AB, {"a": "a"}, {"a": "a", "b": "a"})
    g = _pair(AB, ABC, {"a": "a", "b": "b"}, {"a": "a", "b": "b", "c": "a"})
    gf = rp_compose(g, f)
    assert gf.e.images == ("a",)
    assert gf.r.as_dict() == {"a": "a", "b": "a", "c": "a"}
    assert rp_compose(g, rp_identity(AB)) == g == rp_compose(rp_identity(ABC), g)
    with pytest.raises(MismatchedEndpoints):
        rp_compose(f, g)


def test_hom_matches_brute_force():
    x, y = finset(2), finset(3)
    found = {(p.e.images, p.r.images) for p in RP_FINSET.hom(x, y)}
    brute = {
        (e.images, r.images)
        for e in FINSET.hom(x, y)
        for r in FINSET.hom(y, x)
        if e.injective and compose(r, e) == identity(x)
    }
    assert found == brute and len(found) == 6 * 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    sizes = sorted(rng.randint(1, 4) for _ in range(4))
    objs = [finset(n) for n in sizes]
    arrows = [rng.choice(RP_FINSET.hom(a, b)) for a, b in zip(objs, objs[1:])]
    f, g, h = arrows
    assert rp_compose(h, rp_compose(g, f)) == rp_compose(rp_compose(h, g), f)


def test_sets_counterexample_values():
    out = sets_counterexample()
    assert out["amalgamates"] and not out["proper"]
    assert (out["witness"], out["eg_rf_b"], out["rk_eh_b"]) == ("b", "a", "c")
    assert out["second_identity"]
    assert out["pushout_proper"]
    assert out["report"].witnesses["mixed-X-to-Y"] == ("b", "a", "c")


def test_sets_counterexample_variant_breaks_both():
    out = sets_counterexample(variant=True)
    assert out["amalgamates"] and not out["proper"]
    assert not out["second_identity"]


def test_proper_amalgamate_sets():
    f = _pair(A, AB, {"a": "a"}, {"a": "a", "b": "a"})
    g = _pair(A, finset(["a", "c"]), {"a": "a"}, {"a": "a", "c": "a"})
    h, k = proper_amalgamate(f, g)
    assert h.target.size == 3
    rep = verify_proper(f, g, h, k)
    assert rep.proper and rep.witnesses == {}
    # the new point coming from the other side retracts to the image of a
    new_from_y = k.e("c")
    assert h.r(new_from_y) == "a"
    new_from_x = h.e("b")
    assert k.r(new_from_x) == "a"


def test_identity_span_amalgamates_to_identity_sized_object():
    f = rp_identity(AB)
    h, k = proper_amalgamate(f, f)
    assert h.target.size == 2 and verify_proper(f, f, h, k).proper


@pytest.mark.parametrize("kind", ["set", "graph"])
def test_random_spans_are_properly_amalgamated(kind):
    rng = random.Random(7)
    for _ in range(15):
        f, g = random_retractive_span(rng, kind)
        assert verify_proper(f, g, *proper_amalgamate(f, g)).proper


def test_verify_proper_rejects_non_square():
    f = rp_identity(A)
    with pytest.raises(MismatchedEndpoints):
        verify_proper(f, f, rp_identity(AB), rp_identity(AB))


def test_lift_chain_of_sets():
    objs = [finset(n) for n in range(1, 6)]
    seq = chain_sequence(FINSET, objs, [Arrow(a, b, a.universe) for a, b in zip(objs, objs[1:])])
    lifted = lift_sequence(seq)
    assert lifted.category.name == "rp-finset"
    assert rp_functoriality_failures(lifted) == []
    for i in range(len(seq)):
        for j in range(i, len(seq)):
            assert lifted.bond(i, j).e == seq.bond(i, j)


def test_lift_length_two():
    seq = chain_sequence(FINSET, [finset(1), finset(3)], [Arrow(finset(1), finset(3), (2,))])
    lifted = lift_sequence(seq)
    assert lifted.bond(0, 1).r.images == (0, 0, 0)


def _path_graphs():
    xs = [graph(2, [(0, 1)]), graph(3, [(0, 1)]), graph(4, [(0, 1)])]
    return chain_sequence(FINGRAPH_HOM, xs, [Arrow(a, b, a.universe) for a, b in zip(xs, xs[1:])])


def test_backtracking_beats_greedy_under_a_point_constraint():
    seq = _path_graphs()
    allowed = pointed_constraint(seq, 1)
    assert greedy_lift(seq, allowed) is None
    lifted = lift_sequence(seq, allowed)
    assert rp_functoriality_failures(lifted) == []
    r = lifted.bond(0, 2).r
    assert r(2) == 1 and r(3) == 1


def test_unsatisfiable_constraint_names_a_triple():
    seq = _path_graphs()
    with pytest.raises(NoCoherentRetractions) as err:
        lift_sequence(seq, lambda i, j, r: j < 2)
    assert err.value.triple is not None


def test_bond_without_retraction():
    x, y = graph(2, [(0, 1)]), graph(3, [(0, 1), (1, 2), (0, 2)])
    seq = chain_sequence(FINGRAPH_HOM, [x, y], [Arrow(x, y, (0, 2))])
    # the triangle cannot be folded back onto one of its edges
    assert FINGRAPH_HOM.factor(seq.bond(0, 1), identity(x)) == []
    with pytest.raises(NoCoherentRetractions):
        lift_sequence(seq)
    odd = graph(2, [])
    with pytest.raises(NoCoherentRetractions):
        lift_sequence(chain_sequence(FINGRAPH_HOM, [odd, x], [Arrow(odd, x, (0, 1))]))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_lifted_sequences_are_functorial(extras):
    objs, arrows = [finset(1)], []
    for k in extras:
        nxt = finset(objs[-1].size + k)
        arrows.append(Arrow(objs[-1], nxt, objs[-1].universe))
        objs.append(nxt)
    lifted = lift_sequence(chain_sequence(FINSET, objs, arrows))
    assert rp_functoriality_failures(lifted) == []
