from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraisse.core import (
    FINGRAPH,
    FINGRAPH_HOM,
    FINLINORD,
    FINSET,
    Arrow,
    ExplicitCategory,
    chain,
    compose,
    enumerate_objects,
    finset,
    get_category,
    graph,
    hom,
    identity,
    opposite,
)
from fraisse.errors import MismatchedEndpoints, SizeLimitExceeded

CATS = [FINGRAPH, FINLINORD, FINSET]


def brute_hom(cat, a, b):
    """Every map a -> b satisfying the category's defining conditions."""
    injective = getattr(cat, "injective", False)
    reflect = getattr(cat, "reflect", False)
    space = permutations(b.universe, a.size) if injective else product(b.universe, repeat=a.size)
    out = []
    for img in space:
        m = dict(zip(a.universe, img))
        ok = True
        if a.kind != "set":
            for x in a.universe:
                for y in a.universe:
                    if x == y:
                        continue
                    r1, r2 = a.related(x, y), b.related(m[x], m[y])
                    if (r1 and not r2) or (reflect and r2 and not r1):
                        ok = False
        if ok:
            out.append(Arrow(a, b, tuple(img)))
    return out


def test_composing_inclusions_gives_inclusion():
    a, b, c = graph([1]), graph([1, 2]), graph([1, 2, 3])
    f = Arrow(a, b, (1,))
    g = Arrow(b, c, (1, 2))
    assert compose(g, f) == Arrow(a, c, (1,))


def test_edge_into_triangle_into_k4():
    k2 = graph([1, 2], [(1, 2)])
    k3 = graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    k4 = graph([1, 2, 3, 4], [(i, j) for i in range(1, 5) for j in range(i + 1, 5)])
    gf = compose(Arrow(k3, k4, (1, 2, 3)), Arrow(k2, k3, (1, 2)))
    assert gf.as_dict() == {1: 1, 2: 2}
    assert FINGRAPH.is_arrow(gf)


def test_compose_rejects_mismatched_endpoints():
    f = Arrow(chain(1), chain(2), (0,))
    with pytest.raises(MismatchedEndpoints):
        compose(f, f)


def test_hom_examples():
    assert len(hom(FINGRAPH, graph(1), graph(2))) == 2
    assert hom(FINGRAPH, graph(2, [(0, 1)]), graph(2)) == []
    for cat in CATS:
        for a in cat.objects(3):
            assert identity(a) in cat.hom(a, a)


@pytest.mark.parametrize("cat", CATS + [FINGRAPH_HOM], ids=lambda c: c.name)
def test_hom_matches_brute_force_up_to_four(cat):
    objs = cat.objects(4)
    for a in objs:
        for b in objs:
            if cat.size(a) + cat.size(b) > 7:
                continue
            assert sorted(cat.hom(a, b), key=lambda f: f.images) == sorted(
                brute_hom(cat, a, b), key=lambda f: f.images
            )


def test_object_counts():
    assert len(enumerate_objects(FINGRAPH, 3)) == 7
    assert [len(FINGRAPH.objects(n)) for n in range(1, 6)] == [1, 3, 7, 18, 52]
    assert len(enumerate_objects(FINLINORD, 3)) == 3
    assert len(enumerate_objects(FINSET, 2)) == 2
    with pytest.raises(ValueError):
        enumerate_objects(FINSET, 0)


@pytest.mark.parametrize("cat", CATS, ids=lambda c: c.name)
def test_objects_pairwise_non_isomorphic(cat):
    objs = cat.objects(4)
    for i, a in enumerate(objs):
        for b in objs[i + 1 :]:
            assert not cat.is_isomorphic(a, b)


def test_size_limit_is_enforced():
    class Tiny(type(FINSET)):
        max_search = 10

    with pytest.raises(SizeLimitExceeded):
        Tiny().hom(finset(4), finset(4))


def test_opposite_is_an_involution():
    op = opposite(FINLINORD)
    assert opposite(op) is FINLINORD
    c1, c2 = chain(1), chain(2)
    assert [h.base for h in op.hom(c2, c1)] == FINLINORD.hom(c1, c2)
    assert get_category("finlinord^op").hom(c2, c1)[0].base == FINLINORD.hom(c1, c2)[0]


def test_opposite_composition_is_associative():
    op = opposite(FINLINORD)
    objs = op.objects(3)
    arrows = [f for a in objs for b in objs for f in op.hom(a, b)]
    for f in arrows:
        for g in arrows:
            if f.target != g.source:
                continue
            for h in arrows:
                if g.target == h.source:
                    assert op.compose(h, op.compose(g, f)) == op.compose(op.compose(h, g), f)


def test_explicit_category_requires_closure():
    a, b, c = finset(1, "a"), finset(1, "b"), finset(1, "c")
    f, g = Arrow(a, b, (0,)), Arrow(b, c, (0,))
    with pytest.raises(ValueError):
        ExplicitCategory("broken", [a, b, c], [f, g])
    cat = ExplicitCategory("ok", [a, b, c], [f, g, compose(g, f)])
    assert len(cat.all_arrows()) == 6


@st.composite
def composable_graph_triples(draw):
    n = draw(st.integers(1, 3))
    edges = [e for e in [(0, 1), (0, 2), (1, 2)] if max(e) < n and draw(st.booleans())]
    a = graph(n, edges)
    chain_ = [a]
    arrows = []
    for _ in range(3):
        src = chain_[-1]
        extra = draw(st.integers(0, 2))
        m = src.size + extra
        new_edges = list(src.data) + [
            (i, j) for i in range(m) for j in range(max(i + 1, src.size), m) if draw(st.booleans())
        ]
        tgt = graph(m, new_edges)
        perm = draw(st.permutations(range(m)))
        tgt2 = graph(m, [(perm[i], perm[j]) for i, j in tgt.data])
        arrows.append(Arrow(src, tgt2, tuple(perm[i] for i in range(src.size))))
        chain_.append(tgt2)
    return arrows


@settings(max_examples=200, deadline=None)
@given(composable_graph_triples())
def test_graph_composition_laws(arrows):
    f, g, h = arrows
    assert all(FINGRAPH.is_arrow(x) for x in arrows)
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert compose(f, identity(f.source)) == f
    assert compose(identity(f.target), f) == f
    assert FINGRAPH.is_arrow(compose(h, compose(g, f)))
