import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fraisse.errors import CoconeMismatch, DimensionMismatch, NotIsometric, NotLeftInvertible
from fraisse.normed import (
    amalgamate_norms,
    ck_nonextension_check,
    compose_maps,
    facets,
    identity_map,
    inverse,
    is_isometric,
    isometry_failure,
    linear_map,
    minkowski,
    nullspace,
    pushout_norms,
    rank,
    space,
    sum_norm_space,
    sup_norm_space,
    vec,
)


def random_space(rng, dim):
    while True:
        verts = set()
        for _ in range(rng.randint(dim, dim + 3)):
            v = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim))
            if any(v):
                verts.add(v)
                verts.add(tuple(-x for x in v))
        if rank(sorted(verts)) == dim:
            return space(dim, sorted(verts))


def facet_norm(sp, x):
    """Independent gauge: the largest facet functional value."""
    return max(sum(a * b for a, b in zip(f, x)) for f in facets(sp))


def test_linear_algebra_helpers():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = inverse(m)
    assert [list(r) for r in inv] == [[1, -1], [-1, 2]]
    assert rank([[1, 2], [2, 4]]) == 1
    ns = nullspace([[Fraction(1), Fraction(1), Fraction(0)]], 3)
    assert len(ns) == 2 and all(v[0] + v[1] == 0 for v in ns)


def test_closed_form_norms():
    assert minkowski(sup_norm_space(2), vec(2, 0)) == 2
    assert minkowski(sup_norm_space(3), vec(1, -3, Fraction(1, 2))) == 3
    assert minkowski(sum_norm_space(3), vec(1, -3, Fraction(1, 2))) == Fraction(9, 2)
    assert minkowski(sum_norm_space(2), vec(0, 0)) == 0
    with pytest.raises(DimensionMismatch):
        minkowski(sup_norm_space(2), vec(1, 2, 3))


def test_space_validation():
    with pytest.raises(ValueError):
        space(2, [vec(1, 0), vec(0, 1)])
    with pytest.raises(ValueError):
        space(2, [vec(1, 1), vec(-1, -1)])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_gauge_matches_facet_oracle(seed, dim):
    rng = random.Random(seed)
    sp = random_space(rng, dim)
    x = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(dim))
    assert minkowski(sp, x) == facet_norm(sp, x)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_norm_axioms(seed):
    rng = random.Random(seed)
    sp = random_space(rng, 2)
    x = tuple(Fraction(rng.randint(-5, 5)) for _ in range(2))
    y = tuple(Fraction(rng.randint(-5, 5)) for _ in range(2))
    c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    n = sp.norm
    assert n(tuple(a + b for a, b in zip(x, y))) <= n(x) + n(y)
    assert n(tuple(c * a for a in x)) == abs(c) * n(x)
    assert (n(x) == 0) == (not any(x))
    assert all(n(v) <= 1 for v in sp.vertices)


def test_isometries():
    X = sup_norm_space(1)
    C = sup_norm_space(2)
    assert is_isometric(linear_map(X, C, [[1], [1]]))
    assert is_isometric(linear_map(X, C, [[1], [Fraction(1, 2)]]))
    assert isometry_failure(linear_map(X, C, [[2], [0]]))[0] == "norm exceeds one at"
    assert isometry_failure(linear_map(X, C, [[Fraction(1, 2)], [0]]))[0] == "norm shrinks along facet"
    assert is_isometric(identity_map(C))
    # l1 into l-infinity of dimension 2 via the rotation (x+y, x-y)
    assert is_isometric(linear_map(sum_norm_space(2), C, [[1, 1], [1, -1]]))


def _check_amalgam(am, f, g):
    assert compose_maps(am.f2, f) == compose_maps(am.g2, g)
    assert is_isometric(am.f2) and is_isometric(am.g2)
    for v in f.target.vertices:
        assert minkowski(am.W, am.f2(v)) == minkowski(f.target, v)
    for v in g.target.vertices:
        assert minkowski(am.W, am.g2(v)) == minkowski(g.target, v)
    assert am.mediator_is_unique()


def test_amalgamate_lines_into_planes():
    Z = sup_norm_space(1)
    f = linear_map(Z, sup_norm_space(2), [[1], [1]])
    g = linear_map(Z, sum_norm_space(2), [[1], [0]])
    am = amalgamate_norms(f, g)
    assert am.W.dim == 3
    _check_amalgam(am, f, g)


def test_amalgamate_rejects_non_isometry():
    Z = sup_norm_space(1)
    f = linear_map(Z, sup_norm_space(2), [[2], [0]])
    with pytest.raises(NotIsometric):
        amalgamate_norms(f, f)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_amalgamated_norm_is_isometric_on_random_spans(seed):
    rng = random.Random(seed)
    Z = sup_norm_space(1)
    maps = []
    for _ in range(2):
        X = random_space(rng, 2)
        v = rng.choice(X.vertices)
        maps.append(linear_map(Z, X, [[a] for a in v]))
    f, g = maps
    # a vertex need not be extreme; rescale to norm one
    f = linear_map(Z, f.target, [[a / minkowski(f.target, f.columns()[0])] for a in f.columns()[0]])
    g = linear_map(Z, g.target, [[a / minkowski(g.target, g.columns()[0])] for a in g.columns()[0]])
    _check_amalgam(amalgamate_norms(f, g), f, g)


def test_pushout_mediates_random_cocones():
    Z = sup_norm_space(1)
    X, Y = sup_norm_space(2), sup_norm_space(2)
    f = linear_map(Z, X, [[1], [0]])
    g = linear_map(Z, Y, [[0], [1]])
    fl = linear_map(X, Z, [[1, 0]])
    gl = linear_map(Y, Z, [[0, 1]])
    am = pushout_norms(f, g, fl, gl)
    _check_amalgam(am, f, g)
    rng = random.Random(3)
    U = sup_norm_space(2)
    for _ in range(10):
        p = linear_map(X, U, [[Fraction(rng.randint(-2, 2), 4) for _ in range(2)] for _ in range(2)])
        col = p(vec(1, 0))
        rest = [Fraction(rng.randint(-2, 2), 4) for _ in range(2)]
        q = linear_map(Y, U, [[rest[i], col[i]] for i in range(2)])
        h = am.mediator(p, q)
        assert compose_maps(h, am.f2) == p and compose_maps(h, am.g2) == q
        # contractive cocones factor through a contractive mediator
        assert h.norm_at_most_one()
    bad = linear_map(Y, U, [[0, 1], [0, 1]])
    with pytest.raises(CoconeMismatch):
        am.mediator(linear_map(X, U, [[1, 0], [0, 0]]), bad)


def test_pushout_rejects_bad_left_inverse():
    Z = sup_norm_space(1)
    X = sup_norm_space(2)
    f = linear_map(Z, X, [[1], [0]])
    with pytest.raises(NotLeftInvertible):
        pushout_norms(f, f, linear_map(X, Z, [[2, 0]]), linear_map(X, Z, [[1, 0]]))
    with pytest.raises(NotLeftInvertible):
        pushout_norms(f, f, linear_map(X, Z, [[1, 5]]), linear_map(X, Z, [[1, 0]]))


def test_two_point_nonextension():
    out = ck_nonextension_check()
    assert out["T_isometric"]
    assert (out["isometries"], out["extending"]) == (8, 0)
    assert not out["identity_extends"]
    assert out["norm_u"] == 1
    assert out["norm_preimage"] == 2 == out["lower_bound"]
