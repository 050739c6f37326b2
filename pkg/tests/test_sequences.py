import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraisse.core import FINGRAPH, FINLINORD, FINSET, Arrow, chain, finset, graph
from fraisse.errors import IndexOutOfRange, MismatchedEndpoints
from fraisse.properties import FAILS, HOLDS, INCONCLUSIVE, check_jep
from fraisse.sequences import (
    InductiveSequence,
    SeqArrow,
    SeqTransformation,
    chain_sequence,
    check_A,
    check_E,
    check_U,
    compose_seq_arrows,
    equivalence_failure,
    identity_arrow,
    identity_transformation,
    is_fraisse_object,
    is_natural,
    naturality_failure,
    restrict,
    shift,
    transformations_equivalent,
    validate_sequence,
)


def chains(n):
    return chain_sequence(FINLINORD, [chain(k) for k in range(1, n + 1)])


def test_bonds_compose_and_validate():
    s = chains(5)
    assert s.bond(0, 4).images == (0,)
    assert s.bond(2, 2) == FINLINORD.identity(s[2])
    assert validate_sequence(s) is None
    assert validate_sequence(s, full=True) is None
    with pytest.raises(IndexOutOfRange):
        s.bond(3, 1)


def test_inconsistent_table_is_caught():
    s = chains(4)
    s.bond(0, 2)
    s.set_bond(0, 2, Arrow(s[0], s[2], (2,)))
    assert validate_sequence(s) == (0, 1, 2)


def test_generator_endpoints_checked():
    with pytest.raises(MismatchedEndpoints):
        InductiveSequence(FINLINORD, [chain(1), chain(2)], [Arrow(chain(1), chain(3), (0,))])


def test_restrict_keeps_composites():
    s = chains(6)
    r = restrict(s, [0, 2, 5])
    assert r.bond(0, 2) == s.bond(0, 5)
    with pytest.raises(IndexOutOfRange):
        restrict(s, [2, 1])


def test_identity_transformation_is_natural_and_neutral():
    s = chains(4)
    ident = identity_transformation(s)
    assert is_natural(ident)
    F = shift(ident, 1)
    assert is_natural(F)
    assert transformations_equivalent(F, ident)
    assert identity_arrow(s) == SeqArrow(F)
    assert compose_seq_arrows(identity_arrow(s), SeqArrow(F)) == SeqArrow(F)


def test_non_commuting_component_breaks_equivalence():
    s = chain_sequence(FINLINORD, [chain(2), chain(3)])
    ident = identity_transformation(s)
    bad = SeqTransformation(s, s, [1, 1], [Arrow(s[0], s[1], (1, 2)), FINLINORD.identity(s[1])])
    assert naturality_failure(bad) is not None
    assert equivalence_failure(ident, bad) is not None
    assert not transformations_equivalent(ident, bad)


def _shifts(s):
    ident = identity_transformation(s)
    return [ident, shift(ident, 1), shift(ident, 2), shift(ident, 3)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_equivalence_is_an_equivalence_relation(a, b, c):
    ts = _shifts(chains(4))
    F, G, H = ts[a], ts[b], ts[c]
    assert transformations_equivalent(F, F)
    assert transformations_equivalent(F, G) == transformations_equivalent(G, F)
    if transformations_equivalent(F, G) and transformations_equivalent(G, H):
        assert transformations_equivalent(F, H)


def test_check_U_examples():
    assert check_U(chains(3), 3).holds
    rep = check_U(chain_sequence(FINGRAPH, [graph(1), graph(2), graph(3)]), 2)
    assert rep.verdict == FAILS


def test_check_A_on_chains_fails_with_explicit_horizon():
    # chains never absorb an arrow that hits the right end point
    rep = check_A(chains(4), 2, horizon=3)
    assert rep.verdict == FAILS


def test_check_A_beyond_settled_horizon_is_inconclusive(linorder_seq):
    short = restrict(linorder_seq, range(3))
    short.meta.update(linorder_seq.meta)
    rep = check_A(short, 3)
    assert rep.verdict in (HOLDS, INCONCLUSIVE)


def test_check_E_fails_for_graph_objects_without_retractions():
    seq = chain_sequence(FINGRAPH, [graph(1), graph(2)])
    rep = check_E(seq, 2, horizon=1)
    assert rep.verdict == FAILS


def test_fraisse_object_of_sets():
    assert is_fraisse_object(FINSET, finset(1), 3).holds
    assert not is_fraisse_object(FINSET, finset(2), 3).holds
    assert not is_fraisse_object(FINGRAPH, graph(2), 3).holds


def test_U_and_A_imply_jep(graph_seq):
    if check_U(graph_seq, 3).holds and check_A(graph_seq, 3).holds:
        assert check_jep(FINGRAPH, 3).holds
