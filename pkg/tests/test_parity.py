import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kspp.graph import (BudgetError, GraphError, VertexSet, build_graph, complete_graph,
                        cycle_graph, enumerate_connected_labeled, path_graph)
from kspp.parity import (Budget, Outcome, kspp_condition, kspp_cross_validate, kspp_definition,
                         odd_even_factor)

import oracles
from test_graph import graphs


def two_triangles():
    return build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


# -- condition oracle --------------------------------------------------------

def test_condition_k1():
    v = kspp_condition(build_graph(1, []), 2)
    assert v.outcome is Outcome.VIOLATED
    assert v.witness_S.members == [0]
    assert (v.components, v.bound) == (0, -1)


def test_condition_c4(c4):
    v = kspp_condition(c4, 2)
    assert v.outcome is Outcome.VIOLATED
    assert v.witness_S.members == [0, 2]
    assert (v.components, v.bound) == (2, 1)
    assert v.components > v.bound


def test_condition_k4(k4):
    assert kspp_condition(k4, 2).satisfied


@pytest.mark.parametrize("k", [0, 1, 3, -2, 2.0, True])
def test_k_validation(k4, k):
    with pytest.raises(GraphError):
        kspp_condition(k4, k)
    with pytest.raises(GraphError):
        kspp_definition(k4, k)


def test_condition_budget():
    with pytest.raises(BudgetError):
        kspp_condition(complete_graph(25), 2)
    assert kspp_condition(complete_graph(25), 2, max_n=25).satisfied


def test_empty_set_is_connectivity():
    v = kspp_condition(two_triangles(), 2)
    assert v.witness_S.members == []
    assert (v.components, v.bound) == (2, 1)


# -- definition oracle -------------------------------------------------------

def test_definition_p3(p3):
    v = kspp_definition(p3, 2)
    assert v.outcome is Outcome.VIOLATED
    assert v.witness_X.members == []


def test_definition_c4(c4):
    v = kspp_definition(c4, 2)
    assert v.outcome is Outcome.VIOLATED
    assert v.witness_X.members == [0, 2]


def test_definition_k4(k4):
    v = kspp_definition(k4, 2)
    assert v.satisfied
    assert v.served_count == 8 == 2 ** (4 - 1)


def test_definition_budget():
    v = kspp_definition(complete_graph(8), 2)  # 28 edges
    assert v.outcome is Outcome.BUDGET_EXCEEDED
    assert v.witness_X is None
    v = kspp_definition(complete_graph(8), 2, Budget(max_m_definition=28))
    assert v.satisfied


def test_disconnected_definition_witness():
    v = kspp_definition(two_triangles(), 2)
    assert v.outcome is Outcome.VIOLATED
    assert v.witness_X.members == [0, 3]


# -- factors -----------------------------------------------------------------

def test_factor_k2():
    assert odd_even_factor(complete_graph(2), {0, 1}, 2).edges == ((0, 1),)


def test_factor_c4(c4):
    assert odd_even_factor(c4, {0, 1}, 2).edges == ((0, 3), (1, 2), (2, 3))
    assert odd_even_factor(c4, {0, 2}, 2) is None


def test_factor_odd_x_rejected(c4):
    with pytest.raises(GraphError):
        odd_even_factor(c4, {0}, 2)


def test_factor_budget():
    with pytest.raises(BudgetError):
        odd_even_factor(complete_graph(8), set(), 2)


@pytest.mark.parametrize("k", [2, 4])
def test_factor_witnesses_valid(k):
    G = complete_graph(6)
    for mask in range(1 << 6):
        X = VertexSet(mask, 6)
        if X.size % 2:
            continue
        F = odd_even_factor(G, X, k)
        assert F is not None
        deg = F.degrees(6)
        for v in range(6):
            if v in X:
                assert deg[v] % 2 == 1
            else:
                assert deg[v] % 2 == 0 and deg[v] >= k


# -- cross validation --------------------------------------------------------

def test_cross_validate_examples(k4, c4):
    r = kspp_cross_validate(k4, 2)
    assert r.agree and r.in_scope and r.condition.satisfied and r.definition.satisfied
    r = kspp_cross_validate(c4, 2)
    assert r.agree and r.condition.outcome is Outcome.VIOLATED
    r = kspp_cross_validate(two_triangles(), 2)
    assert not r.in_scope
    assert "out of theorem scope" in r.note
    assert r.definition.witness_X.members == [0, 3]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("k", [2, 4])
def test_oracles_agree_small(n, k):
    for G in enumerate_connected_labeled(n):
        assert kspp_condition(G, k).outcome is kspp_definition(G, k).outcome


# -- against the slow reference implementations ------------------------------

@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6), st.sampled_from([2, 4]))
def test_condition_matches_reference(G, k):
    v = kspp_condition(G, k)
    ref = oracles.condition_first_violation(G, k)
    if ref is None:
        assert v.satisfied
    else:
        assert (set(v.witness_S.members), v.components, v.bound) == ref


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=5), st.sampled_from([2, 4]))
def test_definition_matches_reference(G, k):
    v = kspp_definition(G, k)
    ref = oracles.definition_first_unserved(G, k)
    if ref is None:
        assert v.satisfied
    else:
        assert set(v.witness_X.members) == ref


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7), st.data())
def test_monotone_under_edge_addition(G, data):
    missing = [(u, v) for u in range(G.n) for v in range(u + 1, G.n) if not G.has_edge(u, v)]
    if not G.is_connected() or not missing:
        return
    u, v = data.draw(st.sampled_from(missing))
    H = G.with_edge(u, v)
    for k in (2, 4):
        if kspp_definition(G, k).satisfied:
            assert kspp_definition(H, k).satisfied
        if kspp_condition(G, k).satisfied:
            assert kspp_condition(H, k).satisfied


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8))
def test_disconnected_never_satisfied(G):
    if G.n >= 2 and not G.is_connected():
        assert kspp_definition(G, 2).outcome is Outcome.VIOLATED
        assert kspp_condition(G, 2).outcome is Outcome.VIOLATED


def test_cycle_and_path_families():
    for n in range(4, 9):
        # two non-adjacent cycle vertices split the rest into two paths
        assert kspp_condition(cycle_graph(n), 2).outcome is Outcome.VIOLATED
    for n in range(2, 9):
        assert kspp_condition(path_graph(n), 2).outcome is Outcome.VIOLATED
    for n in range(3, 9):
        assert kspp_condition(complete_graph(n), 2).satisfied
