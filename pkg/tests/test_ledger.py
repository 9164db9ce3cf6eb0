from fractions import Fraction
from math import comb

import pytest

from kspp import ledger
from kspp.graph import GraphError, complete_graph, cycle_graph
from kspp.ledger import (LedgerGrid, check_partition, edge_budget_forms, gap_cubic,
                         gap_cubic_at_one, gap_cubic_derivative, gap_linear, run_ledger,
                         verify_balanced_identity, verify_case_bounds, verify_cubic_monotone,
                         verify_das_bound, verify_linear_positive, verify_partition_lemma,
                         verify_singleton_identity)


def test_cubic_spot_values():
    assert gap_cubic(1, 23, 3, 2) == 35
    assert gap_cubic_at_one(23, 3, 2) == 35
    assert gap_cubic_derivative(1, 23, 3, 2) == 29
    with pytest.raises(GraphError):
        gap_cubic(1, 23, 2, 2)


def test_linear_spot_value():
    assert gap_linear(4, 23, 3, 2) == 20


@pytest.mark.parametrize("k", [2, 4])
def test_linear_far_regime_grid(k):
    for delta in range(k + 1, k + 6):
        s = delta + 2 * k + 4
        assert gap_linear(s, (delta - k + 1) * s + 2, delta, k) >= 1


def test_cubic_at_one_grid():
    for k in (2, 4, 6):
        for delta in range(k + 1, k + 8):
            for n in range(1, 200):
                assert gap_cubic(1, n, delta, k) == gap_cubic_at_one(n, delta, k)


def _gstar_formula(n, delta, k):
    return comb(n - (delta - k) * delta - 1, 2) + delta * ((delta - k) * delta + 1)


def _balanced_formula(n, delta, k, s):
    copies = (delta - k) * s + 1
    return (comb(n - (delta + 1 - s) * copies, 2) + s * copies * (delta + 1 - s)
            + copies * comb(delta + 1 - s, 2))


def test_balanced_identity_examples():
    r = verify_balanced_identity(23, 3, 2, 1)
    assert r.holds and r.lhs == 35 == r.rhs
    assert (r.context["e_gstar"], r.context["e_other"]) == (183, 148)
    assert _balanced_formula(23, 3, 2, 1) == 148
    r = verify_balanced_identity(23, 3, 2, 3)
    assert r.holds and r.lhs == 0 == r.rhs
    assert verify_balanced_identity(34, 4, 2, 2).holds


def test_singleton_identity_examples():
    r = verify_singleton_identity(23, 3, 2, 4)
    assert r.holds and r.lhs == 10 == r.rhs
    assert r.context["e_other"] == 173 == comb(18, 2) + 20
    r = verify_singleton_identity(23, 3, 2, 3)
    assert r.holds and r.lhs == 0
    assert verify_singleton_identity(34, 4, 2, 6).holds


def test_identity_not_applicable():
    assert not verify_balanced_identity(8, 3, 2, 2).applicable
    assert not verify_singleton_identity(23, 3, 2, 20).applicable


def test_constructions_match_closed_forms():
    for k in (2, 4):
        for delta in range(k + 1, k + 6):
            for s in range(1, delta + 1):
                n = max((delta - k + 1) * delta + 2, s + (delta + 1 - s) * ((delta - k) * s + 1) + 1)
                r = verify_balanced_identity(n, delta, k, s)
                assert r.context["e_gstar"] == _gstar_formula(n, delta, k)
                assert r.context["e_other"] == _balanced_formula(n, delta, k, s)


def test_corrupted_cubic_detected(monkeypatch):
    real = ledger.gap_cubic
    monkeypatch.setattr(ledger, "gap_cubic", lambda s, n, d, k: real(s, n, d, k) + 2)
    assert not verify_balanced_identity(23, 3, 2, 1).holds


def test_edge_budget_examples():
    assert edge_budget_forms(10, 2, 3, 2) == (40, 40, 40)
    assert edge_budget_forms(5, 2, 3, 2) == (10, 10, 10)


def test_edge_budget_grid():
    count = 0
    for n in range(-5, 20):
        for s in range(-5, 15):
            for t in range(-5, 15):
                for k in (2, 4):
                    forms = edge_budget_forms(n, s, t, k)
                    assert forms.direct == forms.in_n == forms.in_s
                    count += 1
    assert count >= 10_000


def test_partition_examples():
    c = check_partition(1, 1, 3, 8, (4, 2, 1))
    assert c.applicable and (c.lhs, c.rhs) == (14, 17) and c.holds
    assert not check_partition(1, 1, 3, 8, (5, 1, 1)).applicable
    c = check_partition(2, 2, 2, 9, (4, 3))
    assert (c.lhs, c.rhs) == (24, 26) and c.holds
    with pytest.raises(GraphError):
        check_partition(2, 2, 2, 9, (3, 2))  # sums to 5, not n - s = 7


def test_partition_enumeration():
    checks = verify_partition_lemma(1, 1, 3, 8)
    assert [c.parts for c in checks] == [(5, 1, 1), (4, 2, 1), (3, 3, 1), (3, 2, 2)]
    assert [c.applicable for c in checks] == [False, True, True, True]
    with pytest.raises(GraphError):
        verify_partition_lemma(1, 1, 1, 8)


def test_partition_lemma_exhaustive():
    tally = ledger.ledger_partition_lemma(LedgerGrid())
    assert tally.fails == 0 and tally.holds > 500


def test_das_checks(c4):
    r = verify_das_bound(complete_graph(4))
    assert r.holds and r.bound == 6 and r.q == pytest.approx(6)
    r = verify_das_bound(c4)
    assert r.holds and r.bound == Fraction(14, 3)


@pytest.mark.parametrize("k,n_range", [(2, range(6, 16)), (4, range(11, 21))])
def test_case_bounds(k, n_range):
    tallies = verify_case_bounds(k, n_range)
    assert all(t.fails == 0 for t in tallies.values())
    assert tallies["small_gap_bound"].holds > 0
    assert tallies["large_gap_bound"].holds > 0
    assert tallies["empty_remainder"].holds == len(n_range)


def test_case_boundary_tuple():
    k, s, t = 2, 1, 1
    n = s + t + k
    forms = edge_budget_forms(n, s, t, k)
    assert forms.direct == forms.in_n == forms.in_s
    tallies = verify_case_bounds(k, [n])
    assert tallies["large_gap_bound"].holds >= 1


def test_cubic_monotone_examples():
    r = verify_cubic_monotone(23, 3, 2)
    assert r.applicable and r.holds and r.value_at_one == 35
    assert verify_cubic_monotone(34, 4, 2).holds
    assert not verify_cubic_monotone(8, 3, 2).applicable


def test_linear_positive_regimes():
    assert verify_linear_positive(23, 3, 2, 4).regime == "near"
    assert verify_linear_positive(23, 3, 2, 4).holds
    far = verify_linear_positive(2 * 11 + 2, 3, 2, 11)
    assert far.regime == "far" and far.holds
    assert verify_linear_positive(10, 3, 2, 4).regime is None


def test_run_ledger_small():
    tallies = run_ledger(LedgerGrid(random_graphs=50))
    assert sum(t.fails for t in tallies.values()) == 0
    assert all(t.holds > 0 for t in tallies.values())
