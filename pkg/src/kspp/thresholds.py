"""Exact premises and thresholds of the size and spectral sufficient
conditions, plus auditors that test a concrete graph against them."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .graph import BudgetError, Graph, GraphError, check_gstar_params, components_after_removal
from .parity import CONDITION_MAX_N, ConditionVerdict, check_k, kspp_condition
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, q_spectral_radius

DEFAULT_EPS = 1e-9


class AuditOutcome(str, enum.Enum):
    CONSISTENT = "consistent"
    PREMISE_UNMET = "premise-unmet"
    NOT_TRIGGERED = "not-triggered"
    EXCEPTION_CLAUSE = "exception-clause"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class TheoremReport:
    theorem: str  # "size" or "spectral"
    premise_met: bool
    failed_premise: str | None
    threshold: Fraction | None
    measured: int | float | None
    triggered: bool
    property_verdict: ConditionVerdict | None
    outcome: AuditOutcome
    borderline: bool = False
    recognized_gstar: bool = False
    note: str = ""


def gstar_edge_count(n: int, delta: int, k: int) -> int:
    check_gstar_params(n, delta, k)
    return comb(n - (delta - k) * delta - 1, 2) + delta * ((delta - k) * delta + 1)


def _size_bound_terms(delta: int, k: int) -> tuple[Fraction, int]:
    a = delta * delta + (2 - k) * delta - 2 * k - 1
    return (Fraction(a * a, 6 * (delta - k)) + delta + k + 1,
            delta * delta + 4 * delta - k * k + 6)


def size_premise_bound(delta: int, k: int) -> Fraction:
    check_k(k)
    if delta <= k:
        raise GraphError(f"size premise needs delta >= k + 1, got delta={delta}, k={k}")
    return max(_size_bound_terms(delta, k))


def size_premise(n: int, delta: int, k: int) -> bool:
    return n >= size_premise_bound(delta, k)


def spectral_premise(n: int, k: int) -> bool:
    """n >= (2k + 3 + sqrt(8k^2 - 8k + 1)) / 2, by squaring."""
    check_k(k)
    lhs = 2 * n - 2 * k - 3
    return lhs >= 0 and lhs * lhs >= 8 * k * k - 8 * k + 1


def q_threshold(n: int, k: int) -> Fraction:
    if n < 2:
        raise GraphError("q_threshold needs n >= 2")
    return 2 * (n - 2) + Fraction(2 * k - 2, n - 1)


def recognize_gstar(G: Graph, k: int) -> bool:
    """True iff G is K_delta join (K_r + ((delta-k)delta+1) K_1) with delta = min degree.

    Checked directly: exactly delta universal vertices, and after removing
    them the rest splits into cliques of sizes {r, 1, 1, ..., 1}.
    """
    n, delta = G.n, G.min_degree
    try:
        check_gstar_params(n, delta, k)
    except GraphError:
        return False
    full = (1 << n) - 1
    universal = 0
    for v in range(n):
        if G.masks[v] | (1 << v) == full:
            universal |= 1 << v
    if universal.bit_count() != delta:
        return False
    parts = components_after_removal(G, universal)
    groups: dict[int, int] = {}
    for v, comp in enumerate(parts.assignment):
        if comp is not None:
            groups[comp] = groups.get(comp, 0) | (1 << v)
    rest = ~universal & full
    for members in groups.values():
        for v in range(n):
            if (members >> v) & 1 and G.masks[v] & rest != members ^ (1 << v):
                return False
    sizes = sorted((m.bit_count() for m in groups.values()), reverse=True)
    singles = (delta - k) * delta + 1
    return sizes == [n - (delta - k + 1) * delta - 1] + [1] * singles


def _run_condition(G: Graph, k: int, max_n: int) -> ConditionVerdict | None:
    try:
        return kspp_condition(G, k, max_n)
    except BudgetError:
        return None


def audit_size_theorem(G: Graph, k: int, max_n: int = CONDITION_MAX_N) -> TheoremReport:
    """Confront G with the edge-count sufficient condition (minimum degree form)."""
    check_k(k)
    delta = G.min_degree
    failed = None
    if not G.is_connected():
        failed = "graph is not connected"
    elif delta < k + 1:
        failed = f"minimum degree {delta} < k + 1 = {k + 1}"
    elif not size_premise(G.n, delta, k):
        failed = f"n = {G.n} below the order bound {size_premise_bound(delta, k)}"
    elif G.n - (delta - k + 1) * delta - 1 < 1:
        failed = "extremal graph undefined for these parameters"
    if failed:
        return TheoremReport("size", False, failed, None, G.edge_count, False, None,
                             AuditOutcome.PREMISE_UNMET)
    threshold = Fraction(gstar_edge_count(G.n, delta, k))
    triggered = G.edge_count >= threshold
    if not triggered:
        return TheoremReport("size", True, None, threshold, G.edge_count, False, None,
                             AuditOutcome.NOT_TRIGGERED)
    verdict = _run_condition(G, k, max_n)
    gstar = recognize_gstar(G, k)
    if gstar:
        outcome = AuditOutcome.EXCEPTION_CLAUSE
    elif verdict is None:
        outcome = AuditOutcome.UNDETERMINED
    elif verdict.satisfied:
        outcome = AuditOutcome.CONSISTENT
    else:
        outcome = AuditOutcome.COUNTEREXAMPLE
    note = "" if verdict is not None else "condition oracle over budget"
    return TheoremReport("size", True, None, threshold, G.edge_count, True, verdict, outcome,
                         recognized_gstar=gstar, note=note)


def audit_spectral_theorem(G: Graph, k: int, eps: float = DEFAULT_EPS,
                           tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                           max_n: int = CONDITION_MAX_N, q=None) -> TheoremReport:
    """Confront G with the signless-Laplacian sufficient condition.

    ``q`` may carry a precomputed :class:`SpectralEstimate`.  Estimates within
    ``eps`` of the threshold are borderline and never triggered.
    """
    check_k(k)
    if eps <= 0:
        raise GraphError("eps must be positive")
    failed = None
    if not G.is_connected():
        failed = "graph is not connected"
    elif not spectral_premise(G.n, k):
        failed = f"n = {G.n} below the order bound for k = {k}"
    if failed:
        threshold = q_threshold(G.n, k) if G.n >= 2 else None
        measured = None
        if q is not None:
            measured = q.value
        return TheoremReport("spectral", False, failed, threshold, measured, False, None,
                             AuditOutcome.PREMISE_UNMET)
    threshold = q_threshold(G.n, k)
    if q is None:
        q = q_spectral_radius(G, tol, max_iter)
    if not q.converged:
        return TheoremReport("spectral", True, None, threshold, q.value, False, None,
                             AuditOutcome.UNDETERMINED,
                             note=f"power iteration stopped at residual {q.residual:.3g}")
    gap = q.value - float(threshold)
    borderline = abs(gap) <= eps
    triggered = gap > eps
    if not triggered:
        return TheoremReport("spectral", True, None, threshold, q.value, False, None,
                             AuditOutcome.NOT_TRIGGERED, borderline=borderline)
    verdict = _run_condition(G, k, max_n)
    if verdict is None:
        outcome = AuditOutcome.UNDETERMINED
    elif verdict.satisfied:
        outcome = AuditOutcome.CONSISTENT
    else:
        outcome = AuditOutcome.COUNTEREXAMPLE
    return TheoremReport("spectral", True, None, threshold, q.value, True, verdict, outcome,
                         note="" if verdict is not None else "condition oracle over budget")

