"""Two independent deciders for the k-strong parity property.

``kspp_condition`` checks the component-count condition over every vertex
subset S; ``kspp_definition`` enumerates spanning subgraphs directly.  Both
report the first witness by size, then by bitmask value.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import BudgetError, Graph, GraphError, VertexSet, as_mask, components_after_removal

CONDITION_MAX_N = 24
DEFINITION_MAX_M = 26
DEFINITION_MAX_N = 24


class Outcome(str, enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    BUDGET_EXCEEDED = "budget"


@dataclass(frozen=True)
class Budget:
    max_n_condition: int = CONDITION_MAX_N
    max_m_definition: int = DEFINITION_MAX_M
    max_n_definition: int = DEFINITION_MAX_N


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class ConditionVerdict:
    outcome: Outcome
    witness_S: VertexSet | None = None
    components: int | None = None
    bound: int | None = None

    @property
    def satisfied(self) -> bool:
        return self.outcome is Outcome.SATISFIED


@dataclass(frozen=True)
class DefinitionVerdict:
    outcome: Outcome
    witness_X: VertexSet | None = None
    served_count: int | None = None

    @property
    def satisfied(self) -> bool:
        return self.outcome is Outcome.SATISFIED


@dataclass(frozen=True)
class FactorWitness:
    edges: tuple[tuple[int, int], ...]

    def degrees(self, n: int) -> list[int]:
        deg = [0] * n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class CrossValidation:
    condition: ConditionVerdict
    definition: DefinitionVerdict
    agree: bool
    in_scope: bool
    note: str = ""


def check_k(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 2 or k % 2:
        raise GraphError(f"k must be an even integer >= 2, got {k!r}")


def condition_bound(G: Graph, S, k: int) -> int:
    """sum of d_G(v) over S, minus k|S|, plus 1."""
    mask = as_mask(S, G.n)
    return sum(G.degrees[v] for v in VertexSet(mask, G.n)) - k * mask.bit_count() + 1


def evaluate_condition_at(G: Graph, S, k: int) -> tuple[int, int]:
    """``(c(G-S), bound)`` for a single S."""
    check_k(k)
    return components_after_removal(G, S).count, condition_bound(G, S, k)


def kspp_condition(G: Graph, k: int, max_n: int = CONDITION_MAX_N) -> ConditionVerdict:
    check_k(k)
    if G.n < 1:
        raise GraphError("kspp_condition needs n >= 1")
    if G.n > max_n:
        raise BudgetError(f"condition sweep capped at n <= {max_n}, got n={G.n}")
    found, mask, comps, bound = kernels.condition_sweep(
        G.adjacency_masks(), np.array(G.degrees, dtype=np.int64), G.n, k)
    if not found:
        return ConditionVerdict(Outcome.SATISFIED)
    return ConditionVerdict(Outcome.VIOLATED, VertexSet(int(mask), G.n), int(comps), int(bound))


def _definition_budget_ok(G: Graph, budget: Budget) -> bool:
    return G.edge_count <= budget.max_m_definition and G.n <= budget.max_n_definition


def kspp_definition(G: Graph, k: int, budget: Budget = DEFAULT_BUDGET) -> DefinitionVerdict:
    check_k(k)
    if not _definition_budget_ok(G, budget):
        return DefinitionVerdict(Outcome.BUDGET_EXCEEDED)
    eu, ev = G.edge_arrays()
    served = kernels.definition_sweep(eu, ev, G.n, k)
    first, served_even, odd_served = kernels.scan_served(served, G.n)
    # handshake lemma: a spanning subgraph has an even number of odd vertices
    if odd_served:
        raise AssertionError(f"{odd_served} odd-size sets marked as served")
    if first < 0:
        return DefinitionVerdict(Outcome.SATISFIED, served_count=int(served_even))
    return DefinitionVerdict(Outcome.VIOLATED, VertexSet(int(first), G.n), int(served_even))


def odd_even_factor(G: Graph, X, k: int, budget: Budget = DEFAULT_BUDGET) -> FactorWitness | None:
    """First F (ascending edge mask, edges in lexicographic order) realising X."""
    check_k(k)
    xmask = as_mask(X, G.n)
    if xmask.bit_count() % 2:
        raise GraphError("X must have even size; odd-degree vertices come in pairs")
    if not _definition_budget_ok(G, budget):
        raise BudgetError(f"factor search needs m <= {budget.max_m_definition}, "
                          f"n <= {budget.max_n_definition}")
    eu, ev = G.edge_arrays()
    f = int(kernels.factor_search(eu, ev, G.n, xmask, k))
    if f < 0:
        return None
    edges = G.edges
    return FactorWitness(tuple(edges[i] for i in range(len(edges)) if (f >> i) & 1))


def kspp_cross_validate(G: Graph, k: int, budget: Budget = DEFAULT_BUDGET) -> CrossValidation:
    """Run both deciders.  Off the connected case the definition is authoritative."""
    in_scope = G.is_connected()
    condition = kspp_condition(G, k, budget.max_n_condition)
    definition = kspp_definition(G, k, budget)
    if definition.outcome is Outcome.BUDGET_EXCEEDED:
        agree = False
        note = "definition oracle over budget"
    else:
        agree = condition.outcome is definition.outcome
        note = "" if in_scope else "out of theorem scope: graph is disconnected"
    return CrossValidation(condition, definition, agree, in_scope, note)
