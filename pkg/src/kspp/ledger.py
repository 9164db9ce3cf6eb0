"""Exact checks of the algebra behind the size and spectral sufficient conditions.

Each identity compares an edge count taken from a constructed graph with a
polynomial evaluated in integer or rational arithmetic, so the two sides
never share a code path.  Sweeps return a :class:`Tally` per check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable, NamedTuple

import numpy as np

from .graph import (Graph, GraphError, PartitionSpec, build_extremal_gstar,
                    build_join_clique_union)
from .random_graphs import random_connected_graph
from .spectral import DEFAULT_TOL, das_bound, q_spectral_radius
from .thresholds import q_threshold, spectral_premise


@dataclass
class Tally:
    holds: int = 0
    fails: int = 0
    not_applicable: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, context=None) -> None:
        if ok:
            self.holds += 1
        else:
            self.fails += 1
            if len(self.failures) < 20:
                self.failures.append(context)

    def skip(self) -> None:
        self.not_applicable += 1

    def merge(self, other: Tally) -> None:
        self.holds += other.holds
        self.fails += other.fails
        self.not_applicable += other.not_applicable
        self.failures.extend(other.failures[: 20 - len(self.failures)])

    def as_dict(self) -> dict:
        return {"holds": self.holds, "fails": self.fails, "not_applicable": self.not_applicable}


@dataclass(frozen=True)
class IdentityReport:
    lhs: int | Fraction | None
    rhs: int | Fraction | None
    holds: bool
    context: dict
    applicable: bool = True


def _need_delta_above_k(delta: int, k: int) -> None:
    if delta <= k:
        raise GraphError(f"need delta > k, got delta={delta}, k={k}")


def _axis_numerator(delta: int, k: int) -> int:
    return delta * delta + (2 - k) * delta - 2 * k - 1


# -- polynomials -------------------------------------------------------------

def gap_cubic(s, n: int, delta: int, k: int):
    """Cubic c(s) with e(G*) - e(K_s v (K_r + ((delta-k)s+1) K_{delta+1-s})) = (delta-s) c(s) / 2."""
    _need_delta_above_k(delta, k)
    d = delta - k
    a = _axis_numerator(delta, k)
    return (d * d * s ** 3 - d * a * s ** 2 + d * (2 * n - 2 * delta - k - 4) * s
            - 2 * (d - 1) * n + delta ** 3 + (2 - 2 * k) * delta ** 2
            + (k * k - 2 * k + 1) * delta - 3 * k - 2)


def gap_cubic_derivative(x, n: int, delta: int, k: int):
    _need_delta_above_k(delta, k)
    d = delta - k
    return 3 * d * d * x * x - 2 * d * _axis_numerator(delta, k) * x + d * (2 * n - 2 * delta - k - 4)


def gap_cubic_at_one(n: int, delta: int, k: int) -> int:
    """Reduced closed form of the cubic at s = 1."""
    _need_delta_above_k(delta, k)
    return 2 * n - delta * delta + (k - 2) * delta - 2


def gap_linear(s, n: int, delta: int, k: int):
    """Linear l(s) with e(G*) - e(K_s v (K_r + ((delta-k)s+1) K_1)) = (s-delta) l(s) / 2."""
    _need_delta_above_k(delta, k)
    d = delta - k
    return (2 * d * n - d * (d + 2) * s - delta ** 3 + (2 * k - 2) * delta ** 2
            - (k * k - 2 * k + 3) * delta + 3 * k - 2)


class EdgeBudget(NamedTuple):
    """Twice the edge bound for a graph failing the condition at |S| = s with
    t components, in three algebraically equal forms."""
    direct: int
    in_n: int
    in_s: int


def edge_budget_forms(n: int, s: int, t: int, k: int) -> EdgeBudget:
    r = n - s - t
    direct = r * (r + 1) + 2 * t + 2 * k * s - 4
    in_n = n * n - (2 * s + 2 * t - 1) * n + s * s + (2 * t + 2 * k - 1) * s + t * t + t - 4
    in_s = s * s - (2 * n - 2 * t - 2 * k + 1) * s + (n - t) * (n - t + 1) + 2 * t - 4
    return EdgeBudget(direct, in_n, in_s)


# -- extremal constructions --------------------------------------------------

def balanced_spec(n: int, delta: int, k: int, s: int) -> PartitionSpec:
    """K_s v (K_{n-s-(delta+1-s)((delta-k)s+1)} + ((delta-k)s+1) K_{delta+1-s})."""
    if not 1 <= s <= delta:
        raise GraphError(f"need 1 <= s <= delta, got s={s}")
    copies = (delta - k) * s + 1
    big = n - s - (delta + 1 - s) * copies
    if big < 1:
        raise GraphError(f"large clique would have {big} vertices")
    return PartitionSpec(s, [big] + [delta + 1 - s] * copies)


def singleton_spec(n: int, delta: int, k: int, s: int) -> PartitionSpec:
    """K_s v (K_{n-(delta-k+1)s-1} + ((delta-k)s+1) K_1)."""
    if s < 1:
        raise GraphError(f"need s >= 1, got s={s}")
    big = n - (delta - k + 1) * s - 1
    if big < 1:
        raise GraphError(f"large clique would have {big} vertices")
    return PartitionSpec(s, [big] + [1] * ((delta - k) * s + 1))


def _na(context) -> IdentityReport:
    return IdentityReport(None, None, False, context, applicable=False)


def verify_balanced_identity(n: int, delta: int, k: int, s: int) -> IdentityReport:
    """e(G*) - e(balanced) == (delta - s) * gap_cubic(s) / 2."""
    context = {"n": n, "delta": delta, "k": k, "s": s}
    try:
        gstar = build_extremal_gstar(n, delta, k)
        other = build_join_clique_union(balanced_spec(n, delta, k, s))
    except GraphError:
        return _na(context)
    lhs = gstar.edge_count - other.edge_count
    rhs = Fraction((delta - s) * gap_cubic(s, n, delta, k), 2)
    context.update(e_gstar=gstar.edge_count, e_other=other.edge_count)
    return IdentityReport(lhs, rhs, lhs == rhs, context)


def verify_singleton_identity(n: int, delta: int, k: int, s: int) -> IdentityReport:
    """e(G*) - e(singleton) == (s - delta) * gap_linear(s) / 2."""
    context = {"n": n, "delta": delta, "k": k, "s": s}
    try:
        gstar = build_extremal_gstar(n, delta, k)
        other = build_join_clique_union(singleton_spec(n, delta, k, s))
    except GraphError:
        return _na(context)
    lhs = gstar.edge_count - other.edge_count
    rhs = Fraction((s - delta) * gap_linear(s, n, delta, k), 2)
    context.update(e_gstar=gstar.edge_count, e_other=other.edge_count)
    return IdentityReport(lhs, rhs, lhs == rhs, context)


# -- partition lemma ---------------------------------------------------------

@dataclass(frozen=True)
class PartitionCheck:
    parts: tuple[int, ...]
    applicable: bool
    lhs: int | None = None
    rhs: int | None = None

    @property
    def holds(self) -> bool:
        return self.applicable and self.lhs < self.rhs


def _partitions(total: int, parts: int, low: int, high: int) -> Iterable[tuple[int, ...]]:
    # non-increasing tuples of `parts` integers in [low, high] summing to total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(high, total - low * (parts - 1)), low - 1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, low, first):
            yield (first,) + rest


def _check_partition_params(s: int, p: int, t: int, n: int) -> None:
    if s < 0 or t < 2 or p < 1 or n < s + p * t:
        raise GraphError(f"need s >= 0, t >= 2, p >= 1, n >= s + p*t; got s={s}, p={p}, t={t}, n={n}")


def check_partition(s: int, p: int, t: int, n: int, parts: Iterable[int]) -> PartitionCheck:
    """Compare one clique partition against the skewed partition (n-s-p(t-1), p, ..., p)."""
    _check_partition_params(s, p, t, n)
    parts = tuple(parts)
    if (len(parts) != t or sum(parts) != n - s or min(parts) < p
            or any(a < b for a, b in zip(parts, parts[1:]))):
        raise GraphError(f"{parts} is not a non-increasing partition of {n - s} "
                         f"into {t} parts of size >= {p}")
    largest = n - s - p * (t - 1)
    if parts[0] >= largest:
        return PartitionCheck(parts, False)
    lhs = build_join_clique_union(PartitionSpec(s, parts)).edge_count
    rhs = build_join_clique_union(PartitionSpec(s, [largest] + [p] * (t - 1))).edge_count
    return PartitionCheck(parts, True, lhs, rhs)


def verify_partition_lemma(s: int, p: int, t: int, n: int) -> list[PartitionCheck]:
    """Every partition with parts >= p, checked or marked not applicable."""
    _check_partition_params(s, p, t, n)
    return [check_partition(s, p, t, n, parts) for parts in _partitions(n - s, t, p, n - s)]


# -- spectral bound ----------------------------------------------------------

@dataclass(frozen=True)
class DasCheck:
    q: float
    bound: Fraction
    holds: bool | None  # None when the estimate did not converge


def verify_das_bound(G: Graph, tol: float = DEFAULT_TOL) -> DasCheck:
    bound = das_bound(G)
    est = q_spectral_radius(G, tol)
    if not est.converged:
        return DasCheck(est.value, bound, None)
    return DasCheck(est.value, bound, est.value <= float(bound) + 10 * tol)


# -- case analysis of the spectral argument ----------------------------------

CASE_CHECKS = ("expansions", "small_gap_monotone", "small_gap_bound", "small_gap_final",
               "large_gap_monotone", "large_gap_bound", "large_gap_final", "empty_remainder")


def verify_case_bounds(k: int, n_values: Iterable[int]) -> dict[str, Tally]:
    """Sweep every (n, s, t) and check the bound used in its regime.

    Regimes: t >= 1 and s+t <= n <= s+t+k-1 ("small gap"), t >= 1 and
    n >= s+t+k ("large gap"), t = 0 with s = n ("empty remainder").  Final
    rational inequalities are checked only when n meets the order premise.
    """
    tallies = {name: Tally() for name in CASE_CHECKS}
    for n in n_values:
        premise = spectral_premise(n, k)
        threshold = q_threshold(n, k) if n >= 2 else None
        for s in range(1, n + 1):
            for t in range(0, n - s + 1):
                ctx = (n, s, t, k)
                forms = edge_budget_forms(n, s, t, k)
                tallies["expansions"].record(forms.direct == forms.in_n == forms.in_s, ctx)
                m = forms.direct
                small = t >= 1 and n <= s + t + k - 1
                large = t >= 1 and n >= s + t + k
                if small:
                    peak = edge_budget_forms(s + t + k - 1, s, t, k).in_n
                    tallies["small_gap_monotone"].record(
                        m <= peak and peak == k * (k - 1) + 2 * k * (s + t) - (2 * k - 2) * t - 4, ctx)
                    cap = 2 * k * n + k * (k - 3) - 2
                    tallies["small_gap_bound"].record(m <= cap, ctx)
                    if premise:
                        tallies["small_gap_final"].record(
                            Fraction(m, n - 1) + n - 2 <= threshold
                            and Fraction(cap, n - 1) + n - 2 <= threshold, ctx)
                    else:
                        tallies["small_gap_final"].skip()
                else:
                    for name in ("small_gap_monotone", "small_gap_bound", "small_gap_final"):
                        tallies[name].skip()
                if large:
                    at_one = edge_budget_forms(n, 1, t, k).in_s
                    tallies["large_gap_monotone"].record(
                        m <= at_one and at_one == n * n - 3 * n + 2 * k - (t - 1) * (2 * n - t - 4), ctx)
                    cap = n * n - 3 * n + 2 * k
                    tallies["large_gap_bound"].record(m <= cap, ctx)
                    if premise:
                        tallies["large_gap_final"].record(
                            Fraction(m, n - 1) + n - 2 <= threshold
                            and Fraction(cap, n - 1) + n - 2 == threshold, ctx)
                    else:
                        tallies["large_gap_final"].skip()
                else:
                    for name in ("large_gap_monotone", "large_gap_bound", "large_gap_final"):
                        tallies[name].skip()
                if t == 0 and s == n and premise:
                    # sum of degrees <= kn - 2 caps the edge count
                    edges = Fraction(k * n - 2, 2)
                    tallies["empty_remainder"].record(
                        Fraction(2 * edges, n - 1) + n - 2 < threshold, ctx)
                else:
                    tallies["empty_remainder"].skip()
    return tallies


# -- monotonicity of the cubic and positivity of the linear factor -----------

@dataclass(frozen=True)
class MonotoneCheck:
    applicable: bool
    axis: Fraction | None = None
    min_derivative: Fraction | None = None
    value_at_one: int | None = None
    holds: bool = False


def cubic_order_bound(delta: int, k: int) -> Fraction:
    a = _axis_numerator(delta, k)
    return Fraction(a * a, 6 * (delta - k)) + delta + k + 1


def verify_cubic_monotone(n: int, delta: int, k: int) -> MonotoneCheck:
    """Derivative of the cubic is >= 0 on [1, delta] and the cubic is positive at 1.

    The derivative is a convex quadratic, so its minimum over the interval is
    at the axis when the axis lies inside, otherwise at an endpoint.
    """
    _need_delta_above_k(delta, k)
    if n < cubic_order_bound(delta, k):
        return MonotoneCheck(False)
    axis = Fraction(_axis_numerator(delta, k), 3 * (delta - k))
    if 1 <= axis <= delta:
        points = [axis]
    else:
        points = [Fraction(1), Fraction(delta)]
    low = min(gap_cubic_derivative(x, n, delta, k) for x in points)
    at_one = gap_cubic(1, n, delta, k)
    ok = (low >= 0 and low >= (delta - k) * (k - 2) and at_one > 0
          and at_one == gap_cubic_at_one(n, delta, k)
          and all(gap_cubic(s, n, delta, k) >= at_one for s in range(1, delta + 1)))
    return MonotoneCheck(True, axis, low, at_one, ok)


@dataclass(frozen=True)
class LinearCheck:
    regime: str | None  # "far", "near" or None when outside both
    value: int | None = None
    floor: int | None = None
    holds: bool = False


def verify_linear_positive(n: int, delta: int, k: int, s: int) -> LinearCheck:
    """Lower bounds on the linear factor for apex sizes s > delta.

    far:  s >= delta+2k+4 and n >= (delta-k+1)s+2 gives a value >= 1;
    near: delta+1 <= s <= delta+2k+3 and n >= delta^2+4delta-k^2+6 gives >= 2.
    """
    _need_delta_above_k(delta, k)
    if s >= delta + 2 * k + 4 and n >= (delta - k + 1) * s + 2:
        regime, floor = "far", 1
    elif delta + 1 <= s <= delta + 2 * k + 3 and n >= delta * delta + 4 * delta - k * k + 6:
        regime, floor = "near", 2
    else:
        return LinearCheck(None)
    value = gap_linear(s, n, delta, k)
    return LinearCheck(regime, value, floor, value >= floor)


# -- full ledger run ---------------------------------------------------------

@dataclass(frozen=True)
class LedgerGrid:
    ks: tuple[int, ...] = (2, 4)
    delta_span: int = 5
    n_span: int = 6
    case_n_max: int = 20
    partition_s_max: int = 3
    partition_t_max: int = 4
    partition_p_max: int = 3
    partition_n_max: int = 14
    random_graphs: int = 1000
    random_n_max: int = 30
    seed: int = 20240601
    tol: float = DEFAULT_TOL


def _balanced_min_n(delta: int, k: int, s: int) -> int:
    return max((delta - k + 1) * delta + 2, s + (delta + 1 - s) * ((delta - k) * s + 1) + 1)


def _singleton_min_n(delta: int, k: int, s: int) -> int:
    return max((delta - k + 1) * delta + 2, (delta - k + 1) * s + 2)


def _record_identity(tally: Tally, report: IdentityReport) -> None:
    if report.applicable:
        tally.record(report.holds, report.context)
    else:
        tally.skip()


def ledger_identities(grid: LedgerGrid) -> dict[str, Tally]:
    out = {"balanced_identity": Tally(), "singleton_identity": Tally(),
           "cubic_at_one": Tally(), "cubic_monotone": Tally(), "linear_positive": Tally()}
    for k in grid.ks:
        for delta in range(k + 1, k + grid.delta_span + 1):
            for s in range(1, delta + 1):
                n0 = _balanced_min_n(delta, k, s)
                for n in range(n0, n0 + grid.n_span + 1):
                    _record_identity(out["balanced_identity"], verify_balanced_identity(n, delta, k, s))
                    out["cubic_at_one"].record(
                        gap_cubic(1, n, delta, k) == gap_cubic_at_one(n, delta, k), (n, delta, k))
            for s in range(1, delta + 2 * k + 8):
                n0 = _singleton_min_n(delta, k, s)
                for n in range(n0, n0 + grid.n_span + 1):
                    _record_identity(out["singleton_identity"], verify_singleton_identity(n, delta, k, s))
            n0 = ceil(cubic_order_bound(delta, k))
            for n in range(n0 - 2, n0 + grid.n_span + 1):
                mono = verify_cubic_monotone(n, delta, k)
                if mono.applicable:
                    out["cubic_monotone"].record(mono.holds, (n, delta, k))
                else:
                    out["cubic_monotone"].skip()
            near_n = delta * delta + 4 * delta - k * k + 6
            for s in range(delta + 1, delta + 2 * k + 10):
                far_n = (delta - k + 1) * s + 2
                start = min(near_n, far_n)
                for n in range(start, max(near_n, far_n) + grid.n_span + 1):
                    lin = verify_linear_positive(n, delta, k, s)
                    if lin.regime is None:
                        out["linear_positive"].skip()
                    else:
                        out["linear_positive"].record(lin.holds, (n, delta, k, s))
    return out


def ledger_partition_lemma(grid: LedgerGrid) -> Tally:
    tally = Tally()
    for s in range(0, grid.partition_s_max + 1):
        for t in range(2, grid.partition_t_max + 1):
            for p in range(1, grid.partition_p_max + 1):
                for n in range(s + p * t, grid.partition_n_max + 1):
                    for check in verify_partition_lemma(s, p, t, n):
                        if check.applicable:
                            tally.record(check.holds, (s, p, t, n, check.parts))
                        else:
                            tally.skip()
    return tally


def ledger_das_sweep(grid: LedgerGrid) -> Tally:
    rng = np.random.default_rng(grid.seed)
    tally = Tally()
    for _ in range(grid.random_graphs):
        n = int(rng.integers(2, grid.random_n_max + 1))
        G = random_connected_graph(n, float(rng.random()), rng)
        check = verify_das_bound(G, grid.tol)
        if check.holds is None:
            tally.skip()
        else:
            tally.record(check.holds, (n, G.edge_count, check.q, str(check.bound)))
    return tally


def run_ledger(grid: LedgerGrid = LedgerGrid()) -> dict[str, Tally]:
    """Run every check; returns tallies keyed by check name."""
    for k in grid.ks:
        if k < 2 or k % 2:
            raise GraphError(f"k must be an even integer >= 2, got {k}")
    results = ledger_identities(grid)
    for k in grid.ks:
        n_first = next(n for n in range(2, 10 * k + 10) if spectral_premise(n, k))
        for name, tally in verify_case_bounds(k, range(n_first, grid.case_n_max + 1)).items():
            results.setdefault(f"case_{name}", Tally()).merge(tally)
    results["partition_lemma"] = ledger_partition_lemma(grid)
    results["das_bound"] = ledger_das_sweep(grid)
    return results
