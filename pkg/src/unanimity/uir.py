"""Unanimous-improvement comparison and the Unanimous Improvement Ratio.

One system improves another unanimously on a test case when it is at least
as good on every individual metric; such an improvement is preserved under
any relative weighting of the metrics.  The ratio (UIR) aggregates per-case
outcomes over a collection into a signed score in [-1, 1] measuring how
robustly one system beats another regardless of metric weighting.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from unanimity.data import MetricVector, ScoreTable
from unanimity.metrics import MetricPair, mean_f_measure


class RelationOutcome(Enum):
    """Four-way outcome of comparing two metric vectors on every metric."""

    A_OVER_B = "a_over_b"
    B_OVER_A = "b_over_a"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def unanimous_compare(qa: MetricVector, qb: MetricVector) -> RelationOutcome:
    """Compare two metric vectors metric by metric.

    ``A_OVER_B`` means qa >= qb on every metric with at least one strict
    gain; ``INCOMPARABLE`` means each side wins somewhere.  Comparisons are
    exact; callers wanting tolerance must round scores on ingest.
    """
    if set(qa.names) != set(qb.names):
        raise ValueError(f"metric sets differ: {qa.names} vs {qb.names}")
    a_geq = all(qa[name] >= qb[name] for name in qa.names)
    b_geq = all(qb[name] >= qa[name] for name in qa.names)
    if a_geq and b_geq:
        return RelationOutcome.EQUAL
    if a_geq:
        return RelationOutcome.A_OVER_B
    if b_geq:
        return RelationOutcome.B_OVER_A
    return RelationOutcome.INCOMPARABLE


@dataclass(frozen=True)
class UirResult:
    """Per-case relation counts and the ratio ``(n_a_geq - n_b_geq) / n_total``.

    Ties satisfy both directions and are counted in both ``n_a_geq`` and
    ``n_b_geq``; they cancel in the numerator.
    """

    n_a_geq: int
    n_b_geq: int
    n_incomparable: int
    n_total: int
    value: float

    @property
    def n_equal(self) -> int:
        return self.n_a_geq + self.n_b_geq + self.n_incomparable - self.n_total

    def reversed(self) -> "UirResult":
        """The same comparison from the other system's point of view."""
        return UirResult(
            self.n_b_geq, self.n_a_geq, self.n_incomparable, self.n_total, -self.value
        )


def unanimous_improvement_ratio(
    table: ScoreTable, sys_a: str, sys_b: str
) -> UirResult:
    """Aggregate per-case unanimous comparisons of two systems over a collection."""
    table.check_system(sys_a)
    table.check_system(sys_b)
    n_a = n_b = n_inc = 0
    for case in table.cases:
        outcome = unanimous_compare(
            table.cells[(case, sys_a)], table.cells[(case, sys_b)]
        )
        if outcome is RelationOutcome.EQUAL:
            n_a += 1
            n_b += 1
        elif outcome is RelationOutcome.A_OVER_B:
            n_a += 1
        elif outcome is RelationOutcome.B_OVER_A:
            n_b += 1
        else:
            n_inc += 1
    n_total = len(table.cases)
    return UirResult(n_a, n_b, n_inc, n_total, (n_a - n_b) / n_total)


def pairwise_uir_matrix(table: ScoreTable) -> dict[tuple[str, str], UirResult]:
    """All ordered system pairs.  Mirrored entries are built by reversal, so
    antisymmetry of the ratio holds exactly by construction."""
    matrix: dict[tuple[str, str], UirResult] = {}
    systems = table.systems
    for i, sys_a in enumerate(systems):
        for sys_b in systems[i + 1 :]:
            result = unanimous_improvement_ratio(table, sys_a, sys_b)
            matrix[(sys_a, sys_b)] = result
            matrix[(sys_b, sys_a)] = result.reversed()
    return matrix


def _reference_from_matrix(
    matrix: dict[tuple[str, str], UirResult],
    systems: tuple[str, ...],
    system: str,
    threshold: float,
) -> tuple[str, float] | None:
    best_id: str | None = None
    best_value = threshold
    # Lexicographic candidate order makes ties resolve to the smallest id.
    for other in sorted(systems):
        if other == system:
            continue
        value = matrix[(other, system)].value
        if value > best_value:
            best_id = other
            best_value = value
    if best_id is None:
        return None
    return best_id, best_value


def reference_system(
    table: ScoreTable, system: str, threshold: float = 0.0
) -> tuple[str, float] | None:
    """The rival that most unanimously improves over ``system``.

    Returns ``(rival_id, uir_value)`` maximizing UIR(rival, system), or None
    when no rival exceeds the threshold.  Ties pick the smallest id.
    """
    table.check_system(system)
    return _reference_from_matrix(
        pairwise_uir_matrix(table), table.systems, system, threshold
    )


def robust_set_uir(table: ScoreTable, threshold: float) -> set[tuple[str, str]]:
    """Ordered system pairs whose UIR strictly exceeds the threshold."""
    matrix = pairwise_uir_matrix(table)
    return {pair for pair, result in matrix.items() if result.value > threshold}


def robust_set_f(
    table: ScoreTable,
    threshold: float,
    alpha: float = 0.5,
    pair: MetricPair | str | None = None,
) -> set[tuple[str, str]]:
    """Ordered system pairs whose mean-F difference strictly exceeds the threshold."""
    means = {
        system: mean_f_measure(table, system, alpha, pair) for system in table.systems
    }
    out: set[tuple[str, str]] = set()
    for sys_a in table.systems:
        for sys_b in table.systems:
            if sys_a != sys_b and means[sys_a] - means[sys_b] > threshold:
                out.add((sys_a, sys_b))
    return out
