"""Ranking report pairing a mean-F ordering with pairwise robustness data.

The unanimous relation admits incomparable pairs, so UIR is never
linearized into a ranking of its own.  Systems are ordered by mean F and
annotated with which rivals they improve robustly and which rival most
robustly improves on them.
"""

from __future__ import annotations

from dataclasses import dataclass

from unanimity.data import ScoreTable
from unanimity.metrics import MetricPair, mean_f_measure
from unanimity.uir import _reference_from_matrix, pairwise_uir_matrix

# A rival winning on at least 90% of cases net suggests the system behaves
# like a dominated baseline.
NEAR_BASELINE_UIR = 0.9


@dataclass(frozen=True)
class RankingRow:
    """One system's line in the ranking report."""

    system: str
    mean_f: float
    improved_systems: tuple[str, ...]
    reference_system: str | None
    reference_uir: float | None
    near_baseline: bool


def render_ranking_report(
    table: ScoreTable,
    alpha: float = 0.5,
    uir_threshold: float = 0.25,
    pair: MetricPair | str | None = None,
) -> list[RankingRow]:
    """Rows sorted by mean F descending, ties broken by system id.

    ``improved_systems`` lists rivals improved with UIR above the threshold;
    ``reference_system`` is the rival with the highest UIR over this system,
    when positive.  ``near_baseline`` flags reference UIR at or above 0.9.
    """
    matrix = pairwise_uir_matrix(table)
    means = {s: mean_f_measure(table, s, alpha, pair) for s in table.systems}
    rows = []
    for system in sorted(table.systems, key=lambda s: (-means[s], s)):
        improved = tuple(
            sorted(
                other
                for other in table.systems
                if other != system and matrix[(system, other)].value > uir_threshold
            )
        )
        reference = _reference_from_matrix(matrix, table.systems, system, 0.0)
        if reference is None:
            ref_id, ref_value = None, None
            near = False
        else:
            ref_id, ref_value = reference
            near = ref_value >= NEAR_BASELINE_UIR
        rows.append(RankingRow(system, means[system], improved, ref_id, ref_value, near))
    return rows
