"""Shared builders for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from unanimity.data import Clustering, ScoreTable

# 10 cases of (precision_a, recall_a, precision_b, recall_b): 6 cases with
# a >=all b (2 of them ties), 4 with b >=all a (same 2 ties), 2 incomparable.
TWO_SYSTEM_CASES = [
    (0.5, 0.5, 0.5, 0.5),
    (0.5, 0.2, 0.5, 0.2),
    (0.5, 0.2, 0.4, 0.2),
    (0.6, 0.4, 0.6, 0.3),
    (0.7, 0.5, 0.6, 0.4),
    (0.3, 0.5, 0.1, 0.4),
    (0.4, 0.5, 0.5, 0.6),
    (0.4, 0.5, 0.6, 0.6),
    (0.3, 0.5, 0.1, 0.6),
    (0.2, 0.5, 0.4, 0.3),
]


def two_system_table() -> ScoreTable:
    rows = []
    for i, (pa, ra, pb, rb) in enumerate(TWO_SYSTEM_CASES, start=1):
        case = f"case{i:02d}"
        rows += [
            (case, "A", "precision", pa),
            (case, "A", "recall", ra),
            (case, "B", "precision", pb),
            (case, "B", "recall", rb),
        ]
    return ScoreTable.from_rows("demo", rows)


@pytest.fixture
def table_ab() -> ScoreTable:
    return two_system_table()


def make_table(scores, metrics=("precision", "recall"), collection_id="t"):
    """Build a table from {system: [per-case metric tuples]}."""
    rows = []
    n_cases = len(next(iter(scores.values())))
    for i in range(n_cases):
        case = f"case{i:02d}"
        for system, values in scores.items():
            for metric, value in zip(metrics, values[i]):
                rows.append((case, system, metric, value))
    return ScoreTable.from_rows(collection_id, rows)


def random_table(
    rng: np.random.Generator,
    n_cases: int,
    n_systems: int,
    n_metrics: int = 2,
    grid: int | None = None,
) -> ScoreTable:
    """Uniform random table; with ``grid`` scores are multiples of 1/grid.

    Dyadic grids (e.g. 64) make downstream float arithmetic exact, which
    strict-order invariance tests rely on.
    """
    systems = [f"s{j}" for j in range(n_systems)]
    metrics = [f"m{j}" for j in range(n_metrics)]
    rows = []
    for i in range(n_cases):
        case = f"case{i:02d}"
        for system in systems:
            for metric in metrics:
                if grid is None:
                    value = float(rng.uniform())
                else:
                    value = int(rng.integers(0, grid + 1)) / grid
                rows.append((case, system, metric, value))
    return ScoreTable.from_rows("rand", rows)


def random_partition(rng: np.random.Generator, items: list[str], max_clusters: int) -> Clustering:
    """Random single-assignment clustering over the given items."""
    k = int(rng.integers(1, max_clusters + 1))
    assignment = rng.integers(0, k, size=len(items))
    clusters: dict[str, set[str]] = {}
    for item, c in zip(items, assignment):
        clusters.setdefault(f"c{c}", set()).add(item)
    return Clustering({label: frozenset(m) for label, m in clusters.items()})


def random_overlapping(rng: np.random.Generator, items: list[str], max_clusters: int) -> Clustering:
    """Random clustering where items may land in several clusters."""
    k = int(rng.integers(1, max_clusters + 1))
    clusters: dict[str, set[str]] = {}
    for item in items:
        homes = rng.permutation(k)[: int(rng.integers(1, k + 1))]
        for c in homes:
            clusters.setdefault(f"c{c}", set()).add(item)
    return Clustering({label: frozenset(m) for label, m in clusters.items() if m})
