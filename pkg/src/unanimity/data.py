"""Domain types and file formats for clustering evaluation.

Clusterings and gold standards are labeled families of item sets read from
TSV membership files.  Score tables hold per-test-case metric vectors for a
set of systems and are the input to every comparison operation in this
package.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, TextIO


class ParseError(ValueError):
    """An input file violates its format contract."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ValueError):
    """A clustering pair or score table fails a consistency check."""


def _check_item(token: str) -> None:
    if not token:
        raise ValueError("empty item id")
    if any(ch.isspace() for ch in token):
        raise ValueError(f"item id contains whitespace: {token!r}")


@dataclass(frozen=True)
class Clustering:
    """A labeled family of non-empty item sets.

    Items may appear in several clusters (overlapping clustering) or in none.
    The same type serves for system output and for gold standards, whose
    clusters are read as categories.
    """

    clusters: Mapping[str, frozenset[str]]

    def __post_init__(self):
        frozen: dict[str, frozenset[str]] = {}
        for label, members in self.clusters.items():
            if not label:
                raise ValueError("empty cluster label")
            members = frozenset(members)
            if not members:
                raise ValueError(f"cluster {label!r} is empty")
            for item in members:
                _check_item(item)
            frozen[label] = members
        object.__setattr__(self, "clusters", frozen)

    @property
    def n(self) -> int:
        """Total membership count (sum of cluster sizes).

        This is the normalizer for purity-style weights, so that cluster
        weights form a distribution even when clusters overlap.
        """
        return sum(len(members) for members in self.clusters.values())

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(self.clusters))

    @property
    def items(self) -> frozenset[str]:
        out: set[str] = set()
        for members in self.clusters.values():
            out |= members
        return frozenset(out)

    @property
    def overlapping(self) -> bool:
        return self.n > len(self.items)


GoldStandard = Clustering


def _read_lines(source: str | TextIO) -> list[str]:
    # splitlines() swallows CRLF as well as LF endings.
    text = source if isinstance(source, str) else source.read()
    return text.splitlines()


def parse_clustering(source: str | TextIO) -> Clustering:
    """Read a TSV membership file, one ``<cluster_label>\\t<item_id>`` per line.

    Lines starting with ``#`` are comments.  Labels are kept verbatim.
    Malformed lines and duplicate memberships are rejected with their line
    number.
    """
    memberships: dict[str, set[str]] = {}
    for lineno, line in enumerate(_read_lines(source), start=1):
        if line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(
                f"expected 2 tab-separated fields, got {len(fields)}", line=lineno
            )
        label, item = fields
        if not label:
            raise ParseError("empty cluster label", line=lineno)
        try:
            _check_item(item)
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        members = memberships.setdefault(label, set())
        if item in members:
            raise ParseError(f"duplicate membership ({label!r}, {item!r})", line=lineno)
        members.add(item)
    if not memberships:
        raise ParseError("no clusters")
    return Clustering({label: frozenset(m) for label, m in memberships.items()})


def serialize_clustering(clustering: Clustering) -> str:
    """Canonical TSV form: sorted labels, items sorted within each cluster, LF."""
    out = []
    for label in clustering.labels:
        for item in sorted(clustering.clusters[label]):
            out.append(f"{label}\t{item}\n")
    return "".join(out)


@dataclass(frozen=True)
class ValidationReport:
    """Item-coverage comparison between a system clustering and a gold standard."""

    system_only: tuple[str, ...]
    gold_only: tuple[str, ...]
    notes: tuple[str, ...]

    @property
    def clean(self) -> bool:
        return not self.system_only and not self.gold_only


def validate_pair(
    system: Clustering, gold: GoldStandard, strict: bool = False
) -> ValidationReport:
    """Check that system and gold cover the same items.

    Strict mode raises on any mismatch.  Lenient mode reports: system items
    absent from the gold standard match no category and contribute zero to
    best-match terms; gold items never clustered count as misses.
    """
    system_only = tuple(sorted(system.items - gold.items))
    gold_only = tuple(sorted(gold.items - system.items))
    if strict and (system_only or gold_only):
        parts = []
        if system_only:
            parts.append("system items absent from gold: " + " ".join(system_only))
        if gold_only:
            parts.append("gold items absent from system: " + " ".join(gold_only))
        raise ValidationError("; ".join(parts))
    notes = []
    if system_only:
        notes.append(
            f"{len(system_only)} system item(s) absent from gold "
            "(zero best-match contribution)"
        )
    if gold_only:
        notes.append(f"{len(gold_only)} gold item(s) unclustered")
    return ValidationReport(system_only, gold_only, tuple(notes))


@dataclass(frozen=True)
class MetricVector:
    """Named scores in [0, 1] for one (test case, system) cell.

    Name order is meaningful: it is shared by every cell of a table and, for
    two-metric tables, reads as (precision-like, recall-like).
    """

    scores: Mapping[str, float]

    def __post_init__(self):
        frozen: dict[str, float] = {}
        for name, value in self.scores.items():
            if not name:
                raise ValueError("empty metric name")
            value = float(value)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"score {name}={value} outside [0, 1]")
            frozen[name] = value
        if not frozen:
            raise ValueError("metric vector has no scores")
        object.__setattr__(self, "scores", frozen)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.scores)

    def __getitem__(self, name: str) -> float:
        return self.scores[name]

    def values(self) -> tuple[float, ...]:
        return tuple(self.scores.values())


@dataclass(frozen=True)
class ScoreTable:
    """Dense (test case x system) table of metric vectors for one collection."""

    collection_id: str
    cases: tuple[str, ...]
    systems: tuple[str, ...]
    cells: Mapping[tuple[str, str], MetricVector]

    def __post_init__(self):
        cases = tuple(self.cases)
        systems = tuple(self.systems)
        if not cases:
            raise ValidationError("score table has no test cases")
        if not systems:
            raise ValidationError("score table has no systems")
        if len(set(cases)) != len(cases):
            raise ValidationError("duplicate test case ids")
        if len(set(systems)) != len(systems):
            raise ValidationError("duplicate system ids")
        cells = dict(self.cells)
        names: tuple[str, ...] | None = None
        for case in cases:
            for system in systems:
                vector = cells.get((case, system))
                if vector is None:
                    raise ValidationError(f"missing cell for ({case}, {system})")
                if names is None:
                    names = vector.names
                elif vector.names != names:
                    raise ValidationError(
                        f"metric names differ in cell ({case}, {system}): "
                        f"{vector.names} vs {names}"
                    )
        if len(cells) != len(cases) * len(systems):
            raise ValidationError("score table has cells outside cases x systems")
        object.__setattr__(self, "cases", cases)
        object.__setattr__(self, "systems", systems)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_rows(
        cls,
        collection_id: str,
        rows: Iterable[tuple[str, str, str, float]],
    ) -> "ScoreTable":
        """Build a table from (case, system, metric, value) tuples.

        Cases, systems and metric names keep first-appearance order.
        """
        cases: list[str] = []
        systems: list[str] = []
        metrics: list[str] = []
        raw: dict[tuple[str, str], dict[str, float]] = {}
        for case, system, metric, value in rows:
            if case not in cases:
                cases.append(case)
            if system not in systems:
                systems.append(system)
            if metric not in metrics:
                metrics.append(metric)
            raw.setdefault((case, system), {})[metric] = value
        cells = {
            key: MetricVector({m: scores[m] for m in metrics if m in scores})
            for key, scores in raw.items()
        }
        return cls(collection_id, tuple(cases), tuple(systems), cells)

    @property
    def metric_names(self) -> tuple[str, ...]:
        return self.cells[(self.cases[0], self.systems[0])].names

    def cell(self, case: str, system: str) -> MetricVector:
        try:
            return self.cells[(case, system)]
        except KeyError:
            raise ValueError(f"unknown cell ({case}, {system})") from None

    def check_system(self, system: str) -> None:
        if system not in self.systems:
            raise ValueError(f"unknown system {system!r}")

    def scores_for(self, system: str, metric: str) -> tuple[float, ...]:
        """Per-case scores of one system on one metric, in case order."""
        self.check_system(system)
        if metric not in self.metric_names:
            raise ValueError(f"unknown metric {metric!r}")
        return tuple(self.cells[(case, system)][metric] for case in self.cases)

    def select_metrics(self, names: Sequence[str]) -> "ScoreTable":
        """Project every cell onto the given metric names, in the given order."""
        names = tuple(names)
        for name in names:
            if name not in self.metric_names:
                raise ValueError(f"unknown metric {name!r}")
        cells = {
            key: MetricVector({name: vector[name] for name in names})
            for key, vector in self.cells.items()
        }
        return ScoreTable(self.collection_id, self.cases, self.systems, cells)


SCORE_HEADER = ("test_case", "system", "metric", "score")


def parse_score_table(
    source: str | TextIO,
    percent: bool = False,
    collection_id: str = "",
) -> ScoreTable:
    """Read a long-format score CSV with header ``test_case,system,metric,score``.

    Every (case, system) cell must carry the same metric set (dense table).
    With ``percent=True`` scores are divided by 100 on ingest.  Scores outside
    [0, 1] after rescaling are rejected.
    """
    lines = _read_lines(source)
    rows = list(csv.reader(lines))
    if not rows:
        raise ParseError("empty score file")
    header = tuple(field.strip() for field in rows[0])
    if header != SCORE_HEADER:
        raise ParseError(
            f"expected header {','.join(SCORE_HEADER)}, got {','.join(header)}",
            line=1,
        )
    cases: list[str] = []
    systems: list[str] = []
    metrics: list[str] = []
    raw: dict[tuple[str, str], dict[str, float]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 4:
            raise ParseError(f"expected 4 fields, got {len(row)}", line=lineno)
        case, system, metric, text = (field.strip() for field in row)
        if not case or not system or not metric:
            raise ParseError("empty test_case, system or metric field", line=lineno)
        try:
            value = float(text)
        except ValueError:
            raise ParseError(f"bad score {text!r}", line=lineno) from None
        if percent:
            value /= 100.0
        if not 0.0 <= value <= 1.0:
            raise ParseError(
                f"score {value} outside [0, 1] for ({case}, {system}, {metric})",
                line=lineno,
            )
        if case not in cases:
            cases.append(case)
        if system not in systems:
            systems.append(system)
        if metric not in metrics:
            metrics.append(metric)
        cell = raw.setdefault((case, system), {})
        if metric in cell:
            raise ParseError(
                f"duplicate score for ({case}, {system}, {metric})", line=lineno
            )
        cell[metric] = value
    if not raw:
        raise ParseError("no scores")
    for case in cases:
        for system in systems:
            got = raw.get((case, system), {})
            for metric in metrics:
                if metric not in got:
                    raise ParseError(f"missing score for ({case}, {system}, {metric})")
    cells = {
        key: MetricVector({m: scores[m] for m in metrics}) for key, scores in raw.items()
    }
    return ScoreTable(collection_id, tuple(cases), tuple(systems), cells)


def serialize_score_table(table: ScoreTable) -> str:
    """Long-format CSV that parses back to an equal table (repr-exact scores)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCORE_HEADER)
    for case in table.cases:
        for system in table.systems:
            vector = table.cells[(case, system)]
            for name in vector.names:
                writer.writerow([case, system, name, repr(vector[name])])
    return buf.getvalue()
