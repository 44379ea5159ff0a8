"""Decade-level evolution of topics, explicitness, and emotion.

Aggregations are plain means/ratios accumulated in corpus order, so a
rerun (or an independent recomputation walking the same records) produces
bit-identical values.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Corpus, decade_of
from .explicit import CLEAN, EXPLICIT

ADVISORY_LABEL_YEAR = 1985


@dataclass(frozen=True)
class DecadePoint:
    decade: int
    value: tuple[float, ...]  # 1 entry for scalar series, 2 for valence/arousal
    count: int
    source: str | None = None


@dataclass
class DecadeSeries:
    label: str
    points: list[DecadePoint]  # sorted by decade ascending

    def decades(self) -> list[int]:
        return [p.decade for p in self.points]

    def value(self, decade: int) -> tuple[float, ...]:
        for p in self.points:
            if p.decade == decade:
                return p.value
        raise KeyError(decade)

    def __len__(self) -> int:
        return len(self.points)


def _group_by_decade(items: list[tuple[int, object]]) -> dict[int, list]:
    """Bucket (decade, payload) pairs, preserving arrival order within buckets."""
    grouped: dict[int, list] = {}
    for decade, payload in items:
        grouped.setdefault(decade, []).append(payload)
    return grouped


def topic_importance_by_decade(corpus: Corpus,
                               distributions: Mapping[str, Sequence[float]]
                               ) -> list[DecadeSeries]:
    """Mean per-song topic probability per decade, one series per topic.

    Songs without a year or without an inferred distribution are excluded.
    """
    rows = [(decade_of(song.year), distributions[song.id])
            for song in corpus
            if song.year is not None and song.id in distributions]
    if not rows:
        return []
    k = len(rows[0][1])
    grouped = _group_by_decade(rows)
    series = []
    for topic in range(k):
        points = []
        for decade in sorted(grouped):
            dists = grouped[decade]
            mean = sum(d[topic] for d in dists) / len(dists)
            points.append(DecadePoint(decade=decade, value=(mean,), count=len(dists)))
        series.append(DecadeSeries(label=f"topic_{topic}", points=points))
    return series


def explicitness_by_decade(corpus: Corpus, labels: Mapping[str, str],
                           source: str = "gold") -> DecadeSeries:
    """Ratio of explicit-labelled songs to all labelled songs, per decade.

    Decades with no labelled song are omitted. ``labels`` maps song id to
    explicit/clean, from gold tags or a classifier run (named by ``source``).
    """
    rows = [(decade_of(song.year), labels[song.id])
            for song in corpus
            if song.year is not None and labels.get(song.id) in (EXPLICIT, CLEAN)]
    grouped = _group_by_decade(rows)
    points = []
    for decade in sorted(grouped):
        decade_labels = grouped[decade]
        ratio = sum(1 for lbl in decade_labels if lbl == EXPLICIT) / len(decade_labels)
        points.append(DecadePoint(decade=decade, value=(ratio,),
                                  count=len(decade_labels), source=source))
    return DecadeSeries(label="explicitness", points=points)


def emotion_by_decade(corpus: Corpus,
                      predictions: Mapping[str, tuple[float, float]] | None = None
                      ) -> DecadeSeries:
    """Component-wise mean valence/arousal per decade.

    Gold annotations are preferred; predictions fill the gaps. Each decade
    records whether its values came from gold, predicted, or mixed sources.
    """
    predictions = predictions or {}
    rows = []
    for song in corpus:
        if song.year is None:
            continue
        if song.va_gold is not None:
            rows.append((decade_of(song.year), (song.va_gold, "gold")))
        elif song.id in predictions:
            rows.append((decade_of(song.year), (predictions[song.id], "predicted")))
    grouped = _group_by_decade(rows)
    points = []
    for decade in sorted(grouped):
        payloads = grouped[decade]
        n = len(payloads)
        valence = sum(va[0] for va, _ in payloads) / n
        arousal = sum(va[1] for va, _ in payloads) / n
        sources = {src for _, src in payloads}
        source = sources.pop() if len(sources) == 1 else "mixed"
        points.append(DecadePoint(decade=decade, value=(valence, arousal),
                                  count=n, source=source))
    return DecadeSeries(label="emotion", points=points)


def pre_advisory_decades(series: DecadeSeries) -> list[int]:
    """Decades starting before the Parental Advisory Label existed (1985)."""
    return [p.decade for p in series.points if p.decade < ADVISORY_LABEL_YEAR]


def write_series_csv(series: DecadeSeries, path: str | Path,
                     advisory_note: bool = False) -> None:
    """CSV rows decade,value...[,count,source]; footnote flags as comments."""
    lines = []
    has_source = any(p.source for p in series.points)
    value_cols = (["value"] if series.points and len(series.points[0].value) == 1
                  else ["valence", "arousal"])
    header = ["decade"] + value_cols + ["count"] + (["source"] if has_source else [])
    lines.append(",".join(header))
    for p in series.points:
        row = [str(p.decade)] + [repr(v) for v in p.value] + [str(p.count)]
        if has_source:
            row.append(p.source or "")
        lines.append(",".join(row))
    if advisory_note:
        flagged = pre_advisory_decades(series)
        if flagged:
            lines.append("# note: decades " + " ".join(str(d) for d in flagged)
                         + " predate the advisory label era (1985); explicitness"
                         " tags may be incomplete there")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
