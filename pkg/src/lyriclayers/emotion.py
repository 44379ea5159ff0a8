"""Valence-arousal estimation and correlation metrics.

Two routes to a (valence, arousal) point per song: projecting its social
tags through an emotion lexicon (distant supervision), and a pair of
ridge regressions over tf-idf text features trained on gold annotations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .corpus import Corpus, Song
from .explicit import BowSpace, fit_bow_space, song_tokens
from .linear import LinearModel, train_ridge

MIN_TRAINING_SONGS = 10


class VAPoint(NamedTuple):
    valence: float
    arousal: float


def va_point(valence: float, arousal: float) -> VAPoint:
    """Clamp into the canonical [-1, +1] square."""
    return VAPoint(float(min(max(valence, -1.0), 1.0)),
                   float(min(max(arousal, -1.0), 1.0)))


@dataclass
class VALexicon:
    entries: dict[str, VAPoint]  # lowercase term -> canonical point
    source_scale: tuple[float, float] = (-1.0, 1.0)

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(path: str | Path) -> VALexicon:
    """Read a TSV lexicon: optional "#scale lo hi" header, then
    term<TAB>valence<TAB>arousal rows rescaled linearly to [-1, +1]."""
    path = Path(path)
    lo, hi = -1.0, 1.0
    entries: dict[str, VAPoint] = {}
    with path.open(encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 3 and parts[0] == "scale":
                    lo, hi = float(parts[1]), float(parts[2])
                    if not lo < hi:
                        raise ValueError(f"{path}:{line_no}: scale needs lo < hi")
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{line_no}: expected term<TAB>valence<TAB>arousal")
            term = parts[0].strip().lower()
            try:
                v, a = float(parts[1]), float(parts[2])
            except ValueError as exc:
                raise ValueError(f"{path}:{line_no}: non-numeric value") from exc
            if (lo, hi) != (-1.0, 1.0):
                v = -1.0 + 2.0 * (v - lo) / (hi - lo)
                a = -1.0 + 2.0 * (a - lo) / (hi - lo)
            entries[term] = va_point(v, a)
    return VALexicon(entries=entries, source_scale=(lo, hi))


def tags_to_va(tags: Sequence[str], lexicon: VALexicon) -> VAPoint | None:
    """Mean lexicon point of the matched tags, or None when nothing matches.

    Matching is exact after case-folding; duplicate tags are collapsed
    before averaging.
    """
    matched = sorted({tag.lower() for tag in tags} & set(lexicon.entries))
    if not matched:
        return None
    points = [lexicon.entries[t] for t in matched]
    return va_point(sum(p.valence for p in points) / len(points),
                    sum(p.arousal for p in points) / len(points))


@dataclass
class EmotionModel:
    space: BowSpace
    valence: LinearModel
    arousal: LinearModel


def train_va_regressor(corpus: Corpus, l2: float = 1.0,
                       min_df: int = 1) -> EmotionModel:
    """Two independent ridge regressions (valence, arousal) over tf-idf rows."""
    labelled = [s for s in corpus if s.va_gold is not None]
    if len(labelled) < MIN_TRAINING_SONGS:
        raise ValueError(
            f"regressor training needs >= {MIN_TRAINING_SONGS} songs with "
            f"valence-arousal labels, got {len(labelled)}")
    docs = [song_tokens(s) for s in labelled]
    space = fit_bow_space(docs, use_idf=True, min_df=min_df)
    X = space.transform(docs)
    v = np.array([s.va_gold[0] for s in labelled])
    a = np.array([s.va_gold[1] for s in labelled])
    return EmotionModel(space=space,
                        valence=train_ridge(X, v, l2=l2),
                        arousal=train_ridge(X, a, l2=l2))


def predict_va(model: EmotionModel, songs: Sequence[Song]) -> list[VAPoint]:
    X = model.space.transform([song_tokens(s) for s in songs])
    v = model.valence.decision(X)
    a = model.arousal.decision(X)
    return [va_point(vi, ai) for vi, ai in zip(v, a)]


class Correlation(NamedTuple):
    value: float
    degenerate: bool  # True when an input had zero variance


def pearson(x: Sequence[float], y: Sequence[float]) -> Correlation:
    """Product-moment correlation; zero-variance input yields (0, degenerate)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError("inputs differ in length")
    if x.ndim != 1 or len(x) < 2:
        raise ValueError("correlation needs two 1-d vectors of length >= 2")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(dx @ dx)
    sy = float(dy @ dy)
    # zero variance up to float roundoff of the mean subtraction
    n = len(x)
    tol_x = (1e-12 * float(np.abs(x).max(initial=0.0))) ** 2 * n
    tol_y = (1e-12 * float(np.abs(y).max(initial=0.0))) ** 2 * n
    if sx <= tol_x or sy <= tol_y:
        return Correlation(0.0, True)
    r = float(dx @ dy) / np.sqrt(sx * sy)
    return Correlation(float(min(max(r, -1.0), 1.0)), False)


def _average_ranks(x: np.ndarray) -> np.ndarray:
    order = np.argsort(x, kind="stable")
    ranks = np.empty(len(x), dtype=np.float64)
    sorted_vals = x[order]
    i = 0
    while i < len(x):
        j = i
        while j + 1 < len(x) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> Correlation:
    """Pearson correlation of average ranks (ties share the mean rank)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError("inputs differ in length")
    if x.ndim != 1 or len(x) < 2:
        raise ValueError("correlation needs two 1-d vectors of length >= 2")
    return pearson(_average_ranks(x), _average_ranks(y))


def save_emotion_model(model: EmotionModel, path: str | Path) -> None:
    terms = sorted(model.space.vocabulary, key=model.space.vocabulary.get)
    data = {
        "version": 1,
        "kind": "emotion-model",
        "vocabulary": terms,
        "idf": None if model.space.idf is None else model.space.idf.tolist(),
        "doc_count": model.space.doc_count,
        "valence": model.valence.to_dict(),
        "arousal": model.arousal.to_dict(),
    }
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def load_emotion_model(path: str | Path) -> EmotionModel:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("kind") != "emotion-model":
        raise ValueError(f"{path}: not an emotion model file")
    space = BowSpace(
        vocabulary={t: i for i, t in enumerate(data["vocabulary"])},
        idf=None if data["idf"] is None else np.asarray(data["idf"], dtype=np.float64),
        doc_count=data["doc_count"],
    )
    return EmotionModel(space=space,
                        valence=LinearModel.from_dict(data["valence"]),
                        arousal=LinearModel.from_dict(data["arousal"]))
