"""Extractive lyric summarization.

Three per-line scorers -- graph centrality over the line SSM ("rank"),
topic-model likelihood ("topic"), and inherited segment fitness ("fit")
-- are min-max normalized per song and averaged, then the top-scoring
distinct lines are emitted in song order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Song
from .ssm import SSM, line_ssm
from .thumbnail import DEFAULT_TAU_FAM, song_fitness
from . import topics as topics_mod

SCORERS = ("rank", "topic", "fit")

DEFAULT_BUDGET = 4


def rank_scores(ssm: SSM) -> np.ndarray:
    """Stationary centrality of lines under damped power iteration.

    Self-loops are removed, rows are normalized into a transition matrix
    (dangling lines redistribute uniformly), damping 0.85; stops after 100
    iterations or when the L1 change drops below 1e-8.
    """
    if ssm.granularity != "line":
        raise ValueError("rank scores require a line-level SSM")
    n = ssm.n
    if n == 1:
        return np.ones(1)
    adj = ssm.values.copy()
    np.fill_diagonal(adj, 0.0)
    row_sums = adj.sum(axis=1)
    dangling = row_sums == 0
    trans = np.zeros_like(adj)
    nz = ~dangling
    trans[nz] = adj[nz] / row_sums[nz, None]
    damping = 0.85
    scores = np.full(n, 1.0 / n)
    for _ in range(100):
        spread = scores @ trans + scores[dangling].sum() / n
        new = (1.0 - damping) / n + damping * spread
        if np.abs(new - scores).sum() < 1e-8:
            scores = new
            break
        scores = new
    return scores


def topic_scores(song: Song, lda: "topics_mod.LdaModel", seed: int = 0,
                 theta: np.ndarray | None = None) -> np.ndarray:
    """Per-line topic-model score.

    score(line) = sum_k p(k|song) * (geometric mean over the line's
    in-vocabulary tokens of p(token|k)); 0 for lines with no known tokens.
    ``theta`` short-circuits song-level inference when already computed.
    """
    if theta is None:
        theta = topics_mod.infer_topics(lda, topics_mod.preprocess(song.text()),
                                        seed=seed)
    log_phi = np.log(lda.topic_word())
    vocab_index = lda.vocab_index
    scores = []
    for line in song.lines():
        ids = [vocab_index[t] for t in topics_mod.preprocess(line) if t in vocab_index]
        if not ids:
            scores.append(0.0)
            continue
        mean_log = log_phi[:, ids].mean(axis=1)
        scores.append(float(np.dot(theta, np.exp(mean_log))))
    return np.array(scores)


def fitness_scores(song: Song, tau_fam: float = DEFAULT_TAU_FAM) -> np.ndarray:
    """Each line inherits the fitness of its containing segment."""
    per_segment = song_fitness(song, tau_fam)
    return np.array([fit for seg, fit in zip(song.segments, per_segment)
                     for _ in seg])


def minmax_normalize(scores: np.ndarray) -> np.ndarray:
    """Scale to [0, 1] per song; constant vectors map to all-0.5."""
    scores = np.asarray(scores, dtype=np.float64)
    lo, hi = scores.min(), scores.max()
    if hi == lo:
        return np.full_like(scores, 0.5)
    return (scores - lo) / (hi - lo)


@dataclass
class LineScores:
    """Raw per-line scores for each scorer computed on one song."""

    raw: dict[str, np.ndarray]

    def normalized(self) -> dict[str, np.ndarray]:
        return {name: minmax_normalize(values) for name, values in self.raw.items()}

    def combined(self, scorers: tuple[str, ...]) -> np.ndarray:
        norm = self.normalized()
        return np.mean([norm[name] for name in scorers], axis=0)


def score_lines(song: Song, scorers: tuple[str, ...] = SCORERS,
                lda: "topics_mod.LdaModel | None" = None,
                tau_fam: float = DEFAULT_TAU_FAM, seed: int = 0) -> LineScores:
    unknown = set(scorers) - set(SCORERS)
    if unknown:
        raise ValueError(f"unknown scorers: {sorted(unknown)}")
    raw: dict[str, np.ndarray] = {}
    if "rank" in scorers:
        raw["rank"] = rank_scores(line_ssm(song))
    if "topic" in scorers:
        if lda is None:
            raise ValueError("the topic scorer requires a trained topic model")
        raw["topic"] = topic_scores(song, lda, seed=seed)
    if "fit" in scorers:
        raw["fit"] = fitness_scores(song, tau_fam)
    return LineScores(raw=raw)


def select_lines(lines: list[str], combined: np.ndarray, k: int) -> list[str]:
    """Top-k distinct lines by combined score, emitted in original order.

    Exact-duplicate lines collapse to their first occurrence (scored by
    their best occurrence), so a four-line summary cannot be one repeated
    chorus line.
    """
    if k < 1:
        raise ValueError("summary budget k must be >= 1")
    first_seen: dict[str, int] = {}
    best: dict[str, float] = {}
    for i, text in enumerate(lines):
        if text not in first_seen:
            first_seen[text] = i
            best[text] = float(combined[i])
        else:
            best[text] = max(best[text], float(combined[i]))
    candidates = sorted(first_seen, key=lambda t: (-best[t], first_seen[t]))
    chosen = sorted(first_seen[t] for t in candidates[:k])
    return [lines[i] for i in chosen]


def summarize(song: Song, scorers: tuple[str, ...] = SCORERS, k: int = DEFAULT_BUDGET,
              lda: "topics_mod.LdaModel | None" = None,
              tau_fam: float = DEFAULT_TAU_FAM, seed: int = 0) -> list[str]:
    """Summary of up to k lines; shorter songs return all distinct lines."""
    lines = song.lines()
    if not lines:
        return []
    combined = score_lines(song, scorers, lda=lda, tau_fam=tau_fam,
                           seed=seed).combined(tuple(scorers))
    return select_lines(lines, combined, k)
