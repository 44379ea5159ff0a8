"""Shared test helpers: independent oracles and random data builders.

Oracles here are deliberately naive re-implementations (full-matrix DP,
brute-force power iteration, closed-form counting) kept separate from the
package code paths they check.
"""

from __future__ import annotations

import random

import numpy as np

from lyriclayers.corpus import Song


def levenshtein_oracle(a: str, b: str) -> int:
    """Full-matrix dynamic-programming edit distance."""
    m, n = len(a), len(b)
    dist = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        dist[i][0] = i
    for j in range(n + 1):
        dist[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            dist[i][j] = min(dist[i - 1][j] + 1,
                             dist[i][j - 1] + 1,
                             dist[i - 1][j - 1] + cost)
    return dist[m][n]


def random_string(rng: random.Random, max_len: int = 24,
                  alphabet: str = "abcdef xyz") -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randrange(max_len + 1)))


def random_song(rng: random.Random, song_id: str = "rand",
                max_segments: int = 5, max_lines: int = 6) -> Song:
    """A song of random non-empty lines; may repeat lines across segments."""
    pool = [f"{rng.choice('abcdwxyz')}{rng.choice('aeiou')}{rng.randrange(10)}"
            for _ in range(8)]
    segments = []
    for _ in range(rng.randint(1, max_segments)):
        lines = tuple(" ".join(rng.choice(pool)
                               for _ in range(rng.randint(1, 4)))
                      for _ in range(rng.randint(1, max_lines)))
        segments.append(lines)
    return Song(id=song_id, segments=tuple(segments))


def pagerank_oracle(adjacency: np.ndarray, damping: float = 0.85,
                    iters: int = 100, tol: float = 1e-8) -> np.ndarray:
    """Reference damped power iteration with uniform dangling redistribution."""
    n = adjacency.shape[0]
    adj = adjacency.astype(float).copy()
    np.fill_diagonal(adj, 0.0)
    scores = np.full(n, 1.0 / n)
    for _ in range(iters):
        new = np.full(n, (1.0 - damping) / n)
        for i in range(n):
            row_sum = adj[i].sum()
            if row_sum == 0:
                new += damping * scores[i] / n
            else:
                for j in range(n):
                    new[j] += damping * scores[i] * adj[i, j] / row_sum
        if np.abs(new - scores).sum() < tol:
            return new
        scores = new
    return scores
