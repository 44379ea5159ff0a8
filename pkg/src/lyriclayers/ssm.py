"""Self-similarity matrices over lyric lines and segments.

Similarity between two text units is 1 minus the normalized character
edit distance (Levenshtein distance divided by the longer length), so
repeated parts show up as high-similarity stripes and blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Song

GRANULARITIES = ("line", "segment")


@dataclass
class SSM:
    """Square symmetric similarity matrix with unit diagonal, entries in [0, 1]."""

    granularity: str
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.granularity not in GRANULARITIES:
            raise ValueError(f"granularity must be one of {GRANULARITIES}")
        if self.values.ndim != 2 or self.values.shape[0] != self.values.shape[1]:
            raise ValueError("values must be a square matrix")

    @property
    def n(self) -> int:
        return self.values.shape[0]


def levenshtein(a: str, b: str) -> int:
    """Exact Levenshtein distance, unit insert/delete/substitute costs.

    Myers' bit-parallel formulation; Python bigints make it exact for any
    pattern length while staying far faster than the cell-by-cell DP.
    """
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    m = len(a)
    peq: dict[str, int] = {}
    for i, ch in enumerate(a):
        peq[ch] = peq.get(ch, 0) | (1 << i)
    mask = (1 << m) - 1
    high = 1 << (m - 1)
    pv = mask
    mv = 0
    score = m
    for ch in b:
        eq = peq.get(ch, 0)
        xv = eq | mv
        xh = (((eq & pv) + pv) ^ pv) | eq
        ph = mv | (~(xh | pv) & mask)
        mh = pv & xh
        if ph & high:
            score += 1
        if mh & high:
            score -= 1
        ph = ((ph << 1) | 1) & mask
        mh = (mh << 1) & mask
        pv = mh | (~(xv | ph) & mask)
        mv = ph & xv
    return score


def normalized_edit_distance(a: str, b: str) -> float:
    """Levenshtein distance divided by max(|a|, |b|); 0 for two empty strings."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 0.0
    return levenshtein(a, b) / longest


def similarity(a: str, b: str) -> float:
    return 1.0 - normalized_edit_distance(a, b)


def _unit_ssm(units: list[str], granularity: str) -> SSM:
    if not units:
        raise ValueError(f"song has no {granularity}s")
    folded = [u.casefold() for u in units]
    # Dedupe before the pairwise pass: repeated choruses make this the
    # dominant cost saver on real lyrics.
    uniq: dict[str, int] = {}
    uid = [uniq.setdefault(text, len(uniq)) for text in folded]
    texts = list(uniq)
    k = len(texts)
    sim = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            sim[i, j] = sim[j, i] = similarity(texts[i], texts[j])
    values = sim[np.ix_(uid, uid)]
    np.fill_diagonal(values, 1.0)
    return SSM(granularity=granularity, values=values)


def line_ssm(song: Song) -> SSM:
    """Line-level SSM over the song's flattened line sequence (case-folded)."""
    return _unit_ssm(song.lines(), "line")


def segment_ssm(song: Song) -> SSM:
    """Segment-level SSM; each segment is rendered as its newline-joined lines."""
    return _unit_ssm(song.segment_texts(), "segment")


def write_ssm(ssm: SSM, path: str | Path) -> None:
    """Write the text format: header "n granularity", then n rows of
    4-decimal entries."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(f"{ssm.n} {ssm.granularity}\n")
        for row in ssm.values:
            fh.write(" ".join(f"{v:.4f}" for v in row) + "\n")


def read_ssm(path: str | Path) -> SSM:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: bad SSM header")
        n, granularity = int(header[0]), header[1]
        values = np.loadtxt(fh, dtype=np.float64, ndmin=2)
    if values.shape != (n, n):
        raise ValueError(f"{path}: expected {n}x{n} matrix, got {values.shape}")
    return SSM(granularity=granularity, values=values)
