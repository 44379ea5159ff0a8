"""Segment repetition families and the fitness score behind chorus detection.

A segment's family is every segment similar to it above a threshold. Its
fitness balances how cohesive the family is against how much of the song
the family covers: repeated, long parts score high, which makes the top
segment a cheap chorus approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Song
from .ssm import SSM, segment_ssm

DEFAULT_TAU_FAM = 0.6


@dataclass
class SegmentFamily:
    anchor: int
    members: tuple[int, ...]  # sorted, always contains the anchor
    coverage: float           # lines in member segments / total lines
    cohesion: float           # mean pairwise similarity among members


def segment_families(ssm: SSM, line_counts: list[int],
                     tau_fam: float = DEFAULT_TAU_FAM) -> list[SegmentFamily]:
    """One family per segment: members with similarity >= tau_fam to the anchor.

    ``line_counts`` gives each segment's line count, needed for coverage.
    Cohesion of a singleton family is 1.
    """
    if ssm.granularity != "segment":
        raise ValueError("segment families require a segment-level SSM")
    if len(line_counts) != ssm.n:
        raise ValueError("line_counts length must match the SSM size")
    total_lines = sum(line_counts)
    values = ssm.values
    families = []
    for i in range(ssm.n):
        members = tuple(j for j in range(ssm.n) if values[i, j] >= tau_fam)
        if len(members) > 1:
            pair_sims = [float(values[a, b]) for ai, a in enumerate(members)
                         for b in members[ai + 1:]]
            cohesion = sum(pair_sims) / len(pair_sims)
        else:
            cohesion = 1.0
        coverage = sum(line_counts[j] for j in members) / total_lines
        families.append(SegmentFamily(anchor=i, members=members,
                                      coverage=coverage, cohesion=cohesion))
    return families


def segment_fitness(song: Song, families: list[SegmentFamily]) -> list[float]:
    """Per-segment fitness in [0, 1].

    Non-repeating segments (singleton families) score 0; otherwise the
    harmonic mean of the family's cohesion and coverage.
    """
    if len(families) != len(song.segments):
        raise ValueError("families must cover every segment of the song")
    scores = []
    for fam in families:
        if len(fam.members) <= 1 or fam.cohesion + fam.coverage == 0:
            scores.append(0.0)
        else:
            scores.append(2.0 * fam.cohesion * fam.coverage / (fam.cohesion + fam.coverage))
    return scores


def song_fitness(song: Song, tau_fam: float = DEFAULT_TAU_FAM) -> list[float]:
    """Convenience: compute the segment SSM, families, and fitness in one go."""
    ssm = segment_ssm(song)
    counts = [len(seg) for seg in song.segments]
    return segment_fitness(song, segment_families(ssm, counts, tau_fam))


def chorus_candidate(song: Song, tau_fam: float = DEFAULT_TAU_FAM) -> int:
    """Index of the highest-fitness segment; ties go to the earliest."""
    if not song.segments:
        raise ValueError("song has no segments")
    scores = song_fitness(song, tau_fam)
    best = 0
    for i, score in enumerate(scores):
        if score > scores[best]:
            best = i
    return best
