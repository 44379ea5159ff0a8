"""Song corpus data model, JSONL ingestion, and descriptive statistics.

Corpus files are UTF-8 JSONL, one song per line. Lyrics are stored as a
single string; blank lines delimit segments (stanzas), newlines delimit
lines. An optional first-line header record ``{"va_scale": [lo, hi]}``
declares the numeric range of the source valence/arousal annotations,
which are rescaled to the canonical [-1, +1] on load.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .stopwords import LANGUAGE_PROFILES

UNKNOWN = "unknown"

VA_CANONICAL = (-1.0, 1.0)

# split on anything that is not a Unicode word character; underscores count
# as separators so "verse_2" tokenizes like "verse 2"
_TOKEN_RE = re.compile(r"[_\W]+", re.UNICODE)

_SONG_FIELDS = {
    "id", "artist", "title", "lyrics", "language", "genre", "year",
    "explicit", "social_tags", "emotion_tags", "valence", "arousal",
}


class CorpusError(ValueError):
    """Raised for malformed corpus files; message names line and field."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.field = field


def tokenize(text: str, min_len: int = 1) -> list[str]:
    """Lowercase and split on non-alphanumeric runs, dropping short tokens."""
    return [t for t in _TOKEN_RE.split(text.lower()) if len(t) >= min_len]


@dataclass(frozen=True)
class Song:
    id: str
    artist: str = ""
    title: str = ""
    segments: tuple[tuple[str, ...], ...] = ()
    language: str | None = None
    genre: str | None = None
    year: int | None = None
    explicit_gold: str | None = None  # "explicit" | "clean" | None (unknown)
    social_tags: tuple[str, ...] = ()
    emotion_tags: tuple[str, ...] = ()
    va_gold: tuple[float, float] | None = None

    def lines(self) -> list[str]:
        """All lyric lines in song order, segment boundaries flattened away."""
        return [line for seg in self.segments for line in seg]

    def segment_texts(self) -> list[str]:
        return ["\n".join(seg) for seg in self.segments]

    def text(self) -> str:
        """Normalized full lyric text: blank line between segments."""
        return "\n\n".join(self.segment_texts())

    @property
    def line_count(self) -> int:
        return sum(len(seg) for seg in self.segments)

    def gold_borders(self) -> set[int]:
        """Line positions where a new segment starts (song edges excluded)."""
        borders = set()
        pos = 0
        for seg in self.segments[:-1]:
            pos += len(seg)
            borders.add(pos)
        return borders


@dataclass
class Corpus:
    songs: list[Song]
    index: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {song.id: i for i, song in enumerate(self.songs)}
        if len(self.index) != len(self.songs):
            raise CorpusError("duplicate song ids in corpus")

    def __len__(self) -> int:
        return len(self.songs)

    def __iter__(self):
        return iter(self.songs)

    def get(self, song_id: str) -> Song:
        return self.songs[self.index[song_id]]


@dataclass
class CorpusStats:
    language_hist: dict[str, tuple[int, float]]
    genre_hist: dict[str, tuple[int, float]]
    decade_hist: dict[int, tuple[int, float]]


def split_segments(lyrics: str) -> tuple[tuple[str, ...], ...]:
    """Split a lyric string into segments of lines.

    Blank lines delimit segments; consecutive blank lines collapse to one
    boundary. Trailing whitespace is stripped from every line.
    """
    segments = []
    current: list[str] = []
    for raw in lyrics.split("\n"):
        line = raw.rstrip()
        if line:
            current.append(line)
        elif current:
            segments.append(tuple(current))
            current = []
    if current:
        segments.append(tuple(current))
    return tuple(segments)


def _rescale_va(value: float, scale: tuple[float, float]) -> float:
    lo, hi = scale
    if scale == VA_CANONICAL:
        return float(value)
    return -1.0 + 2.0 * (float(value) - lo) / (hi - lo)


def _parse_song(record: dict, line_no: int, va_scale: tuple[float, float]) -> Song:
    def fail(field_name: str, why: str):
        raise CorpusError(f"field '{field_name}' {why}", line=line_no, field=field_name)

    for name in ("id", "artist", "title", "lyrics"):
        if name not in record:
            fail(name, "is missing")
        if not isinstance(record[name], str):
            fail(name, "must be a string")
    song_id = record["id"]
    if not song_id:
        fail("id", "must be non-empty")

    language = record.get("language")
    genre = record.get("genre")
    for name, value in (("language", language), ("genre", genre)):
        if value is not None and not isinstance(value, str):
            fail(name, "must be a string")

    year = record.get("year")
    if year is not None:
        if not isinstance(year, int) or isinstance(year, bool):
            fail("year", "must be an integer")

    explicit = record.get("explicit")
    if explicit is not None and explicit not in ("explicit", "clean"):
        fail("explicit", "must be 'explicit' or 'clean'")

    tags = {}
    for name in ("social_tags", "emotion_tags"):
        raw = record.get(name, [])
        if not isinstance(raw, list) or any(not isinstance(t, str) for t in raw):
            fail(name, "must be an array of strings")
        tags[name] = tuple(raw)

    valence, arousal = record.get("valence"), record.get("arousal")
    va_gold = None
    if (valence is None) != (arousal is None):
        fail("valence", "and 'arousal' must appear together")
    if valence is not None:
        for name, value in (("valence", valence), ("arousal", arousal)):
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                fail(name, "must be a number")
        v = _rescale_va(valence, va_scale)
        a = _rescale_va(arousal, va_scale)
        for name, value in (("valence", v), ("arousal", a)):
            if not (-1.0 - 1e-9 <= value <= 1.0 + 1e-9):
                fail(name, f"out of declared scale (canonical value {value:.4f})")
        va_gold = (min(max(v, -1.0), 1.0), min(max(a, -1.0), 1.0))

    unknown = set(record) - _SONG_FIELDS
    if unknown:
        fail(sorted(unknown)[0], "is not a recognized field")

    return Song(
        id=song_id,
        artist=record["artist"],
        title=record["title"],
        segments=split_segments(record["lyrics"]),
        language=language,
        genre=genre,
        year=year,
        explicit_gold=explicit,
        social_tags=tags["social_tags"],
        emotion_tags=tags["emotion_tags"],
        va_gold=va_gold,
    )


def load_corpus(path: str | Path) -> Corpus:
    """Load and validate a JSONL corpus file.

    Raises CorpusError naming the offending line and field on malformed
    records, and naming the id on duplicates.
    """
    path = Path(path)
    songs: list[Song] = []
    index: dict[str, int] = {}
    va_scale = VA_CANONICAL
    with path.open(encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"invalid JSON: {exc.msg}", line=line_no) from exc
            if not isinstance(record, dict):
                raise CorpusError("record must be a JSON object", line=line_no)
            if line_no == 1 and "va_scale" in record and "id" not in record:
                scale = record["va_scale"]
                if (not isinstance(scale, list) or len(scale) != 2
                        or not all(isinstance(x, (int, float)) for x in scale)
                        or not scale[0] < scale[1]):
                    raise CorpusError("field 'va_scale' must be [lo, hi] with lo < hi",
                                      line=line_no, field="va_scale")
                va_scale = (float(scale[0]), float(scale[1]))
                continue
            song = _parse_song(record, line_no, va_scale)
            if song.id in index:
                raise CorpusError(f"duplicate id '{song.id}'", line=line_no, field="id")
            index[song.id] = len(songs)
            songs.append(song)
    return Corpus(songs=songs, index=index)


def song_to_record(song: Song) -> dict:
    """JSONL record for a song, canonical VA scale, empty optionals omitted."""
    record = {
        "id": song.id,
        "artist": song.artist,
        "title": song.title,
        "lyrics": song.text(),
    }
    if song.language is not None:
        record["language"] = song.language
    if song.genre is not None:
        record["genre"] = song.genre
    if song.year is not None:
        record["year"] = song.year
    if song.explicit_gold is not None:
        record["explicit"] = song.explicit_gold
    if song.social_tags:
        record["social_tags"] = list(song.social_tags)
    if song.emotion_tags:
        record["emotion_tags"] = list(song.emotion_tags)
    if song.va_gold is not None:
        record["valence"], record["arousal"] = song.va_gold
    return record


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for song in corpus.songs:
            fh.write(json.dumps(song_to_record(song), ensure_ascii=False) + "\n")


def detect_language(song: Song, threshold: float = 0.05) -> str:
    """Detect a song's language by stopword-profile overlap.

    Returns the profile code whose stopwords cover the largest fraction of
    the song's tokens, or ``"unknown"`` when the best coverage falls below
    ``threshold`` or the lyrics are empty. Ties break to the
    lexicographically smallest code.
    """
    tokens = tokenize(song.text())
    if not tokens:
        return UNKNOWN
    best_code, best_score = UNKNOWN, 0.0
    for code in sorted(LANGUAGE_PROFILES):
        profile = LANGUAGE_PROFILES[code]
        score = sum(1 for t in tokens if t in profile) / len(tokens)
        if score > best_score:
            best_code, best_score = code, score
    if best_score < threshold:
        return UNKNOWN
    return best_code


def decade_of(year: int) -> int:
    """Decade label of a Gregorian year: floor(year / 10) * 10."""
    if year < 1000:
        raise ValueError(f"year {year} out of range (expected >= 1000)")
    return (year // 10) * 10


def _histogram(labels: list) -> dict:
    counts: dict = {}
    for label in labels:
        counts[label] = counts.get(label, 0) + 1
    total = len(labels)
    return {label: (count, count / total) for label, count in sorted(counts.items())}


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Language/genre/decade histograms over the labelled population.

    Fractions are relative to the songs carrying the respective label, so
    each histogram's fractions sum to 1 (empty histogram for no labels).
    """
    return CorpusStats(
        language_hist=_histogram([s.language for s in corpus if s.language]),
        genre_hist=_histogram([s.genre for s in corpus if s.genre]),
        decade_hist=_histogram([decade_of(s.year) for s in corpus if s.year is not None]),
    )
