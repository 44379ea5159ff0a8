"""Synthetic corpora with known ground truth.

Generators used by the test suite and the demo scripts: block-structured
lyrics for segmentation, planted-profanity corpora for explicitness,
planted-topic documents for LDA recovery, linear-signal corpora for the
emotion regressor, and a mixed kitchen-sink corpus for pipeline runs.
All outputs are deterministic functions of their seed.
"""

from __future__ import annotations

import random

from .corpus import Corpus, Song
from .stopwords import ENGLISH

_SYLLABLES = ("ba be bi bo bu da de di do du ka ke ki ko ku la le li lo lu "
              "ma me mi mo mu na ne ni no nu pa pe pi po pu ra re ri ro ru "
              "sa se si so su ta te ti to tu va ve vi vo vu za ze zi zo zu").split()


def _word(rng: random.Random, syllables: int = 2) -> str:
    while True:
        w = "".join(rng.choice(_SYLLABLES) for _ in range(syllables))
        if w not in ENGLISH:
            return w


def _word_pool(rng: random.Random, n: int, syllables: int = 2) -> list[str]:
    pool: list[str] = []
    seen = set()
    while len(pool) < n:
        w = _word(rng, syllables)
        if w not in seen:
            seen.add(w)
            pool.append(w)
    return pool


def _verse(rng: random.Random, pool: list[str], n_lines: int,
           theme_strength: float) -> tuple[str, ...]:
    """A segment whose lines share two theme words with probability
    ``theme_strength``; the rest of each line is random."""
    theme = (rng.choice(pool), rng.choice(pool))
    lines = []
    for _ in range(n_lines):
        words = []
        for slot in range(4):
            if slot < 2 and rng.random() < theme_strength:
                words.append(theme[slot])
            else:
                words.append(rng.choice(pool))
        lines.append(" ".join(words))
    return tuple(lines)


def make_structured_song(rng: random.Random, song_id: str,
                         high_repetition: bool = True) -> Song:
    """Block-structured lyrics: themed verses, plus an exactly repeated
    chorus in the high-repetition variant."""
    pool = _word_pool(rng, 40)
    lines_per_seg = rng.randint(4, 5)
    if high_repetition:
        chorus = _verse(rng, pool, lines_per_seg, theme_strength=1.0)
        n_verses = rng.randint(2, 3)
        verses = [_verse(rng, pool, lines_per_seg, theme_strength=1.0)
                  for _ in range(n_verses)]
        segments: list[tuple[str, ...]] = []
        for verse in verses:
            segments.append(verse)
            segments.append(chorus)
        genre = "verse-chorus"
    else:
        n_segments = rng.randint(4, 6)
        segments = [_verse(rng, pool, lines_per_seg, theme_strength=0.4)
                    for _ in range(n_segments)]
        genre = "freeform"
    return Song(id=song_id, artist="synthetic", title=song_id,
                segments=tuple(segments), genre=genre, language="en")


def make_segmentation_corpus(n_songs: int, seed: int = 0,
                             high_fraction: float = 1.0) -> Corpus:
    rng = random.Random(seed)
    songs = []
    n_high = round(n_songs * high_fraction)
    for i in range(n_songs):
        songs.append(make_structured_song(rng, f"seg-{i:05d}",
                                          high_repetition=i < n_high))
    return Corpus(songs=songs)


def make_explicit_corpus(n_songs: int = 5000, explicit_fraction: float = 0.1,
                         n_planted: int = 32, censored_rate: float = 0.05,
                         leak_rate: float = 0.005,
                         seed: int = 0) -> tuple[Corpus, list[str]]:
    """Corpus with planted profanity stand-ins.

    Explicit songs carry several occurrences of a few planted terms;
    ``censored_rate`` of them carry none (label noise), and ``leak_rate``
    of clean songs carry a single stray occurrence.
    """
    rng = random.Random(seed)
    background = _word_pool(rng, 300)
    planted = _word_pool(random.Random(seed + 1), n_planted, syllables=3)
    genres = ["Rock", "Pop", "Country", "Folk"]
    songs = []
    n_explicit = round(n_songs * explicit_fraction)
    for i in range(n_songs):
        is_explicit = i < n_explicit
        tokens = [rng.choice(background) for _ in range(40)]
        if is_explicit and rng.random() >= censored_rate:
            # several terms, each at least twice: keeps explicit songs clearly
            # above single-occurrence leaks in count space
            terms = rng.sample(planted, rng.randint(3, 5))
            for term in terms:
                for _ in range(rng.randint(2, 3)):
                    tokens.insert(rng.randrange(len(tokens) + 1), term)
        elif not is_explicit and rng.random() < leak_rate:
            tokens.insert(rng.randrange(len(tokens) + 1), rng.choice(planted))
        lines = [" ".join(tokens[j:j + 5]) for j in range(0, len(tokens), 5)]
        half = len(lines) // 2
        segments = (tuple(lines[:half]), tuple(lines[half:]))
        songs.append(Song(
            id=f"exp-{i:05d}", artist="synthetic", title=f"exp-{i:05d}",
            segments=segments,
            genre="Rap" if is_explicit and rng.random() < 0.7 else rng.choice(genres),
            explicit_gold="explicit" if is_explicit else "clean",
            language="en",
        ))
    rng.shuffle(songs)
    return Corpus(songs=songs), planted


def make_topic_docs(n_docs: int = 2000, n_topics: int = 4,
                    vocab_per_topic: int = 12, doc_len: int = 16,
                    noise_rate: float = 0.05,
                    seed: int = 0) -> tuple[list[list[str]], list[int], list[list[str]]]:
    """Documents drawn from disjoint per-topic vocabularies plus shared noise.

    Returns (docs, true topic per doc, per-topic vocabularies).
    """
    rng = random.Random(seed)
    pool = _word_pool(rng, n_topics * vocab_per_topic + 20, syllables=3)
    topic_vocabs = [pool[t * vocab_per_topic:(t + 1) * vocab_per_topic]
                    for t in range(n_topics)]
    noise_vocab = pool[n_topics * vocab_per_topic:]
    docs, labels = [], []
    for d in range(n_docs):
        topic = d % n_topics
        doc = [rng.choice(noise_vocab) if rng.random() < noise_rate
               else rng.choice(topic_vocabs[topic])
               for _ in range(doc_len)]
        docs.append(doc)
        labels.append(topic)
    return docs, labels, topic_vocabs


def make_emotion_corpus(n_songs: int = 400, seed: int = 0) -> Corpus:
    """Songs whose valence/arousal labels are exact linear functions of the
    relative frequency of four signal words."""
    rng = random.Random(seed)
    background = _word_pool(rng, 120)
    joy, pain, fire, calm = _word_pool(random.Random(seed + 1), 4, syllables=3)
    songs = []
    for i in range(n_songs):
        tokens = [rng.choice(background) for _ in range(36)]
        counts = {w: rng.randint(0, 8) for w in (joy, pain, fire, calm)}
        for w, c in counts.items():
            for _ in range(c):
                tokens.insert(rng.randrange(len(tokens) + 1), w)
        total = len(tokens)
        valence = 0.9 * counts[joy] / total - 0.9 * counts[pain] / total
        arousal = 0.9 * counts[fire] / total - 0.9 * counts[calm] / total
        lines = [" ".join(tokens[j:j + 6]) for j in range(0, total, 6)]
        half = len(lines) // 2
        songs.append(Song(
            id=f"emo-{i:05d}", artist="synthetic", title=f"emo-{i:05d}",
            segments=(tuple(lines[:half]), tuple(lines[half:])),
            va_gold=(valence, arousal), language="en",
        ))
    return Corpus(songs=songs)


def make_full_corpus(n_songs: int = 10000, seed: int = 0) -> Corpus:
    """Kitchen-sink corpus for end-to-end pipeline runs: structured lyrics,
    genres, years, explicit labels with planted terms, some gold emotion."""
    rng = random.Random(seed)
    planted = _word_pool(random.Random(seed + 2), 12, syllables=3)
    songs = []
    for i in range(n_songs):
        song = make_structured_song(rng, f"full-{i:06d}",
                                    high_repetition=rng.random() < 0.7)
        year = rng.randint(1955, 2019) if rng.random() < 0.9 else None
        explicit = None
        segments = song.segments
        if rng.random() < 0.6:
            explicit = "explicit" if rng.random() < 0.15 else "clean"
            if explicit == "explicit":
                extra = " ".join(rng.choice(planted) for _ in range(3))
                segments = segments + ((extra,),)
        va_gold = None
        if rng.random() < 0.2:
            va_gold = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        tags = tuple(rng.sample(["rock", "joyful", "90s", "calm", "tragic"],
                                rng.randint(0, 2)))
        songs.append(Song(
            id=song.id, artist=song.artist, title=song.title, segments=segments,
            genre=song.genre, year=year, explicit_gold=explicit,
            social_tags=tags, emotion_tags=tuple(t for t in tags
                                                 if t in ("joyful", "calm", "tragic")),
            va_gold=va_gold, language="en",
        ))
    return Corpus(songs=songs)
