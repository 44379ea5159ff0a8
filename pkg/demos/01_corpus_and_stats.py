"""Build a small corpus file, load it back, and look at its statistics.

The corpus format is JSONL: one song per line, lyrics as a single string
where blank lines separate segments. An optional first-line header can
declare the source scale of valence/arousal annotations.
"""

from pathlib import Path

from lyriclayers import corpus_stats, detect_language, load_corpus, write_corpus
from lyriclayers.corpus import Song
from lyriclayers.synthetic import make_full_corpus

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

corpus = make_full_corpus(200, seed=7)
path = out / "demo_corpus.jsonl"
write_corpus(corpus, path)
print(f"wrote {len(corpus)} songs to {path}")

corpus = load_corpus(path)
song = corpus.songs[0]
print(f"\nfirst song: {song.id} ({len(song.segments)} segments, "
      f"{song.line_count} lines, genre={song.genre}, year={song.year})")
print("first segment:")
for line in song.segments[0]:
    print(f"  {line}")

stats = corpus_stats(corpus)
print("\ngenre distribution (labelled songs):")
for genre, (count, fraction) in stats.genre_hist.items():
    print(f"  {genre:12s} {count:4d}  {100 * fraction:5.1f}%")
print("decade distribution:")
for decade, (count, fraction) in stats.decade_hist.items():
    print(f"  {decade}s {count:4d}  {100 * fraction:5.1f}%")

# language detection works from bundled stopword profiles
english = Song(id="en-demo", segments=(("the sound of you and me",),))
spanish = Song(id="es-demo", segments=(("el sol y la luna de verano",),))
print(f"\ndetected languages: {detect_language(english)}, {detect_language(spanish)}")
