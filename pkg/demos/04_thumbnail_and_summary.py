"""Chorus detection via segment fitness, then extractive summaries.

Fitness rewards segments that repeat a lot and cover much of the song --
the harmonic mean of a repetition family's cohesion and coverage. Summaries
average up to three normalized per-line scores: graph centrality (rank),
topic likelihood (topic), and inherited segment fitness (fit).
"""

import random

from lyriclayers import chorus_candidate, summarize, train_lda
from lyriclayers.thumbnail import song_fitness
from lyriclayers.topics import preprocess
from lyriclayers.synthetic import make_structured_song

rng = random.Random(9)
song = make_structured_song(rng, "summary-demo", high_repetition=True)

fitness = song_fitness(song)
chorus = chorus_candidate(song)
print(f"{song.id}: {len(song.segments)} segments")
for i, (seg, fit) in enumerate(zip(song.segments, fitness)):
    marker = "  <- chorus candidate" if i == chorus else ""
    print(f"  segment {i}: fitness={fit:.3f}  ({len(seg)} lines){marker}")

# a tiny topic model over similar songs feeds the topic scorer
docs = [preprocess(make_structured_song(rng, f"bg-{i}").text())
        for i in range(30)]
docs.append(preprocess(song.text()))
lda = train_lda(docs, 4, iters=50, seed=0)

print("\nfour-line summaries:")
for scorers in [("rank",), ("fit",), ("rank", "topic", "fit")]:
    summary = summarize(song, scorers=scorers, k=4, lda=lda)
    print(f"  {'+'.join(scorers)}:")
    for line in summary:
        print(f"    {line}")

print("\nduplicate chorus lines collapse to one occurrence, so the summary")
print("never degenerates into the same line four times.")
