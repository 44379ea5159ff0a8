"""Train the segment-border classifier and evaluate it genre-wise.

The model is logistic regression over window/stripe features of the line
SSM. Repetitive verse-chorus lyrics segment far better than freeform
ones, mirroring how repetitive genres behave in practice.
"""

from lyriclayers import evaluate_by_genre, predict_borders, train_segmenter
from lyriclayers.corpus import Corpus
from lyriclayers.ssm import line_ssm
from lyriclayers.synthetic import make_segmentation_corpus

corpus = make_segmentation_corpus(300, seed=12, high_fraction=0.5)
train = Corpus(songs=[s for i, s in enumerate(corpus.songs) if i % 4])
test = Corpus(songs=[s for i, s in enumerate(corpus.songs) if i % 4 == 0])

model = train_segmenter(train, seed=0)
print(f"trained on {len(train)} songs; tuned decision threshold "
      f"theta={model.theta:.3f}")

preds = {s.id: set(predict_borders(model, line_ssm(s))) for s in test}

song = test.songs[0]
print(f"\nexample song {song.id} ({song.genre}):")
print(f"  gold borders:      {sorted(song.gold_borders())}")
print(f"  predicted borders: {sorted(preds[song.id])}")

print(f"\nborder P/R/F1 by genre over {len(test)} held-out songs:")
for genre, prf in evaluate_by_genre(test, preds).items():
    print(f"  {genre:14s} P={prf.precision:5.1f}  R={prf.recall:5.1f}  "
          f"F1={prf.f1:5.1f}")
print("\nhigh-repetition lyrics are the easy case; freeform text gives the")
print("classifier little structure to latch onto.")
