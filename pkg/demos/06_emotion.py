"""Valence-arousal estimation two ways, plus the correlation metrics.

Route one projects a song's social tags through an emotion lexicon.
Route two trains ridge regressions over tf-idf text features on songs
with gold annotations, then predicts for everything else.
"""

from pathlib import Path

from lyriclayers import (load_lexicon, pearson, predict_va, spearman,
                         tags_to_va, train_va_regressor)
from lyriclayers.corpus import Corpus
from lyriclayers.synthetic import make_emotion_corpus

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

lex_path = out / "emotion_lexicon.tsv"
lex_path.write_text(
    "#scale 1 9\n"          # source norms on a 1..9 scale, rescaled on load
    "joyful\t8.2\t6.5\n"
    "calm\t6.5\t2.0\n"
    "tragic\t2.0\t4.5\n"
    "angry\t2.2\t7.8\n",
    encoding="utf-8")
lexicon = load_lexicon(lex_path)
print(f"lexicon of {len(lexicon)} terms, source scale {lexicon.source_scale}")

for tags in (["joyful"], ["joyful", "tragic"], ["rock", "90s"]):
    point = tags_to_va(tags, lexicon)
    if point is None:
        print(f"  tags {tags}: no emotion-related tags matched")
    else:
        print(f"  tags {tags}: valence={point.valence:+.2f} "
              f"arousal={point.arousal:+.2f}")

corpus = make_emotion_corpus(400, seed=3)
train = Corpus(songs=corpus.songs[:320])
test = corpus.songs[320:]
model = train_va_regressor(train)
points = predict_va(model, test)

print(f"\nridge regressor trained on {len(train)} songs, "
      f"evaluated on {len(test)} held out:")
for dim, idx in (("valence", 0), ("arousal", 1)):
    gold = [s.va_gold[idx] for s in test]
    pred = [p[idx] for p in points]
    print(f"  {dim}: pearson={pearson(gold, pred).value:.3f} "
          f"spearman={spearman(gold, pred).value:.3f}")
