"""Explicit-lyrics detection: induced dictionary, lookup, and regressors.

The dictionary ranks terms by smoothed log-odds of appearing in explicit
vs clean songs. Lookup flags any song containing a dictionary term; the
regressors weigh term counts, which lets them ignore single stray
occurrences that fool the lookup.
"""

from lyriclayers import (evaluate_explicit, induce_dictionary, lookup_classify,
                         train_dictionary_regression, train_tfidf_regression)
from lyriclayers.explicit import classify
from lyriclayers.synthetic import make_explicit_corpus

corpus, planted = make_explicit_corpus(2000, seed=4)
golds = [s.explicit_gold for s in corpus]
n_explicit = sum(1 for g in golds if g == "explicit")
print(f"{len(corpus)} songs, {n_explicit} explicit, "
      f"{len(planted)} planted terms")

dictionary = induce_dictionary(corpus, n=32)
hits = len(set(planted) & dictionary.term_set)
print(f"\ninduced 32-term dictionary recovers {hits}/{len(planted)} planted terms")
print("top 8 by log-odds:")
for term, score in dictionary.entries[:8]:
    print(f"  {term:16s} {score:6.2f}")

rows = [("majority class", ["clean"] * len(corpus))]
rows.append(("dictionary lookup",
             [lookup_classify(s, dictionary) for s in corpus]))
model = train_dictionary_regression(corpus, dictionary, iters=300)
rows.append(("dictionary regression", classify(model, corpus.songs)[0]))
model = train_tfidf_regression(corpus, iters=300)
rows.append(("tf-idf regression", classify(model, corpus.songs)[0]))

print(f"\n{'model':24s} {'P':>6} {'R':>6} {'F1':>6}   (macro, %)")
for name, preds in rows:
    r = evaluate_explicit(preds, golds)
    print(f"{name:24s} {r.precision:6.1f} {r.recall:6.1f} {r.f1:6.1f}")
