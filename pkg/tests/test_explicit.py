import math
import random

import numpy as np
import pytest

from lyriclayers.corpus import Corpus, Song
from lyriclayers.explicit import (Dictionary, evaluate_explicit, fit_bow_space,
                                  induce_dictionary, load_dictionary,
                                  load_explicit_model, lookup_classify,
                                  save_dictionary, save_explicit_model,
                                  song_tokens, classify,
                                  train_dictionary_regression,
                                  train_tfidf_regression)
from lyriclayers.linear import train_logistic


def make_song(i, text, label=None):
    return Song(id=f"s{i}", segments=(tuple(text.split("|")),),
                explicit_gold=label)


def toy_corpus():
    """6 explicit songs all containing 'grr', 6 clean without it."""
    songs = []
    for i in range(6):
        songs.append(make_song(i, f"grr walking down road {i}|singing grr loud",
                               "explicit"))
    for i in range(6, 12):
        songs.append(make_song(i, f"walking down road {i}|singing soft tune",
                               "clean"))
    return Corpus(songs=songs)


class TestInduceDictionary:
    def test_planted_term_ranked_first(self):
        d = induce_dictionary(toy_corpus(), n=5, min_df=2)
        assert d.entries[0][0] == "grr"

    def test_scores_match_log_odds_oracle(self):
        corpus = toy_corpus()
        d = induce_dictionary(corpus, n=50, min_df=2)
        # independent recount: document frequencies per class
        df_e, df_c = {}, {}
        n_e = n_c = 0
        for song in corpus:
            toks = set(song_tokens(song))
            if song.explicit_gold == "explicit":
                n_e += 1
                for t in toks:
                    df_e[t] = df_e.get(t, 0) + 1
            else:
                n_c += 1
                for t in toks:
                    df_c[t] = df_c.get(t, 0) + 1
        for term, score in d.entries:
            e, c = df_e.get(term, 0), df_c.get(term, 0)
            expected = (math.log((e + 0.5) / (n_e - e + 0.5))
                        - math.log((c + 0.5) / (n_c - c + 0.5)))
            assert score == pytest.approx(expected, abs=1e-12)

    def test_balanced_term_scores_zero(self):
        songs = [make_song(i, "even steven words", "explicit") for i in range(4)]
        songs += [make_song(i + 4, "even steven words", "clean") for i in range(4)]
        d = induce_dictionary(Corpus(songs=songs), n=10, min_df=2)
        assert all(score == pytest.approx(0.0) for _, score in d.entries)

    def test_n_larger_than_vocabulary(self):
        d = induce_dictionary(toy_corpus(), n=1000, min_df=2)
        assert len(d) < 1000
        assert "grr" in d.term_set

    def test_min_df_filters(self):
        d = induce_dictionary(toy_corpus(), n=100, min_df=50)
        assert len(d) == 0

    def test_single_class_errors(self):
        songs = [make_song(i, "only clean here", "clean") for i in range(5)]
        with pytest.raises(ValueError):
            induce_dictionary(Corpus(songs=songs))

    def test_scores_non_increasing_and_terms_unique(self):
        d = induce_dictionary(toy_corpus(), n=50, min_df=1)
        scores = [s for _, s in d.entries]
        assert scores == sorted(scores, reverse=True)
        terms = d.terms()
        assert len(terms) == len(set(terms))

    def test_rank_stable_under_corpus_duplication(self):
        # 10x duplication with proportionally scaled pseudo-count and min_df
        # leaves every log-odds ratio (and hence the ranking) unchanged
        corpus = toy_corpus()
        base = induce_dictionary(corpus, n=20, prior=0.5, min_df=2)
        dup_songs = []
        for rep in range(10):
            for song in corpus:
                dup_songs.append(Song(id=f"{song.id}-r{rep}",
                                      segments=song.segments,
                                      explicit_gold=song.explicit_gold))
        dup = induce_dictionary(Corpus(songs=dup_songs), n=20, prior=5.0,
                                min_df=20)
        assert base.terms() == dup.terms()
        for (_, a), (_, b) in zip(base.entries, dup.entries):
            assert a == pytest.approx(b, abs=1e-6)


class TestLookupClassify:
    DICT = Dictionary(entries=[("ass", 2.0), ("grr", 1.5)])

    def test_term_present(self):
        assert lookup_classify(make_song(0, "oh grr my"), self.DICT) == "explicit"

    def test_empty_lyrics(self):
        song = Song(id="e", segments=())
        assert lookup_classify(song, self.DICT) == "clean"

    def test_whole_token_matching(self):
        assert lookup_classify(make_song(0, "first class ride"), self.DICT) == "clean"

    def test_monotone_under_added_text(self):
        rng = random.Random(3)
        for i in range(50):
            words = [rng.choice(["grr", "la", "door", "tune"])
                     for _ in range(rng.randint(1, 6))]
            song = make_song(i, " ".join(words))
            extended = make_song(i, " ".join(words) + "|extra clean words here")
            if lookup_classify(song, self.DICT) == "explicit":
                assert lookup_classify(extended, self.DICT) == "explicit"


class TestBowSpace:
    def test_idf_formula(self):
        docs = [["aaa", "bbb"], ["aaa"], ["aaa", "ccc"]]
        space = fit_bow_space(docs, use_idf=True)
        n = 3
        for term, df in (("aaa", 3), ("bbb", 1), ("ccc", 1)):
            col = space.vocabulary[term]
            assert space.idf[col] == pytest.approx(math.log((1 + n) / (1 + df)) + 1)

    def test_unseen_term_ignored(self):
        space = fit_bow_space([["aaa"]], use_idf=True)
        X = space.transform([["aaa", "zzz", "zzz"]])
        assert X.shape == (1, 1)
        assert X[0, 0] == pytest.approx(1.0)  # single term, L2-normalized

    def test_uniform_idf_preserves_count_ordering(self):
        # every term in every doc -> uniform idf -> tف-idf rows proportional
        # to count rows, so cosine similarities keep the same ordering
        docs = [["aaa", "bbb", "aaa"], ["aaa", "bbb", "bbb"], ["aaa", "bbb"]]
        tfidf_space = fit_bow_space(docs, use_idf=True)
        count_space = fit_bow_space(docs, use_idf=False)
        X_tfidf = tfidf_space.transform(docs).toarray()
        X_count = count_space.transform(docs).toarray()
        norm_count = X_count / np.linalg.norm(X_count, axis=1, keepdims=True)
        np.testing.assert_allclose(X_tfidf, norm_count, atol=1e-12)


def separable_corpus():
    """Dictionary-term count > 0 iff explicit, with enough occurrences that
    separation survives the l2=1.0 default regularization."""
    rng = random.Random(5)
    filler = ["door", "tune", "road", "walk", "sing", "line"]
    songs = []
    for i in range(30):
        words = [rng.choice(filler) for _ in range(12)]
        label = "explicit" if i % 3 == 0 else "clean"
        if label == "explicit":
            for _ in range(rng.randint(2, 4)):
                words.insert(rng.randrange(len(words)), "grr")
        songs.append(make_song(i, " ".join(words), label))
    return Corpus(songs=songs)


class TestRegressionTraining:
    def test_dictionary_regression_separable_f1_100(self):
        corpus = separable_corpus()
        d = Dictionary(entries=[("grr", 3.0)])
        # exhaustive threshold check: a count threshold separates perfectly
        counts = [sum(1 for t in song_tokens(s) if t == "grr") for s in corpus]
        golds = [s.explicit_gold for s in corpus]
        assert all((c > 0) == (g == "explicit") for c, g in zip(counts, golds))
        model = train_dictionary_regression(corpus, d, iters=500)
        preds, _ = classify(model, corpus.songs)
        assert evaluate_explicit(preds, golds).f1 == 100.0

    def test_tfidf_regression_separable_f1_100(self):
        corpus = separable_corpus()
        model = train_tfidf_regression(corpus, iters=500)
        preds, _ = classify(model, corpus.songs)
        golds = [s.explicit_gold for s in corpus]
        assert evaluate_explicit(preds, golds).f1 == 100.0

    def test_all_zero_features_predict_majority(self):
        corpus = separable_corpus()
        d = Dictionary(entries=[("nowhere", 1.0)])
        model = train_dictionary_regression(corpus, d, iters=200)
        preds, _ = classify(model, corpus.songs)
        majority = "clean"  # 20 of 30
        assert all(p == majority for p in preds)

    def test_huge_l2_shrinks_weights_to_zero(self):
        corpus = separable_corpus()
        d = Dictionary(entries=[("grr", 3.0)])
        model = train_dictionary_regression(corpus, d, l2=1e9, iters=200)
        assert np.abs(model.linear.weights).max() < 1e-3

    def test_training_loss_non_increasing(self):
        corpus = separable_corpus()
        docs = [song_tokens(s) for s in corpus]
        space = fit_bow_space(docs, use_idf=True)
        X = space.transform(docs)
        y = np.array([1.0 if s.explicit_gold == "explicit" else 0.0
                      for s in corpus])
        _, losses = train_logistic(X, y, iters=300)
        assert all(b <= a + 1e-15 for a, b in zip(losses, losses[1:]))

    def test_single_class_errors(self):
        songs = [make_song(i, "clean words only", "clean") for i in range(5)]
        with pytest.raises(ValueError):
            train_tfidf_regression(Corpus(songs=songs))


class TestEvaluateExplicit:
    def test_majority_class_matches_published_baseline(self):
        golds = ["clean"] * 180 + ["explicit"] * 20
        preds = ["clean"] * 200
        result = evaluate_explicit(preds, golds)
        assert result.precision == pytest.approx(45.0, abs=0.05)
        assert result.recall == pytest.approx(50.0, abs=0.05)
        assert result.f1 == pytest.approx(47.4, abs=0.05)

    def test_perfect_predictions(self):
        golds = ["clean", "explicit", "clean", "explicit"]
        result = evaluate_explicit(golds, golds)
        assert (result.precision, result.recall, result.f1) == (100.0, 100.0, 100.0)

    def test_inverted_on_balanced(self):
        golds = ["clean", "explicit"] * 10
        preds = ["explicit", "clean"] * 10
        result = evaluate_explicit(preds, golds)
        assert (result.precision, result.recall, result.f1) == (0.0, 0.0, 0.0)

    def test_length_mismatch_errors(self):
        with pytest.raises(ValueError):
            evaluate_explicit(["clean"], ["clean", "explicit"])

    def test_unknown_label_errors(self):
        with pytest.raises(ValueError):
            evaluate_explicit(["maybe"], ["clean"])

    @pytest.mark.parametrize("p", [0.5, 0.7, 0.9])
    def test_majority_macro_f1_closed_form(self, p):
        n = 1000
        n_clean = round(n * p)
        golds = ["clean"] * n_clean + ["explicit"] * (n - n_clean)
        result = evaluate_explicit(["clean"] * n, golds)
        # majority-class macro F1 = (harmonic mean of (p, 1) + 0) / 2
        expected = 100.0 * (2 * p / (1 + p)) / 2
        assert result.f1 == pytest.approx(expected, abs=1e-9)

    def test_macro_is_mean_of_per_class(self):
        rng = random.Random(2)
        labels = ["clean", "explicit"]
        golds = [rng.choice(labels) for _ in range(100)]
        preds = [rng.choice(labels) for _ in range(100)]
        result = evaluate_explicit(preds, golds)
        for attr in ("precision", "recall", "f1"):
            per = [getattr(result.per_class[c], attr) for c in labels]
            assert getattr(result, attr) == pytest.approx(sum(per) / 2)


class TestPersistence:
    def test_dictionary_round_trip(self, tmp_path):
        d = induce_dictionary(toy_corpus(), n=5, min_df=2)
        path = tmp_path / "dict.json"
        save_dictionary(d, path)
        loaded = load_dictionary(path)
        assert loaded.entries == d.entries
        assert loaded.term_set == d.term_set

    def test_model_round_trip_identical_predictions(self, tmp_path):
        corpus = separable_corpus()
        model = train_tfidf_regression(corpus, iters=300)
        path = tmp_path / "model.json"
        save_explicit_model(model, path)
        loaded = load_explicit_model(path)
        before, pb = classify(model, corpus.songs)
        after, pa = classify(loaded, corpus.songs)
        assert before == after
        np.testing.assert_array_equal(pb, pa)
