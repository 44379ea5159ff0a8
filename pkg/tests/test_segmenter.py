import random

import numpy as np
import pytest

from lyriclayers.corpus import Corpus, Song
from lyriclayers.segmenter import (FeatureConfig, evaluate_by_genre,
                                   evaluate_pooled, evaluate_segmentation,
                                   extract_border_features,
                                   border_feature_matrix, load_segmenter,
                                   predict_borders, prf_from_counts,
                                   save_segmenter, train_segmenter)
from lyriclayers.ssm import SSM, line_ssm
from lyriclayers.synthetic import make_segmentation_corpus
from helpers import random_song


def block_ssm(sizes):
    """Perfect block-diagonal SSM: ones inside blocks, zeros across."""
    n = sum(sizes)
    values = np.zeros((n, n))
    start = 0
    for size in sizes:
        values[start:start + size, start:start + size] = 1.0
        start += size
    return SSM(granularity="line", values=values)


def perfect_block_song(song_id, n_segments=4, lines_per_segment=4):
    """Lines identical inside a segment, zero similarity across segments."""
    segments = []
    for j in range(n_segments):
        line = chr(ord("a") + j) * (4 + j)
        segments.append(tuple(line for _ in range(lines_per_segment)))
    return Song(id=song_id, segments=tuple(segments))


class TestExtractBorderFeatures:
    def test_block_boundary_contrast(self):
        m = block_ssm([4, 4])
        feats = extract_border_features(m, 4)
        # layout: (above, below, across) per window size (1, 2, 4)
        for w_idx in range(3):
            assert feats[3 * w_idx + 0] == 1.0
            assert feats[3 * w_idx + 1] == 1.0
            assert feats[3 * w_idx + 2] == 0.0

    def test_uniform_ssm_all_ones(self):
        m = SSM(granularity="line", values=np.ones((6, 6)))
        for b in range(1, 6):
            feats = extract_border_features(m, b)
            assert (feats[:9] == 1.0).all()

    def test_window_truncation_stays_finite(self):
        song = Song(id="x", segments=(("aa", "bb", "cc"),))
        feats = extract_border_features(line_ssm(song), 1)
        assert feats.shape == (11,)
        assert np.isfinite(feats).all()

    def test_out_of_range_b(self):
        m = block_ssm([2, 2])
        with pytest.raises(ValueError):
            extract_border_features(m, 0)
        with pytest.raises(ValueError):
            extract_border_features(m, 4)

    def test_feature_dimension(self):
        m = block_ssm([3, 3])
        assert border_feature_matrix(m).shape == (5, 11)

    def test_stripe_score_crosses_border_inside_block(self):
        # inside a block of identical lines repetition runs straight through
        m = block_ssm([6])
        feats_mid = extract_border_features(m, 3)
        assert feats_mid[9] > 0.5
        # at a clean block boundary no run crosses
        m2 = block_ssm([3, 3])
        assert extract_border_features(m2, 3)[9] == 0.0


class TestTrainSegmenter:
    def test_perfect_blocks_reach_f1_100(self):
        # oracle: a single threshold on the across-border mean separates the
        # classes by construction, so a perfect linear fit must exist
        songs = [perfect_block_song(f"b{i}") for i in range(30)]
        across = {True: [], False: []}
        for song in songs:
            m = line_ssm(song)
            gold = song.gold_borders()
            for b in range(1, song.line_count):
                across[b in gold].append(extract_border_features(m, b)[2])
        assert max(across[True]) < min(across[False])

        model = train_segmenter(Corpus(songs=songs), seed=3)
        test = [perfect_block_song(f"t{i}", n_segments=3) for i in range(10)]
        pairs = [(set(predict_borders(model, line_ssm(s))), s.gold_borders())
                 for s in test]
        assert evaluate_pooled(pairs).f1 == 100.0

    def test_all_positions_border_predicts_everywhere(self):
        songs = [Song(id=f"s{i}", segments=(("aaaa",), ("bbbcc",), ("dddd",)))
                 for i in range(20)]
        model = train_segmenter(Corpus(songs=songs), seed=0)
        pairs = []
        for song in songs:
            pred = set(predict_borders(model, line_ssm(song)))
            pairs.append((pred, song.gold_borders()))
        assert evaluate_pooled(pairs).recall == 100.0

    def test_empty_corpus_errors(self):
        with pytest.raises(ValueError):
            train_segmenter(Corpus(songs=[]))

    def test_no_positive_examples_errors(self):
        songs = [Song(id=f"s{i}", segments=(("aaa", "bbb", "ccc"),))
                 for i in range(10)]
        with pytest.raises(ValueError, match="degenerate training set"):
            train_segmenter(Corpus(songs=songs))

    def test_repetition_gap_between_genres(self):
        corpus = make_segmentation_corpus(120, seed=77, high_fraction=0.5)
        train = Corpus(songs=[s for i, s in enumerate(corpus.songs) if i % 4])
        test = Corpus(songs=[s for i, s in enumerate(corpus.songs) if i % 4 == 0])
        model = train_segmenter(train, seed=1)
        preds = {s.id: set(predict_borders(model, line_ssm(s))) for s in test}
        by_genre = evaluate_by_genre(test, preds)
        assert by_genre["verse-chorus"].f1 - by_genre["freeform"].f1 > 10.0


@pytest.fixture(scope="module")
def block_model():
    songs = [perfect_block_song(f"b{i}") for i in range(30)]
    return train_segmenter(Corpus(songs=songs), seed=3)


class TestPredictBorders:
    def test_single_line_song(self, block_model):
        m = line_ssm(Song(id="x", segments=(("just one",),)))
        assert predict_borders(block_model, m) == []

    def test_block_boundary_found(self, block_model):
        assert predict_borders(block_model, block_ssm([4, 4])) == [4]

    def test_uniform_ssm_no_borders(self, block_model):
        m = SSM(granularity="line", values=np.ones((8, 8)))
        assert predict_borders(block_model, m) == []

    def test_output_sorted_within_range(self, block_model):
        rng = random.Random(12)
        for i in range(30):
            song = random_song(rng, f"r{i}")
            if song.line_count < 2:
                continue
            pred = predict_borders(block_model, line_ssm(song))
            assert pred == sorted(set(pred))
            assert all(1 <= b <= song.line_count - 1 for b in pred)


class TestEvaluate:
    def test_identity(self):
        prf = evaluate_segmentation({2, 5}, {2, 5})
        assert (prf.precision, prf.recall, prf.f1) == (100.0, 100.0, 100.0)

    def test_empty_prediction(self):
        prf = evaluate_segmentation(set(), {2, 5})
        assert (prf.precision, prf.recall, prf.f1) == (0.0, 0.0, 0.0)

    def test_half_overlap(self):
        prf = evaluate_segmentation({2, 5}, {2, 7})
        assert (prf.precision, prf.recall, prf.f1) == (50.0, 50.0, 50.0)

    def test_f1_is_harmonic_mean(self):
        rng = random.Random(8)
        for _ in range(100):
            pred = {rng.randrange(20) for _ in range(rng.randrange(8))}
            gold = {rng.randrange(20) for _ in range(rng.randrange(8))}
            prf = evaluate_segmentation(pred, gold)
            if prf.precision + prf.recall > 0:
                expected = (2 * prf.precision * prf.recall
                            / (prf.precision + prf.recall))
                assert prf.f1 == pytest.approx(expected)
            else:
                assert prf.f1 == 0.0

    def test_pooled_equals_recomputation_from_counts(self):
        rng = random.Random(9)
        pairs = []
        for _ in range(40):
            pred = {rng.randrange(15) for _ in range(rng.randrange(6))}
            gold = {rng.randrange(15) for _ in range(rng.randrange(6))}
            pairs.append((pred, gold))
        pooled = evaluate_pooled(pairs)
        tp = sum(len(p & g) for p, g in pairs)
        again = prf_from_counts(tp, sum(len(p) for p, _ in pairs),
                                sum(len(g) for _, g in pairs))
        assert pooled == again
        shuffled = list(pairs)
        rng.shuffle(shuffled)
        assert evaluate_pooled(shuffled) == pooled


class TestPersistence:
    def test_round_trip_identical_predictions(self, tmp_path):
        songs = [perfect_block_song(f"b{i}") for i in range(20)]
        model = train_segmenter(Corpus(songs=songs), seed=5)
        path = tmp_path / "seg.json"
        save_segmenter(model, path)
        loaded = load_segmenter(path)
        assert loaded.theta == model.theta
        assert loaded.config == model.config
        probe = [perfect_block_song(f"p{i}", n_segments=3) for i in range(5)]
        for song in probe:
            m = line_ssm(song)
            assert predict_borders(loaded, m) == predict_borders(model, m)

    def test_wrong_kind_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "other"}', encoding="utf-8")
        with pytest.raises(ValueError):
            load_segmenter(path)


def test_feature_config_threshold_validation():
    model_cfg = FeatureConfig(window_sizes=(1, 2, 4), tau_rep=0.7)
    assert model_cfg.window_sizes == (1, 2, 4)
