import random

import pytest

from lyriclayers.corpus import Corpus, Song, decade_of
from lyriclayers.diachronic import (emotion_by_decade, explicitness_by_decade,
                                    pre_advisory_decades,
                                    topic_importance_by_decade,
                                    write_series_csv)


def song(i, year=None, explicit=None, va=None):
    return Song(id=f"s{i}", segments=(("la",),), year=year,
                explicit_gold=explicit, va_gold=va)


def random_setup(seed, n=120, k=3):
    rng = random.Random(seed)
    songs, dists = [], {}
    for i in range(n):
        year = rng.choice([None, 1968, 1977, 1984, 1991, 2004, 2015])
        explicit = rng.choice([None, "explicit", "clean", "clean"])
        va = (rng.uniform(-1, 1), rng.uniform(-1, 1)) if rng.random() < 0.5 else None
        songs.append(song(i, year=year, explicit=explicit, va=va))
        if rng.random() < 0.8:
            raw = [rng.random() for _ in range(k)]
            total = sum(raw)
            dists[f"s{i}"] = [v / total for v in raw]
    return Corpus(songs=songs), dists


class TestTopicImportance:
    def test_mean_of_two_songs(self):
        corpus = Corpus(songs=[song(0, year=1991), song(1, year=1995)])
        dists = {"s0": [0.2, 0.8], "s1": [0.4, 0.6]}
        series = topic_importance_by_decade(corpus, dists)
        assert series[0].value(1990) == (pytest.approx(0.3),)
        assert series[1].value(1990) == (pytest.approx(0.7),)

    def test_single_song_decade(self):
        corpus = Corpus(songs=[song(0, year=2003)])
        series = topic_importance_by_decade(corpus, {"s0": [0.25, 0.75]})
        assert series[0].value(2000) == (0.25,)
        assert series[1].value(2000) == (0.75,)

    def test_importances_sum_to_one_per_decade(self):
        corpus, dists = random_setup(1)
        series = topic_importance_by_decade(corpus, dists)
        if not series:
            return
        for decade in series[0].decades():
            total = sum(s.value(decade)[0] for s in series)
            assert total == pytest.approx(1.0, abs=1e-9)

    def test_undated_or_uninferred_excluded(self):
        corpus = Corpus(songs=[song(0, year=None), song(1, year=1991)])
        series = topic_importance_by_decade(corpus, {"s0": [1.0], "s1": [1.0]})
        assert series[0].decades() == [1990]
        assert series[0].points[0].count == 1

    def test_empty(self):
        assert topic_importance_by_decade(Corpus(songs=[song(0)]), {}) == []


class TestExplicitness:
    def test_quarter_ratio(self):
        songs = [song(0, 1992, "explicit"), song(1, 1993, "clean"),
                 song(2, 1994, "clean"), song(3, 1999, "clean")]
        series = explicitness_by_decade(Corpus(songs=songs),
                                        {s.id: s.explicit_gold for s in songs})
        assert series.value(1990) == (0.25,)
        assert series.points[0].count == 4

    def test_unlabelled_decade_omitted(self):
        songs = [song(0, 1975), song(1, 1992, "clean")]
        series = explicitness_by_decade(
            Corpus(songs=songs), {"s1": "clean"})
        assert series.decades() == [1990]

    def test_gold_and_predicted_are_distinct_series(self):
        songs = [song(0, 1992, "explicit"), song(1, 1994, "clean")]
        corpus = Corpus(songs=songs)
        gold = explicitness_by_decade(corpus, {"s0": "explicit", "s1": "clean"},
                                      source="gold")
        pred = explicitness_by_decade(corpus, {"s0": "clean", "s1": "clean"},
                                      source="predicted")
        assert gold.value(1990) == (0.5,)
        assert pred.value(1990) == (0.0,)
        assert gold.points[0].source == "gold"
        assert pred.points[0].source == "predicted"

    def test_ratio_in_unit_interval(self):
        corpus, _ = random_setup(4)
        labels = {s.id: s.explicit_gold for s in corpus if s.explicit_gold}
        for point in explicitness_by_decade(corpus, labels).points:
            assert 0.0 <= point.value[0] <= 1.0


class TestEmotion:
    def test_component_mean(self):
        songs = [song(0, 1992, va=(0.2, 0.4)), song(1, 1994, va=(-0.2, 0.0))]
        series = emotion_by_decade(Corpus(songs=songs))
        assert series.value(1990) == (pytest.approx(0.0), pytest.approx(0.2))

    def test_no_va_omitted(self):
        songs = [song(0, 1975), song(1, 1992, va=(0.5, 0.5))]
        series = emotion_by_decade(Corpus(songs=songs))
        assert series.decades() == [1990]

    def test_source_flags(self):
        songs = [song(0, 1975, va=(0.1, 0.1)), song(1, 1992), song(2, 2004),
                 song(3, 2004, va=(0.4, 0.4))]
        series = emotion_by_decade(Corpus(songs=songs),
                                   predictions={"s1": (0.2, 0.2),
                                                "s2": (-0.1, 0.3)})
        by_decade = {p.decade: p.source for p in series.points}
        assert by_decade == {1970: "gold", 1990: "predicted", 2000: "mixed"}

    def test_gold_preferred_over_prediction(self):
        songs = [song(0, 1992, va=(1.0, 1.0))]
        series = emotion_by_decade(Corpus(songs=songs),
                                   predictions={"s0": (-1.0, -1.0)})
        assert series.value(1990) == (1.0, 1.0)


class TestBruteForceEquality:
    def test_all_series_match_independent_recomputation(self):
        for seed in range(15):
            corpus, dists = random_setup(seed)
            labels = {s.id: s.explicit_gold for s in corpus if s.explicit_gold}

            series = topic_importance_by_decade(corpus, dists)
            for t, s in enumerate(series):
                for point in s.points:
                    vals = [dists[x.id][t] for x in corpus
                            if x.year is not None and x.id in dists
                            and decade_of(x.year) == point.decade]
                    assert point.value[0] == sum(vals) / len(vals)

            exp = explicitness_by_decade(corpus, labels)
            for point in exp.points:
                lab = [labels[x.id] for x in corpus
                       if x.year is not None and x.id in labels
                       and decade_of(x.year) == point.decade]
                assert point.value[0] == (
                    sum(1 for v in lab if v == "explicit") / len(lab))

            emo = emotion_by_decade(corpus)
            for point in emo.points:
                vas = [x.va_gold for x in corpus
                       if x.year is not None and x.va_gold is not None
                       and decade_of(x.year) == point.decade]
                assert point.value[0] == sum(v[0] for v in vas) / len(vas)
                assert point.value[1] == sum(v[1] for v in vas) / len(vas)

    def test_shrinking_one_decade_only_changes_that_decade(self):
        corpus, dists = random_setup(2)
        target = 1990
        kept = [s for s in corpus
                if not (s.year is not None and decade_of(s.year) == target
                        and s.va_gold is not None and s.id.endswith("1"))]
        base = emotion_by_decade(corpus)
        shrunk = emotion_by_decade(Corpus(songs=kept))
        for point in base.points:
            if point.decade == target:
                continue
            assert shrunk.value(point.decade) == point.value


class TestSeriesCSV:
    def test_values_round_trip_exactly(self, tmp_path):
        corpus, dists = random_setup(6)
        series = emotion_by_decade(corpus)
        path = tmp_path / "emotion.csv"
        write_series_csv(series, path)
        rows = path.read_text(encoding="utf-8").splitlines()
        assert rows[0] == "decade,valence,arousal,count,source"
        for row, point in zip(rows[1:], series.points):
            cells = row.split(",")
            assert int(cells[0]) == point.decade
            assert float(cells[1]) == point.value[0]
            assert float(cells[2]) == point.value[1]
            assert int(cells[3]) == point.count

    def test_advisory_footnote_flags_pre_1985(self, tmp_path):
        songs = [song(0, 1972, "clean"), song(1, 1992, "explicit")]
        corpus = Corpus(songs=songs)
        series = explicitness_by_decade(
            corpus, {s.id: s.explicit_gold for s in songs})
        assert pre_advisory_decades(series) == [1970]
        path = tmp_path / "exp.csv"
        write_series_csv(series, path, advisory_note=True)
        text = path.read_text(encoding="utf-8")
        assert "# note: decades 1970" in text
