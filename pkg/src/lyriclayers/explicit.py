"""Explicit-lyrics detection.

A profanity dictionary is induced from labelled examples by smoothed
log-odds of document frequency in explicit vs clean lyrics. Three
classifiers build on it: a bare dictionary lookup, logistic regression
over dictionary-term counts, and logistic regression over the full
tf-idf vocabulary. Evaluation is macro-averaged over the two classes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .corpus import Corpus, Song, tokenize
from .linear import LinearModel, predict_proba, train_logistic

EXPLICIT, CLEAN = "explicit", "clean"

DEFAULT_DICT_SIZE = 32
DEFAULT_PRIOR = 0.5
DEFAULT_MIN_DF = 5


def song_tokens(song: Song) -> list[str]:
    """Classifier tokenization: lowercase, non-alphanumeric split, len >= 2."""
    return tokenize(song.text(), min_len=2)


@dataclass
class Dictionary:
    entries: list[tuple[str, float]]  # (term, score), scores non-increasing
    prior: float = DEFAULT_PRIOR
    min_df: int = DEFAULT_MIN_DF

    def __post_init__(self):
        self.term_set = frozenset(term for term, _ in self.entries)

    def terms(self) -> list[str]:
        return [term for term, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def _labelled_doc_sets(corpus: Corpus) -> tuple[list[set[str]], list[set[str]]]:
    explicit_docs, clean_docs = [], []
    for song in corpus:
        if song.explicit_gold == EXPLICIT:
            explicit_docs.append(set(song_tokens(song)))
        elif song.explicit_gold == CLEAN:
            clean_docs.append(set(song_tokens(song)))
    return explicit_docs, clean_docs


def induce_dictionary(corpus: Corpus, n: int = DEFAULT_DICT_SIZE,
                      prior: float = DEFAULT_PRIOR,
                      min_df: int = DEFAULT_MIN_DF) -> Dictionary:
    """Top-n terms by smoothed log-odds of appearing in explicit vs clean songs.

    score(t) = ln((df_e + c) / (N_e - df_e + c)) - ln((df_c + c) / (N_c - df_c + c))
    with symmetric pseudo-count c, restricted to terms of total document
    frequency >= min_df. Ties break lexicographically.
    """
    if n < 1:
        raise ValueError("dictionary size must be >= 1")
    explicit_docs, clean_docs = _labelled_doc_sets(corpus)
    if not explicit_docs or not clean_docs:
        raise ValueError("dictionary induction needs both explicit and clean songs")
    df_e: dict[str, int] = {}
    df_c: dict[str, int] = {}
    for doc in explicit_docs:
        for t in doc:
            df_e[t] = df_e.get(t, 0) + 1
    for doc in clean_docs:
        for t in doc:
            df_c[t] = df_c.get(t, 0) + 1
    n_e, n_c = len(explicit_docs), len(clean_docs)
    scored = []
    for term in set(df_e) | set(df_c):
        e = df_e.get(term, 0)
        c = df_c.get(term, 0)
        if e + c < min_df:
            continue
        score = (math.log((e + prior) / (n_e - e + prior))
                 - math.log((c + prior) / (n_c - c + prior)))
        scored.append((term, score))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return Dictionary(entries=scored[:n], prior=prior, min_df=min_df)


def lookup_classify(song: Song, dictionary: Dictionary) -> str:
    """Explicit iff any whole token of the song is a dictionary term."""
    return EXPLICIT if any(t in dictionary.term_set for t in song_tokens(song)) else CLEAN


@dataclass
class BowSpace:
    vocabulary: dict[str, int]        # term -> dense column 0..V-1
    idf: np.ndarray | None            # present for the tf-idf space
    doc_count: int

    def transform(self, token_docs: list[list[str]]) -> sp.csr_matrix:
        """Counts per document; tf-idf spaces weight by idf and L2-normalize rows.

        Out-of-vocabulary terms are ignored (closed vocabulary).
        """
        rows, cols, vals = [], [], []
        for r, doc in enumerate(token_docs):
            counts: dict[int, int] = {}
            for t in doc:
                col = self.vocabulary.get(t)
                if col is not None:
                    counts[col] = counts.get(col, 0) + 1
            for col in sorted(counts):
                rows.append(r)
                cols.append(col)
                vals.append(float(counts[col]))
        X = sp.csr_matrix((vals, (rows, cols)),
                          shape=(len(token_docs), len(self.vocabulary)))
        if self.idf is not None:
            X = X.multiply(self.idf).tocsr()
            norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
            norms[norms == 0] = 1.0
            X = sp.diags(1.0 / norms) @ X
        return X.tocsr()


def fit_bow_space(token_docs: list[list[str]], use_idf: bool,
                  min_df: int = 1) -> BowSpace:
    df: dict[str, int] = {}
    for doc in token_docs:
        for t in set(doc):
            df[t] = df.get(t, 0) + 1
    terms = sorted(t for t, d in df.items() if d >= min_df)
    vocabulary = {t: i for i, t in enumerate(terms)}
    n = len(token_docs)
    idf = None
    if use_idf:
        idf = np.array([math.log((1 + n) / (1 + df[t])) + 1 for t in terms])
    return BowSpace(vocabulary=vocabulary, idf=idf, doc_count=n)


@dataclass
class ExplicitModel:
    method: str  # "dictionary" | "tfidf"
    space: BowSpace
    linear: LinearModel


def _labelled(corpus: Corpus) -> tuple[list[Song], np.ndarray]:
    songs = [s for s in corpus if s.explicit_gold in (EXPLICIT, CLEAN)]
    y = np.array([1.0 if s.explicit_gold == EXPLICIT else 0.0 for s in songs])
    if len(songs) == 0 or y.all() or not y.any():
        raise ValueError("training needs both explicit and clean songs")
    return songs, y


def train_dictionary_regression(corpus: Corpus, dictionary: Dictionary,
                                l2: float = 1.0, iters: int = 300,
                                seed: int = 0) -> ExplicitModel:
    """Logistic regression over raw counts of the dictionary terms."""
    songs, y = _labelled(corpus)
    vocabulary = {t: i for i, t in enumerate(sorted(dictionary.term_set))}
    space = BowSpace(vocabulary=vocabulary, idf=None, doc_count=len(songs))
    X = space.transform([song_tokens(s) for s in songs])
    linear, _ = train_logistic(X, y, l2=l2, iters=iters, seed=seed)
    return ExplicitModel(method="dictionary", space=space, linear=linear)


def train_tfidf_regression(corpus: Corpus, l2: float = 1.0, iters: int = 300,
                           seed: int = 0, min_df: int = 1) -> ExplicitModel:
    """Logistic regression over the full training vocabulary, tf-idf weighted."""
    songs, y = _labelled(corpus)
    docs = [song_tokens(s) for s in songs]
    space = fit_bow_space(docs, use_idf=True, min_df=min_df)
    X = space.transform(docs)
    linear, _ = train_logistic(X, y, l2=l2, iters=iters, seed=seed)
    return ExplicitModel(method="tfidf", space=space, linear=linear)


def classify(model: ExplicitModel, songs: list[Song]) -> tuple[list[str], np.ndarray]:
    """Labels and explicit-class probabilities for a batch of songs."""
    X = model.space.transform([song_tokens(s) for s in songs])
    probs = predict_proba(model.linear, X)
    labels = [EXPLICIT if p >= 0.5 else CLEAN for p in probs]
    return labels, probs


@dataclass
class ClassScores:
    precision: float
    recall: float
    f1: float


@dataclass
class MacroPRF:
    precision: float
    recall: float
    f1: float
    per_class: dict[str, ClassScores]


def evaluate_explicit(preds: list[str], golds: list[str]) -> MacroPRF:
    """Macro-averaged P/R/F1 in percent over the explicit and clean classes.

    Macro F1 is the mean of the two per-class F1 values; ratios with a zero
    denominator score 0.
    """
    if len(preds) != len(golds):
        raise ValueError("prediction and gold label lists differ in length")
    if not preds:
        raise ValueError("cannot evaluate an empty label list")
    bad = {lbl for lbl in list(preds) + list(golds)} - {EXPLICIT, CLEAN}
    if bad:
        raise ValueError(f"labels must be explicit/clean, got {sorted(bad)}")
    per_class = {}
    for cls in (EXPLICIT, CLEAN):
        tp = sum(1 for p, g in zip(preds, golds) if p == cls and g == cls)
        n_pred = sum(1 for p in preds if p == cls)
        n_gold = sum(1 for g in golds if g == cls)
        p = tp / n_pred if n_pred else 0.0
        r = tp / n_gold if n_gold else 0.0
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        per_class[cls] = ClassScores(100.0 * p, 100.0 * r, 100.0 * f1)
    return MacroPRF(
        precision=(per_class[EXPLICIT].precision + per_class[CLEAN].precision) / 2,
        recall=(per_class[EXPLICIT].recall + per_class[CLEAN].recall) / 2,
        f1=(per_class[EXPLICIT].f1 + per_class[CLEAN].f1) / 2,
        per_class=per_class,
    )


def save_dictionary(dictionary: Dictionary, path: str | Path) -> None:
    data = {
        "version": 1,
        "kind": "explicit-dictionary",
        "entries": [[term, score] for term, score in dictionary.entries],
        "prior": dictionary.prior,
        "min_df": dictionary.min_df,
    }
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def load_dictionary(path: str | Path) -> Dictionary:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("kind") != "explicit-dictionary":
        raise ValueError(f"{path}: not a dictionary file")
    return Dictionary(entries=[(term, float(score)) for term, score in data["entries"]],
                      prior=data.get("prior", DEFAULT_PRIOR),
                      min_df=data.get("min_df", DEFAULT_MIN_DF))


def save_explicit_model(model: ExplicitModel, path: str | Path) -> None:
    terms = sorted(model.space.vocabulary, key=model.space.vocabulary.get)
    data = {
        "version": 1,
        "kind": "explicit-model",
        "method": model.method,
        "vocabulary": terms,
        "idf": None if model.space.idf is None else model.space.idf.tolist(),
        "doc_count": model.space.doc_count,
        "linear": model.linear.to_dict(),
    }
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def load_explicit_model(path: str | Path) -> ExplicitModel:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("kind") != "explicit-model":
        raise ValueError(f"{path}: not an explicit model file")
    space = BowSpace(
        vocabulary={t: i for i, t in enumerate(data["vocabulary"])},
        idf=None if data["idf"] is None else np.asarray(data["idf"], dtype=np.float64),
        doc_count=data["doc_count"],
    )
    return ExplicitModel(method=data["method"], space=space,
                         linear=LinearModel.from_dict(data["linear"]))
