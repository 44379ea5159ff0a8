"""LDA topic modeling with a collapsed Gibbs sampler.

The sampler is deliberately plain Python: counts live in lists inside the
hot loop (faster than per-token numpy calls at these topic counts) and all
randomness flows from one seeded generator, so a fixed seed reproduces the
exact token-topic assignments. Model selection maximizes a coherence score
computed from top-word co-occurrence in a reference document set.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import tokenize
from .stopwords import ENGLISH

DEFAULT_TRAIN_ITERS = 200
DEFAULT_INFER_ITERS = 50
DEFAULT_SELECT_ITERS = 30
DEFAULT_TOP_N = 10


def preprocess(text: str) -> list[str]:
    """Topic-model tokenization: lowercase, alphanumeric runs, no stopwords,
    tokens of at least three characters."""
    return [t for t in tokenize(text, min_len=3) if t not in ENGLISH]


@dataclass
class LdaModel:
    k: int
    alpha: float
    eta: float
    vocabulary: list[str]
    topic_word_counts: np.ndarray  # K x V assignment counts
    seed: int
    iterations: int
    vocab_index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.topic_word_counts = np.asarray(self.topic_word_counts, dtype=np.int64)
        if self.topic_word_counts.shape != (self.k, len(self.vocabulary)):
            raise ValueError("topic-word count matrix shape mismatch")
        if self.k < 1 or self.alpha <= 0 or self.eta <= 0:
            raise ValueError("need k >= 1 and positive alpha, eta")
        self.vocab_index = {t: i for i, t in enumerate(self.vocabulary)}

    def topic_word(self) -> np.ndarray:
        """Smoothed topic-word distributions; each row sums to 1."""
        counts = self.topic_word_counts.astype(np.float64)
        v = len(self.vocabulary)
        return (counts + self.eta) / (counts.sum(axis=1, keepdims=True) + v * self.eta)


def _gibbs_pass(doc_tokens: list[list[int]], z: list[list[int]],
                nkw: list[list[int]], nk: list[int], ndk: list[list[int]],
                k: int, alpha: float, veta: float, eta: float,
                rng: random.Random, update_words: bool) -> None:
    """One full sweep of collapsed Gibbs updates over every token."""
    probs = [0.0] * k
    rand = rng.random
    for d, doc in enumerate(doc_tokens):
        zs = z[d]
        row = ndk[d]
        for i, t in enumerate(doc):
            old = zs[i]
            row[old] -= 1
            if update_words:
                nkw[old][t] -= 1
                nk[old] -= 1
            total = 0.0
            for kk in range(k):
                total += (nkw[kk][t] + eta) / (nk[kk] + veta) * (row[kk] + alpha)
                probs[kk] = total
            r = rand() * total
            new = 0
            while probs[new] < r:
                new += 1
            zs[i] = new
            row[new] += 1
            if update_words:
                nkw[new][t] += 1
                nk[new] += 1


def train_lda(docs: list[list[str]], k: int, alpha: float = 0.1, eta: float = 0.01,
              iters: int = DEFAULT_TRAIN_ITERS, seed: int = 0) -> LdaModel:
    """Train by collapsed Gibbs sampling; the model keeps the final-iteration
    topic-word counts. A fixed seed makes the run bit-reproducible."""
    if k < 1:
        raise ValueError("topic count k must be >= 1")
    vocabulary = sorted({t for doc in docs for t in doc})
    if not vocabulary:
        raise ValueError("empty vocabulary: no non-empty documents")
    index = {t: i for i, t in enumerate(vocabulary)}
    doc_tokens = [[index[t] for t in doc] for doc in docs]

    rng = random.Random(seed)
    v = len(vocabulary)
    nkw = [[0] * v for _ in range(k)]
    nk = [0] * k
    ndk = [[0] * k for _ in range(len(docs))]
    z: list[list[int]] = []
    for d, doc in enumerate(doc_tokens):
        zs = []
        row = ndk[d]
        for t in doc:
            topic = rng.randrange(k)
            zs.append(topic)
            nkw[topic][t] += 1
            nk[topic] += 1
            row[topic] += 1
        z.append(zs)

    veta = v * eta
    for _ in range(iters):
        _gibbs_pass(doc_tokens, z, nkw, nk, ndk, k, alpha, veta, eta, rng,
                    update_words=True)

    counts = np.array(nkw, dtype=np.int64)
    total_tokens = sum(len(doc) for doc in doc_tokens)
    assert int(counts.sum()) == total_tokens, "token count conservation violated"
    return LdaModel(k=k, alpha=alpha, eta=eta, vocabulary=vocabulary,
                    topic_word_counts=counts, seed=seed, iterations=iters)


def infer_topics(model: LdaModel, tokens: list[str],
                 iters: int = DEFAULT_INFER_ITERS, seed: int = 0) -> np.ndarray:
    """Topic distribution of one document under frozen topic-word counts.

    Out-of-vocabulary tokens are dropped; a document with none left gets
    the uniform distribution (the prior alone).
    """
    ids = [model.vocab_index[t] for t in tokens if t in model.vocab_index]
    k = model.k
    if not ids:
        return np.full(k, 1.0 / k)
    # native ints: numpy scalars would dominate the sampling loop
    nkw = model.topic_word_counts.tolist()
    nk = [sum(row) for row in nkw]
    ndk = [[0] * k]
    rng = random.Random(seed)
    zs = []
    for _ in ids:
        topic = rng.randrange(k)
        zs.append(topic)
        ndk[0][topic] += 1
    veta = len(model.vocabulary) * model.eta
    for _ in range(iters):
        _gibbs_pass([ids], [zs], nkw, nk, ndk, k, model.alpha, veta, model.eta,
                    rng, update_words=False)
    counts = np.array(ndk[0], dtype=np.float64)
    return (counts + model.alpha) / (len(ids) + k * model.alpha)


def top_words(model: LdaModel, topic: int, m: int = DEFAULT_TOP_N) -> list[str]:
    """The m highest-probability words of a topic; ties break alphabetically."""
    if not 0 <= topic < model.k:
        raise ValueError(f"topic {topic} out of range 0..{model.k - 1}")
    row = model.topic_word()[topic]
    order = sorted(range(len(row)), key=lambda i: (-row[i], model.vocabulary[i]))
    return [model.vocabulary[i] for i in order[:m]]


def coherence(model: LdaModel, docs: list[list[str]],
              top_n: int = DEFAULT_TOP_N) -> float:
    """Intrinsic topic coherence from top-word co-occurrence.

    For each topic with top words w_1 >= w_2 >= ... (by probability), sums
    ln((D(w_i, w_j) + 1) / D(w_j)) over pairs i < j, where D counts
    documents in ``docs`` containing the word(s); pairs whose denominator
    word never occurs are skipped. Returns the mean over topics.
    """
    doc_sets = [set(doc) for doc in docs]
    word_docs: dict[str, set[int]] = {}
    needed = set()
    per_topic_words = []
    for topic in range(model.k):
        words = top_words(model, topic, top_n)
        per_topic_words.append(words)
        needed.update(words)
    for w in needed:
        word_docs[w] = {i for i, ds in enumerate(doc_sets) if w in ds}

    topic_scores = []
    for words in per_topic_words:
        total = 0.0
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                denom = len(word_docs[words[j]])
                if denom == 0:
                    continue
                joint = len(word_docs[words[i]] & word_docs[words[j]])
                total += math.log((joint + 1) / denom)
        topic_scores.append(total)
    return float(np.mean(topic_scores))


@dataclass
class SelectionResult:
    best: tuple[int, float, float]  # (k, alpha, eta)
    scores: list[tuple[tuple[int, float, float], float]]


def select_hyperparameters(docs: list[list[str]],
                           grid: list[tuple[int, float, float]],
                           seed: int = 0,
                           iters: int = DEFAULT_SELECT_ITERS,
                           top_n: int = DEFAULT_TOP_N) -> SelectionResult:
    """Train one reduced-budget model per grid cell and keep the most
    coherent; ties prefer smaller k, then smaller alpha, then smaller eta.

    Per-cell seeds derive deterministically from the master seed and the
    cell's position in the grid.
    """
    if not grid:
        raise ValueError("hyperparameter grid is empty")
    scores = []
    for idx, (k, alpha, eta) in enumerate(grid):
        cell_seed = seed * 100003 + idx
        model = train_lda(docs, k, alpha=alpha, eta=eta, iters=iters, seed=cell_seed)
        scores.append(((k, alpha, eta), coherence(model, docs, top_n)))
    best = min(scores, key=lambda item: (-item[1], item[0][0], item[0][1], item[0][2]))
    return SelectionResult(best=best[0], scores=scores)


def save_lda(model: LdaModel, path: str | Path) -> None:
    data = {
        "version": 1,
        "kind": "lda-model",
        "k": model.k,
        "alpha": model.alpha,
        "eta": model.eta,
        "vocabulary": model.vocabulary,
        "topic_word_counts": model.topic_word_counts.tolist(),
        "seed": model.seed,
        "iterations": model.iterations,
    }
    Path(path).write_text(json.dumps(data) + "\n", encoding="utf-8")


def load_lda(path: str | Path) -> LdaModel:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("kind") != "lda-model":
        raise ValueError(f"{path}: not a topic model file")
    return LdaModel(k=data["k"], alpha=data["alpha"], eta=data["eta"],
                    vocabulary=data["vocabulary"],
                    topic_word_counts=np.asarray(data["topic_word_counts"]),
                    seed=data["seed"], iterations=data["iterations"])
