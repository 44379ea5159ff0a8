"""Segment-border prediction from line-SSM features.

A candidate border sits between consecutive lines. Each candidate is
described by window means of the SSM above/below/across the border at
several window sizes, a diagonal-stripe score capturing repetition that
runs across the border, and its relative position; a logistic model over
those features is thresholded to emit borders.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus
from .linear import LinearModel, predict_proba, train_logistic
from .ssm import SSM, line_ssm

FEATURE_DIM = 11


@dataclass(frozen=True)
class FeatureConfig:
    window_sizes: tuple[int, ...] = (1, 2, 4)
    tau_rep: float = 0.7


@dataclass
class SegmenterModel:
    linear: LinearModel
    theta: float = 0.5
    config: FeatureConfig = field(default_factory=FeatureConfig)

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise ValueError("theta must lie in (0, 1)")
        expected = 3 * len(self.config.window_sizes) + 2
        if len(self.linear.weights) != expected:
            raise ValueError(f"weight count {len(self.linear.weights)} != {expected}")


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float


def prf_from_counts(tp: int, n_pred: int, n_gold: int) -> PRF:
    """Border-level precision/recall/F1 in percent; empty denominators score 0."""
    p = tp / n_pred if n_pred else 0.0
    r = tp / n_gold if n_gold else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return PRF(precision=100.0 * p, recall=100.0 * r, f1=100.0 * f1)


def _stripe_score(values: np.ndarray, b: int, tau: float) -> float:
    """Mean normalized length of >=tau runs that span the border along
    diagonals crossing it; 0 when repetition stops at the border."""
    n = values.shape[0]
    total = 0.0
    count = 0
    for k in range(1, n - b):
        count += 1
        if values[b - 1, b - 1 + k] < tau or values[b, b + k] < tau:
            continue
        lo = b - 1
        while lo - 1 >= 0 and values[lo - 1, lo - 1 + k] >= tau:
            lo -= 1
        hi = b
        while hi + 1 <= n - 1 - k and values[hi + 1, hi + 1 + k] >= tau:
            hi += 1
        total += (hi - lo + 1) / (n - k)
    return total / count if count else 0.0


def extract_border_features(ssm: SSM, b: int,
                            config: FeatureConfig = FeatureConfig()) -> np.ndarray:
    """Feature vector for the candidate border before line ``b`` (1..n-1)."""
    if ssm.granularity != "line":
        raise ValueError("border features require a line-level SSM")
    n = ssm.n
    if not 1 <= b <= n - 1:
        raise ValueError(f"border position {b} out of range 1..{n - 1}")
    v = ssm.values
    feats = []
    for w in config.window_sizes:
        above = v[max(0, b - w):b, max(0, b - w):b]
        below = v[b:min(n, b + w), b:min(n, b + w)]
        across = v[max(0, b - w):b, b:min(n, b + w)]
        feats.append(above.mean())
        feats.append(below.mean())
        feats.append(across.mean())
    feats.append(_stripe_score(v, b, config.tau_rep))
    feats.append(b / n)
    return np.array(feats, dtype=np.float64)


def border_feature_matrix(ssm: SSM, config: FeatureConfig = FeatureConfig()) -> np.ndarray:
    """Features for every candidate border of a song; shape (n-1, 11)."""
    return np.array([extract_border_features(ssm, b, config)
                     for b in range(1, ssm.n)], dtype=np.float64).reshape(-1, FEATURE_DIM)


def train_segmenter(corpus: Corpus, config: FeatureConfig = FeatureConfig(),
                    l2: float = 1.0, iters: int = 300, seed: int = 0,
                    holdout_fraction: float = 0.1) -> SegmenterModel:
    """Fit the border classifier on every candidate position of every song.

    The decision threshold is tuned to maximize border F1 on a held-out
    fraction of songs (0.5 when the held-out split is empty). Gold borders
    are the positions where a new gold segment starts.
    """
    usable = [song for song in corpus if song.line_count >= 2]
    if not usable:
        raise ValueError("training needs at least one song with two or more lines")
    order = list(range(len(usable)))
    random.Random(seed).shuffle(order)
    n_held = int(len(usable) * holdout_fraction)
    held_idx = set(order[:n_held])

    train_X, train_y = [], []
    held: list[tuple[np.ndarray, set[int]]] = []
    for i, song in enumerate(usable):
        feats = border_feature_matrix(line_ssm(song), config)
        gold = song.gold_borders()
        if i in held_idx:
            held.append((feats, gold))
        else:
            train_X.append(feats)
            train_y.extend(1.0 if b in gold else 0.0 for b in range(1, song.line_count))
    X = np.vstack(train_X)
    y = np.array(train_y)
    if not y.any():
        raise ValueError("degenerate training set: no positive border examples")
    linear, _ = train_logistic(X, y, l2=l2, iters=iters, seed=seed)

    theta = 0.5
    if held:
        theta = _tune_theta(linear, held)
    return SegmenterModel(linear=linear, theta=theta, config=config)


def _tune_theta(linear: LinearModel, held: list[tuple[np.ndarray, set[int]]]) -> float:
    probs = [predict_proba(linear, feats) for feats, _ in held]
    candidates = sorted({float(p) for ps in probs for p in ps})
    if not candidates:
        return 0.5
    best_theta, best_f1 = 0.5, -1.0
    for theta in candidates:
        tp = n_pred = n_gold = 0
        for ps, (_, gold) in zip(probs, held):
            pred = {b + 1 for b, p in enumerate(ps) if p >= theta}
            tp += len(pred & gold)
            n_pred += len(pred)
            n_gold += len(gold)
        f1 = prf_from_counts(tp, n_pred, n_gold).f1
        if f1 > best_f1:
            best_theta, best_f1 = theta, f1
    return min(max(best_theta, 1e-9), 1.0 - 1e-9)


def predict_borders(model: SegmenterModel, ssm: SSM) -> list[int]:
    """Borders predicted for one song, strictly ascending, within 1..n-1."""
    if ssm.n < 2:
        return []
    probs = predict_proba(model.linear, border_feature_matrix(ssm, model.config))
    return [b + 1 for b, p in enumerate(probs) if p >= model.theta]


def evaluate_segmentation(pred: set[int], gold: set[int]) -> PRF:
    pred, gold = set(pred), set(gold)
    return prf_from_counts(len(pred & gold), len(pred), len(gold))


def evaluate_pooled(pairs: list[tuple[set[int], set[int]]]) -> PRF:
    """Micro-pooled PRF over (pred, gold) border sets of many songs."""
    tp = n_pred = n_gold = 0
    for pred, gold in pairs:
        pred, gold = set(pred), set(gold)
        tp += len(pred & gold)
        n_pred += len(pred)
        n_gold += len(gold)
    return prf_from_counts(tp, n_pred, n_gold)


def evaluate_by_genre(corpus: Corpus, predictions: dict[str, set[int]]) -> dict[str, PRF]:
    """Pool border counts across each genre's songs; unlabelled songs are skipped."""
    by_genre: dict[str, list[tuple[set[int], set[int]]]] = {}
    for song in corpus:
        if song.genre is None or song.id not in predictions:
            continue
        by_genre.setdefault(song.genre, []).append(
            (set(predictions[song.id]), song.gold_borders()))
    return {genre: evaluate_pooled(pairs) for genre, pairs in sorted(by_genre.items())}


def save_segmenter(model: SegmenterModel, path: str | Path) -> None:
    data = {
        "version": 1,
        "kind": "segmenter",
        "feature_config": {
            "window_sizes": list(model.config.window_sizes),
            "tau_rep": model.config.tau_rep,
        },
        "weights": model.linear.weights.tolist(),
        "bias": model.linear.bias,
        "l2": model.linear.l2,
        "seed": model.linear.seed,
        "theta": model.theta,
    }
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def load_segmenter(path: str | Path) -> SegmenterModel:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("kind") != "segmenter":
        raise ValueError(f"{path}: not a segmenter model file")
    config = FeatureConfig(
        window_sizes=tuple(data["feature_config"]["window_sizes"]),
        tau_rep=data["feature_config"]["tau_rep"],
    )
    linear = LinearModel(kind="logistic", weights=np.asarray(data["weights"]),
                         bias=data["bias"], l2=data.get("l2", 1.0),
                         seed=data.get("seed", 0))
    return SegmenterModel(linear=linear, theta=data["theta"], config=config)
