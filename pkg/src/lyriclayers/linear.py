"""Linear models over sparse or dense feature matrices.

Logistic regression is fit by deterministic full-batch gradient descent
with backtracking step halving (recorded losses can never increase);
ridge regression is solved in closed form via the normal equations with
an unpenalized bias column. Both accept numpy arrays or scipy CSR
matrices, so text BOW features stay sparse end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


@dataclass
class LinearModel:
    kind: str  # "logistic" | "ridge"
    weights: np.ndarray
    bias: float
    l2: float = 1.0
    seed: int = 0

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if not np.all(np.isfinite(self.weights)) or not np.isfinite(self.bias):
            raise ValueError("model parameters must be finite")

    def decision(self, X) -> np.ndarray:
        z = X @ self.weights
        return np.asarray(z).ravel() + self.bias

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "weights": self.weights.tolist(),
            "bias": float(self.bias),
            "l2": self.l2,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinearModel":
        return cls(
            kind=data["kind"],
            weights=np.asarray(data["weights"], dtype=np.float64),
            bias=float(data["bias"]),
            l2=float(data.get("l2", 1.0)),
            seed=int(data.get("seed", 0)),
        )


def predict_proba(model: LinearModel, X) -> np.ndarray:
    z = model.decision(X)
    # stable sigmoid
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss(X, y, weights: np.ndarray, bias: float, l2: float) -> float:
    """Mean cross-entropy plus l2*||w||^2 / (2n)."""
    z = np.asarray(X @ weights).ravel() + bias
    nll = np.logaddexp(0.0, z) - y * z
    n = len(y)
    return float(np.mean(nll) + l2 * float(weights @ weights) / (2.0 * n))


def train_logistic(X, y, l2: float = 1.0, iters: int = 300,
                   seed: int = 0) -> tuple[LinearModel, list[float]]:
    """Fit a binary logistic regression; returns the model and the recorded
    per-iteration losses (monotone non-increasing by construction)."""
    y = np.asarray(y, dtype=np.float64)
    n, d = X.shape
    if n != len(y):
        raise ValueError("X and y disagree on sample count")
    w = np.zeros(d)
    b = 0.0
    lr = 1.0
    losses = [logistic_loss(X, y, w, b, l2)]
    for _ in range(iters):
        z = np.asarray(X @ w).ravel() + b
        p = 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))
        err = p - y
        grad_w = np.asarray(X.T @ err).ravel() / n + l2 * w / n
        grad_b = float(np.mean(err))
        # backtracking: shrink the step until the loss stops increasing
        for _ in range(50):
            w_new = w - lr * grad_w
            b_new = b - lr * grad_b
            loss_new = logistic_loss(X, y, w_new, b_new, l2)
            if loss_new <= losses[-1]:
                break
            lr *= 0.5
        else:
            losses.append(losses[-1])
            break
        w, b = w_new, b_new
        losses.append(loss_new)
        lr = min(lr * 1.2, 1e3)
    model = LinearModel(kind="logistic", weights=w, bias=b, l2=l2, seed=seed)
    return model, losses


def ridge_objective(X, y, weights: np.ndarray, bias: float, l2: float) -> float:
    resid = y - (np.asarray(X @ weights).ravel() + bias)
    return 0.5 * float(resid @ resid) + 0.5 * l2 * float(weights @ weights)


def train_ridge(X, y, l2: float = 1.0) -> LinearModel:
    """Closed-form ridge regression; the bias column is not penalized.

    Solves the (d+1)x(d+1) normal equations densely, so it expects the
    modest vocabularies this package works with, not web-scale ones.
    """
    y = np.asarray(y, dtype=np.float64)
    n, d = X.shape
    if sp.issparse(X):
        Z = sp.hstack([X, np.ones((n, 1))], format="csr")
        gram = (Z.T @ Z).toarray()
        rhs = np.asarray(Z.T @ y).ravel()
    else:
        Z = np.hstack([np.asarray(X, dtype=np.float64), np.ones((n, 1))])
        gram = Z.T @ Z
        rhs = Z.T @ y
    penalty = np.eye(d + 1) * l2
    penalty[d, d] = 0.0
    coef = np.linalg.solve(gram + penalty, rhs)
    return LinearModel(kind="ridge", weights=coef[:d], bias=float(coef[d]), l2=l2)
