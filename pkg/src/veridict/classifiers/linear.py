"""Linear classifiers: logistic regression, hinge-loss SVM and PA-I.

Labels arrive as 0/1 integer arrays (FAKE=0, REAL=1). Margin-based
learners work internally with y in {-1, +1}.
"""

import numpy as np
import scipy.sparse as sp


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _batches(n, batch_size, rng):
    order = rng.permutation(n)
    for start in range(0, n, batch_size):
        yield order[start:start + batch_size]


def fit_logistic(X, y, hp, rng):
    n, d = X.shape
    lr = float(hp["learning_rate"])
    l2 = float(hp["l2"])
    batch_size = int(hp["batch_size"])
    w = np.zeros(d)
    b = 0.0
    y = y.astype(np.float64)
    for _ in range(int(hp["epochs"])):
        for idx in _batches(n, batch_size, rng):
            Xb = X[idx]
            err = _sigmoid(Xb @ w + b) - y[idx]
            grad_w = np.asarray(Xb.T @ err).ravel() / len(idx) + l2 * w
            w -= lr * grad_w
            b -= lr * err.mean()
    return {"coef": w, "intercept": np.array([b])}


def fit_svm(X, y, hp, rng):
    """Soft-margin linear SVM by mini-batch subgradient descent on
    ``||w||^2 / (2 C n) + mean(hinge)``."""
    n, d = X.shape
    lr = float(hp["learning_rate"])
    lam = 1.0 / (float(hp["C"]) * n)
    batch_size = int(hp["batch_size"])
    ys = np.where(y == 1, 1.0, -1.0)
    w = np.zeros(d)
    b = 0.0
    for _ in range(int(hp["epochs"])):
        for idx in _batches(n, batch_size, rng):
            Xb = X[idx]
            yb = ys[idx]
            active = yb * (Xb @ w + b) < 1.0
            coeff = np.where(active, -yb, 0.0)
            grad_w = Xb.T @ coeff / len(idx) + lam * w
            w -= lr * np.asarray(grad_w).ravel()
            b -= lr * coeff.mean()
    return {"coef": w, "intercept": np.array([b])}


def predict_linear(params, X):
    scores = np.asarray(X @ params["coef"]).ravel() + params["intercept"][0]
    return (scores > 0).astype(np.int64)


def pa_step_size(loss, sq_norm, C):
    """PA-I step: ``min(C, loss / ||x||^2)``; zero for a zero vector."""
    if sq_norm <= 0.0:
        return 0.0
    return min(C, loss / sq_norm)


def pa_update(w, idx, val, y, C):
    """Apply one PA-I update in place for the sparse example ``(idx, val)``.

    ``y`` is +1 or -1. Returns the hinge loss suffered before the update.
    """
    margin = y * np.dot(w[idx], val)
    loss = max(0.0, 1.0 - margin)
    if loss > 0.0:
        tau = pa_step_size(loss, float(np.dot(val, val)), C)
        w[idx] += tau * y * val
    return loss


def fit_passive_aggressive(X, y, hp, rng):
    X = sp.csr_matrix(X)
    n, d = X.shape
    C = float(hp["C"])
    ys = np.where(y == 1, 1.0, -1.0)
    w = np.zeros(d)
    indptr, indices, data = X.indptr, X.indices, X.data
    for _ in range(int(hp["epochs"])):
        order = rng.permutation(n) if hp.get("shuffle", True) else np.arange(n)
        for i in order:
            lo, hi = indptr[i], indptr[i + 1]
            pa_update(w, indices[lo:hi], data[lo:hi], ys[i], C)
    return {"coef": w, "intercept": np.zeros(1)}
