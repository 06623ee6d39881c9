"""Dense generative classifiers: two-class LDA and Gaussian naive Bayes."""

import numpy as np


def fit_lda(X, y, hp, rng=None):
    X0, X1 = X[y == 0], X[y == 1]
    mu0, mu1 = X0.mean(axis=0), X1.mean(axis=0)
    centered = np.vstack([X0 - mu0, X1 - mu1])
    cov = centered.T @ centered / max(len(X) - 2, 1)
    cov[np.diag_indices_from(cov)] += float(hp["reg"])
    w = np.linalg.solve(cov, mu1 - mu0)
    prior = np.log(len(X1) / len(X0))
    b = -0.5 * float(w @ (mu0 + mu1)) + prior
    return {"coef": w, "intercept": np.array([b])}


def fit_gaussian_nb(X, y, hp, rng=None):
    theta = np.vstack([X[y == k].mean(axis=0) for k in (0, 1)])
    var = np.vstack([X[y == k].var(axis=0) for k in (0, 1)])
    var += float(hp["var_smoothing"]) * X.var(axis=0).max() + 1e-12
    prior = np.array([np.mean(y == 0), np.mean(y == 1)])
    return {"theta": theta, "var": var, "log_prior": np.log(prior)}


def predict_gaussian_nb(params, X):
    theta, var = params["theta"], params["var"]
    jll = []
    for k in (0, 1):
        norm = -0.5 * np.sum(np.log(2.0 * np.pi * var[k]))
        quad = -0.5 * np.sum((X - theta[k]) ** 2 / var[k], axis=1)
        jll.append(params["log_prior"][k] + norm + quad)
    return (jll[1] > jll[0]).astype(np.int64)
