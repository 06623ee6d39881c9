import numpy as np
import scipy.sparse as sp

_QUERY_BLOCK = 256


def fit_knn(X, y, hp, rng=None):
    X = sp.csr_matrix(X, dtype=np.float64)
    return {
        "data": X.data.copy(),
        "indices": X.indices.astype(np.int64),
        "indptr": X.indptr.astype(np.int64),
        "shape": np.array(X.shape, dtype=np.int64),
        "labels": y.astype(np.int64),
        "k": np.array([int(hp["k"])]),
    }


def _train_matrix(params):
    return sp.csr_matrix(
        (params["data"], params["indices"], params["indptr"]),
        shape=tuple(int(s) for s in params["shape"]),
    )


def predict_knn(params, X):
    """Majority vote of the k Euclidean-nearest training rows.

    Equal distances resolve to the lower training index; an even vote goes
    to the class of the single nearest neighbour.
    """
    train = _train_matrix(params)
    labels = params["labels"]
    k = min(int(params["k"][0]), train.shape[0])
    X = sp.csr_matrix(X, dtype=np.float64)
    train_sq = np.asarray(train.multiply(train).sum(axis=1)).ravel()
    out = np.empty(X.shape[0], dtype=np.int64)
    for start in range(0, X.shape[0], _QUERY_BLOCK):
        block = X[start:start + _QUERY_BLOCK]
        q_sq = np.asarray(block.multiply(block).sum(axis=1)).ravel()
        dist = q_sq[:, None] + train_sq[None, :] - 2.0 * (block @ train.T).toarray()
        np.maximum(dist, 0.0, out=dist)
        for r in range(dist.shape[0]):
            nearest = np.argsort(dist[r], kind="stable")[:k]
            votes = int(labels[nearest].sum())
            if 2 * votes > k:
                out[start + r] = 1
            elif 2 * votes < k:
                out[start + r] = 0
            else:
                out[start + r] = labels[nearest[0]]
    return out
