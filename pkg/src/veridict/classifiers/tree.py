"""CART decision tree grown by Gini impurity on sparse features.

The split search handles implicit zeros as a single block in each column's
sorted order, so it never densifies the node matrix. A row goes left when
``x[feature] <= threshold``.
"""

import numpy as np
import scipy.sparse as sp


def _gini(n, n1):
    n = np.asarray(n, dtype=np.float64)
    p1 = np.divide(n1, n, out=np.zeros_like(n), where=n > 0)
    return 1.0 - p1 ** 2 - (1.0 - p1) ** 2


def best_split(Xc, y):
    """Return ``(feature, threshold, weighted_gini)`` or None.

    ``Xc`` is the node's CSC matrix (explicit zeros removed), ``y`` its 0/1
    labels. Among equal impurities the lowest feature, then the lowest
    threshold, wins.
    """
    n, d = Xc.shape
    tot1 = int(y.sum())
    nnz = np.diff(Xc.indptr)
    if nnz.sum() == 0:
        return None
    cols = np.repeat(np.arange(d), nnz)
    order = np.lexsort((Xc.data, cols))
    vals = Xc.data[order]
    ye = y[Xc.indices[order]]
    starts = Xc.indptr[:-1]

    m = len(vals)
    pos_in_col = np.arange(1, m + 1) - starts[cols]
    cum1 = np.concatenate([[0], np.cumsum(ye)])
    cum1_in_col = cum1[1:] - cum1[starts[cols]]

    col1 = np.bincount(cols, weights=ye, minlength=d).astype(np.int64)
    zeros = n - nnz
    zeros1 = tot1 - col1
    z_e, z1_e = zeros[cols], zeros1[cols]

    positive = vals > 0
    left_n = pos_in_col + np.where(positive, z_e, 0)
    left_1 = cum1_in_col + np.where(positive, z1_e, 0)

    next_same = np.zeros(m, dtype=bool)
    next_same[:-1] = cols[1:] == cols[:-1]
    next_val = np.empty(m)
    next_val[:-1] = vals[1:]
    next_val[-1] = np.inf

    # last negative entry of a column that also has zeros
    before_zeros = (vals < 0) & (z_e > 0) & (~next_same | (next_val > 0))
    valid = before_zeros | (next_same & (next_val > vals))
    thr = np.where(before_zeros, vals / 2.0, (vals + next_val) / 2.0)

    cand_col = [cols[valid]]
    cand_thr = [thr[valid]]
    cand_n = [left_n[valid]]
    cand_1 = [left_1[valid]]

    # split between the zero block and the smallest positive value
    n_pos = np.bincount(cols, weights=positive, minlength=d).astype(np.int64)
    zc = np.flatnonzero((zeros > 0) & (n_pos > 0))
    if len(zc):
        neg_n = nnz[zc] - n_pos[zc]
        neg_1 = np.bincount(cols, weights=ye * (vals < 0), minlength=d)[zc].astype(np.int64)
        first_pos = starts[zc] + neg_n
        cand_col.append(zc)
        cand_thr.append(vals[first_pos] / 2.0)
        cand_n.append(neg_n + zeros[zc])
        cand_1.append(neg_1 + zeros1[zc])

    c_col = np.concatenate(cand_col)
    if len(c_col) == 0:
        return None
    c_thr = np.concatenate(cand_thr)
    nl = np.concatenate(cand_n)
    l1 = np.concatenate(cand_1)
    nr = n - nl
    r1 = tot1 - l1
    impurity = (nl * _gini(nl, l1) + nr * _gini(nr, r1)) / n

    ranked = np.lexsort((c_thr, c_col, impurity))
    best = ranked[0]
    return int(c_col[best]), float(c_thr[best]), float(impurity[best])


def fit_cart(X, y, hp, rng=None):
    X = sp.csr_matrix(X, dtype=np.float64)
    X.eliminate_zeros()
    max_depth = hp.get("max_depth")
    max_depth = np.inf if max_depth is None else int(max_depth)
    min_split = int(hp["min_samples_split"])

    feature, threshold, left, right, value = [], [], [], [], []

    def new_node(rows):
        counts = np.bincount(y[rows], minlength=2)
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(int(np.argmax(counts)))
        return len(feature) - 1

    root_rows = np.arange(X.shape[0])
    stack = [(new_node(root_rows), root_rows, 0)]
    while stack:
        node, rows, depth = stack.pop()
        yn = y[rows]
        n1 = int(yn.sum())
        if depth >= max_depth or len(rows) < min_split or n1 in (0, len(rows)):
            continue
        Xc = X[rows].tocsc()
        found = best_split(Xc, yn)
        if found is None:
            continue
        f, t, _ = found
        col = Xc[:, f].toarray().ravel()
        go_left = col <= t
        if go_left.all() or not go_left.any():
            continue
        feature[node], threshold[node] = f, t
        l_rows, r_rows = rows[go_left], rows[~go_left]
        left[node] = new_node(l_rows)
        right[node] = new_node(r_rows)
        stack.append((right[node], r_rows, depth + 1))
        stack.append((left[node], l_rows, depth + 1))

    return {
        "feature": np.array(feature, dtype=np.int64),
        "threshold": np.array(threshold, dtype=np.float64),
        "left": np.array(left, dtype=np.int64),
        "right": np.array(right, dtype=np.int64),
        "value": np.array(value, dtype=np.int64),
    }


def predict_cart(params, X):
    X = sp.csc_matrix(X, dtype=np.float64)
    feature, threshold = params["feature"], params["threshold"]
    left, right, value = params["left"], params["right"], params["value"]
    out = np.empty(X.shape[0], dtype=np.int64)
    columns = {}
    stack = [(0, np.arange(X.shape[0]))]
    while stack:
        node, rows = stack.pop()
        if len(rows) == 0:
            continue
        f = feature[node]
        if f < 0:
            out[rows] = value[node]
            continue
        if f not in columns:
            columns[f] = X[:, f].toarray().ravel()
        go_left = columns[f][rows] <= threshold[node]
        stack.append((left[node], rows[go_left]))
        stack.append((right[node], rows[~go_left]))
    return out
