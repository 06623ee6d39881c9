"""The seven-classifier suite behind one fit/predict contract, plus the
capability gate that decides which of them can handle a representation."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from ..corpus import Label
from ..errors import DegenerateLabels, DimensionMismatch, IncompatibleInput, NoCapableAlgorithm
from .discriminant import fit_gaussian_nb, fit_lda, predict_gaussian_nb
from .knn import fit_knn, predict_knn
from .linear import fit_logistic, fit_passive_aggressive, fit_svm, predict_linear
from .tree import fit_cart, predict_cart


class AlgorithmId(str, Enum):
    LR = "LR"
    LDA = "LDA"
    KN = "KN"
    CART = "CART"
    NB = "NB"
    SVM = "SVM"
    PAC = "PAC"

    @property
    def rank(self) -> int:
        return _ORDER[self]


_ORDER = {a: i for i, a in enumerate(AlgorithmId)}

DEFAULT_HYPERPARAMS = {
    AlgorithmId.LR: {"learning_rate": 0.1, "epochs": 100, "l2": 1e-4, "batch_size": 32},
    AlgorithmId.LDA: {"reg": 1e-3},
    AlgorithmId.KN: {"k": 5},
    AlgorithmId.CART: {"max_depth": 64, "min_samples_split": 2},
    AlgorithmId.NB: {"var_smoothing": 1e-9},
    AlgorithmId.SVM: {"C": 1.0, "learning_rate": 0.1, "epochs": 50, "batch_size": 32},
    AlgorithmId.PAC: {"C": 1.0, "epochs": 5, "shuffle": True},
}

# 8 MB of float64
DEFAULT_MAX_DENSE_CELLS = 1_000_000


@dataclass(frozen=True)
class DenseBudget:
    """Densification allowance for algorithms that need dense input.

    ``target_rows`` lets a small probe stand in for the full training set:
    costs are estimated as if that many rows were densified.
    ``exclude`` force-rejects algorithms regardless of cost.
    """

    max_dense_cells: int = DEFAULT_MAX_DENSE_CELLS
    target_rows: Optional[int] = None
    exclude: frozenset = frozenset()


def dense_cost(algorithm: AlgorithmId, n_rows: int, n_features: int) -> int:
    """Cells an algorithm allocates when it densifies an n_rows x n_features input."""
    if algorithm is AlgorithmId.LDA:
        return n_rows * n_features + n_features * n_features
    if algorithm in (AlgorithmId.NB, AlgorithmId.SVM):
        return n_rows * n_features
    return 0


@dataclass(frozen=True)
class TrainedModel:
    algorithm: AlgorithmId
    params: dict
    n_features: int
    hyperparams: dict = field(default_factory=dict)
    classes: tuple = (Label.FAKE, Label.REAL)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm.value,
            "n_features": self.n_features,
            "hyperparams": self.hyperparams,
            "params": {k: _encode_array(v) for k, v in self.params.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrainedModel":
        return cls(
            algorithm=AlgorithmId(d["algorithm"]),
            params={k: _decode_array(v) for k, v in d["params"].items()},
            n_features=int(d["n_features"]),
            hyperparams=d.get("hyperparams", {}),
        )


def _encode_array(a: np.ndarray) -> dict:
    a = np.asarray(a)
    return {"dtype": a.dtype.str, "shape": list(a.shape), "data": a.ravel().tolist()}


def _decode_array(d: dict) -> np.ndarray:
    return np.array(d["data"], dtype=np.dtype(d["dtype"])).reshape(d["shape"])


@dataclass(frozen=True)
class CapabilityReport:
    selected: tuple
    rejected: tuple  # (AlgorithmId, reason) pairs

    def to_dict(self) -> dict:
        return {
            "selected": [a.value for a in self.selected],
            "rejected": [[a.value, reason] for a, reason in self.rejected],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CapabilityReport":
        return cls(
            tuple(AlgorithmId(a) for a in d["selected"]),
            tuple((AlgorithmId(a), r) for a, r in d["rejected"]),
        )


def _encode_labels(labels) -> np.ndarray:
    return np.array([int(Label.parse(l)) for l in labels], dtype=np.int64)


_FIT = {
    AlgorithmId.LR: fit_logistic,
    AlgorithmId.LDA: fit_lda,
    AlgorithmId.KN: fit_knn,
    AlgorithmId.CART: fit_cart,
    AlgorithmId.NB: fit_gaussian_nb,
    AlgorithmId.SVM: fit_svm,
    AlgorithmId.PAC: fit_passive_aggressive,
}

_PREDICT = {
    AlgorithmId.LR: predict_linear,
    AlgorithmId.LDA: predict_linear,
    AlgorithmId.KN: predict_knn,
    AlgorithmId.CART: predict_cart,
    AlgorithmId.NB: predict_gaussian_nb,
    AlgorithmId.SVM: predict_linear,
    AlgorithmId.PAC: predict_linear,
}


def _needs_dense(algorithm: AlgorithmId) -> bool:
    return dense_cost(algorithm, 1, 1) > 0


def check_budget(algorithm: AlgorithmId, features, budget: DenseBudget, rows: Optional[int] = None):
    """Raise IncompatibleInput if ``algorithm`` may not run on ``features``."""
    if algorithm in budget.exclude:
        raise IncompatibleInput(f"{algorithm.value}: excluded by configuration")
    if not sp.issparse(features) or not _needs_dense(algorithm):
        return
    n_rows = rows if rows is not None else features.shape[0]
    cost = dense_cost(algorithm, n_rows, features.shape[1])
    if cost > budget.max_dense_cells:
        raise IncompatibleInput(
            f"{algorithm.value}: densifying {n_rows}x{features.shape[1]} input needs "
            f"{cost} cells, budget is {budget.max_dense_cells}"
        )


def fit(
    algorithm: AlgorithmId,
    features,
    labels: Sequence,
    hyperparams: Optional[dict] = None,
    seed: int = 0,
    budget: Optional[DenseBudget] = None,
) -> TrainedModel:
    algorithm = AlgorithmId(algorithm)
    budget = budget or DenseBudget()
    y = _encode_labels(labels)
    n_rows, n_features = features.shape
    if n_rows != len(y):
        raise DimensionMismatch(f"{n_rows} feature rows but {len(y)} labels")
    if n_rows < 2 or len(np.unique(y)) < 2:
        raise DegenerateLabels("training labels must contain both FAKE and REAL")
    check_budget(algorithm, features, budget)

    hp = copy.deepcopy(DEFAULT_HYPERPARAMS[algorithm])
    hp.update(hyperparams or {})
    rng = np.random.default_rng(seed)
    if _needs_dense(algorithm):
        X = features.toarray() if sp.issparse(features) else np.asarray(features, dtype=np.float64)
    else:
        X = sp.csr_matrix(features, dtype=np.float64)
    params = _FIT[algorithm](X, y, hp, rng)
    return TrainedModel(algorithm, params, n_features, hp)


def predict(model: TrainedModel, features) -> list:
    if features.shape[1] != model.n_features:
        raise DimensionMismatch(f"model expects {model.n_features} features, got {features.shape[1]}")
    if features.shape[0] == 0:
        return []
    if _needs_dense(model.algorithm):
        X = features.toarray() if sp.issparse(features) else np.asarray(features, dtype=np.float64)
    else:
        X = sp.csr_matrix(features, dtype=np.float64)
    return [Label(int(v)) for v in _PREDICT[model.algorithm](model.params, X)]


def capability_gate(
    features_probe,
    labels_probe: Sequence,
    budget: Optional[DenseBudget] = None,
    hyperparams: Optional[dict] = None,
    seed: int = 0,
) -> CapabilityReport:
    """Trial-fit every algorithm on the probe; keep those that can run."""
    budget = budget or DenseBudget()
    hyperparams = hyperparams or {}
    selected, rejected = [], []
    for algorithm in AlgorithmId:
        try:
            check_budget(algorithm, features_probe, budget, rows=budget.target_rows)
            fit(algorithm, features_probe, labels_probe, hyperparams.get(algorithm), seed, budget)
        except IncompatibleInput as exc:
            rejected.append((algorithm, str(exc)))
        else:
            selected.append(algorithm)
    if not selected:
        raise NoCapableAlgorithm("; ".join(reason for _, reason in rejected))
    return CapabilityReport(tuple(selected), tuple(rejected))
