"""Per-model metrics, cross-model accuracy statistics and best-fit selection."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

from .classifiers import AlgorithmId
from .corpus import Label
from .errors import EmptyInput, LengthMismatch

CLASSES = (Label.FAKE, Label.REAL)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvaluationReport:
    algorithm: AlgorithmId
    accuracy: float
    per_class: dict  # Label -> ClassMetrics
    confusion_matrix: tuple  # rows true, cols predicted, order FAKE, REAL
    warnings: tuple = ()

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.confusion_matrix)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm.value,
            "accuracy": self.accuracy,
            "per_class": {lab.name: asdict(m) for lab, m in self.per_class.items()},
            "confusion_matrix": [list(r) for r in self.confusion_matrix],
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvaluationReport":
        return cls(
            algorithm=AlgorithmId(d["algorithm"]),
            accuracy=d["accuracy"],
            per_class={Label[k]: ClassMetrics(**v) for k, v in d["per_class"].items()},
            confusion_matrix=tuple(tuple(r) for r in d["confusion_matrix"]),
            warnings=tuple(d.get("warnings", ())),
        )


def evaluate(y_true: Sequence, y_pred: Sequence, algorithm: AlgorithmId) -> EvaluationReport:
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} true labels vs {len(y_pred)} predictions")
    if len(y_true) == 0:
        raise EmptyInput("cannot evaluate zero predictions")
    cm = [[0, 0], [0, 0]]
    for t, p in zip(y_true, y_pred):
        cm[int(t)][int(p)] += 1

    per_class = {}
    warnings = []
    for k, lab in enumerate(CLASSES):
        tp = cm[k][k]
        predicted = cm[0][k] + cm[1][k]
        actual = cm[k][0] + cm[k][1]
        if predicted == 0:
            warnings.append(f"precision({lab.name}) undefined: no predictions of this class")
        if actual == 0:
            warnings.append(f"recall({lab.name}) undefined: no true instances of this class")
        p = tp / predicted if predicted else 0.0
        r = tp / actual if actual else 0.0
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        per_class[lab] = ClassMetrics(p, r, f1, actual)

    accuracy = (cm[0][0] + cm[1][1]) / len(y_true)
    return EvaluationReport(
        algorithm=AlgorithmId(algorithm),
        accuracy=accuracy,
        per_class=per_class,
        confusion_matrix=tuple(tuple(r) for r in cm),
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class AccuracyStats:
    mean: float
    median: float
    min: float
    max: float
    per_model: dict = field(default_factory=dict)  # AlgorithmId -> accuracy

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "median": self.median,
            "min": self.min,
            "max": self.max,
            "per_model": {a.value: acc for a, acc in self.per_model.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AccuracyStats":
        return cls(
            d["mean"], d["median"], d["min"], d["max"],
            {AlgorithmId(a): acc for a, acc in d["per_model"].items()},
        )


def _median(values: Sequence[float]) -> float:
    s = sorted(values)
    mid = len(s) // 2
    return s[mid] if len(s) % 2 else (s[mid - 1] + s[mid]) / 2.0


def accuracy_stats(reports: Sequence[EvaluationReport]) -> AccuracyStats:
    if not reports:
        raise EmptyInput("no evaluation reports")
    accs = [r.accuracy for r in reports]
    mean = sum(accs) / len(accs)
    # float rounding can push the mean a hair outside [min, max]
    mean = min(max(mean, min(accs)), max(accs))
    return AccuracyStats(
        mean=mean,
        median=_median(accs),
        min=min(accs),
        max=max(accs),
        per_model={r.algorithm: r.accuracy for r in reports},
    )


def select_best_fit(stats: AccuracyStats) -> AlgorithmId:
    if not stats.per_model:
        raise EmptyInput("no models to choose from")
    return min(stats.per_model, key=lambda a: (-stats.per_model[a], AlgorithmId(a).rank))
