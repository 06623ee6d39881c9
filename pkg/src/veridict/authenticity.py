"""Outlet authenticity score, fake/real fractions and the four-way verdict."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .corpus import Label
from .errors import EmptyLabelColumn, InvalidConfig

DEFAULT_LOW = 0.25
DEFAULT_HIGH = 0.75


class Verdict(str, Enum):
    AUTHENTIC_ALL = "AuthenticAll"
    UNRELIABLE_ALL = "UnreliableAll"
    MIXED = "Mixed"
    EMPTY = "Empty"


@dataclass(frozen=True)
class VerdictBounds:
    low: float = DEFAULT_LOW
    high: float = DEFAULT_HIGH

    def __post_init__(self):
        if not 0.0 <= self.low <= self.high <= 1.0:
            raise InvalidConfig(f"verdict bounds must satisfy 0 <= low <= high <= 1, got {self}")


@dataclass(frozen=True)
class AuthenticityReport:
    score: Optional[float]
    n_articles: int
    fake_fraction: Optional[float]
    real_fraction: Optional[float]
    verdict: Verdict
    per_article: tuple  # (url, title, final label)

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "n_articles": self.n_articles,
            "fake_fraction": self.fake_fraction,
            "real_fraction": self.real_fraction,
            "verdict": self.verdict.value,
            "per_article": [
                {"url": u, "title": t, "label": lab.name} for u, t, lab in self.per_article
            ],
        }


def _counts(labels: Sequence) -> tuple:
    n = len(labels)
    if n == 0:
        raise EmptyLabelColumn("label column is empty")
    n_real = sum(int(Label.parse(l)) for l in labels)
    return n, n_real


def authenticity_score(labels: Sequence) -> float:
    """Mean of the labels encoded FAKE=0, REAL=1."""
    n, n_real = _counts(labels)
    return n_real / n


def fake_fraction(labels: Sequence) -> float:
    n, n_real = _counts(labels)
    return (n - n_real) / n


def real_fraction(labels: Sequence) -> float:
    n, n_real = _counts(labels)
    return n_real / n


def verdict_for(score: Optional[float], bounds: VerdictBounds = VerdictBounds()) -> Verdict:
    if score is None:
        return Verdict.EMPTY
    # the extreme bands win at their boundaries
    if score >= bounds.high:
        return Verdict.AUTHENTIC_ALL
    if score <= bounds.low:
        return Verdict.UNRELIABLE_ALL
    return Verdict.MIXED


def classify_outlet(
    labels: Sequence,
    bounds: VerdictBounds = VerdictBounds(),
    articles: Optional[Sequence[tuple]] = None,
) -> AuthenticityReport:
    """Score a scanned outlet and assign final per-article labels.

    ``articles`` holds ``(url, title)`` pairs aligned with ``labels``; if
    omitted, urls and titles are left blank. Under AuthenticAll every
    article is marked REAL, under UnreliableAll every article is FAKE, and
    under Mixed each keeps its predicted label.
    """
    labels = [Label.parse(l) for l in labels]
    if articles is None:
        articles = [("", "")] * len(labels)
    elif len(articles) != len(labels):
        raise ValueError("articles and labels must align")

    if not labels:
        return AuthenticityReport(None, 0, None, None, Verdict.EMPTY, ())

    score = authenticity_score(labels)
    verdict = verdict_for(score, bounds)
    if verdict is Verdict.AUTHENTIC_ALL:
        final = [Label.REAL] * len(labels)
    elif verdict is Verdict.UNRELIABLE_ALL:
        final = [Label.FAKE] * len(labels)
    else:
        final = labels
    return AuthenticityReport(
        score=score,
        n_articles=len(labels),
        fake_fraction=fake_fraction(labels),
        real_fraction=real_fraction(labels),
        verdict=verdict,
        per_article=tuple((u, t, lab) for (u, t), lab in zip(articles, final)),
    )
