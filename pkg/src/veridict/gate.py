"""Accuracy-constraint gate deciding whether scanned content may join the
training corpus.

The mean-accuracy floor is a necessary outer condition; under it, either
the best model clears the acceptance threshold outright, or it sits in the
band between the unacceptable and acceptable thresholds while the outlet
score lies within a quarter and three quarters of the acceptance threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import InvalidConfig

PARSE_NOTE = "mean >= alpha guards both branches"


class Branch(str, Enum):
    MAX_ACCEPTED = "MaxAccepted"
    MID_BAND_WITH_SCORE = "MidBandWithScore"
    REJECTED_MEAN = "RejectedMean"
    REJECTED_MAX = "RejectedMax"
    REJECTED_SCORE = "RejectedScore"


AUGMENTING = frozenset({Branch.MAX_ACCEPTED, Branch.MID_BAND_WITH_SCORE})


@dataclass(frozen=True)
class GateConfig:
    alpha: float = 0.70
    accept: float = 0.90
    unaccept: float = 0.60

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not (0.0 <= self.unaccept < self.accept <= 1.0 and 0.0 <= self.alpha <= 1.0):
            raise InvalidConfig(
                f"gate thresholds need 0 <= unaccept < accept <= 1 and 0 <= alpha <= 1, got {self}"
            )

    @property
    def score_low(self) -> float:
        return self.accept / 4.0

    @property
    def score_high(self) -> float:
        return 3.0 * self.accept / 4.0

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "accept": self.accept, "unaccept": self.unaccept}


@dataclass(frozen=True)
class GateDecision:
    augment: bool
    fired_branch: Branch
    mean: float
    max: float
    score: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "augment": self.augment,
            "fired_branch": self.fired_branch.value,
            "mean": self.mean,
            "max": self.max,
            "score": self.score,
            "parse": PARSE_NOTE,
        }


def _check_inputs(**values):
    for name, v in values.items():
        if v is not None and not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")


def outlet_gate(mean_acc: float, max_acc: float, score: float, config: GateConfig) -> GateDecision:
    config.validate()
    _check_inputs(mean_acc=mean_acc, max_acc=max_acc, score=score)
    if mean_acc < config.alpha:
        branch = Branch.REJECTED_MEAN
    elif max_acc >= config.accept:
        branch = Branch.MAX_ACCEPTED
    elif max_acc <= config.unaccept:
        branch = Branch.REJECTED_MAX
    elif config.score_low <= score <= config.score_high:
        branch = Branch.MID_BAND_WITH_SCORE
    else:
        branch = Branch.REJECTED_SCORE
    return GateDecision(branch in AUGMENTING, branch, mean_acc, max_acc, score)


def single_link_gate(mean_acc: float, max_acc: float, config: GateConfig) -> GateDecision:
    config.validate()
    _check_inputs(mean_acc=mean_acc, max_acc=max_acc)
    if mean_acc < config.alpha:
        branch = Branch.REJECTED_MEAN
    elif max_acc >= config.accept:
        branch = Branch.MAX_ACCEPTED
    else:
        branch = Branch.REJECTED_MAX
    return GateDecision(branch in AUGMENTING, branch, mean_acc, max_acc)
