"""INI-style pipeline configuration.

Every tunable lives here with its default. A config file may override any
subset, except that a ``[gate]`` section must give all three thresholds.
"""

from __future__ import annotations

import configparser
import copy
import io
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .authenticity import VerdictBounds
from .classifiers import DEFAULT_HYPERPARAMS, AlgorithmId, DenseBudget
from .errors import InvalidConfig, MissingFile
from .features import DEFAULT_MAX_FEATURES, DEFAULT_MIN_DF
from .gate import GateConfig
from .harvester import CrawlConfig


@dataclass(frozen=True)
class PipelineConfig:
    seed: int = 0
    split_ratio: float = 0.8
    probe_rows: int = 200
    min_df: int = DEFAULT_MIN_DF
    max_features: Optional[int] = DEFAULT_MAX_FEATURES
    budget: DenseBudget = DenseBudget()
    hyperparams: dict = field(default_factory=lambda: copy.deepcopy(DEFAULT_HYPERPARAMS))
    gate: GateConfig = GateConfig()
    bounds: VerdictBounds = VerdictBounds()
    crawl: CrawlConfig = CrawlConfig()
    figures: bool = True


def _parser() -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keys are case-sensitive (SVM takes C)
    return parser


def _coerce(raw: str, like):
    raw = raw.strip()
    if isinstance(like, bool):
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise InvalidConfig(f"not a boolean: {raw!r}")
    if not isinstance(like, str) and raw.lower() in ("none", "unlimited"):
        return None
    try:
        if isinstance(like, int) or (like is None and raw.isdigit()):
            return int(raw)
        if isinstance(like, float):
            return float(raw)
    except ValueError as exc:
        raise InvalidConfig(f"bad number {raw!r}") from exc
    return raw


def _section(parser, name, defaults: dict) -> dict:
    if not parser.has_section(name):
        return {}
    out = {}
    for key, raw in parser.items(name):
        if key not in defaults:
            raise InvalidConfig(f"unknown key [{name}] {key}")
        out[key] = _coerce(raw, defaults[key])
    return out


def load_config(path=None, seed: Optional[int] = None) -> PipelineConfig:
    cfg = PipelineConfig()
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise MissingFile(f"no such config file: {path}")
        parser = _parser()
        try:
            parser.read(path, encoding="utf-8")
        except configparser.Error as exc:
            raise InvalidConfig(f"{path}: {exc}") from exc
        cfg = apply_parser(cfg, parser)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    return cfg


def apply_parser(cfg: PipelineConfig, parser: configparser.ConfigParser) -> PipelineConfig:
    known = {"general", "vectorizer", "budget", "gate", "verdict", "crawl"} | {a.value for a in AlgorithmId}
    for name in parser.sections():
        if name not in known:
            raise InvalidConfig(f"unknown section [{name}]")

    general = _section(parser, "general", {
        "seed": cfg.seed, "split_ratio": cfg.split_ratio,
        "probe_rows": cfg.probe_rows, "figures": cfg.figures,
    })
    vec = _section(parser, "vectorizer", {"min_df": cfg.min_df, "max_features": cfg.max_features})

    budget_raw = _section(parser, "budget", {"max_dense_cells": cfg.budget.max_dense_cells, "exclude": ""})
    budget = cfg.budget
    if "max_dense_cells" in budget_raw:
        budget = replace(budget, max_dense_cells=budget_raw["max_dense_cells"])
    if budget_raw.get("exclude"):
        try:
            excluded = frozenset(AlgorithmId(a.strip()) for a in budget_raw["exclude"].split(",") if a.strip())
        except ValueError as exc:
            raise InvalidConfig(f"[budget] exclude: {exc}") from exc
        budget = replace(budget, exclude=excluded)

    hyperparams = copy.deepcopy(cfg.hyperparams)
    for algo in AlgorithmId:
        hyperparams[algo].update(_section(parser, algo.value, hyperparams[algo]))

    gate = cfg.gate
    if parser.has_section("gate"):
        raw = _section(parser, "gate", gate.to_dict())
        missing = {"alpha", "accept", "unaccept"} - set(raw)
        if missing:
            raise InvalidConfig(f"[gate] must set alpha, accept and unaccept; missing {sorted(missing)}")
        gate = GateConfig(**raw)

    verdict = _section(parser, "verdict", {"low": cfg.bounds.low, "high": cfg.bounds.high})
    bounds = VerdictBounds(**{**vars(cfg.bounds), **verdict})

    crawl_defaults = {k: getattr(cfg.crawl, k) for k in cfg.crawl.__dataclass_fields__}
    crawl_defaults["log_path"] = None
    crawl = replace(cfg.crawl, **_section(parser, "crawl", crawl_defaults))

    return replace(
        cfg,
        **general,
        **vec,
        budget=budget,
        hyperparams=hyperparams,
        gate=gate,
        bounds=bounds,
        crawl=crawl,
    )


def default_config_text() -> str:
    """Render the defaults as a config file."""
    cfg = PipelineConfig()
    parser = _parser()
    parser["general"] = {"seed": cfg.seed, "split_ratio": cfg.split_ratio,
                         "probe_rows": cfg.probe_rows, "figures": cfg.figures}
    parser["vectorizer"] = {"min_df": cfg.min_df, "max_features": cfg.max_features}
    parser["budget"] = {"max_dense_cells": cfg.budget.max_dense_cells, "exclude": ""}
    for algo in AlgorithmId:
        parser[algo.value] = {k: ("none" if v is None else v) for k, v in cfg.hyperparams[algo].items()}
    parser["gate"] = cfg.gate.to_dict()
    parser["verdict"] = {"low": cfg.bounds.low, "high": cfg.bounds.high}
    parser["crawl"] = {k: v for k, v in vars(cfg.crawl).items() if v is not None}
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()
