"""End-to-end flows: train, ingest a source, scan an outlet, scan one link.

Each ``cmd_*`` function returns a :class:`RunReport`; ``cmd_train`` and an
augmenting ``cmd_scan_site`` also persist a fresh :class:`ModelBundle`.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import classifiers as clf
from .authenticity import AuthenticityReport, VerdictBounds, classify_outlet
from .classifiers import AlgorithmId, CapabilityReport, TrainedModel
from .config import PipelineConfig
from .corpus import (
    Dataset,
    Label,
    NewsRecord,
    append_records,
    ingested_origin,
    load_csv,
    predicted_origin,
    save_csv,
    split,
)
from .errors import BundleMissing, DegenerateLabels, EmptyDataset, InvalidConfig, MissingFile
from .evaluation import AccuracyStats, EvaluationReport, accuracy_stats, evaluate, select_best_fit
from .features import Vocabulary, fit_vectorizer, transform
from .gate import GateConfig, outlet_gate, single_link_gate
from .harvester import Fetcher, crawl_site, extract_article

log = logging.getLogger(__name__)

BUNDLE_FORMAT = "veridict-bundle"
BUNDLE_VERSION = 1
REPORT_FORMAT = "veridict-run-report"
REPORT_VERSION = 1


@dataclass(frozen=True)
class ModelBundle:
    vocabulary: Vocabulary
    models: dict  # AlgorithmId -> TrainedModel
    capability: CapabilityReport
    evaluations: dict  # AlgorithmId -> EvaluationReport
    stats: AccuracyStats
    best_fit: AlgorithmId
    gate: GateConfig
    seed: int
    split_sizes: tuple = (0, 0)
    dataset_path: Optional[str] = None
    version: int = BUNDLE_VERSION

    def __post_init__(self):
        if self.best_fit not in self.capability.selected:
            raise ValueError("best-fit model must be one of the selected algorithms")
        if self.stats.per_model[self.best_fit] != self.stats.max:
            raise ValueError("best-fit accuracy must equal the maximum accuracy")

    @property
    def best_model(self) -> TrainedModel:
        return self.models[self.best_fit]

    def to_dict(self) -> dict:
        return {
            "format": BUNDLE_FORMAT,
            "version": self.version,
            "seed": self.seed,
            "dataset_path": self.dataset_path,
            "split_sizes": list(self.split_sizes),
            "vocabulary": self.vocabulary.to_dict(),
            "capability": self.capability.to_dict(),
            "evaluations": [self.evaluations[a].to_dict() for a in self.capability.selected],
            "stats": self.stats.to_dict(),
            "best_fit": self.best_fit.value,
            "gate": self.gate.to_dict(),
            "models": [self.models[a].to_dict() for a in self.capability.selected],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelBundle":
        if d.get("format") != BUNDLE_FORMAT:
            raise InvalidConfig("not a model bundle")
        if d.get("version") != BUNDLE_VERSION:
            raise InvalidConfig(f"unsupported bundle version {d.get('version')}")
        models = [TrainedModel.from_dict(m) for m in d["models"]]
        evals = [EvaluationReport.from_dict(e) for e in d["evaluations"]]
        return cls(
            vocabulary=Vocabulary.from_dict(d["vocabulary"]),
            models={m.algorithm: m for m in models},
            capability=CapabilityReport.from_dict(d["capability"]),
            evaluations={e.algorithm: e for e in evals},
            stats=AccuracyStats.from_dict(d["stats"]),
            best_fit=AlgorithmId(d["best_fit"]),
            gate=GateConfig(**d["gate"]),
            seed=d["seed"],
            split_sizes=tuple(d["split_sizes"]),
            dataset_path=d.get("dataset_path"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def save_bundle(bundle: ModelBundle, path) -> None:
    Path(path).write_text(bundle.dumps(), encoding="utf-8")


def load_bundle(path) -> ModelBundle:
    path = Path(path)
    if not path.is_file():
        raise BundleMissing(f"no model bundle at {path}; run `train` first")
    return ModelBundle.from_dict(json.loads(path.read_text(encoding="utf-8")))


@dataclass
class RunReport:
    command: str
    started: str = ""
    finished: str = ""
    dataset_path: Optional[str] = None
    size_before: Optional[int] = None
    size_after: Optional[int] = None
    appended: int = 0
    split_sizes: Optional[tuple] = None
    capability: Optional[CapabilityReport] = None
    evaluations: list = field(default_factory=list)
    stats: Optional[AccuracyStats] = None
    best_fit: Optional[AlgorithmId] = None
    retrained_stats: Optional[AccuracyStats] = None
    retrained_best_fit: Optional[AlgorithmId] = None
    crawl: Optional[dict] = None
    authenticity: Optional[AuthenticityReport] = None
    gate: Optional[dict] = None
    predictions: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    figures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def opt(x):
            return None if x is None else x.to_dict()

        return {
            "format": REPORT_FORMAT,
            "version": REPORT_VERSION,
            "command": self.command,
            "started": self.started,
            "finished": self.finished,
            "dataset": {
                "path": self.dataset_path,
                "size_before": self.size_before,
                "size_after": self.size_after,
                "appended": self.appended,
                "split": list(self.split_sizes) if self.split_sizes else None,
            },
            "capability": opt(self.capability),
            "evaluations": [e.to_dict() for e in self.evaluations],
            "stats": opt(self.stats),
            "best_fit": self.best_fit.value if self.best_fit else None,
            "retrained_stats": opt(self.retrained_stats),
            "retrained_best_fit": self.retrained_best_fit.value if self.retrained_best_fit else None,
            "crawl": self.crawl,
            "authenticity": opt(self.authenticity),
            "gate": self.gate,
            "predictions": self.predictions,
            "notes": self.notes,
            "figures": self.figures,
        }


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def train_bundle(dataset: Dataset, config: PipelineConfig, dataset_path=None) -> ModelBundle:
    """Split, featurize, gate, fit and evaluate; return the resulting bundle."""
    counts = dataset.label_counts()
    if min(counts.values()) < 2:
        raise DegenerateLabels(
            f"need at least 2 records per class, have FAKE={counts[Label.FAKE]} REAL={counts[Label.REAL]}"
        )
    pair = split(dataset, config.split_ratio, config.seed)
    vocab = fit_vectorizer(pair.train.documents, config.min_df, config.max_features)
    X_train = transform(vocab, pair.train.documents)
    X_test = transform(vocab, pair.test.documents)
    y_train = pair.train.labels
    y_test = pair.test.labels

    probe_n = min(config.probe_rows, len(y_train))
    if len(set(y_train[:probe_n])) < 2:
        probe_n = len(y_train)
    budget = replace(config.budget, target_rows=len(y_train))
    capability = clf.capability_gate(
        X_train[:probe_n], y_train[:probe_n], budget, config.hyperparams, config.seed
    )

    models, evaluations = {}, {}
    for algo in capability.selected:
        model = clf.fit(algo, X_train, y_train, config.hyperparams.get(algo), config.seed, budget)
        models[algo] = model
        evaluations[algo] = evaluate(y_test, clf.predict(model, X_test), algo)
        log.info("%s test accuracy %.4f", algo.value, evaluations[algo].accuracy)
    stats = accuracy_stats([evaluations[a] for a in capability.selected])
    return ModelBundle(
        vocabulary=vocab,
        models=models,
        capability=capability,
        evaluations=evaluations,
        stats=stats,
        best_fit=select_best_fit(stats),
        gate=config.gate,
        seed=config.seed,
        split_sizes=(pair.train.size, pair.test.size),
        dataset_path=None if dataset_path is None else str(dataset_path),
    )


def _fill_training(report: RunReport, bundle: ModelBundle, retrained=False):
    if retrained:
        report.retrained_stats = bundle.stats
        report.retrained_best_fit = bundle.best_fit
    else:
        report.stats = bundle.stats
        report.best_fit = bundle.best_fit
    report.capability = bundle.capability
    report.evaluations = [bundle.evaluations[a] for a in bundle.capability.selected]
    report.split_sizes = bundle.split_sizes


def cmd_train(dataset_path, config: PipelineConfig, bundle_path) -> tuple:
    report = RunReport("train", started=_now(), dataset_path=str(dataset_path))
    dataset = load_csv(dataset_path)
    report.size_before = report.size_after = dataset.size
    bundle = train_bundle(dataset, config, dataset_path)
    save_bundle(bundle, bundle_path)
    _fill_training(report, bundle)
    report.finished = _now()
    return bundle, report


def _load_or_empty(dataset_path) -> Dataset:
    try:
        return load_csv(dataset_path)
    except (MissingFile, EmptyDataset):
        return Dataset()


def cmd_ingest(url: str, label, dataset_path, config: PipelineConfig) -> RunReport:
    """Crawl a source of known reliability and append its articles under
    the operator-supplied label."""
    label = Label.parse(label)
    if label is None:
        raise InvalidConfig("ingest label must be REAL or FAKE")
    report = RunReport("ingest", started=_now(), dataset_path=str(dataset_path))
    dataset = _load_or_empty(dataset_path)
    report.size_before = dataset.size
    result = crawl_site(url, config.crawl)
    report.crawl = _crawl_summary(url, result)
    records = [
        NewsRecord(id="", title=a.title, text=a.text, label=label, origin=ingested_origin(a.url))
        for a in result.articles
    ]
    report.gate = {"augment": bool(records), "authorized_by": "operator-label", "label": label.name}
    if records:
        dataset = append_records(dataset, records)
        save_csv(dataset, dataset_path)
    else:
        report.notes.append("no articles extracted; dataset unchanged")
    report.appended = len(records)
    report.size_after = dataset.size
    report.finished = _now()
    return report


def _crawl_summary(url, result) -> dict:
    return {
        "root": url,
        "links_visited": len(result.links_visited),
        "articles": len(result.articles),
        "failures": result.failures,
    }


def _resolve_dataset(dataset_path, bundle: ModelBundle):
    path = dataset_path if dataset_path is not None else bundle.dataset_path
    return None if path is None else str(path)


def cmd_scan_site(url: str, bundle_path, config: PipelineConfig, dataset_path=None) -> RunReport:
    """Score an outlet, apply the augmentation gate, and on approval append
    the articles with their final labels and retrain."""
    bundle = load_bundle(bundle_path)
    dataset_path = _resolve_dataset(dataset_path, bundle)
    report = RunReport("scan-site", started=_now(), dataset_path=dataset_path)
    report.stats, report.best_fit = bundle.stats, bundle.best_fit

    result = crawl_site(url, config.crawl)
    report.crawl = _crawl_summary(url, result)
    articles = result.articles
    if articles:
        X = transform(bundle.vocabulary, [f"{a.title} {a.text}" for a in articles])
        predicted = clf.predict(bundle.best_model, X)
    else:
        predicted = []
    auth = classify_outlet(predicted, config.bounds, [(a.url, a.title) for a in articles])
    report.authenticity = auth
    report.predictions = [
        {"url": a.url, "title": a.title, "predicted": p.name, "final": f.name}
        for a, p, (_, _, f) in zip(articles, predicted, auth.per_article)
    ]

    dataset = _load_or_empty(dataset_path) if dataset_path else None
    report.size_before = report.size_after = dataset.size if dataset is not None else None
    if auth.n_articles == 0:
        report.notes.append("no articles extracted: verdict Empty, gate not evaluated")
        report.finished = _now()
        return report

    decision = outlet_gate(bundle.stats.mean, bundle.stats.max, auth.score, config.gate)
    report.gate = decision.to_dict()
    if decision.augment:
        if dataset is None:
            report.notes.append("gate authorized augmentation but no dataset path is known")
        else:
            records = [
                NewsRecord(id="", title=t, text=a.text, label=lab, origin=predicted_origin(u))
                for a, (u, t, lab) in zip(articles, auth.per_article)
            ]
            dataset = append_records(dataset, records)
            save_csv(dataset, dataset_path)
            report.appended = len(records)
            report.size_after = dataset.size
            new_bundle = train_bundle(dataset, config, dataset_path)
            save_bundle(new_bundle, bundle_path)
            _fill_training(report, new_bundle, retrained=True)
    report.finished = _now()
    return report


def cmd_scan_link(url: str, bundle_path, config: PipelineConfig, dataset_path=None) -> RunReport:
    bundle = load_bundle(bundle_path)
    dataset_path = _resolve_dataset(dataset_path, bundle)
    report = RunReport("scan-link", started=_now(), dataset_path=dataset_path)
    report.stats, report.best_fit = bundle.stats, bundle.best_fit

    fetcher = Fetcher(config.crawl)
    status, html = fetcher.get(url)
    article = extract_article(html, url, config.crawl)
    dataset = _load_or_empty(dataset_path) if dataset_path else None
    report.size_before = report.size_after = dataset.size if dataset is not None else None
    if article is None:
        report.notes.append("no news content extracted; no prediction made")
        report.finished = _now()
        return report

    X = transform(bundle.vocabulary, [f"{article.title} {article.text}"])
    label = clf.predict(bundle.best_model, X)[0]
    report.predictions = [{"url": url, "title": article.title, "predicted": label.name, "final": label.name}]
    decision = single_link_gate(bundle.stats.mean, bundle.stats.max, config.gate)
    report.gate = decision.to_dict()
    if decision.augment and dataset is not None:
        dataset = append_records(
            dataset,
            [NewsRecord(id="", title=article.title, text=article.text, label=label, origin=predicted_origin(url))],
        )
        save_csv(dataset, dataset_path)
        report.appended = 1
        report.size_after = dataset.size
    elif decision.augment:
        report.notes.append("gate authorized augmentation but no dataset path is known")
    report.finished = _now()
    return report


def cmd_stats(bundle_path) -> RunReport:
    bundle = load_bundle(bundle_path)
    report = RunReport("stats", started=_now(), dataset_path=bundle.dataset_path)
    _fill_training(report, bundle)
    report.finished = _now()
    return report


def write_report(report: RunReport, path, config: Optional[PipelineConfig] = None) -> Path:
    """Write the JSON run report and, if enabled, its figures next to it."""
    from . import plotting

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    stem = path.name[: -len(".json")] if path.name.endswith(".json") else path.name
    if config is None or config.figures:
        figs = []
        stats = report.retrained_stats or report.stats
        best = report.retrained_best_fit or report.best_fit
        if stats is not None and best is not None:
            figs.append(plotting.plot_accuracies(stats, best, path.with_name(f"{stem}.accuracy.png")))
            best_eval = next((e for e in report.evaluations if e.algorithm == best), None)
            if best_eval is not None:
                figs.append(plotting.plot_confusion(best_eval, path.with_name(f"{stem}.confusion.png")))
        auth = report.authenticity
        if auth is not None and auth.n_articles > 0:
            bounds = config.bounds if config is not None else VerdictBounds()
            figs.append(plotting.plot_outlet(auth, bounds, path.with_name(f"{stem}.outlet.png")))
        report.figures = [str(f) for f in figs]
    path.write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
    return path
