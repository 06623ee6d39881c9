import shutil

import numpy as np
import pytest

from veridict.config import PipelineConfig
from veridict.corpus import Label, save_csv
from veridict.harvester import CrawlConfig
from veridict.pipeline import cmd_train

from helpers import make_article, make_corpus

OFFLINE_CRAWL = CrawlConfig(politeness_delay_ms=0, respect_robots=False, fetch_timeout=5)


@pytest.fixture
def config():
    return PipelineConfig(crawl=OFFLINE_CRAWL, figures=False)


@pytest.fixture(scope="session")
def _trained_template(tmp_path_factory):
    root = tmp_path_factory.mktemp("trained")
    data, bundle = root / "corpus.csv", root / "bundle.json"
    save_csv(make_corpus(200, seed=5), data)
    cmd_train(data, PipelineConfig(crawl=OFFLINE_CRAWL, figures=False), bundle)
    return data, bundle


@pytest.fixture
def trained(tmp_path, _trained_template):
    """A fresh copy of a toy corpus and the bundle trained on it."""
    data, bundle = tmp_path / "corpus.csv", tmp_path / "bundle.json"
    shutil.copy(_trained_template[0], data)
    shutil.copy(_trained_template[1], bundle)
    return data, bundle


def articles(labels, seed=0):
    rng = np.random.default_rng(seed)
    return [make_article(rng, Label.parse(lab), 60) for lab in labels]


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "skipped", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            if outcome == "passed" and rep.when != "call":
                continue
            name = nodeid.split("::test_criterion_")[1]
            num, _, label = name.partition("_")
            rows.append((int(num), label.replace("_", " "), outcome.upper()))
    if rows:
        terminalreporter.section("acceptance criteria")
        for num, label, outcome in sorted(set(rows)):
            verdict = {"PASSED": "PASS", "FAILED": "FAIL", "ERROR": "FAIL", "SKIPPED": "SKIP"}[outcome]
            terminalreporter.write_line(f"criterion {num}: {verdict}  {label}")
