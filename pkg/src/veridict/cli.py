"""Command-line entry point.

    veridict [--config PATH] [--seed N] [--bundle PATH] COMMAND ...

Commands print tab-delimited tables to stdout and write a JSON run report
(plus PNG figures) next to the bundle, or under ``--report-dir``.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import pipeline
from .config import default_config_text, load_config
from .errors import VeridictError

DEFAULT_BUNDLE = "veridict-bundle.json"


def _fmt(x, digits=4):
    return "-" if x is None else f"{x:.{digits}f}"


def _print_training(report, out):
    cap = report.capability
    print("# capability", file=out)
    print("algorithm\tstatus\treason", file=out)
    for a in cap.selected:
        print(f"{a.value}\tselected\t", file=out)
    for a, reason in cap.rejected:
        print(f"{a.value}\trejected\t{reason}", file=out)
    print("# metrics", file=out)
    print("algorithm\taccuracy\tprecision_fake\trecall_fake\tf1_fake\tsupport_fake"
          "\tprecision_real\trecall_real\tf1_real\tsupport_real\tconfusion", file=out)
    for e in report.evaluations:
        cells = [e.algorithm.value, _fmt(e.accuracy)]
        for m in e.per_class.values():
            cells += [_fmt(m.precision), _fmt(m.recall), _fmt(m.f1), str(m.support)]
        cells.append(str([list(r) for r in e.confusion_matrix]))
        print("\t".join(cells), file=out)
    stats = report.retrained_stats or report.stats
    best = report.retrained_best_fit or report.best_fit
    print("# accuracy stats", file=out)
    print("statistic\tvalue", file=out)
    for name in ("mean", "median", "min", "max"):
        print(f"{name}\t{_fmt(getattr(stats, name))}", file=out)
    print(f"best_fit\t{best.value}", file=out)


def _print_gate(report, out):
    if report.gate is None:
        return
    g = report.gate
    print("# gate", file=out)
    for key in ("augment", "fired_branch", "authorized_by", "mean", "max", "score"):
        if key in g:
            v = g[key]
            print(f"{key}\t{_fmt(v) if isinstance(v, float) else v}", file=out)


def _print_dataset(report, out):
    print("# dataset", file=out)
    print(f"path\t{report.dataset_path}", file=out)
    print(f"size_before\t{report.size_before}", file=out)
    print(f"appended\t{report.appended}", file=out)
    print(f"size_after\t{report.size_after}", file=out)


def print_report(report, out=None):
    out = out or sys.stdout
    cmd = report.command
    if cmd in ("train", "stats"):
        _print_training(report, out)
        return
    if report.crawl is not None:
        print("# crawl", file=out)
        print(f"links_visited\t{report.crawl['links_visited']}", file=out)
        print(f"articles\t{report.crawl['articles']}", file=out)
        print(f"failures\t{len(report.crawl['failures'])}", file=out)
    if cmd == "scan-site":
        auth = report.authenticity
        print("# authenticity", file=out)
        print(f"verdict\t{auth.verdict.value}", file=out)
        print(f"score\t{_fmt(auth.score)}", file=out)
        print(f"fake_fraction\t{_fmt(auth.fake_fraction)}", file=out)
        print(f"real_fraction\t{_fmt(auth.real_fraction)}", file=out)
        if report.predictions:
            print("# articles", file=out)
            print("url\tpredicted\tfinal\ttitle", file=out)
            for p in report.predictions:
                print(f"{p['url']}\t{p['predicted']}\t{p['final']}\t{p['title']}", file=out)
    if cmd == "scan-link":
        print(f"best fit model: {report.best_fit.value} (accuracy {_fmt(report.stats.max)})", file=out)
        for p in report.predictions:
            print(f"prediction for: {p['title']}", file=out)
            print(f"Model predicts the news is {p['predicted']}", file=out)
    _print_gate(report, out)
    if report.retrained_stats is not None:
        print("# retrained", file=out)
        print(f"max_before\t{_fmt(report.stats.max)}", file=out)
        print(f"max_after\t{_fmt(report.retrained_stats.max)}", file=out)
        print(f"best_fit\t{report.retrained_best_fit.value}", file=out)
    _print_dataset(report, out)
    for note in report.notes:
        print(f"note: {note}", file=out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="veridict", description="Weighted-accuracy fake news detection pipeline.")
    p.add_argument("--config", type=Path, help="INI config file")
    p.add_argument("--seed", type=int, help="override the configured seed")
    p.add_argument("--bundle", type=Path, default=Path(DEFAULT_BUNDLE), help="model bundle path")
    p.add_argument("--report-dir", type=Path, help="where run reports and figures go (default: bundle dir)")
    p.add_argument("--no-figures", action="store_true", help="skip rendering report figures")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("train", help="train the classifier suite and pick the best-fit model")
    t.add_argument("--data", type=Path, required=True)

    i = sub.add_parser("ingest", help="crawl a source and append its articles with a fixed label")
    i.add_argument("--url", required=True)
    i.add_argument("--label", required=True, type=str.upper, choices=["REAL", "FAKE"])
    i.add_argument("--data", type=Path, required=True)

    s = sub.add_parser("scan-site", help="score a news outlet and maybe grow the corpus")
    s.add_argument("--url", required=True)
    s.add_argument("--data", type=Path, help="corpus to augment (default: the bundle's training corpus)")

    lk = sub.add_parser("scan-link", help="classify a single article")
    lk.add_argument("--url", required=True)
    lk.add_argument("--data", type=Path, help="corpus to augment (default: the bundle's training corpus)")

    sub.add_parser("stats", help="show the bundle's model metrics")
    sub.add_parser("config", help="print the default configuration file")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "config":
        sys.stdout.write(default_config_text())
        return 0
    try:
        config = load_config(args.config, seed=args.seed)
        if args.no_figures:
            config = replace(config, figures=False)
        if args.command == "train":
            _, report = pipeline.cmd_train(args.data, config, args.bundle)
        elif args.command == "ingest":
            report = pipeline.cmd_ingest(args.url, args.label, args.data, config)
        elif args.command == "scan-site":
            report = pipeline.cmd_scan_site(args.url, args.bundle, config, args.data)
        elif args.command == "scan-link":
            report = pipeline.cmd_scan_link(args.url, args.bundle, config, args.data)
        else:
            report = pipeline.cmd_stats(args.bundle)
        print_report(report)
        report_dir = args.report_dir or args.bundle.parent
        stem = args.bundle.name.rsplit(".", 1)[0]
        path = pipeline.write_report(report, report_dir / f"{stem}.{report.command}.json", config)
        print(f"# report\t{path}")
    except VeridictError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
