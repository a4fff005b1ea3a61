"""Batch command line: ingest | summarize | evaluate | analyze | selftest.

Exit codes: 0 success, 1 usage or input error, 2 property/selftest
failure. All outputs are deterministic for a fixed config and seed;
files are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import statistics
import sys
from pathlib import Path

from .corpus import (filter_by_keywords, load_corpus, load_keywords,
                     load_timeline, save_corpus, tag_sentence_dates,
                     derive_timeline_spec, CorpusFormatError)
from .evaluation import approx_randomization, evaluate_pair
from .presets import RUN_PRESETS, run_preset_state
from .selftest import run_selftest

COMPRESSION_BINS = ((0.0, 0.001), (0.001, 0.01), (0.01, 0.1), (0.1, 1.0))
SPREAD_BINS = ((0.0, 1 / 3), (1 / 3, 2 / 3), (2 / 3, 1.0))

METRIC_COLUMNS = ("concat_r1", "concat_r2", "agree_r1", "agree_r2",
                  "align_r1", "align_r2", "date_f1")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _atomic_write(path, text):
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_timeline(timeline, path):
    _atomic_write(path, json.dumps(timeline.to_dict(), ensure_ascii=False, indent=2) + "\n")


def _load_config(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _timeline_files(directory):
    return sorted(p for p in Path(directory).glob("*.json")
                  if not p.name.endswith(".meta.json"))


def _reference_paths(references):
    paths = []
    for ref in references:
        p = Path(ref)
        if p.is_dir():
            paths.extend(_timeline_files(p))
        else:
            paths.append(p)
    if not paths:
        raise UsageError("no reference timelines found")
    return paths


def _prepared_corpus(corpus_path, keywords_path):
    corpus = load_corpus(corpus_path)
    unfiltered = len(corpus.sentences)
    if keywords_path:
        corpus = filter_by_keywords(corpus, load_keywords(keywords_path))
    return tag_sentence_dates(corpus), unfiltered


def cmd_ingest(args):
    corpus, unfiltered = _prepared_corpus(args.corpus, args.keywords)
    save_corpus(corpus, args.out)
    dates = {s.date for s in corpus.sentences}
    print("documents=%d sentences=%d (of %d before filtering) distinct_dates=%d"
          % (len(corpus.documents), len(corpus.sentences), unfiltered, len(dates)))
    return 0


def cmd_summarize(args):
    config = _load_config(args.config) if args.config else {}
    corpus_path = args.corpus or config.get("corpus")
    keywords_path = args.keywords or config.get("keywords")
    references = list(args.references or config.get("references", []))
    preset = args.preset or config.get("preset", "asmds")
    seed = args.seed if args.seed is not None else config.get("seed", 0)
    outdir = Path(args.outdir or config.get("outdir", "."))
    constraint_config = config.get("constraint")
    if args.constraint:
        constraint_config = json.loads(args.constraint)
    if corpus_path is None:
        raise UsageError("--corpus is required (flag or config)")
    if not references:
        raise UsageError("at least one --reference is required (flag or config)")
    if preset not in RUN_PRESETS:
        raise UsageError("unknown preset %r; known: %s" % (preset, ", ".join(RUN_PRESETS)))

    corpus, unfiltered = _prepared_corpus(corpus_path, keywords_path)
    outdir.mkdir(parents=True, exist_ok=True)
    for ref_path in _reference_paths(references):
        reference = load_timeline(ref_path)
        timeline, state = run_preset_state(preset, corpus, reference, seed=seed,
                                           constraint_config=constraint_config)
        out_path = outdir / ref_path.name
        _write_timeline(timeline, out_path)
        if args.trace and state is not None:
            lines = [json.dumps({"step": step, "id": sid, "gain": gain,
                                 "feasible": feasible})
                     for step, sid, gain, feasible in state.trace]
            _atomic_write(outdir / (ref_path.stem + ".trace.jsonl"),
                          "\n".join(lines) + "\n")
        spec = derive_timeline_spec(reference)
        meta = {
            "preset": preset,
            "seed": seed,
            "reference": ref_path.name,
            "unfiltered_corpus_sentences": unfiltered,
            "spec": {"m": spec.m, "ell": spec.ell, "k": spec.k,
                     "start": spec.start.isoformat(), "end": spec.end.isoformat()},
        }
        _atomic_write(outdir / (ref_path.stem + ".meta.json"),
                      json.dumps(meta, ensure_ascii=False, indent=2, sort_keys=True) + "\n")
        print("wrote %s (%d dates, %d sentences)"
              % (out_path, len(timeline.entries), timeline.total_sentences()))
    return 0


def _evaluate_system(pred_dir, ref_dir):
    pred_dir, ref_dir = Path(pred_dir), Path(ref_dir)
    ref_files = _timeline_files(ref_dir)
    ref_names = {p.name for p in ref_files}
    unmatched = [p.name for p in _timeline_files(pred_dir) if p.name not in ref_names]
    missing = [p.name for p in ref_files if not (pred_dir / p.name).exists()]
    if missing or unmatched:
        parts = []
        if missing:
            parts.append("missing predictions for: %s" % ", ".join(missing))
        if unmatched:
            parts.append("predictions without references: %s" % ", ".join(unmatched))
        raise UsageError("%s: %s" % (pred_dir, "; ".join(parts)))
    rows = []
    for ref_path in ref_files:
        pred = load_timeline(pred_dir / ref_path.name)
        ref = load_timeline(ref_path)
        meta_path = pred_dir / (ref_path.stem + ".meta.json")
        corpus_count = None
        if meta_path.exists():
            corpus_count = json.loads(meta_path.read_text(encoding="utf-8")) \
                .get("unfiltered_corpus_sentences")
        report = evaluate_pair(pred, ref, corpus_count)
        row = {"system": pred_dir.name, "timeline": ref_path.stem}
        row.update(report.flat())
        rows.append(row)
    if not rows:
        raise UsageError("no reference timelines in %s" % ref_dir)
    return rows


def _macro(rows, column):
    return statistics.fmean(row[column] for row in rows)


def cmd_evaluate(args):
    all_rows = []
    per_system = {}
    for pred_dir in args.pred_dirs:
        rows = _evaluate_system(pred_dir, args.ref_dir)
        per_system[Path(pred_dir).name] = rows
        all_rows.extend(rows)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    columns = ["system", "timeline", *METRIC_COLUMNS,
               "spread", "compression_rate", "max_daily_len"]
    lines = [",".join(columns)]
    for row in all_rows:
        lines.append(",".join(_csv_cell(row.get(c)) for c in columns))
    _atomic_write(outdir / "per_timeline.csv", "\n".join(lines) + "\n")

    header = "%-12s" % "system" + "".join("%12s" % c for c in METRIC_COLUMNS)
    print(header)
    summary_lines = [",".join(["system", *METRIC_COLUMNS])]
    for system, rows in per_system.items():
        means = [_macro(rows, c) for c in METRIC_COLUMNS]
        print("%-12s" % system + "".join("%12.3f" % v for v in means))
        summary_lines.append(",".join([system] + ["%.6f" % v for v in means]))
    _atomic_write(outdir / "macro.csv", "\n".join(summary_lines) + "\n")

    if len(args.pred_dirs) > 1:
        base_name = Path(args.pred_dirs[0]).name
        base_rows = per_system[base_name]
        sig_lines = [",".join(["system", "vs", "metric", "p_value", "significant"])]
        for system, rows in per_system.items():
            if system == base_name:
                continue
            for metric in METRIC_COLUMNS:
                a = [row[metric] for row in rows]
                b = [row[metric] for row in base_rows]
                p = approx_randomization(a, b, args.iters, args.seed)
                sig_lines.append(",".join([system, base_name, metric, "%.6f" % p,
                                           "*" if p < 0.05 else ""]))
        _atomic_write(outdir / "significance.csv", "\n".join(sig_lines) + "\n")
        print("significance vs %s written to %s" % (base_name, outdir / "significance.csv"))
    return 0


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.6f" % value
    return str(value)


def _read_rows(csv_path):
    with open(csv_path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def _bin_label(low, high):
    return "(%.3g,%.3g]" % (low, high)


def _bucket_mean(rows, column, low, high, value_column):
    values = []
    for row in rows:
        raw = row.get(column)
        if not raw:
            continue
        x = float(raw)
        if (low == 0.0 and low <= x <= high) or (low < x <= high):
            values.append(float(row[value_column]))
    return statistics.fmean(values) if values else None


def cmd_analyze(args):
    rows = []
    for path in args.csvs:
        rows.extend(_read_rows(path))
    if not rows:
        raise UsageError("no evaluation rows found")
    systems = sorted({row["system"] for row in rows})

    out_lines = [",".join(["system", "table", "bucket", "align_r1_mean"])]
    print("align_r1 by compression rate")
    for system in systems:
        sys_rows = [r for r in rows if r["system"] == system]
        cells = []
        for low, high in COMPRESSION_BINS:
            mean = _bucket_mean(sys_rows, "compression_rate", low, high, "align_r1")
            cells.append("%12s" % ("-" if mean is None else "%.3f" % mean))
            out_lines.append(",".join([system, "compression", _bin_label(low, high),
                                       "" if mean is None else "%.6f" % mean]))
        print("%-12s" % system + "".join(cells))
    print("align_r1 by spread")
    for system in systems:
        sys_rows = [r for r in rows if r["system"] == system]
        cells = []
        for low, high in SPREAD_BINS:
            mean = _bucket_mean(sys_rows, "spread", low, high, "align_r1")
            cells.append("%12s" % ("-" if mean is None else "%.3f" % mean))
            out_lines.append(",".join([system, "spread", _bin_label(low, high),
                                       "" if mean is None else "%.6f" % mean]))
        print("%-12s" % system + "".join(cells))

    print("longest daily summary")
    length_lines = [",".join(["system", "max_daily_len_mean", "max_daily_len_median"])]
    for system in systems:
        lengths = [int(row["max_daily_len"]) for row in rows if row["system"] == system]
        mean = statistics.fmean(lengths)
        median = statistics.median(lengths)
        print("%-12s mean %.1f median %g" % (system, mean, median))
        length_lines.append(",".join([system, "%.6f" % mean, "%g" % median]))

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _atomic_write(outdir / "buckets.csv", "\n".join(out_lines) + "\n")
    _atomic_write(outdir / "daily_length.csv", "\n".join(length_lines) + "\n")
    return 0


def cmd_selftest(args):
    report = run_selftest(seed=args.seed, quick=args.quick)
    for line in report.lines():
        print(line)
    if not report.passed:
        print("selftest FAILED")
        return 2
    print("selftest passed")
    return 0


def build_parser():
    parser = _Parser(prog="tlsum",
                     description="timeline summarization by constrained greedy selection")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load, filter and date a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--keywords")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("summarize", help="predict timelines for reference timelines")
    p.add_argument("--config", help="JSON config file; flags override")
    p.add_argument("--corpus")
    p.add_argument("--keywords")
    p.add_argument("--reference", dest="references", action="append",
                   help="reference timeline JSON file or directory (repeatable)")
    p.add_argument("--preset", choices=RUN_PRESETS)
    p.add_argument("--constraint", help="constraint spec as inline JSON")
    p.add_argument("--seed", type=int)
    p.add_argument("--outdir", default=os.environ.get("TLSUM_OUTDIR"))
    p.add_argument("--trace", action="store_true",
                   help="also write the greedy decision trace as JSONL")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", help="score predicted against reference timelines")
    p.add_argument("pred_dirs", nargs="+",
                   help="prediction directories; first is the significance baseline")
    p.add_argument("--ref-dir", required=True)
    p.add_argument("--outdir", default=os.environ.get("TLSUM_OUTDIR", "."))
    p.add_argument("--iters", type=int, default=9999)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("analyze", help="bucket evaluation results by corpus statistics")
    p.add_argument("csvs", nargs="+", help="per-timeline CSV files from evaluate")
    p.add_argument("--outdir", default=os.environ.get("TLSUM_OUTDIR", "."))
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("selftest", help="run the property verification battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (OSError, CorpusFormatError, ValueError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
