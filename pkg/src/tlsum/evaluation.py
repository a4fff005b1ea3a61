"""Temporal evaluation: ROUGE variants, date selection F1, diagnostics.

Three ROUGE views of a predicted timeline against a reference:

  concat     date-insensitive; all daily summaries concatenated.
  agreement  only matching days count; days present on one side only
             still inflate that side's denominator.
  align      each predicted day is aligned to the reference day with
             the best content match damped by date distance (several
             predicted days may share one reference day).

Plus corpus-level diagnostics (compression rate, spread, longest daily
summary) and a paired sign-flip randomization test for significance.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass

from .vectorspace import tokenize


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float
    n: int


def _f1(precision, recall):
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _ngram_counts(tokens, n):
    return Counter(zip(*(tokens[i:] for i in range(n)))) if len(tokens) >= n else Counter()


def _overlap(pred_counts, ref_counts):
    if len(ref_counts) < len(pred_counts):
        pred_counts, ref_counts = ref_counts, pred_counts
    return sum(min(count, ref_counts[gram])
               for gram, count in pred_counts.items() if gram in ref_counts)


def _score(overlap, pred_total, ref_total, n):
    precision = overlap / pred_total if pred_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    return RougeScore(precision=precision, recall=recall, f1=_f1(precision, recall), n=n)


def rouge_n(pred_tokens, ref_tokens, n):
    """Clipped n-gram precision/recall/F1 between two token sequences."""
    pred_counts = _ngram_counts(pred_tokens, n)
    ref_counts = _ngram_counts(ref_tokens, n)
    return rouge_n_from_counts(pred_counts, ref_counts, n)


def rouge_n_from_counts(pred_counts, ref_counts, n):
    return _score(_overlap(pred_counts, ref_counts),
                  sum(pred_counts.values()), sum(ref_counts.values()), n)


def _summary_tokens(summary):
    return tokenize(" ".join(summary))


def _per_date_counts(timeline, n):
    return {day: _ngram_counts(_summary_tokens(summary), n)
            for day, summary in timeline.entries}


def concat_rouge(pred, ref, n):
    """ROUGE over the date-ordered concatenation of all daily summaries."""
    pred_tokens = [t for _, summary in pred.entries for t in _summary_tokens(summary)]
    ref_tokens = [t for _, summary in ref.entries for t in _summary_tokens(summary)]
    return rouge_n(pred_tokens, ref_tokens, n)


def agreement_rouge(pred, ref, n):
    """Micro-averaged ROUGE counting overlap only on shared days."""
    pred_counts = _per_date_counts(pred, n)
    ref_counts = _per_date_counts(ref, n)
    overlap = sum(_overlap(pred_counts[day], ref_counts[day])
                  for day in pred_counts.keys() & ref_counts.keys())
    pred_total = sum(sum(c.values()) for c in pred_counts.values())
    ref_total = sum(sum(c.values()) for c in ref_counts.values())
    return _score(overlap, pred_total, ref_total, n)


def align_m1_rouge(pred, ref, n):
    """Micro-averaged ROUGE over date alignments chosen by content and distance.

    A predicted day aligns to the reference day maximizing
    unigram-F1 / (1 + day gap); zero-content candidates stay unaligned.
    Overlap against each reference day is computed once against the
    merged counts of all predicted days mapped to it, so many-to-one
    alignments cannot count a reference n-gram twice.
    """
    pred_counts = _per_date_counts(pred, n)
    ref_counts = _per_date_counts(ref, n)
    pred_unigrams = _per_date_counts(pred, 1)
    ref_unigrams = _per_date_counts(ref, 1)

    matched = {}  # ref day -> merged predicted counts
    for pred_day, counts in pred_counts.items():
        best_day = None
        best_key = None
        for ref_day in ref_counts:
            content = rouge_n_from_counts(pred_unigrams[pred_day], ref_unigrams[ref_day], 1).f1
            gap = abs((pred_day - ref_day).days)
            score = content / (1 + gap)
            if score <= 0.0:
                continue
            key = (-score, gap, ref_day)
            if best_key is None or key < best_key:
                best_key = key
                best_day = ref_day
        if best_day is not None:
            merged = matched.setdefault(best_day, Counter())
            merged.update(counts)
    overlap = sum(_overlap(merged, ref_counts[ref_day])
                  for ref_day, merged in matched.items())
    pred_total = sum(sum(c.values()) for c in pred_counts.values())
    ref_total = sum(sum(c.values()) for c in ref_counts.values())
    return _score(overlap, pred_total, ref_total, n)


def date_f1(pred, ref):
    """Set F1 between the predicted and reference date sets."""
    pred_days = pred.date_set()
    ref_days = ref.date_set()
    hit = len(pred_days & ref_days)
    precision = hit / len(pred_days) if pred_days else 0.0
    recall = hit / len(ref_days) if ref_days else 0.0
    return _f1(precision, recall)


def spread(ref):
    """Date count over the maximum number of dates the range allows."""
    days = ref.dates()
    if not days:
        raise ValueError("spread of an empty timeline is undefined")
    span = (days[-1] - days[0]).days + 1
    return len(days) / span


def compression_rate(ref, corpus):
    """Reference sentence count over (unfiltered) corpus sentence count."""
    if not corpus.sentences:
        raise ValueError("compression rate of an empty corpus is undefined")
    return ref.total_sentences() / len(corpus.sentences)


def max_daily_length(timeline):
    """Sentence count of the longest daily summary; 0 for an empty timeline."""
    if not timeline.entries:
        return 0
    return max(len(summary) for _, summary in timeline.entries)


def approx_randomization(scores_a, scores_b, iters, seed):
    """Two-sided paired sign-flip test; p = (hits + 1) / (iterations + 1).

    Flipping the sign of a pair's difference simulates swapping the two
    systems on that timeline. When 2^n fits within the iteration budget
    all sign patterns are enumerated exactly; otherwise patterns are
    sampled with the given seed.
    """
    if len(scores_a) != len(scores_b):
        raise ValueError("paired score lists differ in length: %d vs %d"
                         % (len(scores_a), len(scores_b)))
    if not scores_a:
        raise ValueError("empty score lists")
    if iters < 1:
        raise ValueError("iters must be >= 1")
    diffs = [a - b for a, b in zip(scores_a, scores_b)]
    n = len(diffs)
    observed = abs(sum(diffs) / n)
    threshold = observed - 1e-12
    if 2 ** n <= iters:
        hits = 0
        for signs in itertools.product((1.0, -1.0), repeat=n):
            stat = abs(sum(s * d for s, d in zip(signs, diffs)) / n)
            if stat >= threshold:
                hits += 1
        return (hits + 1) / (2 ** n + 1)
    rng = random.Random(seed)
    hits = 0
    for _ in range(iters):
        stat = abs(sum(d if rng.random() < 0.5 else -d for d in diffs) / n)
        if stat >= threshold:
            hits += 1
    return (hits + 1) / (iters + 1)


@dataclass(frozen=True)
class EvalReport:
    """All metrics for one predicted timeline against one reference."""

    concat: dict
    agreement: dict
    align_m1: dict
    date_f1: float
    spread: float
    max_daily_len: int
    compression_rate: float | None = None

    def flat(self):
        row = {}
        for name, scores in (("concat", self.concat), ("agree", self.agreement),
                             ("align", self.align_m1)):
            for n, score in sorted(scores.items()):
                row["%s_r%d" % (name, n)] = score.f1
        row["date_f1"] = self.date_f1
        row["spread"] = self.spread
        row["max_daily_len"] = self.max_daily_len
        row["compression_rate"] = self.compression_rate
        return row


def evaluate_pair(pred, ref, corpus_sentence_count=None):
    """Full metric bundle for a (predicted, reference) timeline pair."""
    rate = None
    if corpus_sentence_count:
        rate = ref.total_sentences() / corpus_sentence_count
    return EvalReport(
        concat={n: concat_rouge(pred, ref, n) for n in (1, 2)},
        agreement={n: agreement_rouge(pred, ref, n) for n in (1, 2)},
        align_m1={n: align_m1_rouge(pred, ref, n) for n in (1, 2)},
        date_f1=date_f1(pred, ref),
        spread=spread(ref),
        max_daily_len=max_daily_length(pred),
        compression_rate=rate,
    )
