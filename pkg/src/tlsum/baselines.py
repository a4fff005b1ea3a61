"""Unsupervised baseline and oracle upper-bound systems.

The windowed-similarity baseline ranks sentences by how similar they
are to their temporal neighborhood and emits one-sentence daily
summaries, suppressing candidates that fall inside the "extent" of a
sentence already on the timeline. The oracle runs greedy on gold
per-sentence gains and bounds what any extractive system could score.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Timeline, build_timeline
from .evaluation import rouge_n
from .objectives import ModularObjective
from .optimizer import greedy
from .vectorspace import tokenize

WINDOW_DAYS = 10
EXTENT_MASS = 0.8


@dataclass(frozen=True)
class RankedSentence:
    sentence_id: int
    interest: float
    extent: int


def _window_sums(sentence_id, sentences, sim_model):
    """Similarity mass to neighbors, bucketed by day gap 0..WINDOW_DAYS; self excluded."""
    sums = [0.0] * (WINDOW_DAYS + 1)
    own_date = sentences[sentence_id].date
    for other in sentences:
        if other.id == sentence_id:
            continue
        gap = abs((other.date - own_date).days)
        if gap <= WINDOW_DAYS:
            sums[gap] += sim_model.sim(sentence_id, other.id)
    return sums


def _extent_from_sums(sums):
    interest = sum(sums)
    if interest <= 0.0:
        return 0
    threshold = EXTENT_MASS * interest
    cumulative = 0.0
    for window in range(WINDOW_DAYS + 1):
        cumulative += sums[window]
        if cumulative >= threshold:
            return window
    return WINDOW_DAYS


def chieu_extent(sentence_id, sentences, sim_model):
    """Smallest day window holding at least 80% of the windowed similarity mass."""
    return _extent_from_sums(_window_sums(sentence_id, sentences, sim_model))


def chieu_rank(sentences, sim_model):
    """Rank sentences by summed similarity to a +-10 day neighborhood."""
    ranked = []
    for sentence in sentences:
        sums = _window_sums(sentence.id, sentences, sim_model)
        ranked.append(RankedSentence(sentence_id=sentence.id, interest=sum(sums),
                                     extent=_extent_from_sums(sums)))
    ranked.sort(key=lambda r: (-r.interest, r.sentence_id))
    return ranked


def chieu_timeline(corpus, sim_model, max_dates=None):
    """One-sentence daily summaries from the interest ranking.

    Walking the ranking, a candidate joins the timeline only if it lies
    outside the extent window of every sentence already on it. A gap of
    zero days never exceeds an extent, so dates stay unique.
    """
    ranked = chieu_rank(corpus.sentences, sim_model)
    accepted = []  # (date, extent, sentence)
    for candidate in ranked:
        if max_dates is not None and len(accepted) >= max_dates:
            break
        sentence = corpus.sentences[candidate.sentence_id]
        if all(abs((sentence.date - day).days) > extent for day, extent, _ in accepted):
            accepted.append((sentence.date, candidate.extent, sentence))
    entries = tuple((day, (sentence.text,))
                    for day, _, sentence in sorted(accepted, key=lambda a: a[0]))
    return Timeline(entries=entries)


def oracle_gains(corpus, reference):
    """Unigram F1 of each sentence against the reference summary of its date.

    Sentences dated on days the reference does not cover gain nothing.
    """
    ref_tokens = {day: tokenize(" ".join(summary)) for day, summary in reference.entries}
    gains = []
    for sentence in corpus.sentences:
        tokens = ref_tokens.get(sentence.date)
        if tokens is None:
            gains.append(0.0)
        else:
            gains.append(rouge_n(tokenize(sentence.text), tokens, 1).f1)
    return gains


def oracle_selection(corpus, reference, constraint):
    """Greedy selection state on gold per-sentence gains."""
    objective = ModularObjective(oracle_gains(corpus, reference), name="oracle")
    return greedy(range(len(corpus.sentences)), objective, constraint)


def oracle_timeline(corpus, reference, constraint):
    """Greedy on gold per-sentence gains under the given constraints."""
    state = oracle_selection(corpus, reference, constraint)
    return build_timeline(corpus, state.selected)
