"""Deterministic synthetic news topics for verification and demos.

Each topic plants a known structure into a small corpus:

  * reference days whose summary sentences appear verbatim in the
    corpus and are echoed by later date-referencing mentions, so date
    importance is skewed toward the reference days;
  * one "hot" non-reference day crowded with near-duplicate sentences,
    a coverage magnet that tempts date-blind systems into stacking;
  * filler days of low-similarity background noise, plus a few
    keyword-free sentences that keyword filtering should drop.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from datetime import date as Date, timedelta
from pathlib import Path

from .corpus import (PUBLICATION, Corpus, Document, Sentence, Timeline,
                     canonical_document_line, filter_by_keywords,
                     tag_sentence_dates)
from .dates import MONTHS

MONTH_NAMES = {number: name for name, number in MONTHS.items()}

TOPIC_KEYWORDS = ("flood", "quake", "strike", "outbreak", "blaze", "drought")

VERBS = ("reported", "confirmed", "declared", "reached", "warned",
         "ordered", "announced", "surveyed")

PLACES = ("harbor", "delta", "capital", "province", "bridge", "market",
          "valley", "coast", "airport", "plaza")

NOUNS = (
    "levee", "pumps", "convoy", "shelter", "clinic", "ferries", "grid",
    "reservoir", "dam", "crews", "airlift", "sirens", "wards", "cargo",
    "rail", "tents", "beacons", "mills", "quarry", "orchard", "canals",
    "wells", "turbines", "silos", "barges", "docks", "cranes", "granary",
    "foundry", "kilns", "looms", "terrace", "aqueduct", "depot", "hangars",
    "causeway", "locks", "breakers", "moorings", "gantry", "spillway",
    "pylons", "culverts", "berms", "sandbags", "rations", "medics",
    "volunteers", "engineers", "inspectors", "pier", "jetty", "lagoon",
    "channel", "basin", "ridge", "plateau", "esplanade", "viaduct",
    "terminal", "warehouse", "refinery", "shipyard", "cannery", "tannery",
    "brewery", "armory", "garrison", "outpost", "hamlet", "parish",
    "district", "precinct", "quarter", "borough", "township", "steppe",
    "marsh", "fen", "grove", "thicket", "paddock", "pasture", "stockyard",
    "tramway", "funicular", "monorail", "trolley", "causeways", "weirs",
    "floodgate", "bulwark", "parapet", "rampart", "bastion", "citadel",
)


@dataclass(frozen=True)
class SyntheticTopic:
    """A generated topic: corpus (filtered + tagged), gold timeline, raw docs."""

    corpus: Corpus
    reference: Timeline
    keywords: tuple
    raw_documents: tuple
    unfiltered_sentence_count: int


def _sentence(words):
    return " ".join(words) + "."


def generate_topic(seed):
    """Build one synthetic topic; fully determined by the seed."""
    rng = random.Random(seed)
    keyword = TOPIC_KEYWORDS[seed % len(TOPIC_KEYWORDS)]
    n_days = rng.randint(14, 18)
    start = Date(2011, 3, 1) + timedelta(days=rng.randint(0, 40))
    days = [start + timedelta(days=i) for i in range(n_days)]

    n_ref = rng.randint(3, 5)
    summary_len = 1 if rng.random() < 0.7 else 2
    # reference days span most of the event, at least two days apart,
    # so plenty of distractor days survive the range restriction
    ref_idx = [rng.randint(0, 1), n_days - 1 - rng.randint(0, 1)]
    middles = [i for i in range(ref_idx[0] + 2, ref_idx[1] - 1)]
    rng.shuffle(middles)
    for idx in middles:
        if len(ref_idx) >= n_ref:
            break
        if all(abs(idx - j) >= 2 for j in ref_idx):
            ref_idx.append(idx)
    ref_days = sorted(days[i] for i in ref_idx)
    interior = [d for d in days
                if ref_days[0] < d < ref_days[-1] and d not in ref_days]
    hot_day = rng.choice(interior)

    def noun_supply():
        round_no = 0
        while True:
            for noun in rng.sample(NOUNS, len(NOUNS)):
                yield noun if round_no == 0 else "%s%d" % (noun, round_no)
            round_no += 1

    noun_iter = noun_supply()

    def take(n):
        return [next(noun_iter) for _ in range(n)]

    # chatter words recur across most days, so their idf weight is tiny;
    # the topic keyword occurs on every day and is pruned outright
    chatter = take(20)
    doc_sentences = {day: [] for day in days}
    reference_entries = []
    mention_pool = []

    for ref_day in ref_days:
        day_words = take(3 + summary_len)
        summary = []
        for i in range(summary_len):
            words = [keyword, day_words[i], day_words[summary_len],
                     rng.choice(VERBS), "near", rng.choice(PLACES),
                     day_words[(summary_len + 1 + i) % len(day_words)]]
            summary.append(_sentence(words))
        reference_entries.append((ref_day, tuple(summary)))
        doc_sentences[ref_day].extend(summary)
        variant = [keyword, day_words[0], rng.choice(VERBS),
                   day_words[summary_len], day_words[1 % len(day_words)]]
        doc_sentences[ref_day].append(_sentence(variant))
        for _ in range(7):
            mention_pool.append(ref_day)

    hot_words = take(8)
    hot_size = rng.randint(7, 8)
    for i in range(hot_size):
        words = [keyword] + hot_words[:7] + [VERBS[i % len(VERBS)]]
        doc_sentences[hot_day].append(_sentence(words))

    for day in days:
        if day in ref_days or day == hot_day:
            continue
        for _ in range(2):
            words = [keyword, rng.choice(chatter), rng.choice(VERBS),
                     next(noun_iter), next(noun_iter)]
            doc_sentences[day].append(_sentence(words))

    # Date-referencing mentions skew the date-importance counts toward
    # the reference days while staying nearly invisible to the
    # similarity model: glue from the chatter pool, one unique noun, and
    # rotating date formats so mentions of one day split token-wise.
    def mention_date(day, style):
        if style == 0:
            return day.isoformat()
        month = MONTH_NAMES[day.month].capitalize()
        if style == 1:
            return "%s %d, %d" % (month, day.day, day.year)
        return "%d %s %d" % (day.day, month, day.year)

    later_days = [d for d in days if d > ref_days[0]]
    for idx, ref_day in enumerate(mention_pool):
        host = rng.choice([d for d in later_days if d > ref_day] or [days[-1]])
        words = [keyword, rng.choice(chatter), rng.choice(chatter), "since",
                 mention_date(ref_day, idx % 3), rng.choice(VERBS), next(noun_iter)]
        doc_sentences[host].append(_sentence(words))

    # a couple of keyword-free sentences the filter must drop
    for _ in range(2):
        day = rng.choice(days)
        doc_sentences[day].append(_sentence(
            ["markets", next(noun_iter), rng.choice(VERBS), "overnight"]))

    raw_documents = []
    for i, day in enumerate(days):
        rng.shuffle(doc_sentences[day])
        raw_documents.append({
            "id": "%s-%03d" % (keyword, i),
            "pub_date": day.isoformat(),
            "sentences": list(doc_sentences[day]),
        })

    documents = tuple(Document(id=doc["id"],
                               publication_date=Date.fromisoformat(doc["pub_date"]),
                               sentences=tuple(doc["sentences"]))
                      for doc in raw_documents)
    sentences = []
    for doc in documents:
        for text in doc.sentences:
            sentences.append(Sentence(
                id=len(sentences), text=text, doc_id=doc.id,
                date=doc.publication_date, date_source=PUBLICATION,
                referenced_dates=frozenset([doc.publication_date])))
    corpus = Corpus(topic="synthetic-%d" % seed, keywords=(),
                    sentences=tuple(sentences), documents=documents)
    unfiltered = len(corpus.sentences)
    corpus = tag_sentence_dates(filter_by_keywords(corpus, [keyword]))
    return SyntheticTopic(corpus=corpus,
                          reference=Timeline(entries=tuple(reference_entries)),
                          keywords=(keyword,),
                          raw_documents=tuple(raw_documents),
                          unfiltered_sentence_count=unfiltered)


def write_topic(topic, directory):
    """Write a topic to disk in the formats the CLI consumes."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    corpus_path = directory / "corpus.jsonl"
    with open(corpus_path, "w", encoding="utf-8") as handle:
        for doc in topic.raw_documents:
            handle.write(canonical_document_line(doc["id"], doc["pub_date"],
                                                 doc["sentences"]))
            handle.write("\n")
    keywords_path = directory / "keywords.txt"
    keywords_path.write_text("\n".join(topic.keywords) + "\n", encoding="utf-8")
    reference_path = directory / "reference.json"
    with open(reference_path, "w", encoding="utf-8") as handle:
        json.dump(topic.reference.to_dict(), handle, ensure_ascii=False, indent=2)
        handle.write("\n")
    return corpus_path, keywords_path, reference_path
