"""Corpus ingestion: documents, dated sentences and reference timelines.

All operations are pure value transformations returning new objects;
nothing here mutates shared state. File formats:

  corpus JSONL   one document per line:
                 {"id": str, "pub_date": "YYYY-MM-DD", "sentences": [str, ...]}
  timeline JSON  {"entries": [{"date": "YYYY-MM-DD", "summary": [str, ...]}, ...]}
  keyword file   plain text, one lowercase keyword per line
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from datetime import date as Date
from pathlib import Path

from .dates import find_date_expressions
from .vectorspace import tokenize

EXPRESSION = "expression"
PUBLICATION = "publication"


class CorpusFormatError(ValueError):
    """Raised for malformed corpus or timeline files."""


@dataclass(frozen=True)
class Document:
    id: str
    publication_date: Date
    sentences: tuple


@dataclass(frozen=True)
class Sentence:
    """A dated text unit; the atom selected by the optimizer.

    ``date`` is the day the sentence is filed under, either from the
    first resolvable temporal expression or from the publication date.
    ``referenced_dates`` holds every day the sentence mentions (falling
    back to the publication date when it mentions none). ``orig_id``
    tracks the sentence id before any filtering re-densified ids.
    """

    id: int
    text: str
    doc_id: str
    date: Date
    date_source: str
    referenced_dates: frozenset
    orig_id: int | None = None

    def __post_init__(self):
        if not self.referenced_dates:
            raise ValueError("sentence %d has empty referenced_dates" % self.id)
        if self.date_source == EXPRESSION and self.date not in self.referenced_dates:
            raise ValueError("sentence %d: expression date not in referenced_dates" % self.id)


@dataclass(frozen=True)
class Corpus:
    topic: str
    keywords: tuple
    sentences: tuple
    documents: tuple

    def __post_init__(self):
        doc_ids = {d.id for d in self.documents}
        for i, sentence in enumerate(self.sentences):
            if sentence.id != i:
                raise ValueError("sentence ids must be dense: found %d at position %d"
                                 % (sentence.id, i))
            if sentence.doc_id not in doc_ids:
                raise ValueError("sentence %d references unknown document %r"
                                 % (sentence.id, sentence.doc_id))

    def document(self, doc_id):
        for doc in self.documents:
            if doc.id == doc_id:
                return doc
        raise KeyError(doc_id)

    def sentence_dates(self):
        return [s.date for s in self.sentences]


@dataclass(frozen=True)
class Timeline:
    """Ordered (date, daily summary) pairs; empty timelines are allowed."""

    entries: tuple

    def __post_init__(self):
        previous = None
        for day, summary in self.entries:
            if previous is not None and day <= previous:
                raise ValueError("timeline dates must be strictly increasing")
            if not summary:
                raise ValueError("daily summary for %s is empty" % day)
            previous = day

    def dates(self):
        return [day for day, _ in self.entries]

    def date_set(self):
        return {day for day, _ in self.entries}

    def summary_for(self, day):
        for d, summary in self.entries:
            if d == day:
                return summary
        return None

    def total_sentences(self):
        return sum(len(summary) for _, summary in self.entries)

    def to_dict(self):
        return {"entries": [{"date": day.isoformat(), "summary": list(summary)}
                            for day, summary in self.entries]}

    @staticmethod
    def from_dict(data):
        entries = []
        for entry in data["entries"]:
            entries.append((Date.fromisoformat(entry["date"]), tuple(entry["summary"])))
        return Timeline(entries=tuple(entries))


@dataclass(frozen=True)
class TimelineSpec:
    """Budget parameters extracted from a reference timeline.

    m: max total sentences, ell: max distinct dates, k: max sentences
    per day, start/end: date range covered.
    """

    m: int
    ell: int
    k: int
    start: Date
    end: Date

    def __post_init__(self):
        if not (self.m >= self.ell >= 1):
            raise ValueError("need m >= ell >= 1, got m=%d ell=%d" % (self.m, self.ell))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.start > self.end:
            raise ValueError("start after end")


def _parse_day(raw, context):
    try:
        return Date.fromisoformat(raw)
    except (TypeError, ValueError):
        raise CorpusFormatError("unparseable date %r %s" % (raw, context)) from None


def load_corpus(path, format="jsonl"):
    """Load a corpus from a JSONL file of documents.

    Sentence ids are assigned densely in file order; each sentence is
    initially dated by its document's publication date (run
    ``tag_sentence_dates`` to resolve in-text expressions).
    """
    if format != "jsonl":
        raise ValueError("unsupported corpus format %r" % format)
    path = Path(path)
    documents = []
    sentences = []
    seen_ids = set()
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                raise CorpusFormatError("line %d: blank line" % line_no)
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError("line %d: invalid JSON (%s)" % (line_no, exc)) from None
            if not isinstance(record, dict) or not {"id", "pub_date", "sentences"} <= set(record):
                raise CorpusFormatError("line %d: expected id/pub_date/sentences" % line_no)
            doc_id = record["id"]
            if doc_id in seen_ids:
                raise CorpusFormatError("line %d: duplicate document id %r" % (line_no, doc_id))
            seen_ids.add(doc_id)
            pub = _parse_day(record["pub_date"], "in document %r" % doc_id)
            texts = tuple(record["sentences"])
            documents.append(Document(id=doc_id, publication_date=pub, sentences=texts))
            for text in texts:
                sentences.append(Sentence(
                    id=len(sentences), text=text, doc_id=doc_id, date=pub,
                    date_source=PUBLICATION, referenced_dates=frozenset([pub])))
    return Corpus(topic=path.stem, keywords=(), sentences=tuple(sentences),
                  documents=tuple(documents))


def save_corpus(corpus, path):
    """Write the corpus as canonical JSONL (one document per line).

    Serializes the sentences actually present in the corpus, so a
    filtered corpus writes only its retained sentences. For an
    unfiltered corpus this reproduces the canonical input byte for byte.
    """
    retained = {}
    for sentence in corpus.sentences:
        retained.setdefault(sentence.doc_id, []).append(sentence.text)
    with open(path, "w", encoding="utf-8") as handle:
        for doc in corpus.documents:
            handle.write(canonical_document_line(
                doc.id, doc.publication_date.isoformat(), retained.get(doc.id, [])))
            handle.write("\n")


def canonical_document_line(doc_id, pub_date, sentences):
    record = {"id": doc_id, "pub_date": pub_date, "sentences": sentences}
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def filter_by_keywords(corpus, keywords):
    """Keep only sentences containing at least one keyword token.

    Matching is on lowercase token equality, not substring. An empty
    keyword list is the identity. Retained sentences are re-densified;
    their pre-filter ids are kept in ``orig_id``.
    """
    if not keywords:
        return corpus
    wanted = {k.lower() for k in keywords}
    retained = []
    for sentence in corpus.sentences:
        if wanted & set(tokenize(sentence.text)):
            retained.append(replace(
                sentence, id=len(retained),
                orig_id=sentence.orig_id if sentence.orig_id is not None else sentence.id))
    return replace(corpus, keywords=tuple(keywords), sentences=tuple(retained))


def restrict_to_range(corpus, start, end):
    """Keep only sentences dated within [start, end]; ids re-densified."""
    retained = []
    for sentence in corpus.sentences:
        if start <= sentence.date <= end:
            retained.append(replace(
                sentence, id=len(retained),
                orig_id=sentence.orig_id if sentence.orig_id is not None else sentence.id))
    return replace(corpus, sentences=tuple(retained))


def tag_sentence_dates(corpus):
    """Date every sentence from its text, falling back to publication.

    The first resolvable expression supplies the date; all resolvable
    expressions land in ``referenced_dates``. Idempotent: tags are
    recomputed from text and publication date alone.
    """
    pub_of = {doc.id: doc.publication_date for doc in corpus.documents}
    tagged = []
    for sentence in corpus.sentences:
        pub = pub_of[sentence.doc_id]
        expressions = find_date_expressions(sentence.text, pub)
        if expressions:
            tagged.append(replace(
                sentence, date=expressions[0], date_source=EXPRESSION,
                referenced_dates=frozenset(expressions)))
        else:
            tagged.append(replace(
                sentence, date=pub, date_source=PUBLICATION,
                referenced_dates=frozenset([pub])))
    return replace(corpus, sentences=tuple(tagged))


def derive_timeline_spec(reference):
    """Extract m/ell/k budgets and the date range from a reference timeline.

    k is the round-half-up mean daily summary length, floored at 1.
    """
    if not reference.entries:
        raise ValueError("cannot derive parameters from an empty timeline")
    m = reference.total_sentences()
    ell = len(reference.entries)
    k = max(1, math.floor(m / ell + 0.5))
    days = reference.dates()
    return TimelineSpec(m=m, ell=ell, k=k, start=days[0], end=days[-1])


def build_timeline(corpus, selected_ids):
    """Assemble a Timeline from selected sentence ids, grouped by date."""
    by_date = {}
    for sid in selected_ids:
        sentence = corpus.sentences[sid]
        by_date.setdefault(sentence.date, []).append(sentence)
    entries = []
    for day in sorted(by_date):
        texts = tuple(s.text for s in sorted(by_date[day], key=lambda s: s.id))
        entries.append((day, texts))
    return Timeline(entries=tuple(entries))


def load_timeline(path):
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError("invalid timeline JSON in %s (%s)" % (path, exc)) from None
    try:
        return Timeline.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusFormatError("invalid timeline %s (%s)" % (path, exc)) from None


def save_timeline(timeline, path):
    payload = json.dumps(timeline.to_dict(), ensure_ascii=False, indent=2)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(payload)
        handle.write("\n")


def load_keywords(path):
    """One lowercase keyword per line; blank lines ignored."""
    keywords = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            word = line.strip().lower()
            if word:
                keywords.append(word)
    return keywords
