"""Shared builders for the test suite."""

from datetime import date as Date, timedelta

from tlsum.corpus import Corpus, Document, Sentence, Timeline, PUBLICATION


def day(offset, base=Date(2011, 3, 1)):
    return base + timedelta(days=offset)


def make_corpus(texts_with_dates, topic="test"):
    """Corpus from (text, date) pairs; one document per distinct date."""
    by_date = {}
    for text, d in texts_with_dates:
        by_date.setdefault(d, []).append(text)
    documents = []
    for i, d in enumerate(sorted(by_date)):
        documents.append(Document(id="doc-%d" % i, publication_date=d,
                                  sentences=tuple(by_date[d])))
    sentences = []
    for doc in documents:
        for text in doc.sentences:
            sentences.append(Sentence(id=len(sentences), text=text, doc_id=doc.id,
                                      date=doc.publication_date,
                                      date_source=PUBLICATION,
                                      referenced_dates=frozenset([doc.publication_date])))
    return Corpus(topic=topic, keywords=(), sentences=tuple(sentences),
                  documents=tuple(documents))


def timeline(*entries):
    """Timeline from (date, [sentence, ...]) pairs."""
    return Timeline(entries=tuple((d, tuple(summary)) for d, summary in entries))


WORDS = ("storm", "port", "crews", "bridge", "mayor", "levee", "rescue",
         "convoy", "sirens", "ferry", "market", "clinic", "tents", "grain",
         "pumps", "rails", "docks", "wells")


def random_timeline(rng, base=Date(2011, 5, 1), max_days=8, max_len=3, vocab=WORDS):
    days = sorted(rng.sample(range(max_days * 2), rng.randint(1, max_days)))
    entries = []
    for offset in days:
        summary = tuple(" ".join(rng.choice(vocab) for _ in range(rng.randint(3, 7))) + "."
                        for _ in range(rng.randint(1, max_len)))
        entries.append((base + timedelta(days=offset), summary))
    return Timeline(entries=tuple(entries))
