import json
from datetime import date as Date

import pytest

from helpers import day, make_corpus, timeline
from tlsum.corpus import (CorpusFormatError, Timeline, build_timeline,
                          canonical_document_line, derive_timeline_spec,
                          filter_by_keywords, load_corpus, load_keywords,
                          load_timeline, save_corpus, save_timeline,
                          tag_sentence_dates, EXPRESSION, PUBLICATION)


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record) + "\n")


def test_load_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    corpus = load_corpus(path)
    assert corpus.documents == ()
    assert corpus.sentences == ()


def test_load_assigns_dense_ids(tmp_path):
    path = tmp_path / "c.jsonl"
    write_jsonl(path, [{"id": "d1", "pub_date": "2011-03-30",
                        "sentences": ["One.", "Two.", "Three."]}])
    corpus = load_corpus(path)
    assert [s.id for s in corpus.sentences] == [0, 1, 2]
    assert all(s.date == Date(2011, 3, 30) for s in corpus.sentences)
    assert all(s.date_source == PUBLICATION for s in corpus.sentences)


def test_load_duplicate_doc_id(tmp_path):
    path = tmp_path / "c.jsonl"
    write_jsonl(path, [{"id": "d1", "pub_date": "2011-03-30", "sentences": ["A."]},
                       {"id": "d1", "pub_date": "2011-03-31", "sentences": ["B."]}])
    with pytest.raises(CorpusFormatError, match="duplicate"):
        load_corpus(path)


def test_load_malformed_line_reports_line_number(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"id": "d1", "pub_date": "2011-03-30", "sentences": ["A."]}\nnot json\n')
    with pytest.raises(CorpusFormatError, match="line 2"):
        load_corpus(path)


def test_load_bad_pub_date_names_document(tmp_path):
    path = tmp_path / "c.jsonl"
    write_jsonl(path, [{"id": "dX", "pub_date": "not-a-date", "sentences": ["A."]}])
    with pytest.raises(CorpusFormatError, match="dX"):
        load_corpus(path)


def test_roundtrip_canonical_jsonl(tmp_path):
    path = tmp_path / "c.jsonl"
    records = [("d1", "2011-03-30", ["Oil spill grows.", "Markets rally."]),
               ("d2", "2011-03-31", ["Cleanup begins."])]
    with open(path, "w", encoding="utf-8") as handle:
        for doc_id, pub, sents in records:
            handle.write(canonical_document_line(doc_id, pub, sents) + "\n")
    original = path.read_bytes()
    out = tmp_path / "out.jsonl"
    save_corpus(load_corpus(path), out)
    assert out.read_bytes() == original


def test_filter_empty_keywords_is_identity():
    corpus = make_corpus([("oil spill grows.", day(0)), ("markets rally.", day(0))])
    assert filter_by_keywords(corpus, []) is corpus


def test_filter_keeps_matching_sentences():
    corpus = make_corpus([("oil spill grows.", day(0)), ("markets rally.", day(0))])
    filtered = filter_by_keywords(corpus, ["spill"])
    assert [s.text for s in filtered.sentences] == ["oil spill grows."]
    assert filtered.sentences[0].id == 0
    assert filtered.sentences[0].orig_id == 0


def test_filter_matches_tokens_not_substrings():
    corpus = make_corpus([("they spoke orally.", day(0)), ("a rally formed.", day(1))])
    filtered = filter_by_keywords(corpus, ["rally"])
    assert [s.text for s in filtered.sentences] == ["a rally formed."]


def test_filter_ten_sentences_four_matching():
    texts = ["flood hits town.", "dry spell ends.", "flood waters rise.",
             "markets are calm.", "the flood recedes.", "trade resumed.",
             "flood alerts continue.", "weather improves.", "roads reopen.",
             "harvest begins."]
    matching = [t for t in texts if "flood" in t.split()]
    assert len(matching) == 4  # oracle: membership enumerated by hand
    corpus = make_corpus([(t, day(i % 3)) for i, t in enumerate(texts)])
    filtered = filter_by_keywords(corpus, ["flood"])
    assert len(filtered.sentences) == 4
    assert [s.id for s in filtered.sentences] == [0, 1, 2, 3]
    assert sorted(s.text for s in filtered.sentences) == sorted(matching)
    assert all(set(s.text.lower().replace(".", "").split()) & {"flood"}
               for s in filtered.sentences)


def test_tag_explicit_iso_date():
    corpus = make_corpus([("Government resigned on 2011-03-29.", Date(2011, 3, 30))])
    tagged = tag_sentence_dates(corpus)
    sentence = tagged.sentences[0]
    assert sentence.date == Date(2011, 3, 29)
    assert sentence.date_source == EXPRESSION
    assert sentence.referenced_dates == frozenset([Date(2011, 3, 29)])


def test_tag_fallback_to_publication():
    corpus = make_corpus([("Protests continued.", Date(2011, 3, 16))])
    tagged = tag_sentence_dates(corpus)
    sentence = tagged.sentences[0]
    assert sentence.date == Date(2011, 3, 16)
    assert sentence.date_source == PUBLICATION
    assert sentence.referenced_dates == frozenset([Date(2011, 3, 16)])


def test_tag_first_expression_wins():
    text = "On March 24, 2011 talks began and again on 2011-03-29 they stalled."
    corpus = make_corpus([(text, Date(2011, 3, 30))])
    sentence = tag_sentence_dates(corpus).sentences[0]
    assert sentence.date == Date(2011, 3, 24)
    assert sentence.referenced_dates >= {Date(2011, 3, 24), Date(2011, 3, 29)}


def test_tag_is_idempotent():
    corpus = make_corpus([
        ("On March 24, 2011 talks began.", Date(2011, 3, 30)),
        ("Protests continued.", Date(2011, 3, 16)),
        ("Quiet since Monday.", Date(2011, 3, 30)),
    ])
    once = tag_sentence_dates(corpus)
    twice = tag_sentence_dates(once)
    assert once == twice


def test_derive_spec_from_mixed_lengths():
    ref = timeline((day(0), ["a.", "b."]), (day(8), ["c.", "d."]), (day(13), ["e."]))
    spec = derive_timeline_spec(ref)
    assert (spec.m, spec.ell, spec.k) == (5, 3, 2)  # k = round-half-up(5/3)
    assert (spec.start, spec.end) == (day(0), day(13))


def test_derive_spec_singleton():
    spec = derive_timeline_spec(timeline((day(2), ["a."])))
    assert (spec.m, spec.ell, spec.k) == (1, 1, 1)


def test_derive_spec_uniform():
    spec = derive_timeline_spec(timeline((day(0), ["a.", "b.", "c."]),
                                         (day(5), ["d.", "e.", "f."])))
    assert (spec.m, spec.ell, spec.k) == (6, 2, 3)


def test_derive_spec_empty_timeline():
    with pytest.raises(ValueError):
        derive_timeline_spec(Timeline(entries=()))


def test_derive_spec_invariants_random():
    import random
    from helpers import random_timeline
    rng = random.Random(7)
    for _ in range(50):
        ref = random_timeline(rng)
        spec = derive_timeline_spec(ref)
        assert spec.ell <= spec.m
        assert spec.k >= 1
        assert spec.ell == len(set(ref.dates()))


def test_timeline_validation():
    with pytest.raises(ValueError):
        timeline((day(3), ["a."]), (day(1), ["b."]))  # not increasing
    with pytest.raises(ValueError):
        timeline((day(1), ["a."]), (day(1), ["b."]))  # duplicate date
    with pytest.raises(ValueError):
        timeline((day(1), []))  # empty daily summary


def test_timeline_json_roundtrip(tmp_path):
    ref = timeline((day(0), ["a.", "b."]), (day(3), ["c."]))
    path = tmp_path / "t.json"
    save_timeline(ref, path)
    assert load_timeline(path) == ref
    data = json.loads(path.read_text())
    assert data["entries"][0]["date"] == day(0).isoformat()


def test_build_timeline_groups_and_sorts():
    corpus = make_corpus([("b.", day(4)), ("a.", day(1)), ("c.", day(4))])
    # ids: day(1) doc first -> "a." id 0; day(4) doc -> "b." 1, "c." 2
    tl = build_timeline(corpus, [2, 0, 1])
    assert tl.dates() == [day(1), day(4)]
    assert tl.summary_for(day(4)) == ("b.", "c.")


def test_load_keywords(tmp_path):
    path = tmp_path / "k.txt"
    path.write_text("Spill\n\nleak\n")
    assert load_keywords(path) == ["spill", "leak"]


def test_corpus_rejects_non_dense_ids():
    from tlsum.corpus import Corpus, Document, Sentence, PUBLICATION
    doc = Document(id="d", publication_date=day(0), sentences=("a.",))
    bad = Sentence(id=5, text="a.", doc_id="d", date=day(0),
                   date_source=PUBLICATION, referenced_dates=frozenset([day(0)]))
    with pytest.raises(ValueError, match="dense"):
        Corpus(topic="t", keywords=(), sentences=(bad,), documents=(doc,))


def test_save_corpus_reflects_filtering(tmp_path):
    path = tmp_path / "c.jsonl"
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(canonical_document_line(
            "d1", "2011-03-30", ["oil spill grows.", "markets rally."]) + "\n")
        handle.write(canonical_document_line(
            "d2", "2011-03-31", ["cleanup of the spill begins."]) + "\n")
    filtered = filter_by_keywords(load_corpus(path), ["spill"])
    out = tmp_path / "filtered.jsonl"
    save_corpus(filtered, out)
    reloaded = load_corpus(out)
    assert [s.text for s in reloaded.sentences] == \
        ["oil spill grows.", "cleanup of the spill begins."]
    assert len(reloaded.documents) == 2
