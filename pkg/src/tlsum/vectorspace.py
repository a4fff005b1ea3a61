"""Sparse sentence vectors, cosine similarity and k-means clustering.

Sentences are represented as sparse bags of tokens weighted by inverse
date frequency: rare-across-days tokens get high weight, tokens seen on
every day are pruned. All weights are non-negative, which downstream
objective functions rely on.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import re
from collections import Counter
from dataclasses import dataclass

TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

KMEANS_MAX_ITER = 50


def tokenize(text):
    """Lowercase tokens: maximal runs of alphanumeric characters."""
    return TOKEN_RE.findall(text.lower())


class SparseVector:
    """Immutable sparse vector with non-negative weights and a cached norm."""

    __slots__ = ("entries", "norm")

    def __init__(self, entries):
        kept = {}
        for token_id, weight in entries.items():
            if weight < 0:
                raise ValueError("negative weight %r for token %r" % (weight, token_id))
            if weight != 0.0:
                kept[token_id] = weight
        self.entries = kept
        self.norm = math.sqrt(sum(w * w for w in kept.values()))

    def dot(self, other):
        a, b = self.entries, other.entries
        if len(b) < len(a):
            a, b = b, a
        # summation over sorted shared keys keeps dot exactly symmetric
        common = sorted(t for t in a if t in b)
        return sum(a[t] * b[t] for t in common)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, SparseVector) and self.entries == other.entries

    def __repr__(self):
        return "SparseVector(%r)" % (self.entries,)


EMPTY_VECTOR = SparseVector({})


def cosine(u, v):
    """Cosine similarity in [0, 1]; zero if either vector is zero."""
    if u.norm == 0.0 or v.norm == 0.0:
        return 0.0
    value = u.dot(v) / (u.norm * v.norm)
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class Vectorizer:
    """Token vocabulary with inverse-date-frequency weights.

    ``idf[token_id] = ln(D / df)`` where D is the number of distinct
    sentence dates in the fitting corpus and df the number of distinct
    dates on which the token occurs. Tokens occurring on every date are
    pruned (weight would be zero).
    """

    vocabulary: dict
    idf: dict
    date_count: int
    binary_tf: bool = False

    def vector(self, text):
        counts = Counter(tokenize(text))
        entries = {}
        for token, count in counts.items():
            token_id = self.vocabulary.get(token)
            if token_id is None:
                continue
            tf = 1 if self.binary_tf else count
            entries[token_id] = tf * self.idf[token_id]
        return SparseVector(entries)


def fit_vectorizer(corpus, binary_tf=False, stopwords=()):
    """Fit a Vectorizer on a dated corpus; raises on an empty one.

    ``stopwords`` (off by default) excludes tokens from the vocabulary
    entirely.
    """
    if not corpus.sentences:
        raise ValueError("cannot fit a vectorizer on an empty corpus")
    skip = set(stopwords)
    dates_of_token = {}
    all_dates = set()
    for sentence in corpus.sentences:
        all_dates.add(sentence.date)
        for token in set(tokenize(sentence.text)):
            if token in skip:
                continue
            dates_of_token.setdefault(token, set()).add(sentence.date)
    n_dates = len(all_dates)
    vocabulary = {}
    idf = {}
    for token in sorted(dates_of_token):
        df = len(dates_of_token[token])
        if df >= n_dates:
            continue
        token_id = len(vocabulary)
        vocabulary[token] = token_id
        idf[token_id] = math.log(n_dates / df)
    return Vectorizer(vocabulary=vocabulary, idf=idf, date_count=n_dates, binary_tf=binary_tf)


def vectorize(vectorizer, sentence):
    """Sparse tf-idf vector for one sentence (may be empty)."""
    return vectorizer.vector(sentence.text)


def vectorize_corpus(vectorizer, corpus):
    """Vectors for all sentences, indexed by sentence id."""
    vectors = [EMPTY_VECTOR] * len(corpus.sentences)
    for sentence in corpus.sentences:
        vectors[sentence.id] = vectorizer.vector(sentence.text)
    return vectors


@dataclass(frozen=True)
class Partition:
    """Assignment of sentence ids to cluster indices 0..k-1."""

    cluster_of: dict
    k: int

    def __post_init__(self):
        for sid, cluster in self.cluster_of.items():
            if not 0 <= cluster < self.k:
                raise ValueError("cluster %d of sentence %d out of range [0, %d)"
                                 % (cluster, sid, self.k))

    def members(self):
        groups = [[] for _ in range(self.k)]
        for sid in sorted(self.cluster_of):
            groups[self.cluster_of[sid]].append(sid)
        return groups


def _normalized(vector):
    if vector.norm == 0.0:
        return {}
    return {t: w / vector.norm for t, w in vector.entries.items()}


def _dot(entries_a, entries_b):
    if len(entries_b) < len(entries_a):
        entries_a, entries_b = entries_b, entries_a
    return sum(w * entries_b[t] for t, w in entries_a.items() if t in entries_b)


def _kmeans_pp_seeds(points, k, rng):
    centers = [rng.randrange(len(points))]
    dist2 = [2.0 - 2.0 * _dot(p, points[centers[0]]) for p in points]
    while len(centers) < k:
        total = sum(dist2)
        if total <= 1e-12:
            chosen = set(centers)
            centers.append(next(i for i in range(len(points)) if i not in chosen))
            continue
        r = rng.random() * total
        cumulative = 0.0
        pick = None
        for i, d in enumerate(dist2):
            if d <= 0.0:
                continue
            cumulative += d
            pick = i
            if cumulative >= r:
                break
        centers.append(pick)
        for i, p in enumerate(points):
            d = 2.0 - 2.0 * _dot(p, points[pick])
            if d < dist2[i]:
                dist2[i] = d
    return centers


def _lloyd(points, k, rng):
    centroids = [dict(points[i]) for i in _kmeans_pp_seeds(points, k, rng)]
    assignment = [-1] * len(points)
    for _ in range(KMEANS_MAX_ITER):
        changed = False
        for i, p in enumerate(points):
            best, best_sim = 0, -1.0
            for c, centroid in enumerate(centroids):
                sim = _dot(p, centroid)
                if sim > best_sim:
                    best, best_sim = c, sim
            if assignment[i] != best:
                assignment[i] = best
                changed = True
        if not changed:
            break
        for c in range(k):
            members = [points[i] for i in range(len(points)) if assignment[i] == c]
            if not members:
                continue  # keep the previous centroid
            mean = {}
            for p in members:
                for t, w in p.items():
                    mean[t] = mean.get(t, 0.0) + w
            norm = math.sqrt(sum(w * w for w in mean.values()))
            if norm > 0.0:
                centroids[c] = {t: w / norm for t, w in mean.items()}
    return assignment


def kmeans(vectors, k, seed):
    """Deterministic spherical k-means over sparse vectors.

    Vectors are L2-normalized; seeding is k-means++ driven by ``seed``;
    iteration stops at an assignment fixpoint or after 50 rounds. Zero
    vectors cannot be placed on the sphere and go to a dedicated
    residual cluster (index k-1) instead.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(vectors):
        raise ValueError("k=%d exceeds number of vectors %d" % (k, len(vectors)))
    rng = random.Random(seed)
    zero_ids = [i for i, v in enumerate(vectors) if v.norm == 0.0]
    nonzero_ids = [i for i, v in enumerate(vectors) if v.norm > 0.0]
    cluster_of = {}
    if not zero_ids:
        points = [_normalized(vectors[i]) for i in nonzero_ids]
        assignment = _lloyd(points, k, rng)
        for i, sid in enumerate(nonzero_ids):
            cluster_of[sid] = assignment[i]
        return Partition(cluster_of=cluster_of, k=k)
    residual = k - 1
    for sid in zero_ids:
        cluster_of[sid] = residual
    if nonzero_ids:
        k_eff = min(k - 1, len(nonzero_ids))
        if k_eff == 0:
            for sid in nonzero_ids:
                cluster_of[sid] = 0
        else:
            points = [_normalized(vectors[i]) for i in nonzero_ids]
            assignment = _lloyd(points, k_eff, rng)
            for i, sid in enumerate(nonzero_ids):
                cluster_of[sid] = assignment[i]
    return Partition(cluster_of=cluster_of, k=k)


def corpus_content_hash(corpus):
    """Stable hash of the sentence content a vector cache depends on."""
    digest = hashlib.sha256()
    for sentence in corpus.sentences:
        digest.update(("%d\x1f%s\x1f%s\x1e" % (sentence.id, sentence.date.isoformat(),
                                               sentence.text)).encode("utf-8"))
    return digest.hexdigest()


def save_vector_cache(path, corpus, vectorizer, vectors):
    """Persist fitted vectors keyed by the corpus content hash."""
    payload = {
        "corpus_hash": corpus_content_hash(corpus),
        "vocabulary": vectorizer.vocabulary,
        "idf": {str(tid): weight for tid, weight in vectorizer.idf.items()},
        "date_count": vectorizer.date_count,
        "binary_tf": vectorizer.binary_tf,
        "vectors": [[sid, {str(t): w for t, w in v.entries.items()}]
                    for sid, v in enumerate(vectors)],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, ensure_ascii=False)
        handle.write("\n")


def load_vector_cache(path, corpus):
    """Load a cache if it matches the corpus content hash, else None."""
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    if payload.get("corpus_hash") != corpus_content_hash(corpus):
        return None
    vectorizer = Vectorizer(
        vocabulary=dict(payload["vocabulary"]),
        idf={int(tid): weight for tid, weight in payload["idf"].items()},
        date_count=payload["date_count"],
        binary_tf=payload["binary_tf"],
    )
    vectors = [EMPTY_VECTOR] * len(payload["vectors"])
    for sid, entries in payload["vectors"]:
        vectors[sid] = SparseVector({int(t): w for t, w in entries.items()})
    return vectorizer, vectors
