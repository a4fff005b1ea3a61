"""Monotone submodular objective components and their combination.

Every component maps sentence-id sets to non-negative reals with
``value({}) == 0`` and exposes ``marginal(S, s)`` consistent with
``value(S | {s}) - value(S)``. Components are immutable after
construction; value/marginal are pure and safe to evaluate
concurrently.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass

from .vectorspace import Partition, cosine

logger = logging.getLogger(__name__)

PROPERTY_TOL = 1e-9


@dataclass(frozen=True)
class Cutoff:
    """Zero out similarity between sentences more than ``p`` days apart."""

    p: float = 10

    def apply(self, sim, day_gap):
        return sim if day_gap <= self.p else 0.0


@dataclass(frozen=True)
class Reweight:
    """Damp similarity by sqrt(gap + 1): quick penalty, then saturation."""

    def apply(self, sim, day_gap):
        return sim / math.sqrt(day_gap + 1)


def temporal_similarity(sim_base, day_gap, modifier):
    """Apply a temporal modifier to a base similarity value.

    With no modifier the base value passes through; a gap of zero days
    is never penalized (sqrt(0 + 1) == 1).
    """
    if modifier is None:
        return sim_base
    return modifier.apply(sim_base, day_gap)


class SimilarityModel:
    """Pairwise sentence similarity with an optional temporal modifier.

    Row sums (similarity of one sentence to the whole ground set) are
    computed once and cached; coverage is modular given a fixed model.
    """

    def __init__(self, vectors, dates=None, modifier=None):
        if modifier is not None and dates is None:
            raise ValueError("temporal modifiers require sentence dates")
        self.vectors = list(vectors)
        self.dates = list(dates) if dates is not None else None
        self.modifier = modifier
        self._row_sums = None

    @property
    def size(self):
        return len(self.vectors)

    def day_gap(self, i, j):
        return abs((self.dates[i] - self.dates[j]).days)

    def sim(self, i, j):
        base = cosine(self.vectors[i], self.vectors[j])
        if self.modifier is None:
            return base
        return self.modifier.apply(base, self.day_gap(i, j))

    def row_sums(self):
        if self._row_sums is None:
            n = self.size
            rows = [0.0] * n
            for i in range(n):
                total = 0.0
                for j in range(n):
                    total += self.sim(i, j)
                rows[i] = total
            self._row_sums = rows
        return self._row_sums

    def row_sum(self, i):
        return self.row_sums()[i]


class CoverageObjective:
    """Sum of similarities from selected sentences to the whole ground set."""

    def __init__(self, sim_model, name="coverage"):
        self.name = name
        self._rows = list(sim_model.row_sums())

    def value(self, selected):
        return sum(self._rows[s] for s in selected)

    def marginal(self, selected, candidate):
        if candidate in selected:
            return 0.0
        return self._rows[candidate]


class DiversityObjective:
    """Square-root-damped cluster rewards; repeat picks from one cluster pay less."""

    def __init__(self, partition, rewards, name="diversity"):
        self.name = name
        self.partition = partition
        self._rewards = dict(rewards) if isinstance(rewards, dict) else dict(enumerate(rewards))
        for sid, reward in self._rewards.items():
            if reward < 0:
                raise ValueError("negative reward %r for sentence %d" % (reward, sid))

    def _cluster_sums(self, selected):
        sums = {}
        cluster_of = self.partition.cluster_of
        for sid in selected:
            cluster = cluster_of[sid]
            sums[cluster] = sums.get(cluster, 0.0) + self._rewards[sid]
        return sums

    def value(self, selected):
        return sum(math.sqrt(total) for total in self._cluster_sums(selected).values())

    def marginal(self, selected, candidate):
        if candidate in selected:
            return 0.0
        cluster = self.partition.cluster_of[candidate]
        current = 0.0
        for sid in selected:
            if self.partition.cluster_of[sid] == cluster:
                current += self._rewards[sid]
        return math.sqrt(current + self._rewards[candidate]) - math.sqrt(current)


class DateCoverageObjective:
    """Reward covering dates that many corpus sentences refer to.

    Each distinct selected date contributes the number of ground-set
    sentences referring to it; a second sentence on an already covered
    date contributes nothing.
    """

    def __init__(self, date_of, weight_by_date, name="dateref"):
        self.name = name
        self._date_of = dict(date_of) if isinstance(date_of, dict) else dict(enumerate(date_of))
        self._weights = dict(weight_by_date)

    def value(self, selected):
        # sorted so the float sum is bit-identical across interpreter
        # runs (set order of dates depends on randomized string hashing)
        return float(sum(self._weights.get(day, 0.0)
                         for day in sorted({self._date_of[s] for s in selected})))

    def marginal(self, selected, candidate):
        if candidate in selected:
            return 0.0
        day = self._date_of[candidate]
        if any(self._date_of[s] == day for s in selected):
            return 0.0
        return float(self._weights.get(day, 0.0))


class ModularObjective:
    """Plain additive gains; used for the per-sentence oracle objective."""

    def __init__(self, gains, name="modular"):
        self.name = name
        self._gains = dict(gains) if isinstance(gains, dict) else dict(enumerate(gains))

    def value(self, selected):
        return sum(self._gains[s] for s in selected)

    def marginal(self, selected, candidate):
        if candidate in selected:
            return 0.0
        return self._gains[candidate]


def date_partition(dates):
    """Partition sentence ids by identical date."""
    date_of = dict(dates) if isinstance(dates, dict) else dict(enumerate(dates))
    distinct = sorted(set(date_of.values()))
    index = {day: i for i, day in enumerate(distinct)}
    return Partition(cluster_of={sid: index[day] for sid, day in date_of.items()},
                     k=max(1, len(distinct)))


def reference_counts(corpus, count_mode="referenced"):
    """How many sentences refer to each date.

    ``referenced`` counts every date in a sentence's referenced_dates
    (expressions, or the fallback date); ``assigned`` counts only the
    assigned sentence date.
    """
    if count_mode not in ("referenced", "assigned"):
        raise ValueError("unknown count mode %r" % count_mode)
    counts = {}
    for sentence in corpus.sentences:
        days = sentence.referenced_dates if count_mode == "referenced" else {sentence.date}
        for day in days:
            counts[day] = counts.get(day, 0) + 1
    return counts


def coverage_value(selected, sim_model):
    """Coverage of a selection: sum of cached row sums."""
    rows = sim_model.row_sums()
    return sum(rows[s] for s in selected)


def diversity_value(selected, partition, rewards):
    return DiversityObjective(partition, rewards).value(selected)


def temp_diversity_value(selected, date_partition_, rewards):
    """Diversity over the partition induced by sentence dates."""
    return DiversityObjective(date_partition_, rewards, name="tempdiv").value(selected)


def dateref_value(selected, corpus, count_mode="referenced"):
    component = DateCoverageObjective(
        {s.id: s.date for s in corpus.sentences},
        reference_counts(corpus, count_mode))
    return component.value(selected)


def oracle_value(selected, gains):
    return ModularObjective(gains, name="oracle").value(selected)


class ComposedObjective:
    """Unweighted sum of components, each normalized by its ground-set value."""

    def __init__(self, components, normalizers, name="composed"):
        self.name = name
        self.components = tuple(components)
        self.normalizers = tuple(normalizers)

    def value(self, selected):
        return sum(c.value(selected) / z for c, z in zip(self.components, self.normalizers))

    def marginal(self, selected, candidate):
        return sum(c.marginal(selected, candidate) / z
                   for c, z in zip(self.components, self.normalizers))

    def total(self, selected):
        return self.value(selected)


def compose(components, universe):
    """Combine components into a normalized unweighted sum.

    The normalizer of each component is its value on the full ground
    set; components worth zero on the ground set carry no signal and
    are dropped with a warning.
    """
    if not components:
        raise ValueError("no objective components given")
    full = frozenset(universe)
    kept, normalizers = [], []
    for component in components:
        z = component.value(full)
        if z <= 0.0:
            logger.warning("dropping objective component %r: zero value on ground set",
                           getattr(component, "name", component))
            continue
        kept.append(component)
        normalizers.append(z)
    if not kept:
        raise ValueError("all objective components are zero on the ground set")
    return ComposedObjective(kept, normalizers)


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of sampling-based monotonicity/submodularity checks."""

    trials: int
    max_monotonicity_violation: float
    max_submodularity_violation: float
    tol: float = PROPERTY_TOL

    @property
    def passed(self):
        return (self.max_monotonicity_violation <= self.tol
                and self.max_submodularity_violation <= self.tol)


def _value_fn(f):
    if hasattr(f, "value"):
        return f.value
    return f


def check_monotone_submodular(f, universe, trials, seed):
    """Sample random triples A <= B < U, v outside B and look for violations.

    Monotonicity requires f(A) <= f(B); diminishing returns requires
    f(A + v) - f(A) >= f(B + v) - f(B). Reports the worst violation of
    each; passes when both stay within tolerance.
    """
    value = _value_fn(f)
    items = sorted(universe)
    if len(items) < 2:
        raise ValueError("need at least 2 elements to sample triples")
    rng = random.Random(seed)
    worst_mono = 0.0
    worst_submod = 0.0
    for _ in range(trials):
        b_size = rng.randrange(len(items))  # |B| < |U| so some v exists
        b = rng.sample(items, b_size)
        a = rng.sample(b, rng.randint(0, len(b)))
        b_set = frozenset(b)
        a_set = frozenset(a)
        v = rng.choice([x for x in items if x not in b_set])
        f_a = value(a_set)
        f_b = value(b_set)
        f_av = value(a_set | {v})
        f_bv = value(b_set | {v})
        worst_mono = max(worst_mono, f_a - f_b)
        worst_submod = max(worst_submod, (f_bv - f_b) - (f_av - f_a))
    return PropertyReport(trials=trials, max_monotonicity_violation=worst_mono,
                          max_submodularity_violation=worst_submod)
