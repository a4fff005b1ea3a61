"""Independence systems deciding which sentence sets are feasible.

Every system is downward closed: the empty set is feasible and subsets
of feasible sets stay feasible. ``contains`` is the set-level
definition; ``tracker()`` hands the optimizer an incremental cursor
with O(1) feasibility checks whose agreement with ``contains`` is
enforced by tests.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass


class ConstraintSystem:
    def contains(self, selected):
        raise NotImplementedError

    def can_add(self, selected, candidate):
        return self.contains(frozenset(selected) | {candidate})

    def tracker(self):
        return _SetTracker(self)


class _SetTracker:
    """Fallback incremental cursor built on the set-level definition."""

    def __init__(self, system):
        self._system = system
        self._selected = set()

    def can_add(self, candidate):
        return self._system.can_add(self._selected, candidate)

    def add(self, candidate):
        self._selected.add(candidate)


class Cardinality(ConstraintSystem):
    """At most m sentences in total."""

    def __init__(self, m):
        if m < 0:
            raise ValueError("m must be >= 0")
        self.m = m

    def contains(self, selected):
        return len(set(selected)) <= self.m

    def tracker(self):
        return _CountTracker(self.m)


class _CountTracker:
    def __init__(self, m):
        self._m = m
        self._count = 0

    def can_add(self, candidate):
        return self._count + 1 <= self._m

    def add(self, candidate):
        self._count += 1


class Knapsack(ConstraintSystem):
    """Total word budget over the selected sentences."""

    def __init__(self, word_budget, word_counts):
        if word_budget < 0:
            raise ValueError("budget must be >= 0")
        self.word_budget = word_budget
        self.word_counts = (dict(word_counts) if isinstance(word_counts, dict)
                            else dict(enumerate(word_counts)))

    def contains(self, selected):
        return sum(self.word_counts[s] for s in set(selected)) <= self.word_budget

    def tracker(self):
        return _BudgetTracker(self.word_budget, self.word_counts)


class _BudgetTracker:
    def __init__(self, budget, costs):
        self._budget = budget
        self._costs = costs
        self._used = 0

    def can_add(self, candidate):
        return self._used + self._costs[candidate] <= self._budget

    def add(self, candidate):
        self._used += self._costs[candidate]


class TlsConstraint(ConstraintSystem):
    """Timeline shape limits: at most ell distinct dates, at most k sentences per date."""

    def __init__(self, date_of, ell, k):
        if ell < 1 or k < 1:
            raise ValueError("ell and k must be >= 1")
        self.date_of = dict(date_of) if isinstance(date_of, dict) else dict(enumerate(date_of))
        self.ell = ell
        self.k = k

    def contains(self, selected):
        counts = Counter(self.date_of[s] for s in set(selected))
        if len(counts) > self.ell:
            return False
        return all(count <= self.k for count in counts.values())

    def tracker(self):
        return _DateCountTracker(self.date_of, self.ell, self.k)


class _DateCountTracker:
    def __init__(self, date_of, ell, k):
        self._date_of = date_of
        self._ell = ell
        self._k = k
        self._counts = {}

    def can_add(self, candidate):
        day = self._date_of[candidate]
        count = self._counts.get(day, 0)
        if count == 0 and len(self._counts) + 1 > self._ell:
            return False
        return count + 1 <= self._k

    def add(self, candidate):
        day = self._date_of[candidate]
        self._counts[day] = self._counts.get(day, 0) + 1


class AllOf(ConstraintSystem):
    """Conjunction; the intersection of independence systems is one too."""

    def __init__(self, systems):
        systems = tuple(systems)
        if not systems:
            raise ValueError("empty conjunction")
        self.systems = systems

    def contains(self, selected):
        selected = frozenset(selected)
        return all(system.contains(selected) for system in self.systems)

    def tracker(self):
        return _AllOfTracker([system.tracker() for system in self.systems])


class _AllOfTracker:
    def __init__(self, trackers):
        self._trackers = trackers

    def can_add(self, candidate):
        return all(t.can_add(candidate) for t in self._trackers)

    def add(self, candidate):
        for t in self._trackers:
            t.add(candidate)


def cardinality(m):
    return Cardinality(m)


def knapsack(word_budget, word_counts):
    return Knapsack(word_budget, word_counts)


def tls_constraint(date_of, ell, k):
    return TlsConstraint(date_of, ell, k)


def all_of(systems):
    return AllOf(systems)


def random_feasible_set(system, universe, rng, stop_prob=0.25):
    """Grow a feasible set along a random permutation, stopping early at random."""
    selected = set()
    for item in rng.sample(list(universe), len(universe)):
        if rng.random() < stop_prob:
            continue
        if system.can_add(selected, item):
            selected.add(item)
    return selected


def verify_downward_closure(system, universe, trials, seed):
    """Sample feasible sets and random subsets of them; True iff no violation.

    Also checks that the empty set is feasible, the other half of the
    independence-system definition.
    """
    if not system.contains(frozenset()):
        return False
    rng = random.Random(seed)
    items = list(universe)
    for _ in range(trials):
        selected = random_feasible_set(system, items, rng)
        if not system.contains(selected):
            return False
        subset = frozenset(rng.sample(sorted(selected), rng.randint(0, len(selected))))
        if not system.contains(subset):
            return False
    return True


@dataclass(frozen=True)
class BaseRatioReport:
    """Worst largest-to-smallest base size ratio found over subsets."""

    max_ratio: float
    worst_subset: frozenset
    p_bound: int
    subsets_checked: int


def estimate_base_ratio(system, universe, seed=0, sample=None, exhaustive_limit=4096):
    """Enumerate maximal feasible subsets (bases) of subsets of the universe.

    Checks every subset X when 2^|U| <= exhaustive_limit, otherwise a
    random sample of ``sample`` subsets (required above the limit). For
    each X the ratio of the largest to the smallest base size is
    computed; the report carries the worst case.
    """
    items = sorted(universe)
    n = len(items)
    if n > 16:
        raise ValueError("universe of %d too large for base enumeration" % n)
    feasible = [False] * (1 << n)
    for mask in range(1 << n):
        feasible[mask] = system.contains(
            frozenset(items[i] for i in range(n) if mask >> i & 1))
    if (1 << n) > exhaustive_limit:
        if sample is None:
            raise ValueError("2^%d subsets; pass sample= to enable sampling" % n)
        rng = random.Random(seed)
        subsets = [rng.randrange(1 << n) for _ in range(sample)]
        if (1 << n) - 1 not in subsets:
            subsets.append((1 << n) - 1)  # always include the full universe
    else:
        subsets = range(1 << n)

    max_ratio = 1.0
    worst = 0
    checked = 0
    for x_mask in subsets:
        checked += 1
        smallest = None
        largest = None
        sub = x_mask
        while True:
            if feasible[sub]:
                rest = x_mask & ~sub
                maximal = True
                bit = 1
                r = rest
                while r:
                    if r & 1 and feasible[sub | bit]:
                        maximal = False
                        break
                    r >>= 1
                    bit <<= 1
                if maximal:
                    size = sub.bit_count()
                    if smallest is None or size < smallest:
                        smallest = size
                    if largest is None or size > largest:
                        largest = size
            if sub == 0:
                break
            sub = (sub - 1) & x_mask
        if smallest is None:
            continue  # cannot happen for an independence system (empty set feasible)
        ratio = 1.0 if largest == 0 else (math.inf if smallest == 0 else largest / smallest)
        if ratio > max_ratio:
            max_ratio = ratio
            worst = x_mask
    worst_subset = frozenset(items[i] for i in range(n) if worst >> i & 1)
    return BaseRatioReport(max_ratio=max_ratio, worst_subset=worst_subset,
                           p_bound=math.ceil(max_ratio - 1e-12),
                           subsets_checked=checked)
