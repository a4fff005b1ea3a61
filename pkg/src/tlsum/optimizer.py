"""Greedy maximization of a set function under an independence system.

The naive greedy scans every remaining candidate per round; the lazy
variant keeps stale marginal gains in a priority queue and re-evaluates
only when a stale entry surfaces, which is valid for submodular
objectives because marginal gains only shrink as the selection grows.
Both produce exactly the same selection in the same order; only the
number of marginal evaluations differs. Ties always go to the smaller
sentence id, which makes every run reproducible.
"""

from __future__ import annotations

import heapq
import statistics
from dataclasses import dataclass, field

EXHAUSTIVE_MAX = 18


@dataclass
class SelectionState:
    """A selection with its trace: ids in pick order, accepted gains."""

    selected: list
    objective_value: float
    gains: list
    n_evaluations: int
    trace: list = field(default_factory=list)


def greedy(universe, objective, constraint):
    """Pick the argmax-marginal candidate each round, keep it if feasible.

    Every round removes its argmax from the candidate pool whether or
    not it was feasible. Stops early once no remaining candidate can be
    added (feasibility is permanent under downward-closed constraints,
    so this cannot change the output).
    """
    remaining = sorted(universe)
    tracker = constraint.tracker()
    selected = []
    selected_set = set()
    value = 0.0
    gains = []
    trace = []
    evaluations = 0
    step = 0
    while remaining:
        if not any(tracker.can_add(t) for t in remaining):
            break
        best = None
        best_gain = None
        for t in remaining:
            gain = objective.marginal(selected_set, t)
            evaluations += 1
            if best is None or gain > best_gain:
                best, best_gain = t, gain
        feasible = tracker.can_add(best)
        trace.append((step, best, best_gain, feasible))
        if feasible:
            tracker.add(best)
            selected.append(best)
            selected_set.add(best)
            value += best_gain
            gains.append(best_gain)
        remaining.remove(best)
        step += 1
    return SelectionState(selected=selected, objective_value=value, gains=gains,
                          n_evaluations=evaluations, trace=trace)


def lazy_greedy(universe, objective, constraint):
    """Greedy with cached upper bounds; identical output, fewer evaluations.

    Heap entries are (-gain, id, version) where version is the selection
    size the gain was computed at. A stale entry popped from the top is
    re-evaluated and either processed (still the maximum) or pushed
    back. The id in the key reproduces the smaller-id tie-break of the
    naive scan.
    """
    tracker = constraint.tracker()
    selected = []
    selected_set = set()
    value = 0.0
    gains = []
    trace = []
    evaluations = 0
    step = 0
    heap = []
    for t in sorted(universe):
        heap.append((-objective.marginal(selected_set, t), t, 0))
        evaluations += 1
    heapq.heapify(heap)
    while heap:
        neg_gain, candidate, version = heapq.heappop(heap)
        if version != len(selected):
            gain = objective.marginal(selected_set, candidate)
            evaluations += 1
            entry = (-gain, candidate, len(selected))
            if heap and entry > heap[0]:
                heapq.heappush(heap, entry)
                continue
            neg_gain = -gain
        feasible = tracker.can_add(candidate)
        trace.append((step, candidate, -neg_gain, feasible))
        if feasible:
            tracker.add(candidate)
            selected.append(candidate)
            selected_set.add(candidate)
            value += -neg_gain
            gains.append(-neg_gain)
        step += 1
    return SelectionState(selected=selected, objective_value=value, gains=gains,
                          n_evaluations=evaluations, trace=trace)


def exhaustive_optimum(universe, objective, constraint):
    """Enumerate every feasible subset; only viable on tiny universes.

    Feasible sets are generated by depth-first extension in increasing
    id order, which is complete because prefixes of feasible sets are
    feasible (downward closure). Ties keep the first maximizer found,
    i.e. the lexicographically smallest id set.
    """
    items = sorted(universe)
    if len(items) > EXHAUSTIVE_MAX:
        raise ValueError("universe of %d too large for exhaustive search" % len(items))
    best_value = objective.value(frozenset())
    best = []
    evaluations = 1
    current = []
    current_set = set()

    def extend(start):
        nonlocal best_value, best, evaluations
        for idx in range(start, len(items)):
            item = items[idx]
            if not constraint.can_add(current_set, item):
                continue
            current.append(item)
            current_set.add(item)
            v = objective.value(current_set)
            evaluations += 1
            if v > best_value:
                best_value = v
                best = list(current)
            extend(idx + 1)
            current.pop()
            current_set.remove(item)

    extend(0)
    return SelectionState(selected=best, objective_value=best_value, gains=[],
                          n_evaluations=evaluations)


@dataclass(frozen=True)
class GuaranteeReport:
    """Greedy-to-optimal value ratios against the 1/(k+1) floor."""

    k: int
    floor: float
    n_instances: int
    min_ratio: float
    mean_ratio: float
    failures: tuple

    @property
    def passed(self):
        return not self.failures


def guarantee_ratio(instances, k, tol=1e-9):
    """Compare greedy to the exhaustive optimum on a batch of instances.

    ``instances`` yields (label, universe, objective, constraint)
    tuples. Any instance whose ratio falls below 1/(k+1) - tol lands in
    the failure list by label.
    """
    floor = 1.0 / (k + 1) - tol
    ratios = []
    failures = []
    for label, universe, objective, constraint in instances:
        greedy_state = greedy(universe, objective, constraint)
        optimal_state = exhaustive_optimum(universe, objective, constraint)
        if optimal_state.objective_value <= 1e-12:
            ratio = 1.0
        else:
            ratio = greedy_state.objective_value / optimal_state.objective_value
        ratios.append(ratio)
        if ratio < floor:
            failures.append(label)
    if not ratios:
        raise ValueError("empty instance batch")
    return GuaranteeReport(k=k, floor=floor, n_instances=len(ratios),
                           min_ratio=min(ratios), mean_ratio=statistics.fmean(ratios),
                           failures=tuple(failures))
