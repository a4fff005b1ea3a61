"""Executable verification battery over randomized instances.

Checks, on seeded random instances: monotonicity/submodularity of every
shipped objective component, downward closure of every constraint type,
the k-bounded base-size ratio of the timeline constraints, the 1/(k+1)
greedy-versus-optimal floor, and exact equivalence of the lazy and
naive greedy. The CLI's selftest subcommand and the acceptance tests
both run through here.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from datetime import date as Date, timedelta

from .constraints import (AllOf, Cardinality, Knapsack, TlsConstraint,
                          estimate_base_ratio, verify_downward_closure)
from .objectives import (CoverageObjective, Cutoff, DateCoverageObjective,
                         DiversityObjective, ModularObjective, Reweight,
                         SimilarityModel, check_monotone_submodular, compose,
                         date_partition)
from .optimizer import greedy, guarantee_ratio, lazy_greedy
from .presets import RUN_PRESETS, build_problem
from .synthetic import generate_topic
from .vectorspace import Partition, SparseVector

COMPONENT_NAMES = ("coverage", "coverage+cutoff", "coverage+reweight",
                   "diversity", "tempdiv", "dateref", "oracle")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str
    elapsed: float


@dataclass(frozen=True)
class SelfTestReport:
    results: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def lines(self):
        out = []
        for r in self.results:
            out.append("%-38s %s  (%.1fs)  %s"
                       % (r.name, "PASS" if r.passed else "FAIL", r.elapsed, r.details))
        return out


def random_vectors(rng, n, vocab=18):
    vectors = []
    for _ in range(n):
        entries = {}
        for _ in range(rng.randint(1, 6)):
            entries[rng.randrange(vocab)] = rng.uniform(0.2, 2.0)
        vectors.append(SparseVector(entries))
    return vectors


def random_dates(rng, n, n_days=6):
    base = Date(2011, 3, 1)
    dates = [base + timedelta(days=rng.randrange(n_days)) for _ in range(n)]
    if len(set(dates)) < 2:  # avoid degenerate single-date universes
        dates[0] = base
        dates[-1] = base + timedelta(days=max(1, n_days - 1))
    return dates


def random_referenced(rng, dates, n_days=6):
    base = Date(2011, 3, 1)
    referenced = []
    for day in dates:
        days = {day}
        while rng.random() < 0.4:
            days.add(base + timedelta(days=rng.randrange(n_days)))
        referenced.append(frozenset(days))
    return referenced


def build_components(seed, n=12):
    """One instance of every shipped objective component on a random universe."""
    rng = random.Random(seed)
    vectors = random_vectors(rng, n)
    dates = random_dates(rng, n)
    referenced = random_referenced(rng, dates)

    plain = SimilarityModel(vectors, dates)
    cut = SimilarityModel(vectors, dates, Cutoff(rng.randint(1, 4)))
    rew = SimilarityModel(vectors, dates, Reweight())

    n_clusters = rng.randint(1, max(1, n // 3))
    partition = Partition(cluster_of={i: rng.randrange(n_clusters) for i in range(n)},
                          k=n_clusters)
    rewards = list(plain.row_sums())

    weights = {}
    for days in referenced:
        for day in days:
            weights[day] = weights.get(day, 0) + 1

    return {
        "coverage": CoverageObjective(plain),
        "coverage+cutoff": CoverageObjective(cut, name="coverage+cutoff"),
        "coverage+reweight": CoverageObjective(rew, name="coverage+reweight"),
        "diversity": DiversityObjective(partition, rewards),
        "tempdiv": DiversityObjective(date_partition(dates), rewards, name="tempdiv"),
        "dateref": DateCoverageObjective(dict(enumerate(dates)), weights),
        "oracle": ModularObjective([rng.uniform(0.0, 1.0) for _ in range(n)],
                                   name="oracle"),
    }


def check_components(seed=0, instances=20, trials_per_instance=500, n=12, tol=1e-9):
    """Monotonicity/submodularity sampling for every component."""
    results = []
    start = time.monotonic()
    worst = {name: 0.0 for name in COMPONENT_NAMES}
    for i in range(instances):
        components = build_components(seed * 1000 + i, n)
        for name in COMPONENT_NAMES:
            report = check_monotone_submodular(components[name], range(n),
                                               trials_per_instance, seed * 7 + i)
            worst[name] = max(worst[name], report.max_monotonicity_violation,
                              report.max_submodularity_violation)
    elapsed = time.monotonic() - start
    for name in COMPONENT_NAMES:
        results.append(CheckResult(
            name="monotone+submodular: %s" % name,
            passed=worst[name] <= tol,
            details="max violation %.2e over %d trials"
                    % (worst[name], instances * trials_per_instance),
            elapsed=elapsed / len(COMPONENT_NAMES)))
    return results


def random_constraint(rng, n, dates):
    kind = rng.choice(("cardinality", "knapsack", "tls", "all_of"))
    if kind == "cardinality":
        return Cardinality(rng.randint(0, n))
    if kind == "knapsack":
        counts = [rng.randint(1, 9) for _ in range(n)]
        return Knapsack(rng.randint(0, 4 * n), counts)
    if kind == "tls":
        return TlsConstraint(dict(enumerate(dates)), rng.randint(1, 3), rng.randint(1, 3))
    return AllOf([Cardinality(rng.randint(1, n)),
                  TlsConstraint(dict(enumerate(dates)), rng.randint(1, 3),
                                rng.randint(1, 3))])


def check_downward_closure(seed=0, trials=10000, instances=20, n_max=12):
    """Downward closure sampling per constraint type."""
    results = []
    per_type = {"cardinality": [], "knapsack": [], "tls": [], "all_of": []}
    for i in range(instances):
        rng = random.Random(seed * 31 + i)
        n = rng.randint(6, n_max)
        dates = random_dates(rng, n)
        counts = [rng.randint(1, 9) for _ in range(n)]
        per_type["cardinality"].append((Cardinality(rng.randint(0, n)), n))
        per_type["knapsack"].append((Knapsack(rng.randint(0, 4 * n), counts), n))
        per_type["tls"].append(
            (TlsConstraint(dict(enumerate(dates)), rng.randint(1, 3), rng.randint(1, 3)), n))
        per_type["all_of"].append(
            (AllOf([Cardinality(rng.randint(1, n)),
                    TlsConstraint(dict(enumerate(dates)), rng.randint(1, 3),
                                  rng.randint(1, 3))]), n))
    for type_name, systems in per_type.items():
        start = time.monotonic()
        share = max(1, trials // len(systems))
        ok = all(verify_downward_closure(system, range(n), share, seed + 13)
                 for system, n in systems)
        results.append(CheckResult(
            name="downward closure: %s" % type_name, passed=ok,
            details="%d samples over %d instances" % (share * len(systems), len(systems)),
            elapsed=time.monotonic() - start))
    return results


def check_base_ratio(seed=0, instances=50, n_max=10):
    """Exhaustive base enumeration: tls ratio <= k, cardinality ratio == 1."""
    start = time.monotonic()
    tls_ok = True
    tls_detail = ""
    card_ok = True
    for i in range(instances):
        rng = random.Random(seed * 77 + i)
        n = rng.randint(4, n_max)
        dates = random_dates(rng, n, n_days=rng.randint(2, 5))
        k = rng.randint(1, 3)
        ell = rng.randint(1, 3)
        report = estimate_base_ratio(TlsConstraint(dict(enumerate(dates)), ell, k),
                                     range(n))
        if report.max_ratio > k + 1e-9:
            tls_ok = False
            tls_detail = "seed %d: ratio %.3f > k=%d" % (i, report.max_ratio, k)
            break
        card = estimate_base_ratio(Cardinality(rng.randint(0, n)), range(n))
        if abs(card.max_ratio - 1.0) > 1e-12:
            card_ok = False
            break
    elapsed = time.monotonic() - start
    return [
        CheckResult(name="base ratio: tls <= k", passed=tls_ok,
                    details=tls_detail or "%d instances" % instances, elapsed=elapsed / 2),
        CheckResult(name="base ratio: cardinality == 1", passed=card_ok,
                    details="%d instances" % instances, elapsed=elapsed / 2),
    ]


def guarantee_instance(seed, k, n_max=12, ell_max=3):
    """A random monotone submodular objective under timeline constraints."""
    rng = random.Random(seed)
    n = rng.randint(4, n_max)
    vectors = random_vectors(rng, n)
    dates = random_dates(rng, n, n_days=rng.randint(2, 6))
    referenced = random_referenced(rng, dates)
    ell = rng.randint(1, ell_max)
    constraint = TlsConstraint(dict(enumerate(dates)), ell, k)

    sim_model = SimilarityModel(vectors, dates)
    rewards = list(sim_model.row_sums())
    kind = rng.choice(("coverage", "cov+div", "cov+div+dateref", "modular"))
    if kind == "modular":
        objective = ModularObjective([rng.uniform(0.0, 2.0) for _ in range(n)])
    else:
        components = [CoverageObjective(sim_model)]
        if kind != "coverage":
            n_clusters = rng.randint(1, max(1, n // 3))
            partition = Partition(
                cluster_of={i: rng.randrange(n_clusters) for i in range(n)}, k=n_clusters)
            components.append(DiversityObjective(partition, rewards))
        if kind == "cov+div+dateref":
            weights = {}
            for days in referenced:
                for day in days:
                    weights[day] = weights.get(day, 0) + 1
            components.append(DateCoverageObjective(dict(enumerate(dates)), weights))
        objective = compose(components, range(n))
    return seed, range(n), objective, constraint


def check_guarantee(seed=0, per_k=200, ks=(1, 2, 3)):
    """Greedy achieves at least 1/(k+1) of the exhaustive optimum."""
    results = []
    for k in ks:
        start = time.monotonic()
        instances = (guarantee_instance(seed * 100000 + k * 1000 + i, k)
                     for i in range(per_k))
        report = guarantee_ratio(instances, k)
        results.append(CheckResult(
            name="greedy guarantee: k=%d (floor %.3f)" % (k, 1.0 / (k + 1)),
            passed=report.passed,
            details="min ratio %.3f mean %.3f over %d instances%s"
                    % (report.min_ratio, report.mean_ratio, report.n_instances,
                       "" if report.passed else "; failures %s" % (report.failures,)),
            elapsed=time.monotonic() - start))
    return results


def lazy_equivalence_instances(seed, count=100):
    """Random abstract instances plus every preset on synthetic corpora."""
    instances = []
    preset_names = [p for p in RUN_PRESETS if p not in ("chieu", "oracle")]
    n_topics = max(1, (count // 2) // len(preset_names) + 1)
    made = 0
    for t in range(n_topics):
        topic = generate_topic(seed * 500 + t)
        for preset in preset_names:
            if made >= count // 2:
                break
            sub, objective, constraint = build_problem(
                preset, topic.corpus, topic.reference, seed + t)
            instances.append(("%s/topic%d" % (preset, t),
                              range(len(sub.sentences)), objective, constraint))
            made += 1
    i = 0
    while len(instances) < count:
        label, universe, objective, constraint = guarantee_instance(
            seed * 900 + i, random.Random(seed * 900 + i).randint(1, 3))
        instances.append(("random%d" % i, universe, objective, constraint))
        i += 1
    return instances


def check_lazy_equivalence(seed=0, count=100):
    start = time.monotonic()
    mismatches = []
    total_naive = 0
    total_lazy = 0
    for label, universe, objective, constraint in lazy_equivalence_instances(seed, count):
        naive = greedy(universe, objective, constraint)
        lazy = lazy_greedy(universe, objective, constraint)
        total_naive += naive.n_evaluations
        total_lazy += lazy.n_evaluations
        if naive.selected != lazy.selected:
            mismatches.append(label)
    return [CheckResult(
        name="lazy == naive greedy", passed=not mismatches,
        details="%d instances; evaluations naive=%d lazy=%d%s"
                % (count, total_naive, total_lazy,
                   "" if not mismatches else "; mismatches %s" % mismatches[:5]),
        elapsed=time.monotonic() - start)]


def run_selftest(seed=0, quick=False):
    """The full battery; ``quick`` shrinks sample counts for smoke runs."""
    scale = 10 if quick else 1
    results = []
    results.extend(check_components(seed, instances=max(2, 20 // scale),
                                    trials_per_instance=max(50, 500 // scale)))
    results.extend(check_downward_closure(seed, trials=max(200, 10000 // scale)))
    results.extend(check_base_ratio(seed, instances=max(5, 50 // scale)))
    results.extend(check_guarantee(seed, per_k=max(20, 200 // scale)))
    results.extend(check_lazy_equivalence(seed, count=max(10, 100 // scale)))
    return SelfTestReport(results=tuple(results))
