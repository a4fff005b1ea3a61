"""Named system presets: objective recipes and their default constraints.

Objective presets (all normalized unweighted sums over the run's
ground set):

  asmds                  coverage + kmeans-cluster diversity
  asmds+cutoff           same, similarity zeroed beyond 10 days apart
  asmds+reweight         same, similarity damped by sqrt(gap + 1)
  asmds+dateref          asmds + date-reference coverage
  asmds+tempdiv          coverage + per-date diversity
  asmds+tempdiv+dateref  both temporal criteria

Run presets pair an objective with constraints derived from the
reference timeline: the asmds family gets a total sentence budget m,
the tls-constraints family gets at most ell dates with at most k
sentences each. ``chieu`` and ``oracle`` are the baseline systems.
"""

from __future__ import annotations

import logging
import math

from . import baselines
from .constraints import AllOf, Cardinality, Knapsack, TlsConstraint
from .corpus import Timeline, build_timeline, derive_timeline_spec, restrict_to_range
from .objectives import (Cutoff, Reweight, SimilarityModel, CoverageObjective,
                         DiversityObjective, DateCoverageObjective, ModularObjective,
                         compose, date_partition, reference_counts)
from .optimizer import lazy_greedy
from .vectorspace import fit_vectorizer, tokenize, vectorize_corpus, kmeans

logger = logging.getLogger(__name__)

DIVERSITY_CLUSTER_FRACTION = 0.2
CUTOFF_DAYS = 10

OBJECTIVE_PRESETS = (
    "asmds",
    "asmds+cutoff",
    "asmds+reweight",
    "asmds+dateref",
    "asmds+tempdiv",
    "asmds+tempdiv+dateref",
)

RUN_PRESETS = (
    "asmds",
    "asmds+cutoff",
    "asmds+reweight",
    "asmds+dateref",
    "asmds+tempdiv",
    "asmds+tempdiv+dateref",
    "tls-constraints",
    "tls-constraints+cutoff",
    "tls-constraints+reweight",
    "tls-constraints+dateref",
    "tls-constraints+dateref+reweight",
    "chieu",
    "oracle",
)


def _objective_flags(preset):
    parts = preset.split("+")
    family = parts[0]
    flags = set(parts[1:])
    if family not in ("asmds", "tls-constraints"):
        raise ValueError("unknown preset %r" % preset)
    unknown = flags - {"cutoff", "reweight", "dateref", "tempdiv"}
    if unknown:
        raise ValueError("unknown preset flags %r in %r" % (sorted(unknown), preset))
    if "cutoff" in flags and "reweight" in flags:
        raise ValueError("cutoff and reweight are mutually exclusive")
    return family, flags


def build_objective(preset, corpus, seed, count_mode="referenced"):
    """Build the composed objective of a preset over a (restricted) corpus.

    The temporal similarity modifier, when present, also feeds the
    diversity rewards, so temporalizing coverage temporalizes diversity
    implicitly.
    """
    _, flags = _objective_flags(preset)
    if not corpus.sentences:
        raise ValueError("cannot build an objective over an empty corpus")
    vectorizer = fit_vectorizer(corpus)
    vectors = vectorize_corpus(vectorizer, corpus)
    dates = corpus.sentence_dates()
    if "cutoff" in flags:
        modifier = Cutoff(CUTOFF_DAYS)
    elif "reweight" in flags:
        modifier = Reweight()
    else:
        modifier = None
    sim_model = SimilarityModel(vectors, dates, modifier)
    rewards = list(sim_model.row_sums())
    components = [CoverageObjective(sim_model)]
    if "tempdiv" in flags:
        components.append(DiversityObjective(date_partition(dates), rewards, name="tempdiv"))
    else:
        n_clusters = max(1, math.ceil(DIVERSITY_CLUSTER_FRACTION * len(vectors)))
        partition = kmeans(vectors, n_clusters, seed)
        components.append(DiversityObjective(partition, rewards, name="diversity"))
    if "dateref" in flags:
        components.append(DateCoverageObjective(
            {s.id: s.date for s in corpus.sentences},
            reference_counts(corpus, count_mode)))
    universe = range(len(corpus.sentences))
    try:
        return compose(components, universe)
    except ValueError:
        # Degenerate corpus (e.g. single date: every vector empty). Fall
        # back to a zero objective so greedy still fills by id order.
        logger.warning("all components zero on ground set; using zero objective")
        return ModularObjective([0.0] * len(corpus.sentences), name="zero")


def default_constraint(preset, corpus, spec):
    """Constraints implied by a run preset and the reference parameters."""
    family, _ = _objective_flags(preset)
    if family == "asmds":
        return Cardinality(spec.m)
    return TlsConstraint({s.id: s.date for s in corpus.sentences}, spec.ell, spec.k)


def constraint_from_config(config, corpus, spec=None):
    """Build a constraint from its JSON spec.

    Shapes: {"type": "cardinality", "m": N}, {"type": "knapsack",
    "words": N}, {"type": "tls", "ell": N, "k": N}, {"type": "all_of",
    "of": [...]}. Missing numeric fields fall back to the reference
    parameters when a spec is given.
    """
    kind = config.get("type")
    date_of = {s.id: s.date for s in corpus.sentences}
    if kind == "cardinality":
        m = config.get("m", spec.m if spec else None)
        return Cardinality(m)
    if kind == "knapsack":
        counts = [len(tokenize(s.text)) for s in corpus.sentences]
        return Knapsack(config["words"], counts)
    if kind == "tls":
        ell = config.get("ell", spec.ell if spec else None)
        k = config.get("k", spec.k if spec else None)
        return TlsConstraint(date_of, ell, k)
    if kind == "all_of":
        return AllOf([constraint_from_config(sub, corpus, spec) for sub in config["of"]])
    raise ValueError("unknown constraint type %r" % kind)


def build_problem(preset, corpus, reference, seed, constraint_config=None):
    """Restrict the corpus to the reference range and assemble (U, f, I)."""
    spec = derive_timeline_spec(reference)
    sub = restrict_to_range(corpus, spec.start, spec.end)
    objective = build_objective(preset, sub, seed)
    if constraint_config is not None:
        constraint = constraint_from_config(constraint_config, sub, spec)
    else:
        constraint = default_constraint(preset, sub, spec)
    return sub, objective, constraint


def run_preset_state(preset, corpus, reference, seed=0, constraint_config=None):
    """Timeline plus selection state (None for the ranking-based baseline)."""
    if preset == "chieu":
        vectorizer = fit_vectorizer(corpus)
        vectors = vectorize_corpus(vectorizer, corpus)
        sim_model = SimilarityModel(vectors, corpus.sentence_dates())
        return baselines.chieu_timeline(corpus, sim_model), None
    spec = derive_timeline_spec(reference)
    sub = restrict_to_range(corpus, spec.start, spec.end)
    if not sub.sentences:
        return Timeline(entries=()), None
    if preset == "oracle":
        constraint = TlsConstraint({s.id: s.date for s in sub.sentences}, spec.ell, spec.k)
        state = baselines.oracle_selection(sub, reference, constraint)
        return build_timeline(sub, state.selected), state
    objective = build_objective(preset, sub, seed)
    if constraint_config is not None:
        constraint = constraint_from_config(constraint_config, sub, spec)
    else:
        constraint = default_constraint(preset, sub, spec)
    state = lazy_greedy(range(len(sub.sentences)), objective, constraint)
    return build_timeline(sub, state.selected), state


def run_preset(preset, corpus, reference, seed=0, constraint_config=None):
    """Produce a predicted timeline for one reference with one preset."""
    return run_preset_state(preset, corpus, reference, seed, constraint_config)[0]
