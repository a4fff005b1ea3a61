"""Extractive timeline summarization via constrained greedy selection.

Sentences from a dated news corpus are scored by normalized sums of
monotone submodular criteria (coverage, diversity, date importance) and
selected greedily under downward-closed timeline constraints, which
carries a provable approximation guarantee. Includes baseline and
oracle systems, temporal ROUGE evaluation, and a randomized
verification battery for the underlying theory.
"""

from .corpus import (Corpus, Document, Sentence, Timeline, TimelineSpec,
                     build_timeline, derive_timeline_spec, filter_by_keywords,
                     load_corpus, load_timeline, save_corpus, save_timeline,
                     tag_sentence_dates)
from .vectorspace import (Partition, SparseVector, Vectorizer, corpus_content_hash,
                          cosine, fit_vectorizer, kmeans, load_vector_cache,
                          save_vector_cache, tokenize, vectorize, vectorize_corpus)
from .objectives import (ComposedObjective, CoverageObjective, Cutoff,
                         DateCoverageObjective, DiversityObjective,
                         ModularObjective, Reweight, SimilarityModel,
                         check_monotone_submodular, compose, coverage_value,
                         date_partition, dateref_value, diversity_value,
                         oracle_value, temp_diversity_value, temporal_similarity)
from .constraints import (AllOf, Cardinality, ConstraintSystem, Knapsack,
                          TlsConstraint, all_of, cardinality, estimate_base_ratio,
                          knapsack, tls_constraint, verify_downward_closure)
from .optimizer import (SelectionState, exhaustive_optimum, greedy,
                        guarantee_ratio, lazy_greedy)
from .baselines import (RankedSentence, chieu_extent, chieu_rank, chieu_timeline,
                        oracle_gains, oracle_selection, oracle_timeline)
from .evaluation import (EvalReport, RougeScore, agreement_rouge, align_m1_rouge,
                         approx_randomization, compression_rate, concat_rouge,
                         date_f1, evaluate_pair, max_daily_length, rouge_n, spread)
from .presets import (RUN_PRESETS, build_objective, build_problem, run_preset,
                      run_preset_state)

__version__ = "0.1.0"
