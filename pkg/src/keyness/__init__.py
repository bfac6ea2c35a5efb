"""Trainable keyword extraction over dependency-parsed documents.

Pipeline: generate ngrams, identify well-formed candidate terms with a small
trained network, cluster candidates into term groups, score 19-slot keyness
patterns, and rank groups with a second trained network.  Both networks are
trained from positively-labelled keyword data with bootstrap PU sampling.
"""

__version__ = "0.1.0"

from .corpus import (CorpusStats, Dataset, Document, NGramProfile, Token,
                     build_corpus_stats, load_dataset, load_parsed_document,
                     ngram_frequency_profile)
from .candidates import (CandidateTerm, Quadruple, TermGroup, cluster_terms,
                         generate_ngrams, quadruples, select_candidates,
                         wellformedness)
from .embeddings import LexicalEmbedder, TableEmbedder
from .features import (FEATURE_ORDER, KeynessPattern, assemble_pattern,
                       personalized_ranks, topic_scores)
from .pulearn import (RiskBoundInput, excess_risk_bound, sample_unlabelled,
                      train_identifier, train_ranker)
from .evalx import (RankedGroups, evaluation_report, extract,
                    identification_recall, mrr, pattern_coverage_curve,
                    sweep_theta, topk_scores)
from .neural import TrainingConfig, load_model, save_model
