"""Scoring and evaluation of small-group accretion in collaboration networks."""

from .birw import AlignmentProblem, BirwParams, birw_seq, build_alignment_problem, score_group_brws
from .candidates import (CandidateGroup, EvaluationReport, RankedList, enumerate_ia, enumerate_sa,
                         global_metrics, per_group_metrics, rank_global)
from .corpus import (AccretionStats, CollaborationCorpus, SplitSpec, SPLIT_PRESETS, classify_test_groups,
                     compute_accretion_stats, ingest, make_split, write_corpus)
from .errors import InputError
from .gks import KatzParams, compute_katz, score_group_gks
from .glps import GlpsParams, GroupPropagator, build_propagation_operator, propagate, score_group_glps
from .network import NetworkSnapshot, build_snapshot, group_key, restrict_adjacency, spmm_multiply
from .scores import GroupActorScores

__version__ = "0.1.0"
