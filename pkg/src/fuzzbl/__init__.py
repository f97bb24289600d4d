"""Group fairness evaluation in Basic fuzzy Logic (BL).

Fairness and bias definitions are formulas over loosely defined predicates
(group membership, discrimination, ...) whose truth values come from data or
stakeholder beliefs; a choice of Godel, Product or Lukasiewicz logic fixes
how connectives combine them.
"""

__version__ = "0.1.0"

from fuzzbl.logic import Logic, TruthValueError, residuum, strong_neg, tnorm, truth, weak_neg
from fuzzbl.expr import Valuation, evaluate, free_predicates, parse, to_source
from fuzzbl.fairness import (
    FairnessReport,
    bias_standard,
    f_gen,
    fairness_of_bias,
    fairness_report,
    imbalance_standard,
    in_generation_space,
    infimum_d,
    lukasiewicz_fair_threshold,
    worst_case_bias,
)
from fuzzbl.measures import cv, discrimination_truth, prule
from fuzzbl.aggregation import fair_conjunction, rawl, unbias

__all__ = [
    "Logic",
    "TruthValueError",
    "truth",
    "tnorm",
    "residuum",
    "strong_neg",
    "weak_neg",
    "parse",
    "evaluate",
    "free_predicates",
    "to_source",
    "Valuation",
    "FairnessReport",
    "fairness_report",
    "imbalance_standard",
    "bias_standard",
    "worst_case_bias",
    "fairness_of_bias",
    "f_gen",
    "infimum_d",
    "in_generation_space",
    "lukasiewicz_fair_threshold",
    "prule",
    "cv",
    "discrimination_truth",
    "rawl",
    "unbias",
    "fair_conjunction",
]
