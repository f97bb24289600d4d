"""Reductions of per-group (or per-individual) biases to one truth value.

The three reductions satisfy ``fair_conjunction <= unbias <= rawl`` in every
logic. Folds run left to right over the input.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

from fuzzbl.logic import Logic, strong_neg, tnorm, truth, weak_neg


def _check(biases: Sequence[float]) -> list[float]:
    biases = [truth(b, f"bias[{k}]") for k, b in enumerate(biases)]
    if not biases:
        raise ValueError("need at least one bias")
    return biases


def rawl(biases: Sequence[float]) -> float:
    """Difference principle: ``min_i (1 - bias_i)``."""
    return min(weak_neg(b) for b in _check(biases))


def unbias(logic: Logic, biases: Sequence[float]) -> float:
    """Strong conjunction of the weak negations ``1 - bias_i``."""
    return reduce(lambda a, b: tnorm(logic, a, b), (weak_neg(b) for b in _check(biases)))


def fair_conjunction(logic: Logic, biases: Sequence[float]) -> float:
    """Strong conjunction of the per-group fairness values ``¬bias_i``."""
    return reduce(lambda a, b: tnorm(logic, a, b), (strong_neg(logic, b) for b in _check(biases)))
