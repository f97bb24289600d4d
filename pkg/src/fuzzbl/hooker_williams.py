"""Hooker-Williams equity/utility criterion and its Lukasiewicz readings.

Utilities ``u_i`` and the judgement parameter ``delta`` are truth values.
The logical forms are built as expressions and evaluated by the DSL engine
under Lukasiewicz logic; nothing here hand-expands them.

With ``M_i = min(max(delta + u_min, u_i), 1)`` the evaluations reduce to::

    HW     = max(min(sum M_i, 1) - delta, 0)
    FairHW = max(max(sum M_i - (n - 1), 0) - delta, 0)

so HW agrees with the numeric score only while ``sum M_i <= 1``.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from fuzzbl.expr import Implies, Pred, StrongConj, StrongNeg, WeakConj, conj_all, evaluate
from fuzzbl.logic import Logic, truth


class ScalingWarning(UserWarning):
    """Inputs or results leave the unit interval the criterion assumes."""


@dataclass(frozen=True)
class UtilityProfile:
    utilities: tuple[float, ...]
    delta: float

    def __init__(self, utilities: Sequence[float], delta: float, *, warn: bool = True):
        us = tuple(float(truth(u, f"u[{k}]")) for k, u in enumerate(utilities))
        if not us:
            raise ValueError("need at least one utility")
        d = float(truth(delta, "delta"))
        object.__setattr__(self, "utilities", us)
        object.__setattr__(self, "delta", d)
        if warn and d + min(us) > 1.0 + 1e-12:
            warnings.warn(f"delta + u_min = {d + min(us):g} exceeds 1", ScalingWarning, stacklevel=2)

    @property
    def u_min(self) -> float:
        return min(self.utilities)

    @property
    def n(self) -> int:
        return len(self.utilities)


def hw_score(profile: UtilityProfile) -> float:
    """``-delta + sum_i max(delta + u_min, u_i)``; warns when outside [0, 1]."""
    d, umin = profile.delta, profile.u_min
    score = -d + sum(max(d + umin, u) for u in profile.utilities)
    if not 0.0 <= score <= 1.0:
        warnings.warn(f"hw score {score:g} lies outside [0, 1]", ScalingWarning, stacklevel=2)
    return score


def hw_score_expanded(profile: UtilityProfile) -> float:
    """``(n - 1) delta + n u_min + sum_i max(0, u_i - u_min - delta)``."""
    d, umin, n = profile.delta, profile.u_min, profile.n
    return (n - 1) * d + n * umin + sum(max(0.0, u - umin - d) for u in profile.utilities)


# -------------------------------------------------------------- formulas

DELTA = Pred("Delta")
U_MIN = Pred("Umin")


def _u(i: int) -> Pred:
    return Pred(f"U{i}")


def bias_hw(i: int):
    """``(¬Δ & ¬U_min) ∧ ¬U_i``."""
    return WeakConj(StrongConj(StrongNeg(DELTA), StrongNeg(U_MIN)), StrongNeg(_u(i)))


def bias_hw_standard(i: int):
    """The same bias in standard form ``E & S & (E -> S)`` with ``E = ¬Δ & ¬U_min``, ``S = ¬U_i``."""
    e = StrongConj(StrongNeg(DELTA), StrongNeg(U_MIN))
    s = StrongNeg(_u(i))
    return StrongConj(StrongConj(e, s), Implies(e, s))


def hw_formula(n: int):
    """``¬Δ & ¬(&_i BiasHW_i)``."""
    return StrongConj(StrongNeg(DELTA), StrongNeg(conj_all([bias_hw(i) for i in range(n)])))


def fair_hw_formula(n: int):
    """``¬((&_i ¬BiasHW_i) -> Δ)``."""
    return StrongNeg(Implies(conj_all([StrongNeg(bias_hw(i)) for i in range(n)]), DELTA))


def valuation(utilities, delta) -> dict:
    """Scalar valuation for the formulas; accepts arrays for grid evaluation."""
    us = [np.asarray(u, dtype=float) for u in utilities]
    umin = us[0]
    for u in us[1:]:
        umin = np.minimum(umin, u)
    scalars = {f"U{i}": u for i, u in enumerate(us)}
    scalars["Umin"] = umin
    scalars["Delta"] = np.asarray(delta, dtype=float)
    return {k: (float(v) if np.ndim(v) == 0 else v) for k, v in scalars.items()}


def hw_truth(profile: UtilityProfile) -> float:
    return evaluate(hw_formula(profile.n), Logic.LUKASIEWICZ, valuation(profile.utilities, profile.delta))


def fair_hw_truth(profile: UtilityProfile) -> float:
    return evaluate(fair_hw_formula(profile.n), Logic.LUKASIEWICZ, valuation(profile.utilities, profile.delta))


def standard_form_feasible(profile: UtilityProfile) -> bool:
    """Whether ``u_min >= (1 - delta) / 2``."""
    return profile.u_min >= (1.0 - profile.delta) / 2.0


# --------------------------------------------------------------- contour


def hw_contour(grid_steps: int, delta: float) -> list[tuple[float, float, float, float]]:
    """Rows ``(u1, u2, HW, FairHW)`` over a uniform ``grid_steps`` x ``grid_steps`` grid.

    Rows are ordered with ``u1`` outermost.
    """
    if grid_steps < 2:
        raise ValueError("grid_steps must be at least 2")
    axis = np.linspace(0.0, 1.0, grid_steps)
    u1, u2 = np.meshgrid(axis, axis, indexing="ij")
    u1, u2 = u1.ravel(), u2.ravel()
    val = valuation([u1, u2], np.full_like(u1, truth(delta, "delta")))
    hw = evaluate(hw_formula(2), Logic.LUKASIEWICZ, val)
    fair = evaluate(fair_hw_formula(2), Logic.LUKASIEWICZ, val)
    return list(zip(u1.tolist(), u2.tolist(), np.asarray(hw).tolist(), np.asarray(fair).tolist()))


def write_contour_csv(rows, path, fmt=lambda v: format(v, ".12g")) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("u1", "u2", "hw", "fairhw"))
        for row in rows:
            w.writerow([fmt(v) for v in row])


def scale_utilities(utilities: Sequence[float], delta: float, mode: str = "auto"):
    """Map raw utilities (and delta, in the same units) into [0, 1].

    ``auto`` leaves values already in [0, 1] untouched and min-max scales
    otherwise; ``minmax`` always scales; ``none`` never does.
    """
    us = np.asarray(utilities, dtype=float)
    if mode == "none" or (mode == "auto" and us.min() >= 0 and us.max() <= 1 and 0 <= delta <= 1):
        return us.tolist(), float(delta)
    if mode not in ("auto", "minmax"):
        raise ValueError(f"unknown scaling mode {mode!r}")
    span = us.max() - us.min()
    if span <= 0:
        raise ValueError("cannot min-max scale utilities that are all equal")
    return ((us - us.min()) / span).tolist(), float(delta) / span
