"""ROC curves, AUC, ABROCA and RBROCA, plus the synthetic two-family sweep.

Curves are piecewise linear in fpr and may jump vertically at a single fpr.
Two curves are compared on the union of their breakpoints, refined with the
points where they cross, so that on every cell both are linear and ordered.
ABROCA is exact on that grid; RBROCA uses the trapezoid rule on it.
"""

from __future__ import annotations

import csv
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class RocCurve:
    fpr: np.ndarray
    tpr: np.ndarray

    def __post_init__(self):
        fpr = np.asarray(self.fpr, dtype=float)
        tpr = np.asarray(self.tpr, dtype=float)
        if fpr.shape != tpr.shape or fpr.ndim != 1 or len(fpr) < 2:
            raise ValueError("a curve needs matching 1-d fpr/tpr arrays with at least two points")
        if fpr[0] != 0 or tpr[0] != 0 or fpr[-1] != 1 or tpr[-1] != 1:
            raise ValueError("a curve must start at (0, 0) and end at (1, 1)")
        if np.any(np.diff(fpr) < 0) or np.any(np.diff(tpr) < 0):
            raise ValueError("fpr and tpr must be non-decreasing along the curve")
        if fpr.min() < 0 or fpr.max() > 1 or tpr.min() < 0 or tpr.max() > 1:
            raise ValueError("curve coordinates must lie in [0, 1]")
        object.__setattr__(self, "fpr", fpr)
        object.__setattr__(self, "tpr", tpr)

    @classmethod
    def from_points(cls, points: Sequence[tuple[float, float]]) -> "RocCurve":
        arr = np.asarray(points, dtype=float)
        return cls(arr[:, 0], arr[:, 1])

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))

    def value(self, x, side: str = "right") -> np.ndarray:
        """tpr at ``x``; at a vertical jump ``side`` picks the top ("right") or bottom ("left")."""
        x = np.asarray(x, dtype=float)
        n = len(self.fpr)
        if side == "right":
            i = np.clip(np.searchsorted(self.fpr, x, side="right") - 1, 0, n - 1)
            hit = self.fpr[i] == x
            j = np.minimum(i + 1, n - 1)
        else:
            j = np.clip(np.searchsorted(self.fpr, x, side="left"), 0, n - 1)
            hit = self.fpr[j] == x
            i = np.maximum(j - 1, 0)
            i, j = np.where(hit, j, i), j
        x0, x1 = self.fpr[i], self.fpr[j]
        y0, y1 = self.tpr[i], self.tpr[j]
        width = np.where(x1 > x0, x1 - x0, 1.0)
        interp = y0 + (y1 - y0) * np.clip((x - x0) / width, 0.0, 1.0)
        exact = self.tpr[i] if side == "right" else self.tpr[j]
        return np.where(hit, exact, interp)


def roc_from_scores(scores, labels) -> RocCurve:
    """Threshold sweep from the highest score down; tied scores form one step."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be 1-d and of equal length")
    if not np.isin(labels, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    pos = int(labels.sum())
    neg = len(labels) - pos
    if pos == 0 or neg == 0:
        raise ValueError("labels must contain both classes")
    order = np.argsort(-scores, kind="stable")
    s, y = scores[order], labels[order]
    tp = np.cumsum(y)
    fp = np.cumsum(1 - y)
    # last index of every run of tied scores
    ends = np.flatnonzero(np.r_[s[1:] != s[:-1], True])
    fpr = np.r_[0.0, fp[ends] / neg]
    tpr = np.r_[0.0, tp[ends] / pos]
    return RocCurve(fpr, tpr)


def auc(curve: RocCurve) -> float:
    """Trapezoidal area under the curve; vertical segments add nothing."""
    return float(np.sum(np.diff(curve.fpr) * (curve.tpr[1:] + curve.tpr[:-1]) / 2.0))


def _cells(a: RocCurve, b: RocCurve):
    """Cell widths and endpoint values of both curves on the refined grid."""
    grid = np.union1d(a.fpr, b.fpr)
    x0, x1 = grid[:-1], grid[1:]
    a0, a1 = a.value(x0, "right"), a.value(x1, "left")
    b0, b1 = b.value(x0, "right"), b.value(x1, "left")
    d0, d1 = a0 - b0, a1 - b1
    cross = d0 * d1 < 0
    if np.any(cross):
        t = d0[cross] / (d0[cross] - d1[cross])
        xc = x0[cross] + t * (x1[cross] - x0[cross])
        ac = a0[cross] + t * (a1[cross] - a0[cross])
        bc = b0[cross] + t * (b1[cross] - b0[cross])
        # split each crossing cell in two: [x0, xc] and [xc, x1]
        x0 = np.r_[x0[~cross], x0[cross], xc]
        x1 = np.r_[x1[~cross], xc, x1[cross]]
        a0_new = np.r_[a0[~cross], a0[cross], ac]
        a1_new = np.r_[a1[~cross], ac, a1[cross]]
        b0_new = np.r_[b0[~cross], b0[cross], bc]
        b1_new = np.r_[b1[~cross], bc, b1[cross]]
        a0, a1, b0, b1 = a0_new, a1_new, b0_new, b1_new
    return x1 - x0, (a0, a1), (b0, b1)


def abroca(a: RocCurve, b: RocCurve) -> float:
    """Area between the curves, ``∫ |tpr_a - tpr_b| d fpr``."""
    width, (a0, a1), (b0, b1) = _cells(a, b)
    return float(np.sum(width * (np.abs(a0 - b0) + np.abs(a1 - b1)) / 2.0))


def _relative_gap(p, q):
    hi = np.maximum(p, q)
    lo = np.minimum(p, q)
    return np.where(hi > 0, 1.0 - lo / np.where(hi > 0, hi, 1.0), 0.0)


def rbroca(a: RocCurve, b: RocCurve) -> float:
    """Relative between-ROC area, ``∫ (1 - min/max) d fpr`` with 0/0 read as 0."""
    width, (a0, a1), (b0, b1) = _cells(a, b)
    return float(np.sum(width * (_relative_gap(a0, b0) + _relative_gap(a1, b1)) / 2.0))


# -------------------------------------------------------- synthetic sweep


@dataclass(frozen=True)
class SynthConfig:
    c: float
    n: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if not 1.0 <= self.c <= 32.0:
            raise ValueError("c must lie in [1, 32]")
        if self.n < 2:
            raise ValueError("n must be at least 2")


def synth_predictions(config: SynthConfig, family: int) -> tuple[np.ndarray, np.ndarray]:
    """Scores and labels of one synthetic family.

    Labels are fair coin flips; with ``u`` uniform on [0, 1], family 1 scores
    negatives ``u**c`` and positives ``u``, family 2 scores negatives ``u**c``
    and positives ``1 - u**c``. Labels are drawn before scores from a stream
    keyed by ``(seed, family)``, so every ``c`` sees the same draws.
    """
    if family not in (1, 2):
        raise ValueError("family must be 1 or 2")
    rng = np.random.default_rng([config.seed, family])
    labels = rng.integers(0, 2, size=config.n)
    u = rng.random(config.n)
    uc = u**config.c
    positive = u if family == 1 else 1.0 - uc
    scores = np.where(labels == 1, positive, uc)
    return scores, labels


@dataclass(frozen=True)
class SweepRow:
    c: float
    min_auc: float
    auc_diff: float
    abroca: float
    rbroca: float
    one_minus_min_auc: float


SWEEP_COLUMNS = tuple(f.name for f in fields(SweepRow))


def sweep_experiment(c_values: Sequence[float], n: int = 100_000, seed: int = 0) -> list[SweepRow]:
    rows = []
    for c in c_values:
        config = SynthConfig(float(c), n, seed)
        a = roc_from_scores(*synth_predictions(config, 1))
        b = roc_from_scores(*synth_predictions(config, 2))
        auc_a, auc_b = auc(a), auc(b)
        worst = min(auc_a, auc_b)
        rows.append(
            SweepRow(
                c=float(c),
                min_auc=worst,
                auc_diff=abs(auc_a - auc_b),
                abroca=abroca(a, b),
                rbroca=rbroca(a, b),
                one_minus_min_auc=1.0 - worst,
            )
        )
    return rows


def c_grid(c_min: float, c_max: float, steps: int, spacing: str = "log") -> np.ndarray:
    if steps < 1:
        raise ValueError("steps must be positive")
    if steps == 1:
        return np.array([float(c_min)])
    if spacing == "log":
        return np.geomspace(c_min, c_max, steps)
    if spacing == "linear":
        return np.linspace(c_min, c_max, steps)
    raise ValueError(f"unknown spacing {spacing!r}")


def write_sweep_csv(rows: Sequence[SweepRow], path, fmt=lambda v: format(v, ".12g")) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for row in rows:
            w.writerow([fmt(v) for v in astuple(row)])
