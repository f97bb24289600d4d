"""Group rates, classical discrimination measures, and their BL truth values."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from fuzzbl.logic import Logic, truth


class DataError(ValueError):
    """Audit data cannot support the requested measure."""


class UndefinedMeasureError(DataError):
    pass


@dataclass(frozen=True)
class AuditDataset:
    predictions: np.ndarray
    labels: np.ndarray | None
    group_mask: np.ndarray

    def __init__(self, predictions, labels=None, group_mask=None):
        preds = np.asarray(predictions, dtype=int)
        if preds.ndim != 1 or len(preds) == 0:
            raise DataError("predictions must be a non-empty 1-d sequence")
        if not np.isin(preds, (0, 1)).all():
            raise DataError("predictions must be 0 or 1")
        if labels is not None:
            labels = np.asarray(labels, dtype=int)
            if labels.shape != preds.shape:
                raise DataError("labels and predictions differ in length")
            if not np.isin(labels, (0, 1)).all():
                raise DataError("labels must be 0 or 1")
        mask = np.ones(len(preds), dtype=bool) if group_mask is None else np.asarray(group_mask, dtype=bool)
        if mask.shape != preds.shape:
            raise DataError("group mask and predictions differ in length")
        object.__setattr__(self, "predictions", preds)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "group_mask", mask)

    def __len__(self):
        return len(self.predictions)


@dataclass(frozen=True)
class GroupRates:
    """Empirical rates of one group; ``None`` where the denominator is empty."""

    size: int
    positive_rate: float
    tpr: float | None = None
    fpr: float | None = None
    fnr: float | None = None
    tnr: float | None = None


def _rate(num, den):
    return None if den == 0 else num / den


def group_rates(dataset: AuditDataset, mask=None) -> GroupRates:
    mask = dataset.group_mask if mask is None else np.asarray(mask, dtype=bool)
    n = int(mask.sum())
    if n == 0:
        raise DataError("group is empty")
    pred = dataset.predictions[mask]
    rates = dict(size=n, positive_rate=float(pred.mean()))
    if dataset.labels is not None:
        lab = dataset.labels[mask]
        pos, neg = int((lab == 1).sum()), int((lab == 0).sum())
        tp = int(((pred == 1) & (lab == 1)).sum())
        fp = int(((pred == 1) & (lab == 0)).sum())
        rates.update(
            tpr=_rate(tp, pos),
            fnr=_rate(pos - tp, pos),
            fpr=_rate(fp, neg),
            tnr=_rate(neg - fp, neg),
        )
    return GroupRates(**rates)


def prule(p: float, p_prime: float) -> float:
    """Smaller of the two positive-rate ratios."""
    p, p_prime = truth(p, "p"), truth(p_prime, "p_prime")
    if p == 0 or p_prime == 0:
        raise UndefinedMeasureError("prule is undefined when either group has a zero rate")
    return min(p / p_prime, p_prime / p)


def cv(p: float, p_prime: float) -> float:
    return abs(truth(p, "p") - truth(p_prime, "p_prime"))


def delta_measure(m: float, m_prime: float) -> float:
    return abs(float(m) - float(m_prime))


def equalized_odds_diff(dataset: AuditDataset, masks, y: int = 1) -> float:
    """Difference of positive-prediction rates between two groups among samples labelled ``y``."""
    if dataset.labels is None:
        raise DataError("equalized odds need labels")
    if y not in (0, 1):
        raise ValueError("y must be 0 or 1")
    rates = []
    for mask in masks:
        sel = np.asarray(mask, dtype=bool) & (dataset.labels == y)
        if not sel.any():
            raise DataError(f"a group has no samples with label {y}")
        rates.append(dataset.predictions[sel].mean())
    a, b = rates
    return float(abs(a - b))


def discrimination_truth(logic: Logic, m, m_prime):
    """Truth value of ``~(M <-> M')`` in closed form.

    Godel: ``1 - min(m, m')``, except 0 when the two are equal.
    Product: ``1 - min/max``, with ``(0, 0) -> 0``.
    Lukasiewicz: ``|m - m'|``.
    """
    logic = Logic.parse(logic)
    m = np.asarray(truth(m, "m"))
    mp = np.asarray(truth(m_prime, "m_prime"))
    lo, hi = np.minimum(m, mp), np.maximum(m, mp)
    if logic is Logic.GODEL:
        r = np.where(m == mp, 0.0, 1.0 - lo)
    elif logic is Logic.PRODUCT:
        r = np.where(hi > 0, 1.0 - lo / np.where(hi > 0, hi, 1.0), 0.0)
    else:
        r = hi - lo
    return float(r) if r.ndim == 0 else r


# ------------------------------------------------------------------ CSV


@dataclass(frozen=True)
class AuditTable:
    """Rows of an audit CSV: binary predictions, optional labels, group columns."""

    predictions: np.ndarray
    labels: np.ndarray | None
    groups: dict[str, np.ndarray]

    def dataset(self, column: str, value: str, compare: str = "complement") -> tuple[AuditDataset, np.ndarray]:
        """Dataset masked to ``column == value`` plus the comparison mask."""
        if column not in self.groups:
            raise DataError(f"no group column {column!r}")
        col = self.groups[column]
        mask = col == value
        other = ~mask if compare == "complement" else col == compare
        if not mask.any():
            raise DataError(f"no rows with {column} == {value!r}")
        if not other.any():
            raise DataError(f"comparison group {compare!r} is empty")
        return AuditDataset(self.predictions, self.labels, mask), other


def load_audit_csv(path, group_columns: Sequence[str] = ("group",)) -> AuditTable:
    """Read ``prediction,label,group`` CSV; ``label`` cells may be empty."""
    with open(Path(path), newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        if "prediction" not in fields:
            raise DataError("audit CSV needs a 'prediction' column")
        missing = [c for c in group_columns if c not in fields]
        if missing:
            raise DataError(f"audit CSV lacks group column(s) {missing}")
        rows = list(reader)
    if not rows:
        raise DataError("audit CSV has no rows")
    try:
        preds = np.array([int(r["prediction"]) for r in rows])
        raw_labels = [r.get("label", "") or "" for r in rows]
        if all(x.strip() == "" for x in raw_labels):
            labels = None
        elif any(x.strip() == "" for x in raw_labels):
            raise DataError("label column is only partially filled")
        else:
            labels = np.array([int(x) for x in raw_labels])
    except ValueError as exc:
        if isinstance(exc, DataError):
            raise
        raise DataError(f"malformed audit CSV: {exc}") from None
    groups = {c: np.array([r[c] for r in rows], dtype=object) for c in group_columns}
    AuditDataset(preds, labels)  # validates values
    return AuditTable(preds, labels, groups)
