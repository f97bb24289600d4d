"""T-norms, residua and negations of the three base BL subclasses.

All operators accept Python floats or numpy arrays and broadcast like numpy
ufuncs. Scalars in give floats out.

The Lukasiewicz t-norm is ``max(x + y - 1, 0)``. Some printed tables give it
as ``min(x + y - 1, 0)``, which is non-positive everywhere and is a typo.
"""

from __future__ import annotations

import enum
import math

import numpy as np

#: Absolute slack accepted on the unit interval before a value is rejected.
TOLERANCE = 1e-12


class TruthValueError(ValueError):
    """A truth value fell outside [0, 1]."""


class Logic(str, enum.Enum):
    GODEL = "godel"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"

    @classmethod
    def parse(cls, name: "str | Logic") -> "Logic":
        if isinstance(name, Logic):
            return name
        try:
            return cls(name.strip().lower())
        except ValueError:
            choices = ", ".join(repr(m.value) for m in cls)
            raise ValueError(f"unknown logic {name!r}; expected one of {choices}") from None

    def __str__(self) -> str:
        return self.value


def _out(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def truth(value, name: str = "value"):
    """Validate a truth value (or array of them) and clip float drift.

    Values within ``TOLERANCE`` of the unit interval are clipped onto it;
    anything further away raises :class:`TruthValueError`.
    """
    if isinstance(value, (float, int)) and not isinstance(value, bool):
        v = float(value)
        if not math.isfinite(v):
            raise TruthValueError(f"{name} must be finite, got {value!r}")
        if v < -TOLERANCE or v > 1 + TOLERANCE:
            raise TruthValueError(f"{name} must lie in [0, 1], got {value!r}")
        return min(max(v, 0.0), 1.0)
    arr = np.asarray(value, dtype=float)
    if np.any(~np.isfinite(arr)):
        raise TruthValueError(f"{name} must be finite, got {value!r}")
    if np.any(arr < -TOLERANCE) or np.any(arr > 1 + TOLERANCE):
        raise TruthValueError(f"{name} must lie in [0, 1], got {value!r}")
    return _out(np.clip(arr, 0.0, 1.0))


def _scalar_tnorm(logic, x, y):
    if logic is Logic.GODEL:
        return min(x, y)
    if logic is Logic.PRODUCT:
        return x * y
    if x == 1.0:
        return y
    if y == 1.0:
        return x
    return max(x + y - 1.0, 0.0)


def _scalar_residuum(logic, x, y):
    if x <= y:
        return 1.0
    if logic is Logic.GODEL:
        return y
    if logic is Logic.PRODUCT:
        return y / x
    return min(1.0, 1.0 - x + y)


def _both_scalar(x, y):
    return type(x) in (float, int) and type(y) in (float, int)


def tnorm(logic: Logic, x, y):
    """Strong conjunction ``x ⋆ y``."""
    logic = Logic.parse(logic)
    if _both_scalar(x, y):
        return _scalar_tnorm(logic, truth(x, "x"), truth(y, "y"))
    x = np.asarray(truth(x, "x"))
    y = np.asarray(truth(y, "y"))
    if logic is Logic.GODEL:
        r = np.minimum(x, y)
    elif logic is Logic.PRODUCT:
        r = x * y
    elif logic is Logic.LUKASIEWICZ:
        # keep 1 an exact identity despite rounding in x + y - 1
        r = np.where(x == 1.0, y, np.where(y == 1.0, x, np.maximum(x + y - 1.0, 0.0)))
    else:
        raise AssertionError(logic)
    return _out(r)


def residuum(logic: Logic, x, y):
    """Implication ``x ⇒ y``, the right adjoint of :func:`tnorm`."""
    logic = Logic.parse(logic)
    if _both_scalar(x, y):
        return _scalar_residuum(logic, truth(x, "x"), truth(y, "y"))
    x = np.asarray(truth(x, "x"))
    y = np.asarray(truth(y, "y"))
    if logic is Logic.GODEL:
        r = np.where(x <= y, 1.0, y)
    elif logic is Logic.PRODUCT:
        # x == 0 always takes the x <= y branch
        safe = np.where(x > y, x, 1.0)
        r = np.where(x <= y, 1.0, y / safe)
    elif logic is Logic.LUKASIEWICZ:
        r = np.where(x <= y, 1.0, np.minimum(1.0, 1.0 - x + y))
    else:
        raise AssertionError(logic)
    return _out(r)


def strong_neg(logic: Logic, x):
    """``x ⇒ 0``: 1 only at 0 for Godel/Product, ``1 - x`` for Lukasiewicz."""
    return residuum(logic, x, 0.0)


def weak_neg(x):
    if type(x) in (float, int):
        return 1.0 - truth(x, "x")
    return _out(1.0 - np.asarray(truth(x, "x")))


def weak_conj(x, y):
    """Idempotent conjunction, the same in every BL subclass."""
    return _out(np.minimum(np.asarray(truth(x, "x")), np.asarray(truth(y, "y"))))
