"""Fitting stakeholder discrimination beliefs, and the business-necessity toy definition.

The regressor is a one-hidden-layer perceptron (64 sigmoid units, sigmoid
output) trained by full-batch gradient descent on mean squared error. The
sigmoid output keeps every prediction inside [0, 1].
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from fuzzbl.expr import FALSE, Implies, Pred, StrongConj, evaluate
from fuzzbl.fairness import f_gen, in_generation_space
from fuzzbl.logic import Logic, truth

HIDDEN_UNITS = 64


class TrainingError(ValueError):
    pass


@dataclass(frozen=True)
class BeliefExample:
    features: tuple[float, ...]
    target: float
    max_deviation: float | None = None

    def __post_init__(self):
        feats = tuple(float(x) for x in self.features)
        if not all(math.isfinite(x) for x in feats):
            raise ValueError("features must be finite")
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "target", float(truth(self.target, "target")))
        if self.max_deviation is not None:
            object.__setattr__(self, "max_deviation", float(truth(self.max_deviation, "max_deviation")))

    @classmethod
    def from_measures(cls, prule: float, cv: float, discrimination: float, max_deviation=None):
        """Example with the default features ``(1 - prule, cv)``."""
        return cls((1.0 - prule, cv), discrimination, max_deviation)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


@dataclass
class BeliefModel:
    w1: np.ndarray  # (d, hidden)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden, 1)
    b2: np.ndarray  # (1,)
    epochs: int = 0
    final_loss: float = float("nan")
    step_halvings: int = 0
    losses: list[float] = field(default_factory=list, repr=False)

    @property
    def input_dim(self) -> int:
        return self.w1.shape[0]

    def forward(self, x: np.ndarray):
        hidden = _sigmoid(x @ self.w1 + self.b1)
        return hidden, _sigmoid(hidden @ self.w2 + self.b2)[:, 0]

    def to_dict(self) -> dict:
        return {
            "architecture": {"input": self.input_dim, "hidden": self.w1.shape[1], "activation": "sigmoid"},
            "features": ["one_minus_prule", "cv"] if self.input_dim == 2 else None,
            "layers": [
                {"weights": self.w1.tolist(), "bias": self.b1.tolist()},
                {"weights": self.w2.tolist(), "bias": self.b2.tolist()},
            ],
            "training": {"epochs": self.epochs, "final_loss": self.final_loss, "step_halvings": self.step_halvings},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BeliefModel":
        l1, l2 = data["layers"]
        t = data.get("training", {})
        return cls(
            np.asarray(l1["weights"], dtype=float),
            np.asarray(l1["bias"], dtype=float),
            np.asarray(l2["weights"], dtype=float),
            np.asarray(l2["bias"], dtype=float),
            epochs=int(t.get("epochs", 0)),
            final_loss=float(t.get("final_loss", float("nan"))),
            step_halvings=int(t.get("step_halvings", 0)),
        )

    def save(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "BeliefModel":
        with open(Path(path), encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _init_model(dim: int, hidden: int, seed: int) -> BeliefModel:
    rng = np.random.default_rng(seed)
    return BeliefModel(
        w1=rng.uniform(-0.5, 0.5, (dim, hidden)),
        b1=rng.uniform(-0.5, 0.5, hidden),
        w2=rng.uniform(-0.5, 0.5, (hidden, 1)),
        b2=rng.uniform(-0.5, 0.5, 1),
    )


def _loss_and_grads(model: BeliefModel, x, t):
    hidden, out = model.forward(x)
    err = out - t
    loss = float(np.mean(err**2))
    g_out = (2.0 / len(t)) * err * out * (1.0 - out)
    g_w2 = hidden.T @ g_out[:, None]
    g_b2 = np.array([g_out.sum()])
    g_hidden = (g_out[:, None] @ model.w2.T) * hidden * (1.0 - hidden)
    g_w1 = x.T @ g_hidden
    g_b1 = g_hidden.sum(axis=0)
    return loss, (g_w1, g_b1, g_w2, g_b2)


def train_belief_model(
    examples: Sequence[BeliefExample],
    learning_rate: float = 1e-3,
    tolerance: float = 1e-6,
    max_epochs: int = 100_000,
    seed: int = 0,
    hidden: int = HIDDEN_UNITS,
) -> BeliefModel:
    """Fit the perceptron by full-batch gradient descent.

    Training stops once an epoch lowers the loss by less than ``tolerance``
    or after ``max_epochs``. If an epoch would raise the loss the update is
    discarded and the step halved; the count is kept in ``step_halvings``.
    """
    if not examples:
        raise TrainingError("no training examples")
    dims = {len(ex.features) for ex in examples}
    if len(dims) != 1:
        raise TrainingError(f"inconsistent feature dimensions {sorted(dims)}")
    x = np.array([ex.features for ex in examples], dtype=float)
    t = np.array([ex.target for ex in examples], dtype=float)
    model = _init_model(x.shape[1], hidden, seed)
    params = [model.w1, model.b1, model.w2, model.b2]
    step = learning_rate
    loss, grads = _loss_and_grads(model, x, t)
    losses = [loss]
    epoch = 0
    while epoch < max_epochs:
        if not math.isfinite(loss):
            raise TrainingError("training loss is not finite")
        saved = [p.copy() for p in params]
        for p, g in zip(params, grads):
            p -= step * g
        new_loss, new_grads = _loss_and_grads(model, x, t)
        if new_loss > loss:
            for p, s in zip(params, saved):
                p[...] = s
            step /= 2.0
            model.step_halvings += 1
            if step < 1e-12:
                break
            continue
        epoch += 1
        decrease = loss - new_loss
        loss, grads = new_loss, new_grads
        losses.append(loss)
        if decrease < tolerance:
            break
    model.epochs = epoch
    model.final_loss = loss
    model.losses = losses
    return model


def predict_discrimination(model: BeliefModel, features: Sequence[float]) -> float:
    x = np.asarray(features, dtype=float)
    if x.shape != (model.input_dim,):
        raise ValueError(f"expected {model.input_dim} features, got {x.shape}")
    return float(model.forward(x[None, :])[1][0])


def load_belief_csv(path) -> list[BeliefExample]:
    """Read ``prule,cv,discrimination[,max_deviation]`` rows."""
    with open(Path(path), newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        need = {"prule", "cv", "discrimination"}
        if not need <= set(reader.fieldnames or []):
            raise ValueError(f"belief CSV needs columns {sorted(need)}")
        out = []
        for row in reader:
            dev = row.get("max_deviation")
            out.append(
                BeliefExample.from_measures(
                    float(row["prule"]),
                    float(row["cv"]),
                    float(row["discrimination"]),
                    float(dev) if dev not in (None, "") else None,
                )
            )
    return out


# ----------------------------------------------------- toy definition

S, E, B, F_GEN = Pred("S"), Pred("E"), Pred("B"), Pred("Fgen")

#: ``F(S, E) = F_gen & (((B & S) -> E) -> false)``
TOY_F = StrongConj(F_GEN, Implies(Implies(StrongConj(B, S), E), FALSE))
#: ``Fair = (S & E & F(S, E)) -> false``
TOY_FAIR = Implies(StrongConj(StrongConj(S, E), TOY_F), FALSE)


def generator_truth(logic: Logic, s: float, e: float) -> float:
    """Generator truth value with the tabulated convention: 1 inside the generation space."""
    return 1.0 if in_generation_space(logic, s, e) else f_gen(logic, s, e)


def evaluate_toy_definition(logic: Logic, s: float, e: float, b: float) -> float:
    """Fairness with a business-necessity clause on the worst-case generator."""
    valuation = {"S": s, "E": e, "B": b, "Fgen": generator_truth(logic, s, e)}
    return evaluate(TOY_FAIR, logic, valuation)
