"""Standard-form imbalance, bias, worst-case bias and generation spaces.

``s`` is the truth value of group membership, ``e`` that of discrimination
and ``f`` that of the free expression ``F(S, E)`` of the standard form
``Imb_F = S -> (S & E & F)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from fuzzbl.logic import Logic, residuum, strong_neg, tnorm, truth


def imbalance_standard(logic: Logic, s, e, f):
    """Truth value of ``S -> (S & E & F)``; 1 when ``s == 0``."""
    return residuum(logic, s, bias_standard(logic, s, e, f))


def bias_standard(logic: Logic, s, e, f):
    """Group bias ``s ⋆ e ⋆ f`` of a standard-form imbalance."""
    return tnorm(logic, s, tnorm(logic, e, f))


def worst_case_bias(logic: Logic, s, e):
    """Upper bound ``s ⋆ e`` on every bias definition, attained by the generator."""
    return tnorm(logic, s, e)


def fairness_of_bias(logic: Logic, bias):
    return strong_neg(logic, bias)


def infimum_d(logic: Logic, s: float, e: float) -> float:
    """Smallest ``d`` with ``s ⋆ d >= s ⋆ e``, in closed form.

    For ``s == 0`` every ``d`` qualifies and the infimum is 0. Under
    Lukasiewicz the constraint is vacuous whenever ``s + e <= 1``.
    """
    logic = Logic.parse(logic)
    s = truth(s, "s")
    e = truth(e, "e")
    if s == 0.0:
        return 0.0
    if logic is Logic.GODEL:
        return e if e < s else s
    if logic is Logic.PRODUCT:
        return e
    return e if e > 1.0 - s else 0.0


def f_gen(logic: Logic, s: float, e: float) -> float:
    """Truth value of the worst-case generator, ``e ⇒ infimum_d(s, e)``.

    This is the literal residuum. Under Godel it equals ``s`` (not 1) when
    ``e > s``; :func:`in_generation_space` reports the tabulated membership.
    """
    return residuum(logic, e, infimum_d(logic, s, e))


def in_generation_space(logic: Logic, s: float, e: float) -> bool:
    """Whether ``e`` lies in the tabulated generation space for ``s``.

    Godel and Product accept every ``e``; Lukasiewicz accepts
    ``[1 - s, 1] ∪ {0}``.
    """
    logic = Logic.parse(logic)
    s = truth(s, "s")
    e = truth(e, "e")
    if logic is Logic.LUKASIEWICZ:
        return e >= 1.0 - s or e == 0.0
    return True


def generation_space(logic: Logic, s: float) -> tuple[list[tuple[float, float]], list[float]]:
    """The generation space as ``(closed intervals, isolated points)``."""
    logic = Logic.parse(logic)
    s = truth(s, "s")
    if logic is Logic.LUKASIEWICZ:
        low = 1.0 - s
        if low == 0.0:
            return [(0.0, 1.0)], []
        return [(low, 1.0)], [0.0]
    return [(0.0, 1.0)], []


def lukasiewicz_fair_threshold(s: float) -> float:
    """Largest discrimination ``1 - s`` with zero worst-case Lukasiewicz bias."""
    return 1.0 - truth(s, "s")


@dataclass(frozen=True)
class FairnessReport:
    logic: Logic
    s: float
    e: float
    f: float
    imbalance: float
    bias: float
    worst_case_bias: float
    fairness: float
    in_generation_space: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["logic"] = self.logic.value
        return d


def fairness_report(logic: Logic, s: float, e: float, f: float = 1.0) -> FairnessReport:
    logic = Logic.parse(logic)
    s, e, f = truth(s, "s"), truth(e, "e"), truth(f, "f")
    bias = bias_standard(logic, s, e, f)
    return FairnessReport(
        logic=logic,
        s=s,
        e=e,
        f=f,
        imbalance=imbalance_standard(logic, s, e, f),
        bias=bias,
        worst_case_bias=worst_case_bias(logic, s, e),
        fairness=fairness_of_bias(logic, bias),
        in_generation_space=in_generation_space(logic, s, e),
    )
