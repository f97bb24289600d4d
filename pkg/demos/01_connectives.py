"""
Connectives of the three base logics
====================================

Strong conjunction, implication and the two negations under Godel,
Product and Lukasiewicz logic, and how a formula is written and evaluated.
"""

from fuzzbl import Logic, evaluate, parse, residuum, strong_neg, tnorm, weak_neg

# %%
# The same pair of truth values combined by each t-norm. Godel keeps the
# weaker value, Product multiplies, Lukasiewicz subtracts the slack.
x, y = 0.7, 0.6
for logic in Logic:
    print(f"{logic.value:12s} x&y={tnorm(logic, x, y):.3f}  x->y={residuum(logic, x, y):.3f}  y->x={residuum(logic, y, x):.3f}")

# %%
# Strong negation is implication into false. Only Lukasiewicz gives a
# graded answer; the other two collapse every positive value to 0.
for logic in Logic:
    print(f"{logic.value:12s} !0.2={strong_neg(logic, 0.2):.2f}  ~0.2={weak_neg(0.2):.2f}")

# %%
# Formulas are plain text. ``&`` is strong conjunction, ``^`` the weak
# (min) one, ``->`` implication, ``!`` and ``~`` the two negations.
bias = parse("S & E & F")
imbalance = parse("S -> S & E & F")
values = {"S": 0.4, "E": 0.9, "F": 1.0}
for logic in Logic:
    print(f"{logic.value:12s} bias={evaluate(bias, logic, values):.3f}  imbalance={evaluate(imbalance, logic, values):.3f}")

# %%
# Quantifiers range over finite domains declared next to the values.
from fuzzbl import Valuation

everyone = parse("forall i in G: ~Bias[i]")
val = Valuation(families={"Bias": [0.05, 0.30, 0.12]}, domains={"G": 3})
print("weakest group:", evaluate(everyone, Logic.GODEL, val))
