"""
Auditing a classifier's predictions
===================================

Group rates from a small prediction table, the classical measures built
on them, and their translation into bias and fairness truth values.
"""

from pathlib import Path

from fuzzbl import Logic, cv, discrimination_truth, fairness_report, prule
from fuzzbl.measures import group_rates, load_audit_csv

DATA = Path(__file__).parent / "data" / "audit.csv"

# %%
# The table has one row per person: the binary prediction, the true label
# and two group columns. Compare group ``b`` with everyone else.
table = load_audit_csv(DATA, ["group", "sex"])
dataset, others = table.dataset("group", "b")
mine, rest = group_rates(dataset), group_rates(dataset, others)
print(f"positive rate: b={mine.positive_rate:.3f} others={rest.positive_rate:.3f}")
print(f"p-rule={prule(mine.positive_rate, rest.positive_rate):.3f}  cv={cv(mine.positive_rate, rest.positive_rate):.3f}")

# %%
# Discrimination is the truth value of "the two rates are not equivalent".
# Each logic reads that statement differently.
for logic in Logic:
    e = discrimination_truth(logic, mine.positive_rate, rest.positive_rate)
    print(f"{logic.value:12s} discrimination={e:.3f}")

# %%
# Group membership ``s`` is taken as the share of the population in the
# group. Bias is ``s & e``; fairness is its strong negation.
s = mine.size / len(dataset)
for logic in Logic:
    e = discrimination_truth(logic, mine.positive_rate, rest.positive_rate)
    r = fairness_report(logic, s, e)
    print(f"{logic.value:12s} bias={r.bias:.3f} fairness={r.fairness:.3f} in generation space={r.in_generation_space}")

# %%
# Under Lukasiewicz a group of share ``s`` can tolerate discrimination up
# to ``1 - s`` before any bias registers.
from fuzzbl.fairness import generation_space

print("Lukasiewicz generation space for s=%.2f:" % s, generation_space(Logic.LUKASIEWICZ, s))
