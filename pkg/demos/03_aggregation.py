"""
From group biases to one verdict
================================

Three ways to fold many per-group biases into a single truth value, and
why they always come out in the same order.
"""

import numpy as np

from fuzzbl import Logic, fair_conjunction, rawl, unbias

# %%
# ``rawl`` only looks at the worst-off group. ``unbias`` conjoins the weak
# negations, so every group's bias costs something. ``fair`` conjoins the
# strong negations and is the strictest.
biases = [0.05, 0.12, 0.02, 0.08]
for logic in Logic:
    print(f"{logic.value:12s} fair={fair_conjunction(logic, biases):.4f} unbias={unbias(logic, biases):.4f} rawl={rawl(biases):.4f}")

# %%
# Under Godel logic the strong conjunction is min, so ``unbias`` and
# ``rawl`` coincide, while any nonzero bias makes ``fair`` false.
print(unbias(Logic.GODEL, biases) == rawl(biases), fair_conjunction(Logic.GODEL, biases))

# %%
# The ordering fair <= unbias <= rawl holds for any bias vector.
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(2000):
    b = rng.uniform(0, 0.3, rng.integers(1, 9)).tolist()
    for logic in Logic:
        worst = max(worst, fair_conjunction(logic, b) - unbias(logic, b), unbias(logic, b) - rawl(b))
print("largest violation of the chain:", worst)
