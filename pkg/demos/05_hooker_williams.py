"""
An equity/utility trade-off as a fuzzy formula
==============================================

The Hooker-Williams criterion rewards utility but protects the worst-off
individual through a threshold ``delta``. Read in Lukasiewicz logic it
becomes a truth value, and a stricter variant appears.
"""

import warnings

import numpy as np

from fuzzbl.hooker_williams import UtilityProfile, fair_hw_truth, hw_contour, hw_score, hw_truth, ScalingWarning

# %%
# Two individuals and ``delta = 0.2``. When everyone is close to the
# minimum, utilities count as if raised to ``u_min + delta``.
for us in ([0.1, 0.2], [0.3, 0.3], [0.3, 0.6], [0.8, 0.8]):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScalingWarning)
        p = UtilityProfile(us, 0.2)
        print(f"u={us}  score={hw_score(p):.2f}  HW={hw_truth(p):.2f}  FairHW={fair_hw_truth(p):.2f}")

# %%
# The truth value agrees with the numeric score while the raised
# utilities sum to at most 1 and saturates beyond that.
rows = np.array(hw_contour(41, 0.2))
u1, u2, hw, fair = rows.T
print(f"HW reaches its ceiling 1 - delta on {np.mean(hw >= 0.8 - 1e-12):.0%} of the grid")
print(f"FairHW is positive on {np.mean(fair > 0):.0%} of the grid")

# %%
# A coarse picture of FairHW: it only becomes true when both individuals
# are well off.
for a in np.linspace(1, 0, 6):
    line = ""
    for b in np.linspace(0, 1, 11):
        v = fair_hw_truth(UtilityProfile([a, b], 0.2, warn=False))
        line += " .:-=+*#%@"[min(int(v * 10), 9)]
    print(f"u1={a:.1f} {line}")
