"""
Learning what stakeholders call discrimination
==============================================

A small perceptron maps classical measures to the degree of
discrimination stakeholders report. The beliefs in ``data/beliefs.csv``
are made up for this walk-through and stand for no real survey.
"""

from pathlib import Path

from fuzzbl import Logic
from fuzzbl.belief import evaluate_toy_definition, load_belief_csv, predict_discrimination, train_belief_model

DATA = Path(__file__).parent / "data" / "beliefs.csv"

# %%
# Each row gives a p-rule, a CV score, the discrimination the stakeholder
# assigned, and how far off the model may be.
examples = load_belief_csv(DATA)
model = train_belief_model(examples, learning_rate=1.0, tolerance=1e-9, max_epochs=20_000, seed=0)
print(f"trained for {model.epochs} epochs, loss {model.final_loss:.2e}, {model.step_halvings} step halvings")

for ex in examples:
    pred = predict_discrimination(model, ex.features)
    flag = "ok" if abs(pred - ex.target) <= ex.max_deviation else "off"
    print(f"1-prule={ex.features[0]:.2f} cv={ex.features[1]:.2f}  said {ex.target:.2f}  model {pred:.3f}  {flag}")

# %%
# The learned value plugs into a fairness definition in which a business
# necessity ``b`` excuses discrimination it can explain. Under Godel logic
# the verdict is 1 for every ``b``: a positive necessity excuses the
# discrimination, and ``b = 0`` makes the excuse clause itself false, so the
# bias conjunction vanishes.
e = predict_discrimination(model, (1 - 0.77, 0.10))
print(f"predicted discrimination {e:.3f}")
for b in (0.0, 0.1, 0.5):
    print(f"b={b}: Fair={evaluate_toy_definition(Logic.GODEL, 0.05, e, b)}")
