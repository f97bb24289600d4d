import math

import numpy as np
import pytest

from fuzzbl.belief import (
    TOY_FAIR,
    BeliefExample,
    BeliefModel,
    TrainingError,
    evaluate_toy_definition,
    generator_truth,
    load_belief_csv,
    predict_discrimination,
    train_belief_model,
)
from fuzzbl.expr import free_predicates, parse, to_source
from fuzzbl.logic import Logic

FEATURES = [(0.0, 0.0), (0.23, 0.0), (0.1, 0.3), (0.5, 0.2), (0.8, 0.5)]


def logistic_examples():
    return [BeliefExample(f, 1 / (1 + math.exp(3 - 4 * f[0] - 3 * f[1]))) for f in FEATURES]


def test_example_validation():
    ex = BeliefExample.from_measures(0.77, 0.1, 0.19)
    assert ex.features == pytest.approx((0.23, 0.1))
    with pytest.raises(ValueError):
        BeliefExample((0.1,), 1.5)
    with pytest.raises(ValueError):
        BeliefExample((float("nan"),), 0.5)


def test_single_example_memorized():
    model = train_belief_model([BeliefExample((0.23, 0.0), 0.19)], learning_rate=1.0, tolerance=1e-12)
    assert predict_discrimination(model, (0.23, 0.0)) == pytest.approx(0.19, abs=1e-3)


def test_small_set_fits_and_is_deterministic():
    data = logistic_examples()
    a = train_belief_model(data, learning_rate=1.0, tolerance=1e-9, max_epochs=20_000, seed=4)
    b = train_belief_model(data, learning_rate=1.0, tolerance=1e-9, max_epochs=20_000, seed=4)
    assert a.final_loss < 1e-4
    np.testing.assert_array_equal(a.w1, b.w1)
    assert a.losses == b.losses
    assert all(x >= y for x, y in zip(a.losses, a.losses[1:]))


def test_predictions_in_unit_interval():
    model = train_belief_model(logistic_examples(), max_epochs=50)
    rng = np.random.default_rng(0)
    for x in rng.normal(0, 50, (200, 2)):
        assert 0.0 <= predict_discrimination(model, x) <= 1.0


def test_step_halving_on_large_rate():
    model = train_belief_model(logistic_examples(), learning_rate=3.0, tolerance=0.0, max_epochs=300)
    assert model.step_halvings > 0
    assert model.losses[-1] <= model.losses[0]


def test_training_errors():
    with pytest.raises(TrainingError):
        train_belief_model([])
    with pytest.raises(TrainingError):
        train_belief_model([BeliefExample((0.1,), 0.2), BeliefExample((0.1, 0.2), 0.3)])
    model = train_belief_model([BeliefExample((0.1, 0.2), 0.3)], max_epochs=1)
    with pytest.raises(ValueError):
        predict_discrimination(model, (0.1,))


def test_model_round_trip(tmp_path):
    model = train_belief_model(logistic_examples(), max_epochs=30)
    path = tmp_path / "m.json"
    model.save(path)
    loaded = BeliefModel.load(path)
    assert loaded.epochs == model.epochs
    x = (0.4, 0.2)
    assert predict_discrimination(loaded, x) == predict_discrimination(model, x)
    assert model.to_dict()["architecture"] == {"input": 2, "hidden": 64, "activation": "sigmoid"}


def test_load_csv(tmp_path):
    p = tmp_path / "b.csv"
    p.write_text("prule,cv,discrimination,max_deviation\n0.77,0.1,0.19,0.05\n0.9,0.0,0.1,\n")
    rows = load_belief_csv(p)
    assert rows[0].max_deviation == 0.05 and rows[1].max_deviation is None
    p.write_text("prule,discrimination\n0.5,0.5\n")
    with pytest.raises(ValueError):
        load_belief_csv(p)


def test_toy_definition():
    assert evaluate_toy_definition(Logic.GODEL, 0.05, 0.19, 0.10) == 1.0
    assert free_predicates(TOY_FAIR) == {"S", "E", "B", "Fgen"}
    assert parse(to_source(TOY_FAIR)) == TOY_FAIR


def test_toy_definition_open_region():
    grid = np.linspace(0.02, 1.0, 12)
    for s in grid:
        for e in grid:
            for b in grid:
                assert evaluate_toy_definition(Logic.GODEL, s, e, b) == 1.0


def test_generator_truth():
    assert generator_truth(Logic.GODEL, 0.05, 0.19) == 1.0
    assert generator_truth(Logic.LUKASIEWICZ, 0.3, 0.5) == pytest.approx(0.5)
