import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzbl.aggregation import fair_conjunction, rawl, unbias
from fuzzbl.expr import Valuation, evaluate, parse
from fuzzbl.logic import Logic, TruthValueError

biases = st.lists(st.floats(0, 1), min_size=1, max_size=8)


def test_examples():
    b = [0.1, 0.3]
    assert rawl(b) == pytest.approx(0.7)
    assert unbias(Logic.PRODUCT, b) == pytest.approx(0.9 * 0.7)
    assert unbias(Logic.LUKASIEWICZ, b) == pytest.approx(0.6)
    assert fair_conjunction(Logic.LUKASIEWICZ, b) == pytest.approx(0.6)
    assert fair_conjunction(Logic.GODEL, b) == 0.0
    assert fair_conjunction(Logic.GODEL, [0.0, 0.0]) == 1.0


def test_single_group():
    for logic in Logic:
        assert unbias(logic, [0.25]) == pytest.approx(0.75)


def test_validation():
    with pytest.raises(ValueError):
        rawl([])
    with pytest.raises(TruthValueError):
        unbias(Logic.GODEL, [0.2, 1.4])


@pytest.mark.parametrize("logic", list(Logic))
@given(bs=biases)
def test_chain(logic, bs):
    f, u, r = fair_conjunction(logic, bs), unbias(logic, bs), rawl(bs)
    assert f <= u + 1e-12
    assert u <= r + 1e-12


@given(bs=biases)
def test_godel_unbias_is_rawl(bs):
    assert unbias(Logic.GODEL, bs) == rawl(bs)


@given(bs=biases)
def test_rawl_matches_quantified_formula(bs):
    val = Valuation(families={"Bias": bs}, domains={"G": len(bs)})
    assert rawl(bs) == evaluate(parse("forall i in G: ~Bias[i]"), Logic.GODEL, val)
