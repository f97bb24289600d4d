import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzbl.expr import evaluate, parse
from fuzzbl.logic import Logic
from fuzzbl.measures import (
    AuditDataset,
    DataError,
    UndefinedMeasureError,
    cv,
    delta_measure,
    discrimination_truth,
    equalized_odds_diff,
    group_rates,
    load_audit_csv,
    prule,
)

NOT_IFF = parse("~(M <-> Mp)")


def test_prule_and_cv():
    assert prule(0.4, 0.5) == pytest.approx(0.8)
    assert prule(0.5, 0.4) == pytest.approx(0.8)
    assert cv(0.4, 0.5) == pytest.approx(0.1)
    assert delta_measure(0.7, 0.2) == pytest.approx(0.5)
    with pytest.raises(UndefinedMeasureError):
        prule(0.0, 0.3)


def test_group_rates():
    ds = AuditDataset([1, 0, 1, 1, 0, 0], [1, 0, 0, 1, 1, 0], [1, 1, 1, 0, 0, 0])
    r = group_rates(ds)
    assert r.size == 3
    assert r.positive_rate == pytest.approx(2 / 3)
    assert r.tpr == 1.0 and r.fpr == 0.5 and r.fnr == 0.0 and r.tnr == 0.5
    other = group_rates(ds, ~ds.group_mask)
    assert other.positive_rate == pytest.approx(1 / 3)
    assert other.tpr == 0.5


def test_undefined_rates_are_none():
    r = group_rates(AuditDataset([1, 0], [1, 1]))
    assert r.fpr is None and r.tnr is None
    assert group_rates(AuditDataset([1, 0])).tpr is None


def test_dataset_validation():
    with pytest.raises(DataError):
        AuditDataset([])
    with pytest.raises(DataError):
        AuditDataset([0, 2])
    with pytest.raises(DataError):
        AuditDataset([0, 1], [1])
    with pytest.raises(DataError):
        group_rates(AuditDataset([0, 1], group_mask=[False, False]))


def test_equalized_odds():
    ds = AuditDataset([1, 1, 0, 1], [1, 1, 1, 1])
    a = np.array([True, True, False, False])
    assert equalized_odds_diff(ds, [a, ~a]) == pytest.approx(0.5)
    with pytest.raises(DataError):
        equalized_odds_diff(ds, [a, ~a], y=0)
    with pytest.raises(DataError):
        equalized_odds_diff(AuditDataset([1, 0]), [a[:2], ~a[:2]])


@pytest.mark.parametrize(
    "logic, m, mp, expected",
    [
        (Logic.GODEL, 0.4, 0.7, 0.6),
        (Logic.GODEL, 0.4, 0.4, 0.0),
        (Logic.PRODUCT, 0.4, 0.8, 0.5),
        (Logic.PRODUCT, 0.0, 0.0, 0.0),
        (Logic.PRODUCT, 0.0, 0.3, 1.0),
        (Logic.LUKASIEWICZ, 0.4, 0.7, 0.3),
    ],
)
def test_discrimination_truth_examples(logic, m, mp, expected):
    assert discrimination_truth(logic, m, mp) == pytest.approx(expected)


@pytest.mark.parametrize("logic", list(Logic))
@given(m=st.floats(0, 1), mp=st.floats(0, 1))
def test_discrimination_truth_matches_formula(logic, m, mp):
    want = evaluate(NOT_IFF, logic, {"M": m, "Mp": mp})
    assert discrimination_truth(logic, m, mp) == pytest.approx(want, abs=1e-12)


def test_product_relation_to_prule():
    assert discrimination_truth(Logic.PRODUCT, 0.4, 0.5) == pytest.approx(1 - prule(0.4, 0.5))


def test_load_audit_csv(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("prediction,label,group\n1,1,a\n0,0,a\n1,0,b\n0,1,b\n1,1,b\n")
    table = load_audit_csv(p)
    ds, other = table.dataset("group", "a")
    assert group_rates(ds).positive_rate == 0.5
    assert group_rates(ds, other).positive_rate == pytest.approx(2 / 3)
    p.write_text("prediction,label,group\n1,,a\n0,,b\n")
    assert load_audit_csv(p).labels is None
    p.write_text("prediction,label,group\n1,1,a\n0,,b\n")
    with pytest.raises(DataError):
        load_audit_csv(p)
    p.write_text("prediction,group\nx,a\n")
    with pytest.raises(DataError):
        load_audit_csv(p)
    p.write_text("prediction,label\n1,1\n")
    with pytest.raises(DataError):
        load_audit_csv(p)
    with pytest.raises(DataError):
        table.dataset("group", "zzz")
