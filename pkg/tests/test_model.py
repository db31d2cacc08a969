"""Instance construction and validation."""
from fractions import Fraction

import pytest

from fairorient.model import (
    BadAgentId,
    BadRational,
    DuplicateItemId,
    EmptyRelevanceWarning,
    EmptyRelevantSet,
    FractionalOrientation,
    GraphClass,
    InfeasibleOrientation,
    Orientation,
    ValueForIrrelevantAgent,
    agent_value,
    build_instance,
    graph_instance,
    make_instance,
    to_rational,
    validate_fractional,
    validate_orientation,
)


def raw(items, n=2):
    return {"agents": n, "items": items}


def test_minimal_instance_with_string_rational():
    inst, cls = build_instance(raw([{"id": "a", "relevant": [1, 2], "values": {"1": "1/2", "2": 1}}]))
    assert inst.value(1, "a") == Fraction(1, 2)
    assert inst.value(2, "a") == 1
    assert cls is GraphClass.SIMPLE


@pytest.mark.parametrize("bad", ["1.5", 1.5, True, "1/0", "abc"])
def test_inexact_values_rejected(bad):
    with pytest.raises(BadRational):
        build_instance(raw([{"id": "a", "relevant": [1], "values": {"1": bad}}]))


def test_to_rational_accepts_exact_forms():
    assert to_rational("-3/6") == Fraction(-1, 2)
    assert to_rational(4) == 4
    assert to_rational(Fraction(2, 3)) == Fraction(2, 3)


def test_empty_relevant_set():
    with pytest.raises(EmptyRelevantSet):
        build_instance(raw([{"id": "a", "relevant": [], "values": {}}]))


def test_duplicate_ids_and_bad_agents():
    with pytest.raises(DuplicateItemId):
        build_instance(raw([{"id": "a", "relevant": [1]}, {"id": "a", "relevant": [2]}]))
    with pytest.raises(BadAgentId):
        build_instance(raw([{"id": "a", "relevant": [3]}]))
    with pytest.raises(BadAgentId):
        build_instance({"agents": 0, "items": []})


def test_value_for_irrelevant_agent():
    with pytest.raises(ValueForIrrelevantAgent):
        build_instance(raw([{"id": "a", "relevant": [1], "values": {"2": 1}}]))


def test_missing_values_default_to_zero_and_warning_for_idle_agent():
    with pytest.warns(EmptyRelevanceWarning):
        inst, _ = build_instance(raw([{"id": "a", "relevant": [1]}], n=2))
    assert inst.value(1, "a") == 0
    assert inst.relevant_items[2] == ()


def test_graph_classes():
    assert graph_instance(3, [(1, 2, 1, 1), (2, 3, 1, 1)]).graph_class is GraphClass.SIMPLE
    assert graph_instance(2, [(1, 2, 1, 1), (1, 2, 1, 1)]).graph_class is GraphClass.MULTIGRAPH
    inst = make_instance(3, [("a", [1, 2, 3], {1: 1, 2: 1, 3: 1})])
    assert inst.graph_class is GraphClass.GENERAL


def test_orientation_count_is_product_of_relevance_sizes():
    inst = make_instance(3, [("a", [1, 2, 3], {}), ("b", [1, 2], {}), ("c", [2], {})])
    assert inst.orientation_count() == 6


def test_validate_orientation():
    inst = graph_instance(3, [(1, 2, 1, 1), (2, 3, 1, 1)])
    assert validate_orientation(inst, {"e1": 1, "e2": 3}) == Orientation({"e1": 1, "e2": 3})
    with pytest.raises(InfeasibleOrientation):
        validate_orientation(inst, {"e1": 3, "e2": 3})
    with pytest.raises(InfeasibleOrientation):
        validate_orientation(inst, {"e1": 1})


def test_fractional_validation_and_values():
    inst = graph_instance(2, [(1, 2, 3, -1)])
    frac = validate_fractional(inst, {(1, "e1"): Fraction(1, 3), (2, "e1"): Fraction(2, 3)})
    assert agent_value(inst, frac, 1) == 1
    assert agent_value(inst, frac, 2) == Fraction(-2, 3)
    with pytest.raises(InfeasibleOrientation):
        validate_fractional(inst, {(1, "e1"): Fraction(1, 3)})
    assert FractionalOrientation.lift({"e1": 2}).to_orientation() == Orientation({"e1": 2})
