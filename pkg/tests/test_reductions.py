"""Partition and 2P2N-3SAT gadget constructions."""
import itertools
from fractions import Fraction

import pytest

from fairorient.fairness import Notion, check_prop_family, prop_share
from fairorient.model import GraphClass, classify_graph
from fairorient.reductions import (
    AssignmentDoesNotSatisfy,
    BadArity,
    ClauseWiring,
    DuplicateLiteralInClause,
    ForcingPropertyUnverified,
    GadgetKind,
    OccurrenceCountViolation,
    OddSum,
    PartitionInput,
    Polarity,
    UnsupportedCombination,
    WiringCountMismatch,
    default_wiring,
    eqx_epsilon,
    gadget_3sat_skeleton,
    gadget_partition,
    parse_2p2n3sat,
    parse_partition,
    partition_solution,
    search_wiring,
    validate_formula,
    verify_forcing_property,
    verify_reduction_small,
    witness_orientation_from_assignment,
)
from fairorient.reductions.sat import VALIDATION_FORMULA

F = Fraction


# ---------------------------------------------------------------- inputs


def test_partition_input():
    inp = parse_partition("1 1\n2")
    assert inp.xs == (1, 1, 2) and inp.T == 2 and inp.n == 3
    assert partition_solution(inp) is not None
    assert partition_solution(PartitionInput.of([1, 3])) is None
    with pytest.raises(OddSum):
        PartitionInput.of([1, 2])
    with pytest.raises(ValueError):
        PartitionInput.of([0, 2])


def test_partition_solution_sums_to_t():
    inp = PartitionInput.of([3, 1, 1, 2, 2, 1])
    idx = partition_solution(inp)
    assert sum(inp.xs[k] for k in idx) == inp.T


def test_formula_validation():
    """[DERIVED] each variable occurs twice with each sign."""
    f = parse_2p2n3sat("2p2n3sat 3 4\n1 2 3\n1 -2 -3\n-1 2 -3\n-1 -2 3\n")
    assert f == VALIDATION_FORMULA and f.t == 4
    for v in (1, 2, 3):
        flat = [lit for c in f.clauses for lit in c]
        assert flat.count(v) == 2 and flat.count(-v) == 2
    assert parse_2p2n3sat(f.to_text()) == f


def test_formula_errors():
    with pytest.raises(BadArity):
        validate_formula(3, [(1, 2, 3), (1, -2, -3), (-1, 2, -3)])
    with pytest.raises(DuplicateLiteralInClause):
        validate_formula(3, [(1, 1, 2), (1, -2, -3), (-1, 2, -3), (-1, -2, 3)])
    with pytest.raises(OccurrenceCountViolation) as exc:
        validate_formula(3, [(1, 2, 3), (1, 2, -3), (-1, 2, -3), (-1, -2, 3)])
    assert exc.value.variable == 2


def test_validation_formula_truth_table():
    """[DERIVED] satisfying assignments by truth table."""
    sat = [a for a in itertools.product((False, True), repeat=3) if VALIDATION_FORMULA.satisfies(list(a))]
    assert len(sat) == 4 and (True, True, True) in sat
    assert len(list(VALIDATION_FORMULA.satisfying_assignments())) == 4


# ---------------------------------------------------------------- Partition gadgets


def test_eq_gadget_shape_and_normalisation():
    """[PAPER] n+2 vertices, 2n edges, every agent's incident total is 1."""
    g = gadget_partition(PartitionInput.of([1, 1, 2]), GadgetKind.EQ, Polarity.GOODS)
    assert (g.n, g.m) == (5, 6)
    for i in g.agents:
        assert sum(g.value(i, e) for e in g.relevant_items[i]) == 1
    assert classify_graph(g) is GraphClass.SIMPLE


def test_eq1_gadget_shape_and_values():
    """[PAPER] 14 vertices, 3n+9 edges, v_p((p,i)) = x_i / (4 sum x)."""
    g = gadget_partition(PartitionInput.of([1, 1, 2]), GadgetKind.EQ1, Polarity.GOODS)
    assert (g.n, g.m) == (14, 18)
    p = next(a for a in g.agents if g.label(a) == "p")
    assert g.value(p, "p-3") == F(2, 16)


def test_eqx_gadget_epsilon_and_normalisation():
    inp = PartitionInput.of([1, 3])
    eps = eqx_epsilon(inp)
    assert 0 < eps < F(1, 4 * inp.T)
    g = gadget_partition(inp, GadgetKind.EQX, Polarity.GOODS)
    assert g.orientation_count() == 2**16
    for i in g.agents:
        assert sum(g.value(i, e) for e in g.relevant_items[i]) == 1


def test_chores_negate():
    inp = PartitionInput.of([1, 1, 2])
    for kind in (GadgetKind.EQ, GadgetKind.EQ1, GadgetKind.EQX):
        goods = gadget_partition(inp, kind, Polarity.GOODS)
        chores = gadget_partition(inp, kind, "chores")
        for a, b in zip(goods.items, chores.items):
            assert a.id == b.id and all(b.value(i) == -a.value(i) for i in a.relevant)


def test_ef1_multi_gadget():
    """[PAPER] 3 vertices, n+4 edges, four heavy edges at -2T-1."""
    g = gadget_partition(PartitionInput.of([1, 1, 2]), "EF1multi", "chores")
    assert (g.n, g.m) == (3, 7)
    heavy = [it for it in g.items if set(it.values.values()) == {-5}]
    assert len(heavy) == 4
    assert classify_graph(g) is GraphClass.MULTIGRAPH
    with pytest.raises(UnsupportedCombination):
        gadget_partition(PartitionInput.of([1, 1]), GadgetKind.EF1MULTI, Polarity.GOODS)


@pytest.mark.parametrize("xs,yes", [([1, 1, 2], True), ([1, 1, 4], False)])
def test_verify_ef1_multi(xs, yes):
    """[DERIVED] 2^7 orientations against subset enumeration."""
    rep = verify_reduction_small("EF1multi", PartitionInput.of(xs))
    assert rep.partition_yes is yes and rep.orientation_found is yes and rep.agree
    assert rep.orientations == 2**7


def test_verify_eqx_no_instance():
    """[DERIVED] xs = {1,3}: no EQX over 2^16 orientations."""
    rep = verify_reduction_small(GadgetKind.EQX, PartitionInput.of([1, 3]), Polarity.GOODS)
    assert not rep.partition_yes and not rep.orientation_found and rep.agree
    assert rep.to_dict()["agree"] is True


# ---------------------------------------------------------------- 3SAT gadgets


@pytest.mark.parametrize("notion,counts", [(Notion.PROP, (54, 71)), (Notion.PROPX, (34, 47))])
@pytest.mark.parametrize("polarity", list(Polarity))
def test_three_sat_totals(notion, counts, polarity):
    """[PAPER] 2s+12t / s+17t and 2s+7t / s+11t."""
    g = gadget_3sat_skeleton(VALIDATION_FORMULA, notion, polarity)
    assert (g.n, g.m) == counts
    assert classify_graph(g) is GraphClass.SIMPLE


@pytest.mark.parametrize("polarity", list(Polarity))
def test_prop_gadget_normalised(polarity):
    """[PAPER] incident totals are 4 (goods) / -4 (chores)."""
    g = gadget_3sat_skeleton(VALIDATION_FORMULA, Notion.PROP, polarity)
    for i in g.agents:
        assert sum(g.value(i, e) for e in g.relevant_items[i]) == 4 * polarity.sign


@pytest.mark.parametrize("notion", [Notion.PROP, Notion.PROPX])
@pytest.mark.parametrize("polarity", list(Polarity))
def test_witness_for_every_satisfying_assignment(notion, polarity):
    """[DERIVED] the constructive orientation passes the gadget's checker."""
    g = gadget_3sat_skeleton(VALIDATION_FORMULA, notion, polarity)
    for assignment in VALIDATION_FORMULA.satisfying_assignments():
        pi = witness_orientation_from_assignment(g, VALIDATION_FORMULA, assignment, notion, polarity)
        assert check_prop_family(g, pi, notion).holds


def test_witness_variable_edge_rule():
    """[TRIVIAL] goods: edge to the true literal's vertex; chores mirror it."""
    f = VALIDATION_FORMULA
    a = {1: True, 2: True, 3: True}
    goods = gadget_3sat_skeleton(f, Notion.PROPX, Polarity.GOODS)
    chores = gadget_3sat_skeleton(f, Notion.PROPX, Polarity.CHORES)
    pg = witness_orientation_from_assignment(goods, f, a, Notion.PROPX, Polarity.GOODS)
    pc = witness_orientation_from_assignment(chores, f, a, Notion.PROPX, Polarity.CHORES)
    assert goods.label(pg["v1"]) == "x1" and chores.label(pc["v1"]) == "~x1"
    b = {1: False, 2: True, 3: False}
    pb = witness_orientation_from_assignment(goods, f, b, Notion.PROPX, Polarity.GOODS)
    assert goods.label(pb["v1"]) == "~x1"


def test_witness_rejects_unsatisfying_assignment():
    """[TRIVIAL] (1,1,0) leaves (~x1 v ~x2 v x3) false."""
    g = gadget_3sat_skeleton(VALIDATION_FORMULA, Notion.PROP, Polarity.GOODS)
    with pytest.raises(AssignmentDoesNotSatisfy):
        witness_orientation_from_assignment(g, VALIDATION_FORMULA, [True, True, False], Notion.PROP, "goods")


@pytest.mark.parametrize("notion", [Notion.PROP, Notion.PROPX])
@pytest.mark.parametrize("polarity", list(Polarity))
def test_frozen_wiring_passes_forcing(notion, polarity):
    """[DERIVED] exhaustive search over the clause fragment."""
    assert verify_forcing_property(default_wiring(notion), polarity).holds


def test_empty_wiring_fails_condition_a():
    """[TRIVIAL] the clause vertex alone cannot reach its share."""
    w = ClauseWiring(Notion.PROPX, 6, (), ((1, 1, 1),), {})
    rep = verify_forcing_property(w, Polarity.GOODS)
    assert not rep.holds
    assert "a" in {v.detail["condition"] for v in rep.violations}


def test_tolerant_dummy_fails_condition_b():
    """[DERIVED] a dummy that values the anchor at 0 does not force it."""
    good = default_wiring(Notion.PROPX)
    (d, vc, _vd), *rest = good.anchors
    w = ClauseWiring(Notion.PROPX, good.dummies, good.internal, ((d, vc, 0), *rest), dict(good.intended))
    rep = verify_forcing_property(w, Polarity.GOODS)
    assert "b" in {v.detail["condition"] for v in rep.violations}
    assert "orientation" in next(v for v in rep.violations if v.detail["condition"] == "b").detail


def test_wiring_count_mismatch_and_unverified():
    good = default_wiring(Notion.PROPX)
    short = ClauseWiring(Notion.PROPX, 5, good.internal, good.anchors, dict(good.intended))
    with pytest.raises(WiringCountMismatch):
        gadget_3sat_skeleton(VALIDATION_FORMULA, Notion.PROPX, Polarity.GOODS, short)
    with pytest.raises(WiringCountMismatch):
        gadget_3sat_skeleton(VALIDATION_FORMULA, Notion.PROP, Polarity.GOODS, good)
    (d, vc, _vd), *rest = good.anchors
    broken = ClauseWiring(Notion.PROPX, 6, good.internal, ((d, vc, 0), *rest), dict(good.intended))
    with pytest.raises(ForcingPropertyUnverified):
        gadget_3sat_skeleton(VALIDATION_FORMULA, Notion.PROPX, Polarity.GOODS, broken)


def test_search_reproduces_frozen_propx_wiring():
    """[DERIVED] the shipped data is the search's first hit."""
    found = search_wiring(Notion.PROPX)
    assert found == default_wiring(Notion.PROPX)


def test_prop_share_of_propx_gadget_vertices():
    g = gadget_3sat_skeleton(VALIDATION_FORMULA, Notion.PROPX, Polarity.GOODS)
    shares = prop_share(g)
    x1 = next(a for a in g.agents if g.label(a) == "x1")
    # variable edge 1/2 plus two literal edges at 1/2
    assert shares[x1] == F(3, 2)
