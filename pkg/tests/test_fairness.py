"""Share computations and fairness checkers."""
import itertools
from fractions import Fraction

import pytest

from fairorient.fairness import (
    CheckReport,
    Notion,
    SPROP1OnNonGoods,
    check,
    check_ef,
    check_ef1,
    check_eq,
    check_eq1,
    check_eqx,
    check_fpo,
    check_non_malicious,
    check_prop,
    check_prop1,
    check_propx,
    check_sprop1,
    prop_share,
)
from fairorient.generators import k4_plus_edge, triangle_ones
from fairorient.model import FractionalOrientation, agent_value, graph_instance, make_instance
from fairorient.oracle import check_po_exhaustive
from fairorient.reductions import GadgetKind, PartitionInput, Polarity, gadget_3sat_skeleton, gadget_partition
from fairorient.reductions.sat import VALIDATION_FORMULA

F = Fraction


# ---------------------------------------------------------------- shares


def test_prop_share_single_item():
    """[TRIVIAL] n_e = 1 gives the whole value."""
    inst = make_instance(2, [("a", [2], {2: F(7, 3)})])
    assert prop_share(inst) == {1: 0, 2: F(7, 3)}


def test_prop_share_mixed_degrees():
    """[TRIVIAL] 3/3 + 6/2 = 4."""
    inst = make_instance(3, [("e", [1, 2, 3], {1: 3}), ("f", [1, 2], {1: 6})])
    assert prop_share(inst)[1] == 4


def test_prop_share_of_three_sat_gadget_is_two():
    """[PAPER] every agent of the goods PROP gadget has share 2."""
    g = gadget_3sat_skeleton(VALIDATION_FORMULA, Notion.PROP, Polarity.GOODS)
    assert set(prop_share(g).values()) == {2}


# ---------------------------------------------------------------- PROP family


def test_single_shared_item_prop_fails_prop1_holds():
    """[PAPER] one item, two agents: the loser misses PROP, adding the item rescues her."""
    inst = graph_instance(2, [(1, 2, 1, 1)])
    pi = {"e1": 1}
    rep = check_prop(inst, pi)
    assert not rep.holds
    (v,) = rep.violations
    assert v.agents == (2,) and v.lhs == 0 and v.rhs == F(1, 2)
    assert not v.recheck()
    assert check_prop1(inst, pi).holds


def test_triangle_cyclic_is_prop():
    """[DERIVED] each vertex gets 1 = PROP_i."""
    inst = triangle_ones()
    pi = {"e1": 1, "e2": 2, "e3": 3}
    assert prop_share(inst) == {1: 1, 2: 1, 3: 1}
    assert check_prop(inst, pi).holds


def test_chores_path_both_to_middle():
    """[DERIVED] -2 < -1 = PROP_2, but either removal reaches -1."""
    inst = graph_instance(3, [(1, 2, -1, -1), (2, 3, -1, -1)])
    pi = {"e1": 2, "e2": 2}
    assert not check_prop(inst, pi).holds
    assert check_prop1(inst, pi).holds
    assert check_propx(inst, pi).holds


def test_propx_counts_items_held_by_others():
    """[DERIVED] a zero-valued item held elsewhere must also rescue under PROPX."""
    # agent 1 values e at 2 and f (owned by 2) at 0; PROP_1 = 1 and v_1 = 0
    inst = make_instance(2, [("e", [1, 2], {1: 2, 2: 1}), ("f", [1, 2], {1: 0, 2: 1})])
    pi = {"e": 2, "f": 2}
    assert check_prop1(inst, pi).holds  # adding e rescues
    rep = check_propx(inst, pi)
    assert not rep.holds and rep.violations[0].item == "f"


def test_propx_remove_clause_over_zero_items():
    """[DERIVED] a held zero-valued item cannot be removed to reach the share."""
    inst = make_instance(2, [("e", [1, 2], {1: -2, 2: -1}), ("z", [1], {1: 0})])
    pi = {"e": 1, "z": 1}
    assert check_prop1(inst, pi).holds
    assert not check_propx(inst, pi).holds


def test_sprop1_example():
    """[DERIVED] u holds {5,3}: 8 >= (9-5)/2; v holds {1} valued 2 >= (6-2)/2."""
    inst = make_instance(2, [("a", [1, 2], {1: 5, 2: 2}), ("b", [1, 2], {1: 3, 2: 2}), ("c", [1, 2], {1: 1, 2: 2})])
    assert check_sprop1(inst, {"a": 1, "b": 1, "c": 2}).holds
    assert not check_sprop1(inst, {"a": 1, "b": 1, "c": 1}).holds


def test_sprop1_rejects_negative_values():
    inst = graph_instance(2, [(1, 2, -1, 1)])
    with pytest.raises(SPROP1OnNonGoods):
        check_sprop1(inst, {"e1": 1})


# ---------------------------------------------------------------- EQ family


def test_empty_bundles_are_equitable():
    """[TRIVIAL] all zeros."""
    inst = graph_instance(3, [(1, 2, 0, 0)])
    assert check_eq(inst, {"e1": 1}).holds


def test_k4_pendant_eq1_violation():
    """[PAPER] holder of two K4 edges at 2/3 against the empty pendant vertex."""
    inst = k4_plus_edge()
    # e1..e6 are K4 edges (12,13,14,23,24,34), e7 = (5,6)
    pi = {"e1": 1, "e2": 1, "e3": 4, "e4": 2, "e5": 4, "e6": 3, "e7": 5}
    assert agent_value(inst, pi, 1) == F(2, 3)
    rep = check_eq1(inst, pi)
    assert not rep.holds
    pairs = {v.agents for v in rep.violations}
    assert (6, 1) in pairs or (1, 6) in pairs
    for v in rep.violations:
        assert not v.recheck()


def test_one_item_bundle_eq1_and_eqx():
    """[TRIVIAL] removing the single item equalises."""
    inst = graph_instance(2, [(1, 2, 1, 1)])
    pi = {"e1": 1}
    assert not check_eq(inst, pi).holds
    assert check_eq1(inst, pi).holds
    assert check_eqx(inst, pi).holds


def test_eqx_needs_every_positive_item():
    """[DERIVED] bundle {1, 3} against 2: dropping the 3 gives EQ1, dropping the 1 breaks EQX."""
    inst = make_instance(2, [("a", [1, 2], {1: 1, 2: 1}), ("b", [1, 2], {1: 3, 2: 1}), ("c", [2], {2: 2})])
    pi = {"a": 1, "b": 1, "c": 2}
    assert check_eq1(inst, pi).holds
    rep = check_eqx(inst, pi)
    assert not rep.holds
    (v,) = rep.violations
    assert v.item == "a" and v.lhs == 2 and v.rhs == 3


def test_eqx_ignores_zero_valued_items():
    """[TRIVIAL] zero items fall outside both removal clauses; only equality can hold."""
    inst = make_instance(2, [("z", [1], {1: 0}), ("w", [2], {2: 0})])
    assert check_eqx(inst, {"z": 1, "w": 2}).holds


# ---------------------------------------------------------------- envy


def test_disjoint_agents_envy_only_with_negative_bundle():
    """[TRIVIAL] with zero-extension v_i(pi_j) = 0 for non-neighbours."""
    inst = graph_instance(4, [(1, 2, -1, -1), (3, 4, 1, 1)])
    pi = {"e1": 1, "e2": 3}
    rep = check_ef(inst, pi)
    assert {v.agents for v in rep.violations} == {(1, 2), (1, 3), (1, 4), (4, 3)}


def test_two_objectively_negative_edges_break_ef1():
    """[PAPER] an agent holding two negative edges, one shared with j, is not EF1."""
    inst = graph_instance(3, [(1, 2, -1, -1), (1, 3, -1, -1)])
    rep = check_ef1(inst, {"e1": 1, "e2": 1})
    assert not rep.holds
    assert all(v.agents[0] == 1 for v in rep.violations)
    assert check_ef1(inst, {"e1": 1, "e2": 3}).holds


def test_ef1_multi_gadget_heavy_edges_reduce_to_partition():
    """[PAPER] with one heavy edge per agent the heavy edge is always the one
    removed, so EF1 holds exactly for the balanced light splits."""
    inst = gadget_partition(PartitionInput.of([1, 1, 2]), GadgetKind.EF1MULTI, Polarity.CHORES)
    balanced = set()
    for owners in itertools.product((1, 2), repeat=3):
        pi = dict(zip(("e1", "e2", "e3"), owners))
        pi.update(e4=1, e5=3, e6=2, e7=3)
        if check_ef1(inst, pi).holds:
            balanced.add(owners)
    assert balanced == {(1, 1, 2), (2, 2, 1)}


# ---------------------------------------------------------------- report plumbing


def test_report_roundtrip_and_dispatch():
    inst = graph_instance(2, [(1, 2, 1, 1)])
    rep = check(inst, {"e1": 1}, "PROP")
    again = CheckReport.from_dict(rep.to_dict())
    assert again == rep
    assert not bool(rep)
    assert check(inst, {"e1": 1}, Notion.MMS).holds


# ---------------------------------------------------------------- non-malicious and fPO


def test_good_consumed_by_nonpositive_valuer_is_malicious():
    """[TRIVIAL] witness (agent, item)."""
    inst = make_instance(2, [("g", [1, 2], {1: 1, 2: -1})])
    frac = FractionalOrientation({(1, "g"): F(1, 2), (2, "g"): F(1, 2)})
    rep = check_non_malicious(inst, frac)
    (v,) = rep.violations
    assert v.agents == (2,) and v.item == "g"
    assert not check_fpo(inst, frac).holds


def test_equal_split_pure_good_is_non_malicious_and_fpo():
    """[TRIVIAL] the 2-cycle has product exactly 1."""
    inst = graph_instance(2, [(1, 2, 1, 1)])
    frac = FractionalOrientation({(1, "e1"): F(1, 2), (2, "e1"): F(1, 2)})
    assert check_non_malicious(inst, frac).holds
    assert check_fpo(inst, frac).holds


def test_neutral_item_with_negative_consumer_is_malicious():
    inst = make_instance(2, [("z", [1, 2], {1: 0, 2: -1})])
    frac = FractionalOrientation({(1, "z"): F(1, 2), (2, "z"): F(1, 2)})
    assert not check_non_malicious(inst, frac).holds


def test_highest_valuer_allocation_is_fpo():
    """[TRIVIAL] each item with its unique best valuer."""
    inst = make_instance(3, [("a", [1, 2], {1: 3, 2: 1}), ("b", [2, 3], {2: 2, 3: 1}), ("c", [1, 3], {1: 1, 3: 4})])
    assert check_fpo(inst, {"a": 1, "b": 2, "c": 3}).holds


def test_swapped_goods_equal_split_not_fpo():
    """[DERIVED] (3,1)/(1,3) split equally gives 2 each; swapping to the
    favourites gives 3 each, and the checker finds a product-<1 cycle."""
    inst = make_instance(2, [("e1", [1, 2], {1: 3, 2: 1}), ("e2", [1, 2], {1: 1, 2: 3})])
    half = F(1, 2)
    frac = FractionalOrientation({(1, "e1"): half, (2, "e1"): half, (1, "e2"): half, (2, "e2"): half})
    rep = check_fpo(inst, frac)
    assert not rep.holds
    (v,) = rep.violations
    assert v.lhs == F(1, 9) and "cycle" in v.detail
    better = {"e1": 1, "e2": 2}
    assert all(agent_value(inst, better, i) > agent_value(inst, frac, i) for i in (1, 2))


def test_everything_to_one_positive_valuer_is_fpo():
    """[DERIVED] the other agent can only gain at the holder's expense."""
    inst = make_instance(2, [("e1", [1, 2], {1: 3, 2: 1}), ("e2", [1, 2], {1: 1, 2: 3})])
    pi = {"e1": 1, "e2": 1}
    assert check_fpo(inst, pi).holds
    assert check_po_exhaustive(inst, pi).holds


def test_negative_valuer_of_a_good_opens_no_cycle():
    """[DERIVED] agent 2 dislikes good e; a literal edge 2 -> e would close a
    cycle 1 -> f -> 2 -> e -> 3 -> g -> 1 of product 1/2, yet the allocation
    maximises unweighted welfare, so it is fPO."""
    inst = make_instance(3, [
        ("e", [1, 2, 3], {1: 2, 2: -1, 3: 2}),
        ("f", [1, 2], {1: -1, 2: -1}),
        ("g", [1, 3], {1: 1, 3: 1}),
    ])
    pi = {"e": 1, "f": 2, "g": 3}
    assert check_fpo(inst, pi).holds
    assert check_po_exhaustive(inst, pi).holds
