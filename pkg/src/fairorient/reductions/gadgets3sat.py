"""2P2N-3SAT gadgets for PROP and PROPX orientations.

The prose fixes the variable gadgets, clause vertices, literal edges, anchor
edges and the per-clause dummy counts; the dummy-internal edges come from a
:class:`ClauseWiring` plug-in whose behaviour is certified locally by
:func:`verify_forcing_property` on a single clause fragment.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .._batch import BatchEvaluator
from ..fairness import CheckReport, Notion, Violation, check_prop_family
from ..model import Instance, Orientation, make_instance
from .partition import Polarity
from .sat import AssignmentDoesNotSatisfy, Formula2P2N


class WiringCountMismatch(ValueError):
    pass


class ForcingPropertyUnverified(ValueError):
    pass


# dummies per clause, vertex total, edge total (as functions of s and t)
SHAPES = {
    Notion.PROP: {"dummies": 11, "vertices": (2, 12), "edges": (1, 17), "variable_value": 2},
    Notion.PROPX: {"dummies": 6, "vertices": (2, 7), "edges": (1, 11), "variable_value": 1},
}

# Owner of each anchor edge in the intended orientation: "c" or "d".
ANCHOR_INTENT = {
    (Notion.PROP, Polarity.GOODS): ("c",),
    (Notion.PROP, Polarity.CHORES): ("d",),
    (Notion.PROPX, Polarity.GOODS): ("d", "c"),
    (Notion.PROPX, Polarity.CHORES): ("c", "d"),
}


@dataclass(frozen=True)
class ClauseWiring:
    """Dummy-internal structure of one clause gadget, in goods polarity.

    ``internal`` holds ``(a, b, value_a, value_b)`` over dummy indices
    1..dummies; ``anchors`` holds ``(dummy, value_c, value_dummy)``; the first
    anchor is the one whose direction is forced.  ``intended`` maps a
    polarity name to the owner (a dummy index) of every internal edge.
    """

    notion: Notion
    dummies: int
    internal: tuple[tuple[int, int, int, int], ...]
    anchors: tuple[tuple[int, int, int], ...]
    intended: dict[str, tuple[int, ...]] = field(default_factory=dict, compare=False, hash=False)

    def with_intended(self, polarity: Polarity, owners: tuple[int, ...]) -> ClauseWiring:
        return ClauseWiring(self.notion, self.dummies, self.internal, self.anchors,
                            {**self.intended, polarity.value: tuple(owners)})


def _value(notion: Notion, polarity: Polarity, v: int, *, c_anchor: int | None = None) -> int:
    """Goods-polarity value -> value under ``polarity``.  For PROPX chores the
    clause vertex values the forced anchor at 0."""
    if polarity is Polarity.GOODS:
        return v
    if notion is Notion.PROPX and c_anchor == 0:
        return 0
    return -v


def _anchor_values(wiring: ClauseWiring, polarity: Polarity, k: int) -> tuple[int, int]:
    _, vc, vd = wiring.anchors[k]
    return (_value(wiring.notion, polarity, vc, c_anchor=k), _value(wiring.notion, polarity, vd))


# ---------------------------------------------------------------- fragment check


def clause_fragment(wiring: ClauseWiring, polarity: Polarity | str) -> Instance:
    """c (agent 1), dummies (2..k+1), three boundary stand-ins valuing their literal edge at 0."""
    polarity = Polarity.parse(polarity)
    k = wiring.dummies
    items = []
    for r, (d, _, _) in enumerate(wiring.anchors):
        vc, vd = _anchor_values(wiring, polarity, r)
        items.append((f"a{r + 1}", (1, 1 + d), {1: vc, 1 + d: vd}))
    for r, (a, b, va, vb) in enumerate(wiring.internal):
        items.append((f"d{r + 1}", (1 + a, 1 + b), {1 + a: _value(wiring.notion, polarity, va),
                                                     1 + b: _value(wiring.notion, polarity, vb)}))
    for r in range(3):
        items.append((f"l{r + 1}", (1, k + 2 + r), {1: polarity.sign, k + 2 + r: 0}))
    labels = {1: "c"} | {1 + d: f"d{d}" for d in range(1, k + 1)} | {k + 2 + r: f"lit{r + 1}" for r in range(3)}
    return make_instance(k + 4, items, labels)


def _fragment_tables(wiring: ClauseWiring, polarity: Polarity):
    frag = clause_fragment(wiring, polarity)
    ev = BatchEvaluator(frag)
    O = ev.owners(0, frag.orientation_count())
    ok = ev.agent_ok(wiring.notion, O)
    k = wiring.dummies
    na = len(wiring.anchors)
    ni = len(wiring.internal)
    dummies_ok = ok[1 : k + 1].all(axis=0) if k else np.ones(O.shape[0], dtype=bool)
    c_ok = ok[0]
    lit_to_c = O[:, na + ni :] == 0
    satisfied = lit_to_c if polarity is Polarity.GOODS else ~lit_to_c
    intent = ANCHOR_INTENT[(wiring.notion, polarity)]
    anchors_intended = np.ones(O.shape[0], dtype=bool)
    for r, who in enumerate(intent):
        at_c = O[:, r] == 0
        anchors_intended &= at_c if who == "c" else ~at_c
    return frag, O, dummies_ok, c_ok, satisfied, anchors_intended


def verify_forcing_property(wiring: ClauseWiring, polarity: Polarity | str) -> CheckReport:
    """Exhaustive local certificate for a clause gadget.

    (a) with the anchors as intended, some internal orientation satisfies
        every dummy, and then the clause vertex is satisfied for each of the
        seven non-empty sets of satisfied literals;
    (b) PROPX only: whenever every dummy is satisfied, the forced anchor
        points as intended, whatever the boundary;
    (c) with no satisfied literal, no orientation satisfies the clause vertex
        and every dummy together.
    """
    polarity = Polarity.parse(polarity)
    name = f"forcing-{wiring.notion.value}"
    if len(wiring.anchors) + len(wiring.internal) + 3 > 20:
        from ..oracle import SpaceTooLarge

        raise SpaceTooLarge(2 ** (len(wiring.anchors) + len(wiring.internal) + 3), 2**20, "fragment")
    frag, O, dummies_ok, c_ok, satisfied, anchors_intended = _fragment_tables(wiring, polarity)
    out: list[Violation] = []
    base = dummies_ok & anchors_intended
    intended = wiring.intended.get(polarity.value)
    if intended is not None:
        na = len(wiring.anchors)
        cols = O[:, na : na + len(wiring.internal)]
        # dummy d is fragment agent d + 1, i.e. row value d
        want = np.array(intended, dtype=np.int64)
        base &= (cols == want[None, :]).all(axis=1) if len(want) else True
    for pattern in itertools.product((True, False), repeat=3):
        if not any(pattern):
            continue
        match = (satisfied == np.array(pattern)[None, :]).all(axis=1)
        if not (base & match & c_ok).any():
            out.append(Violation(name, (1,), Fraction(0), Fraction(1), detail={
                "condition": "a", "satisfied_literals": [r + 1 for r, p in enumerate(pattern) if p]}))
    if wiring.notion is Notion.PROPX:
        first_intent = ANCHOR_INTENT[(wiring.notion, polarity)][0]
        at_c = O[:, 0] == 0
        wrong = dummies_ok & (~at_c if first_intent == "c" else at_c)
        if wrong.any():
            idx = int(np.flatnonzero(wrong)[0])
            out.append(Violation(name, (1,), Fraction(0), Fraction(1), detail={
                "condition": "b", "orientation": _row_orientation(frag, O[idx])}))
    none = ~satisfied.any(axis=1)
    bad = none & dummies_ok & c_ok
    if bad.any():
        idx = int(np.flatnonzero(bad)[0])
        out.append(Violation(name, (1,), Fraction(0), Fraction(1), detail={
            "condition": "c", "orientation": _row_orientation(frag, O[idx])}))
    return CheckReport(name, tuple(out))


def _row_orientation(frag: Instance, row) -> dict[str, int]:
    return {e: int(a) + 1 for e, a in zip(frag.item_ids, row)}


def find_intended_orientation(wiring: ClauseWiring, polarity: Polarity | str) -> tuple[int, ...] | None:
    """First internal orientation (as dummy owners) usable as the intended one."""
    polarity = Polarity.parse(polarity)
    _, O, dummies_ok, c_ok, satisfied, anchors_intended = _fragment_tables(wiring, polarity)
    na, ni = len(wiring.anchors), len(wiring.internal)
    good = dummies_ok & anchors_intended
    rows = np.flatnonzero(good)
    if not rows.size:
        return None
    internal = O[:, na : na + ni]
    seen = set()
    for r in rows:
        key = tuple(int(x) for x in internal[r])
        if key in seen:
            continue
        seen.add(key)
        same = good & (internal == internal[r][None, :]).all(axis=1)
        ok = True
        for pattern in itertools.product((True, False), repeat=3):
            if any(pattern):
                match = (satisfied == np.array(pattern)[None, :]).all(axis=1)
                if not (same & match & c_ok).any():
                    ok = False
                    break
        if ok:
            return key
    return None


# ---------------------------------------------------------------- wiring search


def prop_wiring_candidates() -> Iterator[ClauseWiring]:
    """Fixed topology (triangle d1d2d3, 4-cycles d4..d7 and d8..d11, chords
    (d2,d4) and (d3,d8)); values in {1,2} with every dummy's total equal to 4."""
    edges = [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 7), (7, 4),
             (8, 9), (9, 10), (10, 11), (11, 8), (2, 4), (3, 8)]
    anchor_d = {1: 1}
    incident = {d: [k for k, e in enumerate(edges) if d in e] for d in range(1, 12)}
    options = []
    for d in range(1, 12):
        need = 4 - anchor_d.get(d, 0)
        opts = [c for c in itertools.product((1, 2), repeat=len(incident[d])) if sum(c) == need]
        options.append(opts)
    for combo in itertools.product(*options):
        vals = {}
        for d, choice in zip(range(1, 12), combo):
            for k, v in zip(incident[d], choice):
                vals[(k, d)] = v
        internal = tuple((a, b, vals[(k, a)], vals[(k, b)]) for k, (a, b) in enumerate(edges))
        yield ClauseWiring(Notion.PROP, 11, internal, ((1, 1, 1),))


def propx_wiring_candidates() -> Iterator[ClauseWiring]:
    """Six edges on six dummies (no isolated dummy, simple), binary values,
    anchors (c,d1) and (c,d4) valued 1 by c and d1, d4's anchor value free."""
    pairs = list(itertools.combinations(range(1, 7), 2))
    for edges in itertools.combinations(pairs, 6):
        if len({v for e in edges for v in e}) < 6:
            continue
        for flat in itertools.product((1, 0), repeat=12):
            internal = tuple((a, b, flat[2 * k], flat[2 * k + 1]) for k, (a, b) in enumerate(edges))
            for d4 in (1, 0):
                yield ClauseWiring(Notion.PROPX, 6, internal, ((1, 1, 1), (4, 1, d4)))


def search_wiring(notion: Notion | str, candidates=None, limit: int | None = None) -> ClauseWiring | None:
    """First candidate passing the forcing property in both polarities, with
    intended orientations attached."""
    notion = Notion(notion)
    if candidates is None:
        candidates = prop_wiring_candidates() if notion is Notion.PROP else propx_wiring_candidates()
    for n_tried, w in enumerate(candidates, 1):
        if limit is not None and n_tried > limit:
            return None
        found = w
        for pol in Polarity:
            owners = find_intended_orientation(found, pol)
            if owners is None:
                break
            found = found.with_intended(pol, owners)
            if not verify_forcing_property(found, pol).holds:
                break
        else:
            return found
    return None


# ---------------------------------------------------------------- full gadget


@dataclass(frozen=True)
class GadgetLayout:
    """Agent numbering of a built gadget."""

    s: int
    t: int
    dummies: int

    def var(self, i: int) -> int:
        return 2 * i - 1

    def neg(self, i: int) -> int:
        return 2 * i

    def literal(self, lit: int) -> int:
        return self.var(lit) if lit > 0 else self.neg(-lit)

    def clause(self, j: int) -> int:
        return 2 * self.s + (j - 1) * (self.dummies + 1) + 1

    def dummy(self, j: int, d: int) -> int:
        return self.clause(j) + d


_VERIFIED: dict[tuple, bool] = {}


def _certified(wiring: ClauseWiring, polarity: Polarity) -> bool:
    key = (wiring, tuple(sorted(wiring.intended.items())), polarity)
    if key not in _VERIFIED:
        _VERIFIED[key] = verify_forcing_property(wiring, polarity).holds
    return _VERIFIED[key]


def gadget_3sat_skeleton(
    formula: Formula2P2N,
    notion: Notion | str,
    polarity: Polarity | str,
    wiring: ClauseWiring | None = None,
) -> Instance:
    notion = Notion(notion)
    polarity = Polarity.parse(polarity)
    if notion not in SHAPES:
        raise ValueError(f"3SAT gadgets exist for PROP and PROPX, not {notion.value}")
    if wiring is None:
        from .wirings import default_wiring

        wiring = default_wiring(notion)
    shape = SHAPES[notion]
    if wiring.notion is not notion:
        raise WiringCountMismatch(f"wiring is for {wiring.notion.value}, gadget for {notion.value}")
    if wiring.dummies != shape["dummies"]:
        raise WiringCountMismatch(f"{notion.value} clauses need {shape['dummies']} dummies, wiring has {wiring.dummies}")
    expected_edges = shape["edges"][1] - 3
    if len(wiring.internal) + len(wiring.anchors) != expected_edges:
        raise WiringCountMismatch(
            f"{notion.value} clauses need {expected_edges} non-literal edges, wiring has "
            f"{len(wiring.internal) + len(wiring.anchors)}")
    if not _certified(wiring, polarity):
        raise ForcingPropertyUnverified(f"wiring fails the forcing property for {notion.value} {polarity.value}")

    lay = GadgetLayout(formula.s, formula.t, wiring.dummies)
    sign = polarity.sign
    items = []
    labels = {}
    varv = shape["variable_value"] * sign
    for i in range(1, formula.s + 1):
        labels[lay.var(i)] = f"x{i}"
        labels[lay.neg(i)] = f"~x{i}"
        items.append((f"v{i}", (lay.var(i), lay.neg(i)), {lay.var(i): varv, lay.neg(i): varv}))
    for j, clause in enumerate(formula.clauses, 1):
        c = lay.clause(j)
        labels[c] = f"c{j}"
        for d in range(1, wiring.dummies + 1):
            labels[lay.dummy(j, d)] = f"d{j}.{d}"
        for r, lit in enumerate(clause, 1):
            u = lay.literal(lit)
            items.append((f"l{j}.{r}", (c, u), {c: sign, u: sign}))
        for r, (d, _, _) in enumerate(wiring.anchors):
            vc, vd = _anchor_values(wiring, polarity, r)
            items.append((f"a{j}.{r + 1}", (c, lay.dummy(j, d)), {c: vc, lay.dummy(j, d): vd}))
        for r, (a, b, va, vb) in enumerate(wiring.internal, 1):
            ua, ub = lay.dummy(j, a), lay.dummy(j, b)
            items.append((f"d{j}.{r}", (ua, ub), {ua: _value(notion, polarity, va),
                                                  ub: _value(notion, polarity, vb)}))
    n_agents = 2 * formula.s + formula.t * (wiring.dummies + 1)
    inst = make_instance(n_agents, items, labels)
    vs, vt = shape["vertices"]
    es, et = shape["edges"]
    if inst.n != vs * formula.s + vt * formula.t or inst.m != es * formula.s + et * formula.t:
        raise WiringCountMismatch(f"gadget has {inst.n} vertices / {inst.m} edges")
    return inst


def witness_orientation_from_assignment(
    gadget: Instance,
    formula: Formula2P2N,
    assignment,
    notion: Notion | str,
    polarity: Polarity | str,
    wiring: ClauseWiring | None = None,
) -> Orientation:
    """Orientation built by the constructive rules from a satisfying assignment.

    Goods: the variable edge goes to the true literal's vertex and true
    literals' edges go to their clauses.  Chores: the variable edge goes to
    the false literal's vertex and false literals' edges go to their clauses.
    """
    notion = Notion(notion)
    polarity = Polarity.parse(polarity)
    if isinstance(assignment, (list, tuple)):
        assignment = dict(enumerate(assignment, 1))
    if not formula.satisfies(assignment):
        raise AssignmentDoesNotSatisfy("assignment leaves a clause unsatisfied")
    if wiring is None:
        from .wirings import default_wiring

        wiring = default_wiring(notion)
    lay = GadgetLayout(formula.s, formula.t, wiring.dummies)
    goods = polarity is Polarity.GOODS
    owner: dict[str, int] = {}
    for i in range(1, formula.s + 1):
        true_vertex = lay.var(i) if assignment[i] else lay.neg(i)
        false_vertex = lay.neg(i) if assignment[i] else lay.var(i)
        owner[f"v{i}"] = true_vertex if goods else false_vertex
    intended_owners = wiring.intended[polarity.value]
    intent = ANCHOR_INTENT[(notion, polarity)]
    for j, clause in enumerate(formula.clauses, 1):
        c = lay.clause(j)
        for r, lit in enumerate(clause, 1):
            is_true = assignment[abs(lit)] == (lit > 0)
            to_clause = is_true if goods else not is_true
            owner[f"l{j}.{r}"] = c if to_clause else lay.literal(lit)
        for r, (d, _, _) in enumerate(wiring.anchors):
            owner[f"a{j}.{r + 1}"] = c if intent[r] == "c" else lay.dummy(j, d)
        for r, d in enumerate(intended_owners, 1):
            owner[f"d{j}.{r}"] = lay.dummy(j, d)
    return Orientation({e: owner[e] for e in gadget.item_ids})


def check_witness(gadget: Instance, orientation: Orientation, notion: Notion | str) -> CheckReport:
    return check_prop_family(gadget, orientation, notion)
