"""Polynomial-time constructive algorithms.

Tie-breaking everywhere is lowest agent id, then lowest item index, so every
solver and trace is deterministic.
"""
from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .consumption import (
    cycle_product,
    find_product_cycle,
    item_kind,
    is_good,
    undirected_cycle,
)
from .fairness import check_non_malicious, prop_share
from .matching import MatchingGraph, max_bipartite_matching
from .model import (
    FractionalOrientation,
    GraphClass,
    Instance,
    Orientation,
    all_values,
    classify_graph,
)


class NonBinaryValues(ValueError):
    pass


class MixedSigns(ValueError):
    pass


class MaliciousInput(ValueError):
    pass


class CyclicConsumptionGraph(ValueError):
    pass


class NotMultigraph(ValueError):
    pass


class NegativeValues(ValueError):
    pass


class NotSimpleGraph(ValueError):
    pass


class PositiveValues(ValueError):
    pass


# ---------------------------------------------------------------- binary PROP


def binary_polarity(instance: Instance) -> int:
    """+1 for a {0,1} instance, -1 for a {0,-1} instance (all-zero counts as goods)."""
    seen = set()
    for it in instance.items:
        for v in it.values.values():
            if v not in (-1, 0, 1):
                raise NonBinaryValues(f"item {it.id!r} has non-binary value {v}")
            seen.add(int(v))
    if 1 in seen and -1 in seen:
        raise MixedSigns("binary solver needs a goods- or a chores-instance, got both signs")
    return -1 if -1 in seen else 1


def build_prop_matching_graph(instance: Instance) -> tuple[dict[str, int], MatchingGraph, int]:
    """Pre-assignment, the item/agent-copy graph and the polarity.

    Goods: agent copies number ceil(PROP_i) - a_i; a Y-perfect (copy
    saturating) matching decides existence.  Chores: floor(|PROP_i|) copies;
    an X-perfect (item saturating) matching decides existence.
    """
    polarity = binary_polarity(instance)
    shares = prop_share(instance)
    pre: dict[str, int] = {}
    remaining: list[str] = []
    if polarity > 0:
        gained = defaultdict(int)
        for it in instance.items:
            likers = [i for i in it.relevant if it.value(i) == 1]
            if not likers:
                pre[it.id] = it.relevant[0]
            elif len(likers) == 1:
                pre[it.id] = likers[0]
                gained[likers[0]] += 1
            else:
                remaining.append(it.id)
        copies = {i: max(0, math.ceil(shares[i]) - gained[i]) for i in instance.agents}
        edge_ok = lambda i, it: it.value(i) == 1  # noqa: E731
    else:
        for it in instance.items:
            zeros = [i for i in it.relevant if it.value(i) == 0]
            if zeros:
                pre[it.id] = zeros[0]
            else:
                remaining.append(it.id)
        copies = {i: math.floor(abs(shares[i])) for i in instance.agents}
        edge_ok = lambda i, it: True  # noqa: E731
    right = [(i, c) for i in instance.agents for c in range(copies[i])]
    adj = {
        e: [(i, c) for i in instance.item(e).relevant if edge_ok(i, instance.item(e)) for c in range(copies[i])]
        for e in remaining
    }
    return pre, MatchingGraph(adj, right), polarity


def solve_prop_binary(instance: Instance) -> Orientation | None:
    """A PROP orientation for binary valuations, or None if none exists."""
    pre, graph, polarity = build_prop_matching_graph(instance)
    matching = max_bipartite_matching(graph)
    owner = dict(pre)
    if polarity > 0:
        if len(matching) < len(graph.right):
            return None
        for e, (i, _) in matching.items():
            owner[e] = i
        for e in graph.adj:
            if e not in owner:
                owner[e] = instance.item(e).relevant[0]
    else:
        if len(matching) < len(graph.adj):
            return None
        for e, (i, _) in matching.items():
            owner[e] = i
    return Orientation({e: owner[e] for e in instance.item_ids})


# ---------------------------------------------------------------- PROP1 + fPO pipeline


@dataclass
class PipelineTrace:
    """Snapshots of the fractional pipeline and a log of eliminated cycles."""

    stages: list[tuple[str, FractionalOrientation]] = field(default_factory=list)
    values: list[dict[int, Fraction]] = field(default_factory=list)
    cycles: list[dict[str, Any]] = field(default_factory=list)
    final: Orientation | None = None

    def record(self, instance: Instance, name: str, frac: FractionalOrientation) -> None:
        self.stages.append((name, frac))
        self.values.append(all_values(instance, frac))

    def to_dict(self) -> dict[str, Any]:
        from .model import format_rational

        return {
            "stages": [
                {"name": name, "values": {str(i): format_rational(v) for i, v in vals.items()}}
                for (name, _), vals in zip(self.stages, self.values)
            ],
            "cycles": [
                {
                    "cycle": [str(x) for x in c["cycle"]],
                    "product": format_rational(c["product"]),
                    "kind": c["kind"],
                }
                for c in self.cycles
            ],
            "final": dict(self.final) if self.final is not None else None,
        }


def equal_split_fractional(instance: Instance) -> FractionalOrientation:
    return FractionalOrientation(
        {(i, it.id): Fraction(1, it.n_e) for it in instance.items for i in it.relevant}
    )


def make_non_malicious(instance: Instance, frac: FractionalOrientation) -> FractionalOrientation:
    """Move goods away from non-positive valuers and neutral items away from
    negative valuers (to the lowest-id eligible agent)."""
    share = dict(frac.items())
    for it in instance.items:
        kind = item_kind(instance, it.id)
        if is_good(kind):
            bad = lambda v: v <= 0  # noqa: E731
            target = next(i for i in it.relevant if it.value(i) > 0)
        elif kind == "neutral":
            bad = lambda v: v < 0  # noqa: E731
            target = next(i for i in it.relevant if it.value(i) == 0)
        else:
            continue
        for i in it.relevant:
            q = share.get((i, it.id), 0)
            if q and bad(it.value(i)):
                del share[(i, it.id)]
                share[(target, it.id)] = share.get((target, it.id), 0) + q
    return FractionalOrientation(share)


def _shift_along(instance: Instance, share: dict, cycle: list) -> Fraction:
    """Move the largest amounts along ``cycle`` that keep every agent except
    the first exactly indifferent; returns the first transfer amount."""
    L = len(cycle) // 2
    agents = cycle[0::2]
    items = cycle[1::2]
    ratios = [Fraction(1)]
    for k in range(1, L):
        ratios.append(
            ratios[-1] * abs(instance.value(agents[k], items[k - 1])) / abs(instance.value(agents[k], items[k]))
        )
    moves = []
    for k in range(L):
        i, e, nxt = agents[k], items[k], agents[(k + 1) % L]
        giver, taker = (i, nxt) if instance.value(i, e) > 0 else (nxt, i)
        moves.append((giver, taker, e))
    eps = min(share.get((g, e), Fraction(0)) / r for (g, _, e), r in zip(moves, ratios))
    for (g, t, e), r in zip(moves, ratios):
        amount = eps * r
        left = share[(g, e)] - amount
        if left:
            share[(g, e)] = left
        else:
            del share[(g, e)]
        share[(t, e)] = share.get((t, e), 0) + amount
    return eps


def _reverse_cycle(cycle: list) -> list:
    agents = cycle[0::2]
    items = cycle[1::2]
    out = [agents[0]]
    L = len(agents)
    for k in range(L - 1, -1, -1):
        out.append(items[k])
        if k:
            out.append(agents[k])
    return out


def eliminate_product_cycles(
    instance: Instance, frac: FractionalOrientation, trace: PipelineTrace | None = None
) -> FractionalOrientation:
    """Pareto-improve to an fPO fractional orientation with an acyclic
    consumption graph.

    First every directed cycle with product < 1 is cancelled (a weak Pareto
    improvement); then shared zero-valued items are consolidated and every
    remaining undirected consumption cycle, whose product is exactly 1 in
    both directions, is cancelled without changing any value.
    """
    if not check_non_malicious(instance, frac).holds:
        raise MaliciousInput("cycle elimination needs a non-malicious input")
    share = dict(frac.items())
    limit = 50 * (instance.n + 1) * (instance.m + 1) ** 2
    steps = 0

    def log(kind, cycle, current):
        nonlocal steps
        steps += 1
        if steps > limit:
            raise RuntimeError("cycle elimination exceeded its iteration bound")
        if trace is not None:
            trace.cycles.append({"cycle": cycle, "product": cycle_product(instance, cycle), "kind": kind})
            trace.record(instance, f"{kind} cycle {len(trace.cycles)}", current)

    while True:
        current = FractionalOrientation(share)
        cycle = find_product_cycle(instance, current)
        if cycle is None:
            break
        _shift_along(instance, share, cycle)
        log("improving", cycle, FractionalOrientation(share))

    for it in instance.items:
        if item_kind(instance, it.id) != "neutral":
            continue
        holders = [i for i in it.relevant if (i, it.id) in share]
        if len(holders) > 1:
            for i in holders:
                del share[(i, it.id)]
            share[(holders[0], it.id)] = Fraction(1)

    while True:
        current = FractionalOrientation(share)
        cycle = undirected_cycle(current)
        if cycle is None:
            break
        if cycle_product(instance, cycle) > 1:
            cycle = _reverse_cycle(cycle)
        _shift_along(instance, share, cycle)
        log("neutral", cycle, FractionalOrientation(share))
    return FractionalOrientation(share)


def round_acyclic_fractional(instance: Instance, frac: FractionalOrientation) -> Orientation:
    """Round along the consumption forest: a non-negative item goes to its
    parent agent, a negative item to its lowest-id child agent (if any)."""
    if undirected_cycle(frac) is not None:
        raise CyclicConsumptionGraph("consumption graph has a cycle")
    consumers: dict[str, list[int]] = defaultdict(list)
    holdings: dict[int, list[str]] = defaultdict(list)
    for (i, e) in frac:
        consumers[e].append(i)
        holdings[i].append(e)
    for lst in consumers.values():
        lst.sort()
    for i in holdings:
        holdings[i].sort(key=instance.index.__getitem__)
    owner: dict[str, int] = {}
    seen_agents: set[int] = set()
    for root in instance.agents:
        if root in seen_agents or root not in holdings:
            continue
        seen_agents.add(root)
        q = deque([root])
        while q:
            parent = q.popleft()
            for e in holdings[parent]:
                if e in owner:
                    continue
                children = [j for j in consumers[e] if j != parent]
                if instance.value(parent, e) >= 0 or not children:
                    owner[e] = parent
                else:
                    owner[e] = children[0]
                for j in children:
                    seen_agents.add(j)
                    q.append(j)
    return Orientation({e: owner[e] for e in instance.item_ids})


def solve_prop1_fpo(instance: Instance) -> tuple[Orientation, PipelineTrace]:
    """PROP1 and fPO orientation: equal split, non-malicious repair, cycle
    elimination, forest rounding."""
    trace = PipelineTrace()
    frac = equal_split_fractional(instance)
    trace.record(instance, "equal split", frac)
    frac = make_non_malicious(instance, frac)
    trace.record(instance, "non-malicious", frac)
    frac = eliminate_product_cycles(instance, frac, trace)
    trace.record(instance, "acyclic", frac)
    pi = round_acyclic_fractional(instance, frac)
    trace.record(instance, "rounded", FractionalOrientation.lift(pi))
    trace.final = pi
    return pi, trace


# ---------------------------------------------------------------- SPROP1 greedy


def greedy_sprop1(instance: Instance, start: int | None = None) -> Orientation:
    """Walk the multigraph: the current vertex takes her best remaining edge,
    then the other endpoint of that edge moves next."""
    if any(it.n_e != 2 for it in instance.items):
        raise NotMultigraph("greedy SPROP1 needs every item relevant to exactly two agents")
    if not instance.is_goods():
        raise NegativeValues("greedy SPROP1 needs a goods-instance")
    remaining = {i: list(es) for i, es in instance.relevant_items.items()}
    owner: dict[str, int] = {}
    if start is not None and not 1 <= start <= instance.n:
        raise ValueError(f"start vertex {start} is not an agent")
    cur = start if start is not None and remaining[start] else None
    while len(owner) < instance.m:
        if cur is None or not remaining[cur]:
            cur = next(i for i in instance.agents if remaining[i])
        best = max(remaining[cur], key=lambda e: (instance.value(cur, e), -instance.index[e]))
        owner[best] = cur
        u, v = instance.item(best).relevant
        remaining[u].remove(best)
        remaining[v].remove(best)
        cur = v if cur == u else u
    return Orientation({e: owner[e] for e in instance.item_ids})


# ---------------------------------------------------------------- EF1 chores


def objectively_negative_components(instance: Instance) -> list[tuple[list[int], list[str]]]:
    """Connected components (vertices, edges) of the objectively negative edges."""
    adj: dict[int, list[tuple[int, str]]] = defaultdict(list)
    for it in instance.items:
        u, v = it.relevant
        if it.value(u) < 0 and it.value(v) < 0:
            adj[u].append((v, it.id))
            adj[v].append((u, it.id))
    seen: set[int] = set()
    comps = []
    for root in sorted(adj):
        if root in seen:
            continue
        verts, edges = [], set()
        stack = [root]
        seen.add(root)
        while stack:
            x = stack.pop()
            verts.append(x)
            for y, e in adj[x]:
                edges.add(e)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append((sorted(verts), sorted(edges, key=instance.index.__getitem__)))
    return comps


def ef1_chores_global_condition(instance: Instance) -> bool:
    """Count test as stated globally: #objectively negative edges <= #vertices."""
    count = sum(len(edges) for _, edges in objectively_negative_components(instance))
    return count <= instance.n


def solve_ef1_chores_simple(instance: Instance) -> Orientation | None:
    """EF1 orientation of a simple-graph chores-instance, or None.

    Exists iff every component of the objectively negative subgraph has no
    more edges than vertices; then every vertex absorbs at most one such edge.
    """
    if classify_graph(instance) is not GraphClass.SIMPLE:
        raise NotSimpleGraph("EF1 chores solver needs a simple graph")
    if not instance.is_chores():
        raise PositiveValues("EF1 chores solver needs a chores-instance")
    owner: dict[str, int] = {}
    for it in instance.items:
        zeros = [i for i in it.relevant if it.value(i) == 0]
        if zeros:
            owner[it.id] = zeros[0]
    for verts, edges in objectively_negative_components(instance):
        if len(edges) > len(verts):
            return None
        owner.update(_orient_pseudotree(instance, verts, edges))
    return Orientation({e: owner[e] for e in instance.item_ids})


def _orient_pseudotree(instance: Instance, verts: list[int], edges: list[str]) -> dict[str, int]:
    adj: dict[int, list[tuple[int, str]]] = defaultdict(list)
    for e in edges:
        u, v = instance.item(e).relevant
        adj[u].append((v, e))
        adj[v].append((u, e))
    owner: dict[str, int] = {}
    roots: list[int]
    if len(edges) == len(verts):
        cycle_v, cycle_e = _unique_cycle(adj, verts[0])
        for k, e in enumerate(cycle_e):
            owner[e] = cycle_v[(k + 1) % len(cycle_v)]
        roots = cycle_v
    else:
        roots = [verts[0]]
    seen = set(roots)
    q = deque(roots)
    while q:
        x = q.popleft()
        for y, e in sorted(adj[x]):
            if e in owner:
                continue
            owner[e] = y
            if y not in seen:
                seen.add(y)
                q.append(y)
    return owner


def _unique_cycle(adj, start):
    """Vertices and edges of the single cycle of a connected unicyclic graph,
    in walk order: edge k joins vertex k and vertex k+1."""
    degree = {x: len(nbrs) for x, nbrs in adj.items()}
    alive = set(adj)
    leaves = deque(x for x in adj if degree[x] == 1)
    while leaves:
        x = leaves.popleft()
        alive.discard(x)
        for y, _ in adj[x]:
            if y in alive:
                degree[y] -= 1
                if degree[y] == 1:
                    leaves.append(y)
    first = min(alive)
    verts, edges = [first], []
    prev_edge = None
    x = first
    while True:
        y, e = min((y, e) for y, e in adj[x] if y in alive and e != prev_edge)
        edges.append(e)
        if y == first:
            return verts, edges
        verts.append(y)
        prev_edge, x = e, y
