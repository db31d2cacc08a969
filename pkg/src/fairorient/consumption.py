"""Consumption graphs of fractional orientations and product-cycle search.

Nodes are ``("a", agent)`` and ``("e", item_id)``.  A directed cycle
``i1 -> e1 -> i2 -> ... -> eL -> i1`` is stored as the alternating list
``[i1, e1, i2, e2, ..., iL, eL]``.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Hashable

from .model import FractionalOrientation, Instance

Node = tuple[str, Hashable]

# Path products beyond this many bits switch to simple-cycle enumeration.
PRODUCT_BIT_CAP = 4096
_ENUMERATION_NODE_LIMIT = 40


def item_kind(instance: Instance, item_id: str) -> str:
    """``chore`` / ``neutral`` / ``good`` / ``pure good`` by the values of N_e."""
    vals = list(instance.item(item_id).values.values())
    if all(v < 0 for v in vals):
        return "chore"
    if max(vals) == 0:
        return "neutral"
    if all(v > 0 for v in vals):
        return "pure good"
    return "good"


def is_good(kind: str) -> bool:
    return kind in ("good", "pure good")


def directed_edges(instance: Instance, frac: FractionalOrientation) -> list[tuple[Node, Node, Fraction]]:
    """Weighted directed consumption graph.

    Only (agent, item) pairs whose value sign agrees with the item's kind
    take part: for a good, its positive valuers; for a chore, every relevant
    agent.  Neutral items and zero values never lie on a cycle of a
    non-malicious orientation and are left out.
    """
    edges: list[tuple[Node, Node, Fraction]] = []
    for it in instance.items:
        kind = item_kind(instance, it.id)
        if kind == "neutral":
            continue
        enode = ("e", it.id)
        for i in it.relevant:
            v = it.value(i)
            if v == 0 or (v < 0 and kind != "chore"):
                continue
            share = frac.share(i, it.id)
            anode = ("a", i)
            w = abs(v)
            if v > 0:
                if share > 0:
                    edges.append((anode, enode, w))
                if share < 1:
                    edges.append((enode, anode, 1 / w))
            else:
                if share < 1:
                    edges.append((anode, enode, w))
                if share > 0:
                    edges.append((enode, anode, 1 / w))
    return edges


def cycle_product(instance: Instance, cycle: list) -> Fraction:
    """Product of weights around an alternating agent/item cycle."""
    prod = Fraction(1)
    L = len(cycle) // 2
    for k in range(L):
        i, e, nxt = cycle[2 * k], cycle[2 * k + 1], cycle[(2 * k + 2) % len(cycle)]
        prod *= abs(instance.value(i, e)) / abs(instance.value(nxt, e))
    return prod


def find_product_cycle(instance: Instance, frac: FractionalOrientation) -> list | None:
    """A directed cycle with product < 1, or None.

    Multiplicative Bellman-Ford in exact integer ratios from a virtual source
    at product 1; a node still improving after |V| rounds lies behind a
    product-<1 cycle, which is recovered from the predecessor chain.
    """
    edges = directed_edges(instance, frac)
    if not edges:
        return None
    nodes = sorted({u for u, _, _ in edges} | {v for _, v, _ in edges}, key=_node_key)
    cycle = _bellman_ford(nodes, edges)
    if cycle is _CAP_TRIPPED:
        cycle = _enumerate_cycles(instance, nodes, edges)
    return cycle


_CAP_TRIPPED = object()


def _node_key(node: Node):
    return (node[0], str(node[1]) if node[0] == "e" else node[1])


def _bellman_ford(nodes: list[Node], edges: list[tuple[Node, Node, Fraction]]):
    idx = {nd: k for k, nd in enumerate(nodes)}
    E = [(idx[u], idx[v], w.numerator, w.denominator) for u, v, w in edges]
    num = [1] * len(nodes)
    den = [1] * len(nodes)
    pred = [-1] * len(nodes)
    last = -1
    for _ in range(len(nodes) + 1):
        last = -1
        for u, v, p, q in E:
            a, b = num[u] * p, den[u] * q
            if a * den[v] < num[v] * b:
                num[v], den[v], pred[v] = a, b, u
                last = v
                if a.bit_length() > PRODUCT_BIT_CAP or b.bit_length() > PRODUCT_BIT_CAP:
                    return _CAP_TRIPPED
        if last < 0:
            return None
    x = last
    for _ in range(len(nodes)):
        x = pred[x]
    cyc = [x]
    y = pred[x]
    while y != x:
        cyc.append(y)
        y = pred[y]
    cyc.reverse()
    return _as_alternating([nodes[k] for k in cyc])


def _as_alternating(path: list[Node]) -> list:
    """Rotate a node cycle to start at an agent and strip node tags."""
    start = next(k for k, nd in enumerate(path) if nd[0] == "a")
    path = path[start:] + path[:start]
    return [nd[1] for nd in path]


def _enumerate_cycles(instance, nodes, edges):
    if len(nodes) > _ENUMERATION_NODE_LIMIT:
        raise OverflowError("product bit-length cap exceeded on a graph too large to enumerate")
    import networkx as nx

    g = nx.DiGraph()
    g.add_edges_from((u, v) for u, v, _ in edges)
    for c in nx.simple_cycles(g):
        cyc = _as_alternating(c)
        if cycle_product(instance, cyc) < 1:
            return cyc
    return None


def undirected_cycle(frac: FractionalOrientation) -> list | None:
    """A cycle in the agent-item consumption graph (edge iff share > 0)."""
    adj: dict[Node, list[Node]] = defaultdict(list)
    for i, e in sorted(frac, key=lambda k: (k[0], k[1])):
        adj[("a", i)].append(("e", e))
        adj[("e", e)].append(("a", i))
    visited: set[Node] = set()
    for root in sorted(adj, key=_node_key):
        if root in visited:
            continue
        parent: dict[Node, Node | None] = {root: None}
        depth = {root: 0}
        stack = [root]
        visited.add(root)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w == parent[u]:
                    continue
                if w in depth:
                    return _as_alternating(_tree_cycle(u, w, parent, depth))
                parent[w] = u
                depth[w] = depth[u] + 1
                visited.add(w)
                stack.append(w)
    return None


def _tree_cycle(u, w, parent, depth):
    a, b = u, w
    left, right = [a], [b]
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return left + right[::-1]


def is_forest(frac: FractionalOrientation) -> bool:
    return undirected_cycle(frac) is None
