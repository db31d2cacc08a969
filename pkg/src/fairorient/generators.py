"""Named built-in instances and seeded random families.

Random families and their parameter ranges:

* ``random-general``: n in 1..6, m in 0..12, each item relevant to 1..min(3, n)
  agents, values rationals p/q with q in 1..4 and |p/q| <= 5 (zero with
  probability 1/6).
* ``random-simple``: n in 2..5 vertices, each pair an edge with probability
  1/2, integer values in -3..3.
* ``random-multigraph``: goods multigraph, n in 2..4, m in 1..9, integer
  values in 0..5.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .model import Instance, graph_instance, make_instance

NAMED = ("path3-ones", "triangle-ones", "k4-plus-edge", "ef1-multigraph")
RANDOM = ("random-general", "random-simple", "random-multigraph")


def path3_ones(polarity: int = 1) -> Instance:
    return graph_instance(3, [(1, 2, polarity, polarity), (2, 3, polarity, polarity)])


def triangle_ones(polarity: int = 1) -> Instance:
    return graph_instance(3, [(1, 2, polarity, polarity), (2, 3, polarity, polarity), (3, 1, polarity, polarity)])


def k4_plus_edge(polarity: int = 1) -> Instance:
    third = Fraction(polarity, 3)
    edges = [(u, v, third, third) for u in range(1, 5) for v in range(u + 1, 5)]
    edges.append((5, 6, third, third))
    return graph_instance(6, edges)


def ef1_multigraph(xs) -> Instance:
    from .reductions import GadgetKind, PartitionInput, Polarity, gadget_partition

    return gadget_partition(PartitionInput.of(xs), GadgetKind.EF1MULTI, Polarity.CHORES)


def named_instances() -> dict[str, Instance]:
    """Every named built-in in both polarities where meaningful."""
    out = {}
    for pol, tag in ((1, "goods"), (-1, "chores")):
        out[f"path3-ones/{tag}"] = path3_ones(pol)
        out[f"triangle-ones/{tag}"] = triangle_ones(pol)
        out[f"k4-plus-edge/{tag}"] = k4_plus_edge(pol)
    out["ef1-multigraph/1,1,2"] = ef1_multigraph([1, 1, 2])
    out["ef1-multigraph/1,1,4"] = ef1_multigraph([1, 1, 4])
    return out


def _rational(rng: random.Random, bound: int = 5) -> Fraction:
    if rng.randrange(6) == 0:
        return Fraction(0)
    q = rng.randint(1, 4)
    return Fraction(rng.randint(-bound * q, bound * q), q)


def random_general(rng: random.Random, max_agents: int = 6, max_items: int = 12, max_relevant: int = 3) -> Instance:
    n = rng.randint(1, max_agents)
    m = rng.randint(0, max_items)
    items = []
    for k in range(m):
        rel = sorted(rng.sample(range(1, n + 1), rng.randint(1, min(max_relevant, n))))
        items.append((f"e{k + 1}", rel, {a: _rational(rng) for a in rel}))
    return make_instance(n, items)


def random_simple(rng: random.Random, max_vertices: int = 5, values=range(-3, 4)) -> Instance:
    n = rng.randint(2, max_vertices)
    values = list(values)
    edges = [(u, v, rng.choice(values), rng.choice(values))
             for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.5]
    return graph_instance(n, edges)


def random_multigraph(rng: random.Random, max_vertices: int = 4, max_edges: int = 9, max_value: int = 5) -> Instance:
    n = rng.randint(2, max_vertices)
    m = rng.randint(1, max_edges)
    edges = []
    for _ in range(m):
        u, v = sorted(rng.sample(range(1, n + 1), 2))
        edges.append((u, v, rng.randint(0, max_value), rng.randint(0, max_value)))
    return graph_instance(n, edges)


def random_binary_general(rng: random.Random, polarity: int, max_agents: int = 5, max_items: int = 9,
                          max_relevant: int = 3) -> Instance:
    n = rng.randint(1, max_agents)
    m = rng.randint(0, max_items)
    items = []
    for k in range(m):
        rel = sorted(rng.sample(range(1, n + 1), rng.randint(1, min(max_relevant, n))))
        items.append((f"e{k + 1}", rel, {a: polarity * rng.randint(0, 1) for a in rel}))
    return make_instance(n, items)


def generate(family: str, seed: int = 0, xs=None, polarity: int = 1) -> Instance:
    rng = random.Random(seed)
    if family == "path3-ones":
        return path3_ones(polarity)
    if family == "triangle-ones":
        return triangle_ones(polarity)
    if family == "k4-plus-edge":
        return k4_plus_edge(polarity)
    if family == "ef1-multigraph":
        if not xs:
            raise ValueError("ef1-multigraph needs the Partition integers (--xs)")
        return ef1_multigraph(xs)
    if family == "random-general":
        return random_general(rng)
    if family == "random-simple":
        return random_simple(rng)
    if family == "random-multigraph":
        return random_multigraph(rng)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(NAMED + RANDOM)}")
