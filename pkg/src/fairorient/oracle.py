"""Exhaustive ground truth: orientation search, maximin shares, Pareto optimality.

Orientations are indexed in mixed radix with item 0 as the most significant
digit, so "first witness" means lexicographically first owner sequence.
Budgets are hard limits; exceeding one raises :class:`SpaceTooLarge`.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._batch import BatchEvaluator
from .fairness import Notion, check
from .model import Instance, Orientation, graph_instance, validate_orientation

DEFAULT_BUDGET = 2**24
DEFAULT_MMS_BUDGET = 2**17
_BLOCK_CELLS = 2**22


class SpaceTooLarge(ValueError):
    def __init__(self, count: int, budget: int, what: str = "orientation space"):
        super().__init__(f"{what} has {count} elements, budget is {budget}")
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class OrientationSpace:
    """Bijection between [0, count) and the orientations of an instance."""

    instance: Instance

    @property
    def radices(self) -> list[int]:
        return [it.n_e for it in self.instance.items]

    def __len__(self) -> int:
        return self.instance.orientation_count()

    @property
    def count(self) -> int:
        return len(self)

    def orientation_at(self, index: int) -> Orientation:
        if not 0 <= index < len(self):
            raise IndexError(index)
        owners = []
        for it in reversed(self.instance.items):
            index, d = divmod(index, it.n_e)
            owners.append((it.id, it.relevant[d]))
        return Orientation(dict(reversed(owners)))

    def index_of(self, orientation: Mapping[str, int]) -> int:
        pi = validate_orientation(self.instance, orientation)
        index = 0
        for it in self.instance.items:
            index = index * it.n_e + it.relevant.index(pi[it.id])
        return index

    def __iter__(self) -> Iterator[Orientation]:
        ids = self.instance.item_ids
        for owners in itertools.product(*(it.relevant for it in self.instance.items)):
            yield Orientation(dict(zip(ids, owners)))


def _require_budget(instance: Instance, budget: int) -> int:
    count = instance.orientation_count()
    if count > budget:
        raise SpaceTooLarge(count, budget)
    return count


def enumerate_orientations(instance: Instance, budget: int = DEFAULT_BUDGET) -> Iterator[Orientation]:
    _require_budget(instance, budget)
    return iter(OrientationSpace(instance))


def _blocks(evaluator: BatchEvaluator, count: int, width: int) -> Iterator[tuple[int, np.ndarray]]:
    n, m = evaluator.instance.n, evaluator.instance.m
    size = max(64, _BLOCK_CELLS // max(1, n * n * max(m, 1) * width))
    for start in range(0, count, size):
        stop = min(count, start + size)
        yield start, evaluator.owners(start, stop)


def _mms_shares(instance: Instance, notion: Notion, mms_budget: int) -> dict[int, Fraction] | None:
    if notion is not Notion.MMS:
        return None
    return {i: mms_share(instance, i, budget=mms_budget) for i in instance.agents}


def find_all_indices(
    instance: Instance, notion: Notion | str, budget: int = DEFAULT_BUDGET, mms_budget: int = DEFAULT_MMS_BUDGET
) -> Iterator[int]:
    """Indices of every orientation satisfying ``notion``, in increasing order."""
    notion = Notion(notion)
    count = _require_budget(instance, budget)
    ev = BatchEvaluator(instance, _mms_shares(instance, notion, mms_budget))
    width = 2 if notion in (Notion.EF, Notion.EF1) else 1
    for start, O in _blocks(ev, count, width):
        for k in np.flatnonzero(ev.holds(notion, O)):
            yield start + int(k)


def find_orientation(
    instance: Instance,
    notion: Notion | str,
    budget: int = DEFAULT_BUDGET,
    engine: str = "batch",
    mms_budget: int = DEFAULT_MMS_BUDGET,
) -> Orientation | None:
    """First orientation (mixed-radix order) satisfying ``notion``, or None.

    ``engine="scalar"`` runs the per-orientation checkers instead of the
    vectorised evaluator; both give the same answer.
    """
    notion = Notion(notion)
    space = OrientationSpace(instance)
    if engine == "scalar":
        _require_budget(instance, budget)
        shares = _mms_shares(instance, notion, mms_budget)
        for pi in space:
            if notion is Notion.MMS:
                from .fairness import check_mms

                if check_mms(instance, pi, shares).holds:
                    return pi
            elif check(instance, pi, notion).holds:
                return pi
        return None
    if engine != "batch":
        raise ValueError(f"unknown engine {engine!r}")
    for index in find_all_indices(instance, notion, budget, mms_budget):
        return space.orientation_at(index)
    return None


def count_orientations(instance: Instance, notion: Notion | str, budget: int = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in find_all_indices(instance, notion, budget))


# ---------------------------------------------------------------- maximin share


def mms_share(instance: Instance, agent: int, budget: int = DEFAULT_MMS_BUDGET) -> Fraction:
    """max over partitions of all items into n bundles of the agent's worst bundle."""
    n = instance.n
    vals = sorted(
        (instance.value(agent, e) for e in instance.relevant_items[agent] if instance.value(agent, e) != 0),
        key=lambda v: -abs(v),
    )
    if n == 1:
        return sum(vals, Fraction(0))
    partitions = _partition_count(len(vals), n)
    if partitions > budget:
        raise SpaceTooLarge(partitions, budget, "partition space")
    if not vals:
        return Fraction(0)
    # suffix sums of positive values bound what any single bundle can still gain
    pos_suffix = [Fraction(0)] * (len(vals) + 1)
    for k in range(len(vals) - 1, -1, -1):
        pos_suffix[k] = pos_suffix[k + 1] + max(vals[k], 0)
    sums = [Fraction(0)] * n
    best = [None]

    def dfs(k: int, used: int) -> None:
        if best[0] is not None and min(sums) + pos_suffix[k] <= best[0]:
            return
        if k == len(vals):
            best[0] = min(sums)
            return
        # a fresh bundle is tried once: empty bundles are interchangeable
        for b in range(min(used + 1, n)):
            sums[b] += vals[k]
            dfs(k + 1, max(used, b + 1))
            sums[b] -= vals[k]

    dfs(0, 0)
    return best[0]


def _partition_count(m: int, n: int) -> int:
    """Partitions of m labelled items into at most n unlabelled blocks."""
    row = [1] + [0] * n  # Stirling numbers S(j, b) for the current j
    for _ in range(m):
        row = [0] + [b * row[b] + row[b - 1] for b in range(1, n + 1)]
    return sum(row) if m else 1


# ---------------------------------------------------------------- Pareto optimality


def check_po_exhaustive(instance: Instance, orientation: Mapping[str, int], budget: int = DEFAULT_BUDGET):
    """Holds iff no orientation gives everyone at least as much and someone more."""
    from .fairness import CheckReport, Violation
    from .model import all_values

    pi = validate_orientation(instance, orientation)
    count = _require_budget(instance, budget)
    ev = BatchEvaluator(instance)
    base = all_values(instance, pi)
    target = np.array([int(base[i] * ev.scale) for i in instance.agents], dtype=ev.dtype)[:, None]
    space = OrientationSpace(instance)
    for start, O in _blocks(ev, count, 1):
        val = ev.values(O)
        dom = (val >= target).all(axis=0) & (val > target).any(axis=0)
        hits = np.flatnonzero(dom)
        if hits.size:
            other = space.orientation_at(start + int(hits[0]))
            better = all_values(instance, other)
            i = next(a for a in instance.agents if better[a] > base[a])
            return CheckReport(
                "PO",
                (Violation("PO", (i,), base[i], better[i], relation=">=",
                           detail={"dominated_by": dict(other)}),),
            )
    return CheckReport("PO")


# ---------------------------------------------------------------- PROPX family sweep


def _simple_graphs(k: int) -> list[tuple[tuple[int, int], ...]]:
    """Edge sets on vertices 1..k without isolated vertices, one per isomorphism class."""
    pairs = list(itertools.combinations(range(1, k + 1), 2))
    perms = list(itertools.permutations(range(1, k + 1)))
    seen = set()
    out = []
    for mask in range(1, 1 << len(pairs)):
        edges = tuple(p for b, p in enumerate(pairs) if mask >> b & 1)
        if len({v for e in edges for v in e}) < k:
            continue
        canon = min(tuple(sorted(tuple(sorted((p[u - 1], p[v - 1]))) for u, v in edges)) for p in perms)
        if canon in seen:
            continue
        seen.add(canon)
        out.append(edges)
    return out


def _labelled_canon(edges, labels, perms):
    best = None
    for p in perms:
        form = []
        for (u, v), (a, b) in zip(edges, labels):
            pu, pv = p[u - 1], p[v - 1]
            form.append((pu, pv, a, b) if pu < pv else (pv, pu, b, a))
        form = tuple(sorted(form))
        if best is None or form < best:
            best = form
    return best


def graph_family(values, max_vertices: int = 4, min_vertices: int = 2,
                 max_edges: int | None = None) -> Iterator[Instance]:
    """Every simple graph on min..max vertices (no isolated vertex) with
    per-endpoint values drawn from ``values``, up to isomorphism."""
    values = tuple(values)
    for k in range(min_vertices, max_vertices + 1):
        perms = list(itertools.permutations(range(1, k + 1)))
        for edges in _simple_graphs(k):
            if max_edges is not None and len(edges) > max_edges:
                continue
            yield from labelled_graphs(k, edges, values, perms)


def labelled_graphs(k: int, edges, values, perms=None) -> Iterator[Instance]:
    """All value labellings of one graph, one per orbit of its automorphism group."""
    perms = perms if perms is not None else list(itertools.permutations(range(1, k + 1)))
    autos = [p for p in perms
             if {tuple(sorted((p[u - 1], p[v - 1]))) for u, v in edges} == set(edges)]
    seen = set()
    for flat in itertools.product(values, repeat=2 * len(edges)):
        labels = list(zip(flat[0::2], flat[1::2]))
        canon = _labelled_canon(edges, labels, autos)
        if canon in seen:
            continue
        seen.add(canon)
        yield graph_instance(k, [(u, v, a, b) for (u, v), (a, b) in zip(edges, labels)])


def simple_graphs(k: int) -> list[tuple[tuple[int, int], ...]]:
    return _simple_graphs(k)


def binary_graph_family(polarity: int, max_vertices: int = 4) -> Iterator[Instance]:
    """Simple graphs up to ``max_vertices`` with per-endpoint values in {0, polarity}."""
    return graph_family((0, 1 if polarity > 0 else -1), max_vertices)


def exists_propx_witness_family(polarity: int | str, max_vertices: int = 4) -> tuple[Instance | None, dict]:
    """Sweep the binary family; return the first instance with no PROPX
    orientation and a report with the number of such instances."""
    if isinstance(polarity, str):
        polarity = 1 if polarity.lower().startswith("good") else -1
    first = None
    found = 0
    swept = 0
    for inst in binary_graph_family(polarity, max_vertices):
        swept += 1
        if find_orientation(inst, Notion.PROPX) is None:
            found += 1
            if first is None:
                first = inst
    return first, {"polarity": "goods" if polarity > 0 else "chores", "instances": swept, "without_propx": found}
