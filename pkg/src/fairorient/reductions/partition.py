"""Partition inputs and the four Partition-based gadgets (EQ, EQ1, EQX, EF1 multigraph)."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from ..model import Instance, make_instance


class OddSum(ValueError):
    pass


class UnsupportedCombination(ValueError):
    pass


class Polarity(str, enum.Enum):
    GOODS = "goods"
    CHORES = "chores"

    @classmethod
    def parse(cls, text: str | Polarity) -> Polarity:
        return cls(str(text.value if isinstance(text, Polarity) else text).lower())

    @property
    def sign(self) -> int:
        return 1 if self is Polarity.GOODS else -1


class GadgetKind(str, enum.Enum):
    EQ = "EQ"
    EQ1 = "EQ1"
    EQX = "EQX"
    EF1MULTI = "EF1multi"

    @classmethod
    def parse(cls, text: str | GadgetKind) -> GadgetKind:
        if isinstance(text, GadgetKind):
            return text
        for k in cls:
            if k.value.lower() == str(text).lower():
                return k
        raise ValueError(f"unknown gadget kind {text!r}")

    @property
    def notion(self) -> str:
        return "EF1" if self is GadgetKind.EF1MULTI else self.value


@dataclass(frozen=True)
class PartitionInput:
    xs: tuple[int, ...]

    def __post_init__(self):
        if not self.xs:
            raise ValueError("partition input needs at least one integer")
        if any(isinstance(x, bool) or not isinstance(x, int) or x <= 0 for x in self.xs):
            raise ValueError(f"partition input must be positive integers, got {list(self.xs)}")
        if sum(self.xs) % 2:
            raise OddSum(f"sum {sum(self.xs)} of {list(self.xs)} is odd")

    @property
    def T(self) -> int:
        return sum(self.xs) // 2

    @property
    def n(self) -> int:
        return len(self.xs)

    @classmethod
    def of(cls, xs) -> PartitionInput:
        return cls(tuple(int(x) for x in xs))


def parse_partition(text: str) -> PartitionInput:
    tokens = text.split()
    try:
        xs = [int(t) for t in tokens]
    except ValueError as exc:
        raise ValueError(f"partition file must hold integers: {exc}") from None
    return PartitionInput.of(xs)


def partition_solution(inp: PartitionInput) -> tuple[int, ...] | None:
    """Indices of a subset summing to T, or None (subset-sum table)."""
    reach: dict[int, tuple[int, ...]] = {0: ()}
    for k, x in enumerate(inp.xs):
        for s, subset in list(reach.items()):
            if s + x <= inp.T and s + x not in reach:
                reach[s + x] = subset + (k,)
    return reach.get(inp.T)


def partition_solvable(inp: PartitionInput) -> bool:
    return partition_solution(inp) is not None


def gadget_partition(inp: PartitionInput, kind: GadgetKind | str, polarity: Polarity | str) -> Instance:
    kind = GadgetKind.parse(kind)
    polarity = Polarity.parse(polarity)
    if kind is GadgetKind.EF1MULTI:
        if polarity is not Polarity.CHORES:
            raise UnsupportedCombination("the EF1 multigraph gadget is defined for chores only")
        return _ef1_multi(inp)
    build = {GadgetKind.EQ: _eq, GadgetKind.EQ1: _eq1, GadgetKind.EQX: _eqx}[kind]
    n_agents, labels, edges = build(inp)
    sign = polarity.sign
    items = [(eid, (u, v), {u: sign * a, v: sign * b}) for eid, u, v, a, b in edges]
    return make_instance(n_agents, items, labels)


def _eq(inp: PartitionInput):
    n, T = inp.n, inp.T
    p, q = n + 1, n + 2
    labels = {i: str(i) for i in range(1, n + 1)} | {p: "p", q: "q"}
    half = Fraction(1, 2)
    edges = []
    for i, x in enumerate(inp.xs, 1):
        edges.append((f"p-{i}", i, p, half, Fraction(x, 2 * T)))
        edges.append((f"q-{i}", i, q, half, Fraction(x, 2 * T)))
    return n + 2, labels, edges


def _eq1(inp: PartitionInput):
    n = inp.n
    total = sum(inp.xs)
    ids = {}
    for i in range(1, n + 1):
        ids[str(i)] = i
        ids[f"{i}'"] = n + i
    for name in ("p", "p'", "q", "q'", "w", "x", "y", "z"):
        ids[name] = len(ids) + 1
    labels = {v: k for k, v in ids.items()}
    F = Fraction
    edges = []
    for i, x in enumerate(inp.xs, 1):
        a, a2 = ids[str(i)], ids[f"{i}'"]
        edges.append((f"{i}-{i}'", a, a2, F(3, 4), F(1)))
        edges.append((f"p-{i}", a, ids["p"], F(1, 8), F(x, 4 * total)))
        edges.append((f"q-{i}", a, ids["q"], F(1, 8), F(x, 4 * total)))
    edges.append(("p-p'", ids["p"], ids["p'"], F(3, 4), F(1)))
    edges.append(("q-q'", ids["q"], ids["q'"], F(3, 4), F(1)))
    edges.append(("z-p'", ids["z"], ids["p'"], F(0), F(0)))
    for a, b, val in (("w", "z", F(3, 4)), ("x", "y", F(3, 4)), ("w", "x", F(1, 8)),
                      ("x", "z", F(1, 8)), ("z", "y", F(1, 8)), ("y", "w", F(1, 8))):
        edges.append((f"{a}-{b}", ids[a], ids[b], val, val))
    return len(ids), labels, edges


def eqx_epsilon(inp: PartitionInput) -> Fraction:
    return Fraction(1, 8 * inp.T * inp.n)


def _eqx(inp: PartitionInput):
    n = inp.n
    total = sum(inp.xs)
    eps = eqx_epsilon(inp)
    F = Fraction
    names = [str(i) for i in range(1, n + 1)] + ["p", "q"]
    ids = {name: k for k, name in enumerate(names, 1)}
    for name in names:
        ids[f"k{name}"] = len(ids) + 1
        ids[f"k'{name}"] = len(ids) + 1
    labels = {v: k for k, v in ids.items()}
    edges = []
    for name in names:
        j, k, k2 = ids[name], ids[f"k{name}"], ids[f"k'{name}"]
        edges.append((f"{name}-k{name}", j, k, eps, F(1, 2) - eps))
        edges.append((f"{name}-k'{name}", j, k2, eps, F(1, 2) - eps))
        edges.append((f"k{name}-k'{name}", k, k2, F(1, 2) + eps, F(1, 2) + eps))
    for i, x in enumerate(inp.xs, 1):
        share = F(x, total) * (1 - 2 * eps)
        edges.append((f"p-{i}", i, ids["p"], F(1, 2) - eps, share))
        edges.append((f"q-{i}", i, ids["q"], F(1, 2) - eps, share))
    return len(ids), labels, edges


def _ef1_multi(inp: PartitionInput) -> Instance:
    heavy = -2 * inp.T - 1
    items = [(f"e{i}", (1, 2), {1: -x, 2: -x}) for i, x in enumerate(inp.xs, 1)]
    n = inp.n
    for k, (u, v) in enumerate(((1, 3), (1, 3), (2, 3), (2, 3)), 1):
        items.append((f"e{n + k}", (u, v), {u: heavy, v: heavy}))
    return make_instance(3, items)
