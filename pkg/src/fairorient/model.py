"""Instances, orientations and fractional orientations.

All quantities are exact :class:`fractions.Fraction` values.  Agents are the
integers ``1..n``; items carry string ids.  An agent's value for an item she
is not relevant to is 0 by convention.
"""
from __future__ import annotations

import enum
import re
import warnings
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Union

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class InstanceError(ValueError):
    """Base class for invalid instance descriptions."""


class EmptyRelevantSet(InstanceError):
    def __init__(self, item: str):
        super().__init__(f"item {item!r} has an empty relevant set")
        self.item = item


class BadAgentId(InstanceError):
    pass


class DuplicateItemId(InstanceError):
    def __init__(self, item: str):
        super().__init__(f"duplicate item id {item!r}")
        self.item = item


class ValueForIrrelevantAgent(InstanceError):
    def __init__(self, item: str, agent: int):
        super().__init__(f"item {item!r} carries a value for agent {agent}, who is not relevant to it")
        self.item = item
        self.agent = agent


class BadRational(InstanceError):
    pass


class InfeasibleOrientation(ValueError):
    """An allocation violates totality or the relevance constraint."""


class EmptyRelevanceWarning(UserWarning):
    """An agent has no relevant item (PROP share 0)."""


def to_rational(x: Any) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats and decimal strings are rejected so that no inexact value ever
    reaches a verdict.
    """
    if isinstance(x, bool):
        raise BadRational(f"not a rational value: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if not m:
            raise BadRational(f"not an exact rational: {x!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise BadRational(f"zero denominator: {x!r}")
        return Fraction(int(m.group(1)), den)
    raise BadRational(f"not a rational value: {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GraphClass(enum.Enum):
    SIMPLE = "SimpleGraph"
    MULTIGRAPH = "Multigraph"
    GENERAL = "General"


@dataclass(frozen=True)
class ItemSpec:
    id: str
    relevant: tuple[int, ...]
    values: Mapping[int, Fraction]

    @property
    def n_e(self) -> int:
        return len(self.relevant)

    def value(self, agent: int) -> Fraction:
        return self.values.get(agent, Fraction(0))


@dataclass(frozen=True)
class Instance:
    agent_count: int
    items: tuple[ItemSpec, ...]
    # Display names for agents (gadgets); never serialized.
    labels: Mapping[int, str] | None = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.agent_count

    @property
    def m(self) -> int:
        return len(self.items)

    @property
    def agents(self) -> range:
        return range(1, self.agent_count + 1)

    @cached_property
    def item_ids(self) -> tuple[str, ...]:
        return tuple(it.id for it in self.items)

    @cached_property
    def index(self) -> dict[str, int]:
        return {it.id: k for k, it in enumerate(self.items)}

    def item(self, item_id: str) -> ItemSpec:
        return self.items[self.index[item_id]]

    def value(self, agent: int, item_id: str) -> Fraction:
        return self.items[self.index[item_id]].value(agent)

    @cached_property
    def relevant_items(self) -> dict[int, tuple[str, ...]]:
        """E_i for every agent, in item order."""
        out: dict[int, list[str]] = {i: [] for i in self.agents}
        for it in self.items:
            for i in it.relevant:
                out[i].append(it.id)
        return {i: tuple(v) for i, v in out.items()}

    def label(self, agent: int) -> str:
        if self.labels and agent in self.labels:
            return self.labels[agent]
        return str(agent)

    @cached_property
    def graph_class(self) -> GraphClass:
        return classify_graph(self)

    def is_goods(self) -> bool:
        return all(v >= 0 for it in self.items for v in it.values.values())

    def is_chores(self) -> bool:
        return all(v <= 0 for it in self.items for v in it.values.values())

    def orientation_count(self) -> int:
        total = 1
        for it in self.items:
            total *= it.n_e
        return total


def build_instance(raw: Mapping[str, Any]) -> tuple[Instance, GraphClass]:
    """Validate a raw description ``{"agents": n, "items": [...]}``.

    Each item is ``{"id": str, "relevant": [agents], "values": {agent: v}}``;
    value keys may be ints or decimal strings of ints, values are ints,
    Fractions or ``"p/q"`` strings.  Returns the instance and its graph class.
    """
    n = raw.get("agents")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise BadAgentId(f"agent count must be a positive integer, got {n!r}")
    specs: list[ItemSpec] = []
    seen: set[str] = set()
    for entry in raw.get("items", []):
        item_id = entry.get("id")
        if not isinstance(item_id, str) or not item_id:
            raise InstanceError(f"item id must be a non-empty string, got {item_id!r}")
        if item_id in seen:
            raise DuplicateItemId(item_id)
        seen.add(item_id)
        relevant_raw = entry.get("relevant", [])
        relevant: set[int] = set()
        for a in relevant_raw:
            if isinstance(a, bool) or not isinstance(a, int) or not 1 <= a <= n:
                raise BadAgentId(f"item {item_id!r}: agent id {a!r} outside 1..{n}")
            relevant.add(a)
        if not relevant:
            raise EmptyRelevantSet(item_id)
        values: dict[int, Fraction] = {}
        for key, v in (entry.get("values") or {}).items():
            agent = _agent_key(key, n, item_id)
            if agent not in relevant:
                raise ValueForIrrelevantAgent(item_id, agent)
            values[agent] = to_rational(v)
        for a in relevant:
            values.setdefault(a, Fraction(0))
        specs.append(ItemSpec(item_id, tuple(sorted(relevant)), dict(sorted(values.items()))))
    inst = Instance(n, tuple(specs), labels=raw.get("labels"))
    empty = [i for i, es in inst.relevant_items.items() if not es]
    if empty:
        warnings.warn(f"agents with no relevant item: {empty}", EmptyRelevanceWarning, stacklevel=2)
    return inst, classify_graph(inst)


def _agent_key(key: Any, n: int, item_id: str) -> int:
    if isinstance(key, str) and key.strip().lstrip("+").isdigit():
        key = int(key)
    if isinstance(key, bool) or not isinstance(key, int) or not 1 <= key <= n:
        raise BadAgentId(f"item {item_id!r}: value key {key!r} is not an agent id")
    return key


def make_instance(
    n: int,
    items: Iterable[tuple[str, Iterable[int], Mapping[int, Any]]],
    labels: Mapping[int, str] | None = None,
) -> Instance:
    """Convenience constructor from ``(id, relevant, values)`` triples."""
    raw = {
        "agents": n,
        "items": [{"id": i, "relevant": list(r), "values": dict(v)} for i, r, v in items],
    }
    if labels is not None:
        raw["labels"] = dict(labels)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyRelevanceWarning)
        inst, _ = build_instance(raw)
    return inst


def graph_instance(n: int, edges: Iterable[tuple[int, int, Any, Any]], prefix: str = "e") -> Instance:
    """Instance from edges ``(u, v, value_for_u, value_for_v)``; ids ``e1, e2, ...``."""
    return make_instance(
        n, ((f"{prefix}{k}", (u, v), {u: a, v: b}) for k, (u, v, a, b) in enumerate(edges, 1))
    )


def classify_graph(instance: Instance) -> GraphClass:
    if any(it.n_e != 2 for it in instance.items):
        return GraphClass.GENERAL
    pairs = [it.relevant for it in instance.items]
    if len(set(pairs)) == len(pairs):
        return GraphClass.SIMPLE
    return GraphClass.MULTIGRAPH


class Orientation(Mapping[str, int]):
    """An integral allocation: item id -> owning agent."""

    __slots__ = ("_owner", "_hash")

    def __init__(self, owner: Mapping[str, int]):
        self._owner = dict(owner)
        self._hash: int | None = None

    def __getitem__(self, item_id: str) -> int:
        return self._owner[item_id]

    def __iter__(self) -> Iterator[str]:
        return iter(self._owner)

    def __len__(self) -> int:
        return len(self._owner)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._owner.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Orientation({self._owner!r})"

    def bundle(self, agent: int) -> list[str]:
        return [e for e, a in self._owner.items() if a == agent]

    def bundles(self, instance: Instance) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {i: [] for i in instance.agents}
        for e in instance.item_ids:
            out[self._owner[e]].append(e)
        return out


def validate_orientation(instance: Instance, orientation: Mapping[str, int]) -> Orientation:
    """Check totality and feasibility; returns an :class:`Orientation`."""
    extra = set(orientation) - set(instance.index)
    if extra:
        raise InfeasibleOrientation(f"unknown items: {sorted(extra)}")
    for it in instance.items:
        if it.id not in orientation:
            raise InfeasibleOrientation(f"item {it.id!r} is unallocated")
        if orientation[it.id] not in it.relevant:
            raise InfeasibleOrientation(
                f"item {it.id!r} given to agent {orientation[it.id]}, not in {list(it.relevant)}"
            )
    if isinstance(orientation, Orientation):
        return orientation
    return Orientation({e: orientation[e] for e in instance.item_ids})


class FractionalOrientation(Mapping[tuple[int, str], Fraction]):
    """Shares pi[i, e] in [0, 1]; only positive shares are stored."""

    __slots__ = ("_share",)

    def __init__(self, share: Mapping[tuple[int, str], Any]):
        self._share = {k: Fraction(v) for k, v in share.items() if v != 0}

    def __getitem__(self, key: tuple[int, str]) -> Fraction:
        return self._share[key]

    def __iter__(self) -> Iterator[tuple[int, str]]:
        return iter(self._share)

    def __len__(self) -> int:
        return len(self._share)

    def __repr__(self) -> str:
        body = ", ".join(f"({i},{e!r}): {format_rational(q)}" for (i, e), q in sorted(self._share.items()))
        return f"FractionalOrientation({{{body}}})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FractionalOrientation):
            return self._share == other._share
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def share(self, agent: int, item_id: str) -> Fraction:
        return self._share.get((agent, item_id), Fraction(0))

    def consumers(self, item_id: str) -> list[int]:
        return sorted(i for (i, e) in self._share if e == item_id)

    @classmethod
    def lift(cls, orientation: Mapping[str, int]) -> FractionalOrientation:
        return cls({(a, e): 1 for e, a in orientation.items()})

    def is_integral(self) -> bool:
        return all(q == 1 for q in self._share.values())

    def to_orientation(self) -> Orientation:
        if not self.is_integral():
            raise InfeasibleOrientation("fractional orientation is not integral")
        return Orientation({e: i for (i, e) in self._share})


def validate_fractional(instance: Instance, frac: Mapping[tuple[int, str], Any]) -> FractionalOrientation:
    fo = frac if isinstance(frac, FractionalOrientation) else FractionalOrientation(frac)
    totals: dict[str, Fraction] = {e: Fraction(0) for e in instance.item_ids}
    for (i, e), q in fo.items():
        if e not in totals:
            raise InfeasibleOrientation(f"unknown item {e!r}")
        if not 0 <= q <= 1:
            raise InfeasibleOrientation(f"share of agent {i} in {e!r} is {q}, outside [0, 1]")
        if i not in instance.item(e).relevant:
            raise InfeasibleOrientation(f"agent {i} holds a share of {e!r} but is not relevant to it")
        totals[e] += q
    for e, t in totals.items():
        if t != 1:
            raise InfeasibleOrientation(f"shares of {e!r} sum to {t}, not 1")
    return fo


Allocation = Union[Orientation, FractionalOrientation, Mapping[str, int]]


def agent_value(instance: Instance, allocation: Allocation, agent: int) -> Fraction:
    """v_i of agent's (fractional) bundle; irrelevant items contribute 0."""
    if isinstance(allocation, FractionalOrientation):
        return sum(
            (q * instance.value(agent, e) for (i, e), q in allocation.items() if i == agent),
            Fraction(0),
        )
    return sum(
        (instance.value(agent, e) for e, a in allocation.items() if a == agent),
        Fraction(0),
    )


def all_values(instance: Instance, allocation: Allocation) -> dict[int, Fraction]:
    """Every agent's own bundle value."""
    vals = {i: Fraction(0) for i in instance.agents}
    if isinstance(allocation, FractionalOrientation):
        for (i, e), q in allocation.items():
            vals[i] += q * instance.value(i, e)
    else:
        for e, a in allocation.items():
            vals[a] += instance.value(a, e)
    return vals
