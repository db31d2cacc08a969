"""Desk-scale verification of the Partition reductions against brute force."""
from __future__ import annotations

from dataclasses import asdict, dataclass

from ..oracle import DEFAULT_BUDGET, find_orientation
from .partition import GadgetKind, PartitionInput, Polarity, gadget_partition, partition_solution


@dataclass(frozen=True)
class ReductionReport:
    kind: str
    polarity: str
    xs: tuple[int, ...]
    partition_yes: bool
    orientation_found: bool
    orientations: int
    witness: dict | None = None

    @property
    def agree(self) -> bool:
        return self.partition_yes == self.orientation_found

    def to_dict(self) -> dict:
        d = asdict(self)
        d["xs"] = list(self.xs)
        d["agree"] = self.agree
        return d


def supported_polarities(kind: GadgetKind | str) -> tuple[Polarity, ...]:
    kind = GadgetKind.parse(kind)
    return (Polarity.CHORES,) if kind is GadgetKind.EF1MULTI else (Polarity.GOODS, Polarity.CHORES)


def verify_reduction_small(
    kind: GadgetKind | str,
    inp: PartitionInput,
    polarity: Polarity | str | None = None,
    budget: int = DEFAULT_BUDGET,
) -> ReductionReport:
    """Exhaustive existence on the gadget versus subset-sum on the input."""
    kind = GadgetKind.parse(kind)
    polarity = supported_polarities(kind)[0] if polarity is None else Polarity.parse(polarity)
    gadget = gadget_partition(inp, kind, polarity)
    found = find_orientation(gadget, kind.notion, budget=budget)
    return ReductionReport(
        kind=kind.value,
        polarity=polarity.value,
        xs=inp.xs,
        partition_yes=partition_solution(inp) is not None,
        orientation_found=found is not None,
        orientations=gadget.orientation_count(),
        witness=dict(found) if found is not None else None,
    )
