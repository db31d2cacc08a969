"""Shares and fairness checkers.

Every checker evaluates the definition literally over exact rationals and
returns a :class:`CheckReport` whose violations carry the failed inequality
and, where one exists, a witness item.
"""
from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .consumption import cycle_product, find_product_cycle, item_kind, is_good
from .model import (
    FractionalOrientation,
    Instance,
    Orientation,
    all_values,
    format_rational,
    to_rational,
    validate_fractional,
    validate_orientation,
)


class Notion(str, enum.Enum):
    PROP = "PROP"
    PROP1 = "PROP1"
    PROPX = "PROPX"
    SPROP1 = "SPROP1"
    EQ = "EQ"
    EQ1 = "EQ1"
    EQX = "EQX"
    EF = "EF"
    EF1 = "EF1"
    MMS = "MMS"

    @classmethod
    def parse(cls, text: str) -> Notion:
        return cls(text.strip().upper())


PROP_FAMILY = (Notion.PROP, Notion.PROP1, Notion.PROPX, Notion.SPROP1)
EQ_FAMILY = (Notion.EQ, Notion.EQ1, Notion.EQX)
ENVY_FAMILY = (Notion.EF, Notion.EF1)


class SPROP1OnNonGoods(ValueError):
    pass


_RELATIONS = {
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "==": lambda a, b: a == b,
}


@dataclass(frozen=True)
class Violation:
    """One failed requirement: ``lhs <relation> rhs`` evaluates to False."""

    notion: str
    agents: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    relation: str = ">="
    item: str | None = None
    detail: Mapping[str, Any] = field(default_factory=dict)

    def recheck(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "notion": self.notion,
            "agents": list(self.agents),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "relation": self.relation,
            "item": self.item,
            "detail": _jsonable(self.detail),
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> Violation:
        return cls(
            notion=d["notion"],
            agents=tuple(d["agents"]),
            lhs=to_rational(d["lhs"]),
            rhs=to_rational(d["rhs"]),
            relation=d["relation"],
            item=d.get("item"),
            detail=dict(d.get("detail") or {}),
        )


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass(frozen=True)
class CheckReport:
    notion: str
    violations: tuple[Violation, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict[str, Any]:
        return {
            "notion": self.notion,
            "holds": self.holds,
            "violations": [v.to_dict() for v in self.violations],
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> CheckReport:
        rep = cls(d["notion"], tuple(Violation.from_dict(v) for v in d.get("violations", ())))
        if rep.holds != d.get("holds", rep.holds):
            raise ValueError("inconsistent report: holds flag disagrees with violations")
        return rep


# ---------------------------------------------------------------- shares


def prop_share(instance: Instance) -> dict[int, Fraction]:
    """Refined proportional share: sum over E_i of v_i(e) / n_e."""
    share = {i: Fraction(0) for i in instance.agents}
    for it in instance.items:
        for i in it.relevant:
            share[i] += it.value(i) / it.n_e
    return share


def sprop1_threshold(instance: Instance) -> dict[int, Fraction]:
    """Half of v_i(E_i) minus its most valuable item (0 when E_i is empty)."""
    out = {}
    for i in instance.agents:
        vals = [instance.value(i, e) for e in instance.relevant_items[i]]
        out[i] = (sum(vals) - max(vals)) / 2 if vals else Fraction(0)
    return out


# ---------------------------------------------------------------- PROP family


def check_prop_family(instance: Instance, orientation: Mapping[str, int], notion: Notion | str) -> CheckReport:
    notion = Notion(notion)
    if notion not in PROP_FAMILY:
        raise ValueError(f"{notion.value} is not a proportionality notion")
    pi = validate_orientation(instance, orientation)
    if notion is Notion.SPROP1:
        return _check_sprop1(instance, pi)
    shares = prop_share(instance)
    values = all_values(instance, pi)
    bundles = pi.bundles(instance)
    out: list[Violation] = []
    for i in instance.agents:
        val, share = values[i], shares[i]
        if val >= share:
            continue
        own = bundles[i]
        others = [e for e in instance.relevant_items[i] if pi[e] != i]
        if notion is Notion.PROP:
            out.append(Violation(notion.value, (i,), val, share))
        elif notion is Notion.PROP1:
            attempts = [(val + instance.value(i, e), e) for e in others]
            attempts += [(val - instance.value(i, e), e) for e in own]
            if any(lhs >= share for lhs, _ in attempts):
                continue
            best, item = max(attempts, key=lambda t: t[0]) if attempts else (val, None)
            out.append(Violation(notion.value, (i,), best, share, item=item))
        else:
            for e in others:
                if instance.value(i, e) >= 0 and val + instance.value(i, e) < share:
                    out.append(Violation(notion.value, (i,), val + instance.value(i, e), share, item=e,
                                         detail={"clause": "add"}))
                    break
            else:
                for e in own:
                    if instance.value(i, e) <= 0 and val - instance.value(i, e) < share:
                        out.append(Violation(notion.value, (i,), val - instance.value(i, e), share, item=e,
                                             detail={"clause": "remove"}))
                        break
    return CheckReport(notion.value, tuple(out))


def _check_sprop1(instance: Instance, pi: Orientation) -> CheckReport:
    if not instance.is_goods():
        raise SPROP1OnNonGoods("SPROP1 is defined for goods-instances only")
    thresholds = sprop1_threshold(instance)
    values = all_values(instance, pi)
    out = []
    for i in instance.agents:
        if values[i] < thresholds[i]:
            best = max(instance.relevant_items[i], key=lambda e: instance.value(i, e))
            out.append(Violation("SPROP1", (i,), values[i], thresholds[i], item=best))
    return CheckReport("SPROP1", tuple(out))


def check_prop(instance, orientation):
    return check_prop_family(instance, orientation, Notion.PROP)


def check_prop1(instance, orientation):
    return check_prop_family(instance, orientation, Notion.PROP1)


def check_propx(instance, orientation):
    return check_prop_family(instance, orientation, Notion.PROPX)


def check_sprop1(instance, orientation):
    return check_prop_family(instance, orientation, Notion.SPROP1)


# ---------------------------------------------------------------- EQ family


def check_eq_family(instance: Instance, orientation: Mapping[str, int], notion: Notion | str) -> CheckReport:
    notion = Notion(notion)
    if notion not in EQ_FAMILY:
        raise ValueError(f"{notion.value} is not an equitability notion")
    pi = validate_orientation(instance, orientation)
    values = all_values(instance, pi)
    bundles = pi.bundles(instance)
    out: list[Violation] = []
    for i in instance.agents:
        for j in instance.agents:
            if i == j or values[i] == values[j]:
                continue
            vi, vj = values[i], values[j]
            if notion is Notion.EQ:
                if i < j:
                    out.append(Violation("EQ", (i, j), vi, vj, relation="=="))
                continue
            if vi > vj:
                continue
            # clause (2): drop e from j's bundle; clause (3): drop e from i's bundle
            drop_j = [(vi, vj - instance.value(j, e), e) for e in bundles[j]]
            drop_i = [(vi - instance.value(i, e), vj, e) for e in bundles[i]]
            if notion is Notion.EQ1:
                attempts = drop_j + drop_i
                if any(lhs >= rhs for lhs, rhs, _ in attempts):
                    continue
                if attempts:
                    lhs, rhs, e = max(attempts, key=lambda t: t[0] - t[1])
                else:
                    lhs, rhs, e = vi, vj, None
                out.append(Violation("EQ1", (i, j), lhs, rhs, item=e))
            else:
                bad = [t for t, e in zip(drop_j, bundles[j]) if instance.value(j, e) > 0 and t[0] < t[1]]
                bad += [t for t, e in zip(drop_i, bundles[i]) if instance.value(i, e) < 0 and t[0] < t[1]]
                if bad:
                    lhs, rhs, e = bad[0]
                    out.append(Violation("EQX", (i, j), lhs, rhs, item=e))
    return CheckReport(notion.value, tuple(out))


def check_eq(instance, orientation):
    return check_eq_family(instance, orientation, Notion.EQ)


def check_eq1(instance, orientation):
    return check_eq_family(instance, orientation, Notion.EQ1)


def check_eqx(instance, orientation):
    return check_eq_family(instance, orientation, Notion.EQX)


# ---------------------------------------------------------------- envy


def check_envy_family(instance: Instance, orientation: Mapping[str, int], notion: Notion | str) -> CheckReport:
    notion = Notion(notion)
    if notion not in ENVY_FAMILY:
        raise ValueError(f"{notion.value} is not an envy notion")
    pi = validate_orientation(instance, orientation)
    bundles = pi.bundles(instance)
    out: list[Violation] = []
    for i in instance.agents:
        own = sum((instance.value(i, e) for e in bundles[i]), Fraction(0))
        for j in instance.agents:
            if i == j:
                continue
            other = sum((instance.value(i, e) for e in bundles[j]), Fraction(0))
            if own >= other:
                continue
            if notion is Notion.EF:
                out.append(Violation("EF", (i, j), own, other))
                continue
            attempts = [(own, other - instance.value(i, e), e) for e in bundles[j]]
            attempts += [(own - instance.value(i, e), other, e) for e in bundles[i]]
            if any(lhs >= rhs for lhs, rhs, _ in attempts):
                continue
            if attempts:
                lhs, rhs, e = max(attempts, key=lambda t: t[0] - t[1])
            else:
                lhs, rhs, e = own, other, None
            out.append(Violation("EF1", (i, j), lhs, rhs, item=e))
    return CheckReport(notion.value, tuple(out))


def check_ef(instance, orientation):
    return check_envy_family(instance, orientation, Notion.EF)


def check_ef1(instance, orientation):
    return check_envy_family(instance, orientation, Notion.EF1)


# ---------------------------------------------------------------- MMS


def check_mms(
    instance: Instance, orientation: Mapping[str, int], shares: Mapping[int, Fraction] | None = None
) -> CheckReport:
    """v_i(pi_i) >= MMS_i; shares default to the exhaustive oracle's values."""
    pi = validate_orientation(instance, orientation)
    if shares is None:
        from .oracle import mms_share

        shares = {i: mms_share(instance, i) for i in instance.agents}
    values = all_values(instance, pi)
    out = tuple(
        Violation("MMS", (i,), values[i], shares[i]) for i in instance.agents if values[i] < shares[i]
    )
    return CheckReport("MMS", out)


def check(instance: Instance, orientation: Mapping[str, int], notion: Notion | str) -> CheckReport:
    """Dispatch to the checker of any integral notion."""
    notion = Notion(notion)
    if notion in PROP_FAMILY:
        return check_prop_family(instance, orientation, notion)
    if notion in EQ_FAMILY:
        return check_eq_family(instance, orientation, notion)
    if notion in ENVY_FAMILY:
        return check_envy_family(instance, orientation, notion)
    return check_mms(instance, orientation)


# ---------------------------------------------------------------- efficiency


def _as_fractional(instance: Instance, alloc) -> FractionalOrientation:
    if isinstance(alloc, FractionalOrientation):
        return validate_fractional(instance, alloc)
    return FractionalOrientation.lift(validate_orientation(instance, alloc))


def check_non_malicious(instance: Instance, alloc) -> CheckReport:
    """Goods only consumed by positive valuers, neutral items only by zero valuers."""
    frac = _as_fractional(instance, alloc)
    out = []
    for (i, e) in sorted(frac, key=lambda k: (instance.index[k[1]], k[0])):
        kind = item_kind(instance, e)
        v = instance.value(i, e)
        if is_good(kind) and v <= 0:
            out.append(Violation("non-malicious", (i,), v, Fraction(0), relation=">", item=e,
                                 detail={"kind": kind, "share": frac[i, e]}))
        elif kind == "neutral" and v != 0:
            out.append(Violation("non-malicious", (i,), v, Fraction(0), relation="==", item=e,
                                 detail={"kind": kind, "share": frac[i, e]}))
    return CheckReport("non-malicious", tuple(out))


def check_fpo(instance: Instance, alloc) -> CheckReport:
    """Fractional Pareto optimality via non-maliciousness plus the absence of
    a directed consumption cycle whose weight product is below 1."""
    frac = _as_fractional(instance, alloc)
    nm = check_non_malicious(instance, frac)
    if not nm.holds:
        return CheckReport("fPO", nm.violations)
    cycle = find_product_cycle(instance, frac)
    if cycle is None:
        return CheckReport("fPO")
    prod = cycle_product(instance, cycle)
    agents = tuple(cycle[0::2])
    return CheckReport("fPO", (Violation("fPO", agents, prod, Fraction(1), detail={"cycle": cycle}),))
