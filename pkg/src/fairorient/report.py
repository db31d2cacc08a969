"""Text and JSON rendering of check reports, pipeline traces and reduction reports."""
from __future__ import annotations

import json
from typing import Any

from .fairness import CheckReport, Violation
from .model import format_rational
from .solvers import PipelineTrace

_FAILED = {">=": "<", ">": "<=", "==": "!="}


def format_violation(v: Violation) -> str:
    who = f"agent {v.agents[0]}" if len(v.agents) == 1 else f"pair {','.join(map(str, v.agents))}"
    line = f"{v.notion} fails for {who}: lhs={format_rational(v.lhs)} {_FAILED[v.relation]} rhs={format_rational(v.rhs)}"
    if v.item is not None:
        line += f", witness item {v.item}"
    extra = {k: val for k, val in v.detail.items()}
    if "cycle" in extra:
        line += f", cycle {' -> '.join(map(str, extra.pop('cycle')))}"
    if extra:
        line += f" {json.dumps(_plain(extra), sort_keys=True)}"
    return line


def _plain(x: Any) -> Any:
    from fractions import Fraction

    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def render_trace_text(trace: PipelineTrace) -> str:
    agents = sorted(trace.values[0]) if trace.values else []
    names = [name for name, _ in trace.stages]
    width = max([len(n) for n in names] + [5])
    rows = [f"{'stage':<{width}}  " + "  ".join(f"{'v' + str(i):>8}" for i in agents)]
    for name, vals in zip(names, trace.values):
        rows.append(f"{name:<{width}}  " + "  ".join(f"{format_rational(vals[i]):>8}" for i in agents))
    for k, c in enumerate(trace.cycles, 1):
        rows.append(f"cycle {k} ({c['kind']}): {' -> '.join(map(str, c['cycle']))}, "
                    f"product {format_rational(c['product'])}")
    return "\n".join(rows)


def render_report(obj: Any, mode: str = "text") -> str:
    """Render a CheckReport, PipelineTrace or object with ``to_dict``."""
    if mode == "json":
        payload = obj.to_dict() if hasattr(obj, "to_dict") else obj
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if mode != "text":
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(obj, CheckReport):
        if obj.holds:
            return "HOLDS\n"
        return "\n".join(format_violation(v) for v in obj.violations) + "\n"
    if isinstance(obj, PipelineTrace):
        return render_trace_text(obj) + "\n"
    if hasattr(obj, "to_dict"):
        d = obj.to_dict()
        return "\n".join(f"{k}: {v}" for k, v in d.items()) + "\n"
    return f"{obj}\n"
