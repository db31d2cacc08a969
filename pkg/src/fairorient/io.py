"""File formats: instances and orientations (JSON), formulas and Partition inputs (text).

Serialization is canonical: sorted keys, rationals in lowest terms as ints or
``"p/q"`` strings.
"""
from __future__ import annotations

import json
import re
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from .model import (
    BadRational,
    GraphClass,
    Instance,
    InstanceError,
    Orientation,
    build_instance,
    format_rational,
    validate_orientation,
)


class FormatError(InstanceError):
    """Malformed file content; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _text(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"not UTF-8: {exc}") from None
    return data


def _line_of(text: str, token: str) -> int | None:
    pos = text.find(token)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


def _load_json(text: str) -> Any:
    def reject_float(tok: str):
        raise FormatError(f"decimal number {tok} is not allowed; write it as \"p/q\"", _line_of(text, tok))

    try:
        return json.loads(text, parse_float=reject_float, parse_constant=reject_float)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno) from None


def parse_instance(data: bytes | str) -> tuple[Instance, GraphClass]:
    text = _text(data)
    raw = _load_json(text)
    if not isinstance(raw, Mapping):
        raise FormatError("instance must be a JSON object", 1)
    try:
        return build_instance(raw)
    except BadRational as exc:
        bad = re.search(r"'([^']*)'", str(exc))
        line = _line_of(text, bad.group(1)) if bad else None
        raise FormatError(str(exc), line) from None


def parse_instance_file(data: bytes | str) -> Instance:
    return parse_instance(data)[0]


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    return {
        "agents": instance.n,
        "items": [
            {
                "id": it.id,
                "relevant": list(it.relevant),
                "values": {str(a): _json_rational(it.value(a)) for a in it.relevant},
            }
            for it in instance.items
        ],
    }


def _json_rational(q) -> int | str:
    return int(q) if q.denominator == 1 else format_rational(q)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def instance_to_json(instance: Instance) -> str:
    return dumps(instance_to_dict(instance))


def parse_orientation(data: bytes | str, instance: Instance | None = None) -> Orientation:
    raw = _load_json(_text(data))
    if not isinstance(raw, Mapping):
        raise FormatError("orientation must be a JSON object item -> agent", 1)
    owners = {}
    for e, a in raw.items():
        if isinstance(a, bool) or not isinstance(a, int):
            raise FormatError(f"owner of {e!r} must be an integer agent id, got {a!r}")
        owners[str(e)] = a
    pi = Orientation(owners)
    return validate_orientation(instance, pi) if instance is not None else pi


def orientation_to_json(orientation: Mapping[str, int], instance: Instance | None = None) -> str:
    keys = instance.item_ids if instance is not None else sorted(orientation)
    return json.dumps({e: orientation[e] for e in keys}, indent=2) + "\n"


def read_path(path: str | Path) -> bytes:
    return Path(path).read_bytes()


def load_instance(path: str | Path) -> Instance:
    return parse_instance_file(read_path(path))


def load_orientation(path: str | Path, instance: Instance | None = None) -> Orientation:
    return parse_orientation(read_path(path), instance)
