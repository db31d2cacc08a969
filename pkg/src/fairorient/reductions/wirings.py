"""Frozen clause wirings: the first candidates (in search order) that pass the
forcing property in both polarities.  Regenerate with
``search_wiring(notion)``; the tests check that the search still returns them.

Edges are ``(a, b, value_a, value_b)`` over dummy indices in goods polarity;
anchors are ``(dummy, value_c, value_dummy)``; ``intended`` lists the owning
dummy of every internal edge.
"""
from __future__ import annotations

from ..fairness import Notion
from .gadgets3sat import ClauseWiring

PROP_WIRING = ClauseWiring(
    notion=Notion.PROP,
    dummies=11,
    internal=(
        (1, 2, 1, 1), (2, 3, 1, 1), (3, 1, 1, 2),
        (4, 5, 1, 2), (5, 6, 2, 2), (6, 7, 2, 2), (7, 4, 2, 1),
        (8, 9, 1, 2), (9, 10, 2, 2), (10, 11, 2, 2), (11, 8, 2, 2),
        (2, 4, 2, 2), (3, 8, 2, 1),
    ),
    anchors=((1, 1, 1),),
    intended={
        "goods": (2, 2, 1, 4, 5, 6, 7, 9, 10, 11, 8, 4, 3),
        "chores": (1, 3, 3, 4, 5, 6, 4, 8, 9, 10, 11, 2, 8),
    },
)

PROPX_WIRING = ClauseWiring(
    notion=Notion.PROPX,
    dummies=6,
    internal=(
        (1, 2, 1, 1), (1, 3, 1, 1), (1, 4, 1, 1), (1, 5, 1, 1), (1, 6, 0, 1), (2, 3, 1, 0),
    ),
    anchors=((1, 1, 1), (4, 1, 0)),
    intended={
        "goods": (1, 3, 4, 1, 1, 2),
        "chores": (2, 1, 1, 5, 1, 2),
    },
)


def default_wiring(notion: Notion | str) -> ClauseWiring:
    notion = Notion(notion)
    if notion is Notion.PROP:
        return PROP_WIRING
    if notion is Notion.PROPX:
        return PROPX_WIRING
    raise ValueError(f"no clause wiring for {notion.value}")
