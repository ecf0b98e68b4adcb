"""Canonical fixtures: the two constructions showing the constraint
families differ for m >= 3.

A three-category rectangle exists whose minimal bounding partial-sum
rectangle strictly contains it, and a four-category partial-sum rectangle
exists whose minimal bounding rectangle strictly contains it. The analyses
are recomputed on demand and diffed against the JSON shipped with the
package, so drift in any enumeration or bounding operation is caught.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from ..constraints import (
    contains,
    enumerate_constraint,
    minimal_bounding_psr,
    minimal_bounding_rectangle,
    to_explicit,
)
from ..serialization import constraint_from_json, constraint_to_json

RECT_M3N8 = "rect_m3n8.json"
PSR_M4N5 = "psr_m4n5.json"
COUNTEREXAMPLES = "counterexamples.json"


def load_fixture(name: str) -> Any:
    path = resources.files("censored_multinomial.fixtures").joinpath(name)
    return json.loads(path.read_text())


def compute_counterexamples() -> dict[str, Any]:
    """Re-derive both counterexample analyses from the constraint fixtures."""
    rect = constraint_from_json(load_fixture(RECT_M3N8))
    rect_points = enumerate_constraint(rect)
    bounding_psr = minimal_bounding_psr(to_explicit(rect))
    psr_points_sup = enumerate_constraint(bounding_psr)
    rect_extras = sorted(set(psr_points_sup) - set(rect_points))

    psr = constraint_from_json(load_fixture(PSR_M4N5))
    psr_points = enumerate_constraint(psr)
    bounding_rect = minimal_bounding_rectangle(to_explicit(psr))
    rect_points_sup = enumerate_constraint(bounding_rect)
    psr_extras = sorted(set(rect_points_sup) - set(psr_points))

    return {
        "m3n8": {
            "rectangle": constraint_to_json(rect),
            "rectangle_points": [list(p) for p in rect_points],
            "minimal_bounding_psr": constraint_to_json(bounding_psr),
            "psr_points": [list(p) for p in psr_points_sup],
            "extra_points": [list(p) for p in rect_extras],
            "extra_points_outside_rectangle": all(
                not contains(rect, p) for p in rect_extras
            ),
        },
        "m4n5": {
            "psr": constraint_to_json(psr),
            "psr_points": [list(p) for p in psr_points],
            "minimal_bounding_rectangle": constraint_to_json(bounding_rect),
            "rectangle_points": [list(p) for p in rect_points_sup],
            "extra_points": [list(p) for p in psr_extras],
            "extra_points_outside_psr": all(
                not contains(psr, p) for p in psr_extras
            ),
        },
    }


def counterexamples_match() -> tuple[dict[str, Any], dict[str, Any], bool]:
    """(recomputed analyses, canonical analyses, whether they agree exactly)."""
    computed = compute_counterexamples()
    canonical = load_fixture(COUNTEREXAMPLES)
    return computed, canonical, computed == canonical
