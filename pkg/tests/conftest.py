"""Shared fixtures: the worked three- and four-category examples."""

from __future__ import annotations

import pytest
from hypothesis import settings

from censored_multinomial import PartialSumRectangle, Rectangle, SimplexSpec

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("ci")


@pytest.fixture
def rect_m3n8() -> Rectangle:
    """Three-category rectangle whose minimal bounding partial-sum rectangle
    strictly contains it."""
    return Rectangle(SimplexSpec(3, 8), (1, 2, 2), (3, 4, 4))


@pytest.fixture
def psr_m3n8() -> PartialSumRectangle:
    """The minimal bounding partial-sum rectangle of ``rect_m3n8``."""
    return PartialSumRectangle(SimplexSpec(3, 8), (1, 4), (3, 6))


@pytest.fixture
def psr_m4n5() -> PartialSumRectangle:
    """Four-category partial-sum rectangle whose minimal bounding rectangle
    strictly contains it."""
    return PartialSumRectangle(SimplexSpec(4, 5), (2, 3, 4), (3, 4, 5))
