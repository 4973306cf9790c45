from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tbtop.circle import (
    ZERO,
    CircleInterval,
    CirclePoint,
    add,
    dist_to_zero,
    normalize,
    scale,
)

points = st.builds(normalize, st.integers(-10**6, 10**6), st.integers(1, 10**4))


@pytest.mark.parametrize("num, den, expected", [
    (3, 2, CirclePoint(1, 2)),
    (-1, 4, CirclePoint(3, 4)),
    (0, 7, CirclePoint(0, 1)),
])
def test_normalize_examples(num, den, expected):
    assert normalize(num, den) == expected


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        normalize(1, 0)


def test_unreduced_construction_rejected():
    with pytest.raises(ValueError):
        CirclePoint(2, 4)
    with pytest.raises(ValueError):
        CirclePoint(5, 4)


def test_add_and_scale_examples():
    assert add(CirclePoint(1, 2), CirclePoint(2, 3)) == CirclePoint(1, 6)
    assert scale(4, CirclePoint(1, 4)) == ZERO
    assert scale(-1, CirclePoint(1, 3)) == CirclePoint(2, 3)


@pytest.mark.parametrize("pt, d", [
    (CirclePoint(3, 4), Fraction(1, 4)),
    (ZERO, Fraction(0)),
    (CirclePoint(1, 2), Fraction(1, 2)),
])
def test_dist_to_zero_examples(pt, d):
    assert dist_to_zero(pt) == d


def test_text_and_json_forms():
    pt = CirclePoint.parse("7/4")
    assert str(pt) == "3/4"
    assert pt.to_json() == {"num": "3", "den": "4"}
    assert CirclePoint.from_json(pt.to_json()) == pt


@given(points, points, points)
def test_group_laws(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, b) == add(b, a)
    assert add(a, ZERO) == a
    assert add(a, scale(-1, a)) == ZERO


@given(points, points)
def test_triangle_inequality_at_zero(a, b):
    assert dist_to_zero(add(a, b)) <= dist_to_zero(a) + dist_to_zero(b)


@given(st.integers(-50, 50), points)
def test_scaling_bound(m, a):
    assert dist_to_zero(scale(m, a)) <= abs(m) * dist_to_zero(a)


@given(points)
def test_normalize_idempotent(a):
    assert normalize(a.num, a.den) == a
    assert 0 <= a.num < a.den


@given(points, st.fractions(min_value=0, max_value=Fraction(1, 2)))
def test_interval_contains_center_and_bounds(c, r):
    arc = CircleInterval(c, r)
    assert arc.contains(c)
    lo, hi = arc.dist_bounds()
    assert lo <= dist_to_zero(c) <= hi
