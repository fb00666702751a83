import math

import pytest

from crowns.intervals import Interval, IntervalUnion


def test_open_interval_membership():
    iv = Interval(1.0, 2.0)
    assert 1.5 in iv
    assert 1.0 not in iv and 2.0 not in iv


def test_invalid_interval():
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)
    with pytest.raises(ValueError):
        Interval(-1.0, 1.0)


def test_reciprocal_maps_zero_and_inf():
    u = IntervalUnion([(0.0, 0.5), (0.8, 1.25), (2.0, math.inf)])
    r = u.reciprocal()
    assert r.isclose(u)
    assert r[0].lo == 0.0 and math.isinf(r[-1].hi)


def test_overlap_rejected_but_touching_allowed():
    with pytest.raises(ValueError):
        IntervalUnion([(0.0, 2.0), (1.0, 3.0)])
    u = IntervalUnion([(1.0, 2.0), (0.0, 1.0)])
    assert [iv.lo for iv in u] == [0.0, 1.0]
    assert 1.0 not in u


def test_component_and_intersection():
    u = IntervalUnion([Interval(0.0, 1.0, "inner"), Interval(2.0, 3.0, "outer")])
    assert u.component_containing(2.5).label == "outer"
    assert u.component_containing(1.5) is None
    v = u.intersection(IntervalUnion([(0.5, 2.5)]))
    assert v == IntervalUnion([(0.5, 1.0), (2.0, 2.5)])
    assert u.intersects(0.9, 1.1)
    assert not u.intersects(1.0, 2.0)


def test_to_list_and_str():
    u = IntervalUnion([(2.0, math.inf)])
    assert u.to_list() == [[2.0, None]]
    assert str(u[0]) == "(2, inf)"
