import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from crowns.core import (
    CrownConfiguration,
    RingSpec,
    build_positions,
    crown_from_dict,
    crown_to_dict,
    dump_crown,
    load_crown,
    twist_offsets,
)


def test_single_square():
    pos = build_positions(CrownConfiguration((RingSpec(4, 1.0, 1.0),)))
    np.testing.assert_allclose(pos.coords, [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-15)


def test_two_segments_make_square():
    crown = CrownConfiguration((RingSpec(2, 1.0, 1.0), RingSpec(2, 1.0, 1.0, "twisted")))
    pts = build_positions(crown).coords
    np.testing.assert_allclose(sorted(map(tuple, np.round(pts, 14))),
                               [(-1, 0), (0, -1), (0, 1), (1, 0)], atol=1e-14)


def test_twisted_leader_position():
    a = 1.7
    pos = build_positions(CrownConfiguration.twisted_pair(3, a, 2.0))
    leader = pos.coords[3]
    np.testing.assert_allclose(leader, [a * math.cos(math.pi / 3), a * math.sin(math.pi / 3)],
                               rtol=1e-15)
    assert pos.ring_index[3] == 1 and pos.body_index[3] == 0


@pytest.mark.parametrize("phases, kind", [
    (("nested", "twisted"), "twisted"),
    (("nested", "nested", "nested"), "nested"),
    ((0.0, math.pi / 10), "non-crown"),
    ((0.0, math.pi / 5), "twisted"),
    (("twisted", "twisted"), "nested"),
])
def test_twist_classification(phases, kind):
    crown = CrownConfiguration(tuple(RingSpec(5, 1.0 + j, 1.0, p) for j, p in enumerate(phases)))
    assert twist_offsets(crown).kind == kind


@pytest.mark.parametrize("kw", [
    dict(n=1, radius=1.0, mass=1.0),
    dict(n=3, radius=0.0, mass=1.0),
    dict(n=3, radius=1.0, mass=-1.0),
    dict(n=3, radius=1.0, mass=1.0, phase="sideways"),
    dict(n=3, radius=1.0, mass=1.0, phase=2.0),
])
def test_ringspec_validation(kw):
    with pytest.raises(ValueError):
        RingSpec(**kw)


def test_mixed_n_rejected():
    with pytest.raises(ValueError):
        CrownConfiguration((RingSpec(3, 1, 1), RingSpec(4, 2, 1)))


rings = st.lists(
    st.tuples(st.floats(0.1, 10), st.floats(0.1, 10), st.sampled_from(["nested", "twisted"])),
    min_size=1, max_size=4)


@given(n=st.integers(2, 12), spec=rings, delta=st.floats(-0.2, 0.2))
def test_rotation_equivariance(n, spec, delta):
    base = CrownConfiguration(tuple(RingSpec(n, r, m, 0.0 if p == "nested" else math.pi / n)
                                    for r, m, p in spec))
    step = math.pi / n
    rot = []
    for ring in base.rings:
        ph = ring.angle + delta
        if not (-step < ph <= step):
            return
        rot.append(RingSpec(n, ring.radius, ring.mass, ph))
    p0 = build_positions(base).coords
    p1 = build_positions(CrownConfiguration(tuple(rot))).coords
    c, s = math.cos(delta), math.sin(delta)
    expect = p0 @ np.array([[c, s], [-s, c]])
    scale = max(r for r, _, _ in spec)
    np.testing.assert_allclose(p1, expect, atol=1e-12 * scale)


@given(n=st.integers(2, 40), spec=rings)
def test_center_of_mass_at_origin(n, spec):
    crown = CrownConfiguration(tuple(RingSpec(n, r, m, p) for r, m, p in spec))
    pos = build_positions(crown)
    scale = max(r for r, _, _ in spec)
    assert np.max(np.abs(pos.center_of_mass())) <= 1e-12 * scale


def test_json_round_trip(tmp_path):
    crown = CrownConfiguration((RingSpec(5, 1.0, 1.0), RingSpec(5, 1.3, 2.0, "twisted"),
                                RingSpec(5, 2.1, 0.5, 0.25)))
    path = tmp_path / "c.json"
    dump_crown(crown, path)
    assert load_crown(path) == crown
    assert crown_from_dict(crown_to_dict(crown)) == crown


def test_json_syntax_error_has_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3,\n "rings": [}\n')
    with pytest.raises(json.JSONDecodeError) as info:
        load_crown(path)
    assert info.value.lineno == 2


@pytest.mark.parametrize("doc", [
    [], {"rings": []}, {"n": 3}, {"n": "3", "rings": [{"radius": 1, "mass": 1}]},
    {"n": 3, "rings": [{"radius": 1}]}, {"n": 3, "rings": [{"radius": -1, "mass": 1}]},
])
def test_schema_errors(doc):
    with pytest.raises(ValueError):
        crown_from_dict(doc)
