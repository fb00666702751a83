import math

import numpy as np
import pytest

from crowns import analysis
from crowns.analysis import (
    admissible_set,
    bifurcation_n3,
    central_interval,
    classify_convex,
    convex_threshold_mass,
    convexity_window,
    count_configurations,
    critical_points,
    delta_n,
    equal_mass_radius,
    is_convex,
    solve_for_mass,
    zeros_of_F,
)
from crowns.errors import ConjectureViolation, DomainError
from crowns.potential import context, h_of_a


@pytest.mark.parametrize("n, z1, z2", [
    (3, 0.413887932417, 1.619789608802),
    (4, 0.697380509876, 1.602408486212),
    (100, 0.999674025507, 1.352557858581),
])
def test_zeros(n, z1, z2):
    zp = zeros_of_F(n)
    assert zp.z1 == pytest.approx(z1, abs=1e-9)
    assert zp.z2 == pytest.approx(z2, abs=1e-9)
    assert zp.conjecture_verified and zp.sign_changes == 2


def test_zeros_n2_closed_form():
    zp = zeros_of_F(2)
    assert zp.analytic
    assert zp.z1 == pytest.approx(1 / math.sqrt(3), rel=1e-14)
    assert zp.z2 == pytest.approx(math.sqrt(3), rel=1e-14)


def test_conjecture_violation_propagates(monkeypatch):
    def fake_scan(*args, **kwargs):
        from crowns.rootkit import Bracket
        return [Bracket(0.1 * k, 0.1 * k + 0.05, -1.0, 1.0) for k in range(1, 4)]
    monkeypatch.setattr(analysis, "scan_brackets", fake_scan)
    zeros_of_F.cache_clear()
    try:
        with pytest.raises(ConjectureViolation) as info:
            zeros_of_F(6)
        assert info.value.n == 6 and len(info.value.brackets) == 3
    finally:
        zeros_of_F.cache_clear()


def test_admissible_n3():
    adm = admissible_set(3)
    assert [iv.label for iv in adm] == ["inner", "central", "outer"]
    want = [(0.0, 0.413888), (0.617364, 1.619790), (2.416113, math.inf)]
    for iv, (lo, hi) in zip(adm, want):
        assert iv.lo == pytest.approx(lo, abs=1e-6)
        assert iv.hi == pytest.approx(hi, abs=1e-6) if math.isfinite(hi) else math.isinf(iv.hi)


def test_admissible_n4_central():
    iv = central_interval(4)
    assert (iv.lo, iv.hi) == pytest.approx((0.697380509876, 1.433937406966), abs=1e-9)


def test_admissible_n2():
    adm = admissible_set(2)
    assert len(adm) == 1
    assert (adm[0].lo, adm[0].hi) == pytest.approx((0.5773502692, 1.7320508076), abs=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 9, 30])
def test_admissible_reciprocity(n):
    adm = admissible_set(n)
    assert adm.reciprocal().isclose(adm, atol=1e-12 * 10)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_h_negative_exactly_off_admissible(n):
    adm = admissible_set(n)
    ctx = context(n)
    a = np.exp(np.linspace(-4, 4, 3001))
    v = ctx.grid(a, full=False)
    h = a * a * v["F"] / v["G"]
    inside = np.array([x in adm for x in a])
    assert np.all(h[inside] > 0)
    assert np.all(h[~inside] < 0)


def test_solve_n3_m10():
    sset = solve_for_mass(3, 10.0)
    assert len(sset.solutions) == 1
    z2 = zeros_of_F(3).z2
    assert 1 / z2 < sset.solutions[0].a < 1


def test_solve_n3_m100():
    zp = zeros_of_F(3)
    radii = solve_for_mass(3, 100.0).radii
    assert len(radii) == 3
    assert 1 / zp.z2 < radii[0] < 1
    assert all(a > 1 / zp.z1 for a in radii[1:])


def test_solve_n4_m1():
    sset = solve_for_mass(4, 1.0)
    a1 = equal_mass_radius(4)
    assert sset.radii == pytest.approx([1 / a1, 1.0, a1], rel=1e-12)
    assert sset.count_deduplicated == 2


def test_solve_n5_m2_one_per_component():
    sset = solve_for_mass(5, 2.0)
    assert len(sset.solutions) >= 3
    assert {s.interval_label for s in sset.solutions} == {"inner", "central", "outer"}


@pytest.mark.parametrize("n, m", [(3, 0.02), (3, 1.0004), (4, 3.0), (7, 0.5), (12, 250.0), (2, 7.0)])
def test_solutions_satisfy_curve_and_oracle(n, m):
    for s in solve_for_mass(n, m).solutions:
        assert abs(h_of_a(n, s.a) - m) <= 1e-10 * max(1.0, m)
        assert s.residual <= 1e-9 and s.report.passes


def test_mass_inversion_symmetry():
    r = solve_for_mass(5, 4.0).radii
    rinv = solve_for_mass(5, 0.25).radii
    assert sorted(1 / a for a in r) == pytest.approx(rinv, rel=1e-12)


def test_count_examples():
    assert count_configurations(3, 1.0004).count == 3
    bif = bifurcation_n3()
    res = count_configurations(3, bif.m_star)
    assert res.boundary and res.count == 2
    assert count_configurations(3, 1.0).count == 2
    for m in (0.1, 1.0, 3.0, 1e3):
        assert count_configurations(2, m).count == 1


def test_bifurcation_values():
    bif = bifurcation_n3()
    assert bif.m_star == pytest.approx(1.0007682, abs=1e-6)
    assert bif.m_star_star == pytest.approx(35.70017694, abs=1e-6)
    assert 1 < bif.a_star < 25 / 16
    assert bif.a_star_star > 3


def test_critical_points_n3_symmetric():
    crit = critical_points(3)
    assert len(crit) == 4
    assert sorted(1 / c for c in crit) == pytest.approx(crit, rel=1e-9)


@pytest.mark.parametrize("n", [4, 6])
def test_equal_mass_radius(n):
    a1 = equal_mass_radius(n)
    assert a1 > 1
    assert h_of_a(n, a1) == pytest.approx(1.0, abs=1e-10)
    assert h_of_a(n, 1 / a1) == pytest.approx(1.0, abs=1e-10)


def test_equal_mass_radius_needs_n4():
    with pytest.raises(DomainError):
        equal_mass_radius(3)


def test_convexity_window():
    w = convexity_window(3)
    assert (w[0].lo, w[0].hi) == pytest.approx((0.5, 2.0), rel=1e-15)
    assert not is_convex(4, 1.42)
    assert all(is_convex(n, 1.0) for n in range(2, 20))


def test_convex_threshold_n4():
    assert convex_threshold_mass(4) == pytest.approx(16.05679941, abs=1e-6)


def test_classify_convex():
    assert classify_convex(4, 20.0).convex_count == 0
    assert classify_convex(4, 10.0).convex_count == 1
    assert classify_convex(3, 1.0).convex_count == 2
    rep = classify_convex(7, 3.0)
    assert rep.delta > 0


def test_solve_n4_above_threshold_not_convex():
    assert not any(s.convex for s in solve_for_mass(4, 16.2).solutions)


@pytest.mark.parametrize("n", [5, 100, 5000])
def test_delta_positive(n):
    assert delta_n(n) > 0


def test_convex_admissible_radii_are_central_for_moderate_n():
    for n in range(5, 61):
        assert delta_n(n) > 0
        window, central = convexity_window(n), central_interval(n)
        assert window[0].lo < central.lo and central.hi < window[0].hi
        meet = window.intersection(admissible_set(n))
        assert len(meet) == 1
        assert (meet[0].lo, meet[0].hi) == (central.lo, central.hi)
