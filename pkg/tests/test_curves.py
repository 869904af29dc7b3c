from fractions import Fraction
from math import gcd

import pytest

from pillowtwist.curves import (
    lift_intersection,
    Component,
    Multicurve,
    NotASlopeLiftError,
    apply_tilde_tau_inf,
    apply_tilde_tau_zero,
    base_vertical_multicurve,
    deck_image,
    geometric_intersection,
    lift_base_multicurves,
    lift_slope,
    recognize_slope,
    reflection_image,
    trace_lift,
    vertical_flow,
)
from pillowtwist.fiber import TorusParams, build_fiber
from pillowtwist.slope import INFINITY, ONE, ZERO, Slope, TwistMove, apply_twist, intersection_number

GRID = [(3, 2), (4, 3), (5, 2), (5, 3), (5, 4), (7, 2), (7, 3)]


@pytest.fixture(scope="module")
def fc32():
    return build_fiber(TorusParams(3, 2))


@pytest.fixture(scope="module")
def fc43():
    return build_fiber(TorusParams(4, 3))


def coprime_slopes(bound, even_only=False):
    out = [INFINITY] if not even_only else []
    for d in range(1, bound + 1):
        for c in range(-bound, bound + 1):
            if gcd(abs(c), d) == 1 and Slope(c, d) not in out:
                if even_only and c % 2:
                    continue
                out.append(Slope(c, d))
    return out


def test_base_multicurves_counts(fc32, fc43):
    l0, linf, l1 = lift_base_multicurves(fc43)
    assert len(l0) == 12
    assert len(linf) == 1
    assert len(l1) == 1
    l0, linf, l1 = lift_base_multicurves(fc32)
    assert len(l1) == 1
    assert len(l0) == 6


@pytest.mark.parametrize("p,q", [(3, 2), (4, 3), (5, 2)])
def test_lift_parity_small_sample(p, q):
    fc = build_fiber(TorusParams(p, q))
    for s in coprime_slopes(4):
        m = trace_lift(fc, s)
        expected = 1 if s.a % 2 else p * q
        assert len(m) == expected, f"slope {s}"


def test_deck_invariance_of_lifts(fc32):
    for s in (ZERO, Slope(2, 3), Slope(-4, 5), ONE, Slope(3, 4)):
        m = trace_lift(fc32, s)
        assert deck_image(fc32, m).component_set() == m.component_set()


def test_deck_permutes_components_transitively(fc43):
    m = trace_lift(fc43, Slope(2, 3))
    comp = m.components[0]
    orbit = set()
    cur = Multicurve(fc43.params, (comp,))
    for _ in range(12):
        orbit.add(cur.components[0])
        cur = deck_image(fc43, cur)
    assert len(orbit) == 12


def test_q2_deck_power_p_is_free_involution_on_components(fc32):
    # For q = 2 the deck power p swaps the components in pairs; the
    # orientation reversal within each parallel pair is checked
    # homologically in test_homology.
    m = trace_lift(fc32, ZERO)
    comps = m.unoriented_set()
    for comp in m.components:
        image = deck_image(fc32, Multicurve(fc32.params, (comp,)), k=3).components[0]
        assert image.unoriented() in comps
        assert image.unoriented() != comp.unoriented()
        back = deck_image(fc32, Multicurve(fc32.params, (image,)), k=3).components[0]
        assert back.unoriented() == comp.unoriented()


def test_intersection_scaling_samples(fc32, fc43):
    for fc in (fc32, fc43):
        pq = fc.params.deck_order
        slopes = [ZERO, INFINITY, ONE, Slope(2, 3), Slope(-1, 2), Slope(3, 2)]
        for i, s1 in enumerate(slopes):
            for s2 in slopes[i + 1 :]:
                assert lift_intersection(fc, s1, s2) == pq * intersection_number(
                    s1, s2
                ), (s1, s2)


def test_self_intersection_zero(fc32):
    m1 = trace_lift(fc32, Slope(2, 3))
    assert geometric_intersection(fc32, m1, m1) == 0


def test_vertical_flow_period(fc32):
    psi, t = Fraction(1, 5), Fraction(1, 3)
    out = vertical_flow(fc32, psi, t, Fraction(4))
    assert out[0] == psi and out[1] == t and out[2] == 1


def test_tau_zero_fixes_axes(fc32):
    l0 = base_vertical_multicurve(fc32)
    image = apply_tilde_tau_zero(fc32, l0, 1)
    assert image.unoriented_set() == l0.unoriented_set()
    assert image.slope == apply_twist(TwistMove(ZERO, 1), ZERO)


def test_tau_inf_fixes_core(fc32):
    linf = Multicurve(fc32.params, (Component.circle(Fraction(19, 64)),), INFINITY)
    image = apply_tilde_tau_inf(fc32, linf, 1)
    assert image.unoriented_set() == linf.unoriented_set()


def test_twist_inverses(fc32):
    m = trace_lift(fc32, Slope(2, 3))
    back = apply_tilde_tau_zero(fc32, apply_tilde_tau_zero(fc32, m, 2), -2)
    assert back.unoriented_set() == m.unoriented_set()
    back = apply_tilde_tau_inf(fc32, apply_tilde_tau_inf(fc32, m, 1), -1)
    assert back.unoriented_set() == m.unoriented_set()


def test_recognize_roundtrip(fc32):
    for s in (ZERO, INFINITY, ONE, Slope(2, 3), Slope(-4, 5)):
        m = lift_slope(fc32, s)
        assert recognize_slope(fc32, m) == s


def test_recognize_deck_and_reflection(fc32):
    m = lift_slope(fc32, Slope(2, 3))
    assert recognize_slope(fc32, deck_image(fc32, m)) == Slope(2, 3)


def test_recognize_rejects_sublink(fc32):
    m = trace_lift(fc32, ZERO)
    sub = Multicurve(fc32.params, m.components[:2])
    with pytest.raises(NotASlopeLiftError):
        recognize_slope(fc32, sub)


def test_lift_slope_matches_trace_oracle():
    for p, q in [(3, 2), (4, 3), (5, 2)]:
        fc = build_fiber(TorusParams(p, q))
        for s in coprime_slopes(3):
            via_twists = lift_slope(fc, s)
            via_trace = trace_lift(fc, s)
            assert len(via_twists) == len(via_trace), str(s)
            assert recognize_slope(fc, via_twists) == s
            # Same isotopy class: zero intersection between the two routes.
            assert geometric_intersection(fc, via_twists, via_trace) == 0


def test_twist_lift_commutation_sample(fc32):
    # recognize(tilde_tau(lift(s))) == tau(s) for both axes.
    for s in (ZERO, ONE, Slope(2, 3), Slope(-1, 2), INFINITY):
        m = lift_slope(fc32, s)
        for n in (1, -1, 2):
            img = apply_tilde_tau_inf(fc32, m, n)
            assert recognize_slope(fc32, img) == apply_twist(TwistMove(INFINITY, n), s)
            img = apply_tilde_tau_zero(fc32, m, n)
            assert recognize_slope(fc32, img) == apply_twist(TwistMove(ZERO, n), s)


def test_core_shift_example(fc32):
    # The inverse lifted infinity-twist realizes the slope shift
    # (c - 2d)/d on even lifts.
    m = lift_slope(fc32, Slope(2, 3))
    img = apply_tilde_tau_inf(fc32, m, -1)
    assert recognize_slope(fc32, img) == Slope(2 - 2 * 3, 3)


def test_reflection_preserves_zero_lift(fc32):
    l0 = base_vertical_multicurve(fc32)
    assert reflection_image(fc32, l0).unoriented_set() == l0.unoriented_set()
