import pytest

from pillowtwist.curves import Multicurve, lift_slope, trace_lift
from pillowtwist.derivative import (
    framed_link_report,
    select_sublink,
    verify_derivative,
)
from pillowtwist.fiber import TorusParams, build_fiber
from pillowtwist.seifert import compute_seifert_matrix
from pillowtwist.slope import Slope, ZERO


@pytest.fixture(scope="module")
def fc32():
    return build_fiber(TorusParams(3, 2))


@pytest.fixture(scope="module")
def fc43():
    return build_fiber(TorusParams(4, 3))


def test_select_sublink_32(fc32):
    lift = lift_slope(fc32, ZERO)
    subset = select_sublink(fc32, lift)
    assert len(subset) == 2


def test_select_sublink_43(fc43):
    lift = lift_slope(fc43, ZERO)
    subset = select_sublink(fc43, lift)
    assert len(subset) == 6


def test_select_sublink_census(fc32):
    lift = lift_slope(fc32, Slope(2, 1))
    subset = select_sublink(fc32, lift)
    sub = Multicurve(fc32.params, tuple(lift.components[i] for i in subset))
    from pillowtwist.census import complement_components

    census = complement_components(fc32, sub)
    assert census == [(2 - 2 * 2, 2 * 2 + 1 - 1, 0)]  # one planar piece, 4 circles
    # chi = -2 with 4 boundary circles and genus 0; 2n+1 = 5 circles appear
    # only after the fiber is punctured at the knot.


def test_verify_derivative_zero_lift(fc32):
    lift = lift_slope(fc32, ZERO)
    subset = select_sublink(fc32, lift)
    report = verify_derivative(fc32, lift, subset)
    assert report.verdict
    assert report.homology_rank == 2
    assert all(all(x == 0 for x in row) for row in report.linking_matrix)


def test_verify_derivative_gst_slopes(fc32):
    for s in (Slope(-2, 3), Slope(-4, 5), Slope(-6, 7)):
        lift = lift_slope(fc32, s)
        subset = select_sublink(fc32, lift)
        report = verify_derivative(fc32, lift, subset)
        assert report.verdict, str(s)


def test_parallel_pair_subset_fails(fc32):
    # Two parallel components (q = 2) are homologous up to sign, so a subset
    # containing a parallel pair has deficient rank and verdict false.
    lift = lift_slope(fc32, ZERO)
    from pillowtwist.curves import deck_image

    comp = lift.components[0]
    partner_obj = deck_image(fc32, Multicurve(fc32.params, (comp,)), k=3).components[0]
    partner = next(
        i
        for i, c in enumerate(lift.components)
        if c.unoriented() == partner_obj.unoriented()
    )
    bad = (0, partner)
    report = verify_derivative(fc32, lift, bad)
    assert not report.verdict
    assert report.homology_rank < 2


def test_framed_link_report(fc32):
    rep = framed_link_report(TorusParams(3, 2), ZERO, fc32)
    assert rep["derivative_size"] == 2
    assert rep["framings"] == [0, 0]
    assert rep["verdict"] is True
    assert rep["component_count"] == 6
    assert rep["closure"]["branched_cover"]["kind"] == "connected_sum_s1xs2"


def test_framed_link_report_43(fc43):
    rep = framed_link_report(TorusParams(4, 3), Slope(2, 1), fc43)
    assert rep["derivative_size"] == 6
    assert rep["component_count"] == 12
    assert rep["verdict"] is True
    assert rep["closure"]["branched_cover"]["kind"] == "brieskorn"


def test_framed_link_report_rejects_odd(fc32):
    with pytest.raises(ValueError):
        framed_link_report(TorusParams(3, 2), Slope(1, 1), fc32)
