import math

import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from htl.geom import (
    GeometryError,
    ORACLE_TOLERANCE,
    area_from_chi,
    minimal_area,
    pi_multiple_float,
    pi_multiple_str,
    solve_triangle_from_angles,
    triangle_bound_value,
    triangle_geometry,
)


def test_angle_deficit_area():
    g = triangle_geometry(2 * math.pi / 7)
    assert abs(g.area - math.pi / 7) < 1e-14


def test_radii_against_law_of_cosines():
    for k in range(7, 31):
        alpha = 2 * math.pi / k
        g = triangle_geometry(alpha)
        _, r, big_r = solve_triangle_from_angles(math.pi / 3, alpha / 2, math.pi / 2)
        assert abs(g.inradius - r) <= ORACLE_TOLERANCE
        assert abs(g.circumradius - big_r) <= ORACLE_TOLERANCE
        assert 0 < g.inradius < g.circumradius


def test_euclidean_degeneration():
    g = triangle_geometry(math.pi / 3 - 1e-9)
    assert g.area < 1e-8 and g.inradius < 1e-3 and g.circumradius < 1e-3


def test_angle_range_enforced():
    with pytest.raises(GeometryError):
        triangle_geometry(math.pi / 3)
    with pytest.raises(GeometryError):
        triangle_geometry(0.0)


@given(st.floats(min_value=0.02, max_value=math.pi / 3 - 0.02))
def test_radii_decrease_with_angle(alpha):
    g1 = triangle_geometry(alpha)
    g2 = triangle_geometry(alpha + 0.01)
    assert g2.inradius < g1.inradius
    assert g2.circumradius < g1.circumradius


def test_area_from_chi():
    assert area_from_chi(-1) == Fraction(2)
    assert area_from_chi(-2) == Fraction(4)
    with pytest.raises(GeometryError):
        area_from_chi(0)


def test_triangle_bound_exact():
    assert triangle_bound_value(6, Fraction(2, 7)) == Fraction(2)
    assert triangle_bound_value(3, Fraction(2, 10)) == Fraction(4)
    approx = triangle_bound_value(6, 2 * math.pi / 7)
    assert abs(approx - 2 * math.pi) < 1e-12


def test_minimal_areas_table():
    for k, general, oriented_ in ((7, 2, 4), (8, 2, 4), (9, 2, 4), (12, 2, 4),
                                  (10, 4, 4), (18, 4, 4)):
        ma = minimal_area(k)
        assert ma.general == Fraction(general)
        assert ma.oriented == Fraction(oriented_)
    assert minimal_area(7).subgroup_index == 84
    for k in range(7, 60):
        ma = minimal_area(k)
        if k % 12 in (2, 6, 10):
            assert ma.oriented == ma.general
        else:
            assert ma.oriented == 2 * ma.general
        assert ma.subgroup_index == 2 * (ma.general * 3 / (k - 6)) * k


def test_pi_multiple_formatting():
    assert pi_multiple_str(Fraction(2)) == "2/1*pi"
    assert pi_multiple_str(Fraction(7, 3)) == "7/3*pi"
    assert abs(pi_multiple_float(Fraction(2)) - 2 * math.pi) < 1e-15
