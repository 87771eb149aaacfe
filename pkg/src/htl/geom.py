"""Hyperbolic quantities: triangle measurements, surface areas, minimality.

All surface areas here are rational multiples of pi and are kept exact as
:class:`fractions.Fraction` coefficients of pi; floats are derived views.
Triangle side lengths are genuinely transcendental and stay floating point,
with every formula cross-checked against an independent solver built on
the angle-side law of cosines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .labeling import LabelingError


class GeometryError(LabelingError):
    pass


ORACLE_TOLERANCE = 1e-12


def pi_multiple_str(coeff: Fraction) -> str:
    """Serialize an exact area coefficient as "p/q*pi"."""
    return f"{coeff.numerator}/{coeff.denominator}*pi"


def pi_multiple_float(coeff: Fraction) -> float:
    return float(coeff) * math.pi


@dataclass(frozen=True)
class TriangleGeometry:
    """A regular hyperbolic triangle of angle ``alpha`` (radians)."""

    alpha: float
    area: float
    inradius: float
    circumradius: float


def _oracle_cosh_sides(a_angle: float, b_angle: float, c_angle: float) -> tuple[float, float, float]:
    """cosh of the side lengths opposite the given angles, by the angle-side
    law of cosines cosh a = (cos A + cos B cos C) / (sin B sin C)."""
    if a_angle + b_angle + c_angle >= math.pi:
        raise GeometryError("angle sum must be below pi for a hyperbolic triangle")
    for ang in (a_angle, b_angle, c_angle):
        if not 0 < ang < math.pi:
            raise GeometryError(f"angle {ang} out of range")

    def side(x, y, z):
        return (math.cos(x) + math.cos(y) * math.cos(z)) / (math.sin(y) * math.sin(z))

    return (
        side(a_angle, b_angle, c_angle),
        side(b_angle, c_angle, a_angle),
        side(c_angle, a_angle, b_angle),
    )


def solve_triangle_from_angles(a_angle: float, b_angle: float, c_angle: float) -> tuple[float, float, float]:
    """Side lengths (a, b, c) opposite the given angles.

    Serves as the independent oracle for the closed-form right-triangle
    expressions used in :func:`triangle_geometry`.
    """
    ca, cb, cc = _oracle_cosh_sides(a_angle, b_angle, c_angle)
    return math.acosh(ca), math.acosh(cb), math.acosh(cc)


def triangle_geometry(alpha: float) -> TriangleGeometry:
    """Area, inradius and circumradius of the regular triangle of angle alpha.

    Decomposing the triangle around its centre gives a right triangle with
    angles (pi/3 at the centre, alpha/2 at the vertex, pi/2 at the edge
    midpoint); its legs are the inradius and half an edge, its hypotenuse
    the circumradius.  The closed forms are

        cosh r = cos(alpha/2) / sin(pi/3)
        cosh R = cot(pi/3) * cot(alpha/2)

    and both are validated against :func:`solve_triangle_from_angles`.
    """
    if not 0 < alpha < math.pi / 3:
        raise GeometryError(f"angle {alpha} outside (0, pi/3); triangle is not hyperbolic")
    area = math.pi - 3 * alpha
    cosh_r = math.cos(alpha / 2) / math.sin(math.pi / 3)
    cosh_big = 1.0 / (math.tan(math.pi / 3) * math.tan(alpha / 2))

    # independent check against the angle-side law of cosines, compared on
    # the cosh scale (acosh would amplify error near the flat limit)
    _, cosh_r_check, cosh_big_check = _oracle_cosh_sides(
        math.pi / 3, alpha / 2, math.pi / 2
    )
    if (abs(cosh_r - cosh_r_check) > ORACLE_TOLERANCE
            or abs(cosh_big - cosh_big_check) > ORACLE_TOLERANCE):
        raise GeometryError(
            f"closed-form radii disagree with the law-of-cosines solver: "
            f"cosh r {cosh_r} vs {cosh_r_check}, cosh R {cosh_big} vs {cosh_big_check}"
        )
    r = math.acosh(cosh_r)
    R = math.acosh(cosh_big)
    assert 0 < r < R
    return TriangleGeometry(alpha=alpha, area=area, inradius=r, circumradius=R)


def area_from_chi(chi: int) -> Fraction:
    """Total area 2*pi*|chi| of a closed hyperbolic surface, as a pi-coefficient."""
    if chi >= 0:
        raise GeometryError(f"chi = {chi} is not hyperbolic (needs chi < 0)")
    return Fraction(2 * abs(chi))


def triangle_bound_value(n: int, alpha) -> Fraction | float:
    """Packing/covering bound n * (2 pi / 3 alpha) * (pi - 3 alpha).

    Pass ``alpha`` as a Fraction meaning a rational multiple of pi to get
    the bound exactly as a pi-coefficient; a float alpha yields a float.
    """
    if n < 1:
        raise GeometryError("n must be positive")
    if isinstance(alpha, Fraction):
        if not 0 < alpha < Fraction(1, 3):
            raise GeometryError(f"alpha = {alpha}*pi outside (0, pi/3)")
        return n * Fraction(2, 3) / alpha * (1 - 3 * alpha)
    if not 0 < alpha < math.pi / 3:
        raise GeometryError(f"alpha = {alpha} outside (0, pi/3)")
    return n * (2 * math.pi / (3 * alpha)) * (math.pi - 3 * alpha)


def n_min(k: int) -> int:
    """Smallest positive N with N*k divisible by six."""
    if k < 7:
        raise GeometryError(f"k = {k} out of range; tilings need k >= 7")
    return 6 // gcd(k, 6)


ORIENTED_SAME_RESIDUES = (2, 6, 10)


@dataclass(frozen=True)
class MinimalArea:
    """Least areas (pi-coefficients) over all / over oriented surfaces."""

    k: int
    general: Fraction
    oriented: Fraction
    subgroup_index: int


def minimal_area(k: int) -> MinimalArea:
    """Least area of a closed hyperbolic surface tiled by regular triangles
    of angle 2*pi/k; the oriented value doubles unless k = 2, 6, 10 mod 12.

    ``subgroup_index`` is 2*N*k: the index of the smallest fixed-point-free
    subgroup in the full symmetry group of the triangle tiling of the plane.
    """
    N = n_min(k)
    general = Fraction(N * (k - 6), 3)
    oriented = general if k % 12 in ORIENTED_SAME_RESIDUES else 2 * general
    return MinimalArea(k=k, general=general, oriented=oriented, subgroup_index=2 * N * k)


def predicted_chi(k: int, n: int) -> Fraction:
    """Euler characteristic n*(1 - k/6) forced by the vertex/edge/face count
    of a tiling with n polygon faces; integral exactly when 6 divides nk."""
    return n * (1 - Fraction(k, 6))


def eek_admissible(t: int, k: int) -> bool:
    """Whether t triangles of angle 2*pi/k can tile some closed surface:
    t even and k dividing 3t."""
    if t < 1 or k < 7:
        raise GeometryError("need t >= 1 and k >= 7")
    return t % 2 == 0 and (3 * t) % k == 0
