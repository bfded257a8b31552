import math

import pytest
from hypothesis import given, strategies as st

from conesphere.errors import AmbiguousClass, NotElliptic, ZeroDenominator
from conesphere.mobius import (
    INF,
    FixedPointKind,
    IsometryType,
    UnimodularMatrix,
    apply_mobius,
    chordal,
    classify,
    elliptic_real_part_sign,
    fixed_point_residual,
    fixed_points,
)

A3 = UnimodularMatrix(1.0, 0.0, 3.0, 1.0)
C3 = UnimodularMatrix(1.0, -3.0, 0.0, 1.0)
BA33 = UnimodularMatrix(-5.0, -3.0, -3.0, -2.0)      # B @ A at a = b = 3
CBA333 = UnimodularMatrix(4.0, 3.0, -3.0, -2.0)
ROT_I = UnimodularMatrix(0.0, -1.0, 1.0, 0.0)        # rotation by pi about i


def test_identity_action():
    assert apply_mobius(UnimodularMatrix.identity(), 0.7) == 0.7


def test_action_at_infinity_and_pole():
    assert apply_mobius(A3, INF) == pytest.approx(1.0 / 3.0)
    assert apply_mobius(C3, 0.0) == -3.0
    # pole of A3 is -1/3
    assert apply_mobius(A3, -1.0 / 3.0) == INF


def test_action_on_interior_point():
    z = apply_mobius(ROT_I, 1j)
    assert abs(z - 1j) < 1e-15


def test_determinant_validated():
    with pytest.raises(ValueError):
        UnimodularMatrix(1.0, 2.0, 3.0, 4.0)


def test_classify_parabolic():
    assert classify(A3).tag is IsometryType.PARABOLIC


def test_classify_hyperbolic_magnitude():
    # oracle: 2*acosh(3.5) through the log form
    expected = 2.0 * math.log(3.5 + math.sqrt(3.5 ** 2 - 1.0))
    result = classify(BA33)
    assert result.tag is IsometryType.HYPERBOLIC
    assert result.magnitude == pytest.approx(expected, rel=1e-14)
    assert result.magnitude == pytest.approx(3.8496946004768278, rel=1e-14)


def test_classify_elliptic_trace_zero():
    result = classify(ROT_I)
    assert result.tag is IsometryType.ELLIPTIC
    assert result.magnitude == pytest.approx(math.pi)


def test_classify_identity_both_signs():
    eye = UnimodularMatrix.identity()
    assert classify(eye).tag is IsometryType.IDENTITY
    assert classify(-eye).tag is IsometryType.IDENTITY


def test_classify_ambiguous_band():
    nearly = UnimodularMatrix(1.0 + 1e-10, 1.0, 1e-10 + 1e-20, 1.0)
    with pytest.raises(AmbiguousClass):
        classify(nearly, tol=1e-6)


def test_fixed_points_parabolic_generators():
    fp = fixed_points(A3)
    assert fp.kind is FixedPointKind.ONE_POINT_BOUNDARY
    assert fp.points == (0.0,)
    fp = fixed_points(C3)
    assert fp.kind is FixedPointKind.ONE_POINT_BOUNDARY
    assert fp.points == (INF,)


def test_fixed_points_hyperbolic_residual():
    fp = fixed_points(BA33)
    assert fp.kind is FixedPointKind.TWO_POINTS_BOUNDARY
    for p in fp.points:
        assert fixed_point_residual(BA33, p) < 1e-10


def test_fixed_points_cba_parabolic():
    # -3z^2 - 6z - 3 = 0 has the double root -1
    fp = fixed_points(CBA333)
    assert fp.kind is FixedPointKind.ONE_POINT_BOUNDARY
    assert fp.points[0] == pytest.approx(-1.0)


def test_fixed_points_upper_triangular_hyperbolic():
    m = UnimodularMatrix(2.0, 1.0, 0.0, 0.5)
    fp = fixed_points(m)
    assert fp.kind is FixedPointKind.TWO_POINTS_BOUNDARY
    assert INF in fp.points


def test_fixed_points_all_points():
    assert fixed_points(-UnimodularMatrix.identity()).kind is FixedPointKind.ALL_POINTS


def test_elliptic_sign_symmetric_rotation():
    assert elliptic_real_part_sign(ROT_I) == 0


def test_elliptic_sign_errors():
    with pytest.raises(NotElliptic):
        elliptic_real_part_sign(BA33)
    rot_diag = UnimodularMatrix(math.cos(1.0), -math.sin(1.0), math.sin(1.0), math.cos(1.0))
    assert elliptic_real_part_sign(rot_diag) in (-1, 0, 1)
    upper = UnimodularMatrix(1.0, 1.0, 0.0, 1.0)
    with pytest.raises((NotElliptic, ZeroDenominator)):
        elliptic_real_part_sign(upper)


def test_chordal_handles_infinity():
    assert chordal(INF, INF) == 0.0
    assert chordal(0.0, INF) == 1.0
    assert chordal(3.0, 3.0) == 0.0


_shear = st.floats(-2.0, 2.0)
_angle = st.floats(0.2, math.pi - 0.2)


def _conjugated_rotation(x, y, angle):
    u = UnimodularMatrix(1.0, x, 0.0, 1.0) @ UnimodularMatrix(1.0, 0.0, y, 1.0)
    rot = UnimodularMatrix(math.cos(angle), -math.sin(angle),
                           math.sin(angle), math.cos(angle))
    return u @ rot @ u.inverse()


@given(_shear, _shear, _angle)
def test_elliptic_sign_matches_direct_fixed_point(x, y, angle):
    m = _conjugated_rotation(x, y, angle)
    if m.m21 == 0.0:
        return
    sign = elliptic_real_part_sign(m)
    direct = fixed_points(m).points[0].real
    if sign > 0:
        assert direct > 0
    elif sign < 0:
        assert direct < 0
    else:
        assert abs(direct) < 1e-12


@given(_shear, _shear, _angle, _shear, _shear, _angle)
def test_trace_commutes(x1, y1, t1, x2, y2, t2):
    m = _conjugated_rotation(x1, y1, t1)
    n = _conjugated_rotation(x2, y2, t2)
    lhs = (m @ n).trace
    rhs = (n @ m).trace
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


@given(_shear, _shear, _angle)
def test_classify_of_inverse(x, y, angle):
    m = _conjugated_rotation(x, y, angle)
    left = classify(m)
    right = classify(m.inverse())
    assert left.tag is right.tag
    assert left.magnitude == pytest.approx(right.magnitude, abs=1e-12)


@given(_shear, _shear, _angle)
def test_interior_fixed_point_residual(x, y, angle):
    m = _conjugated_rotation(x, y, angle)
    for p in fixed_points(m).points:
        assert fixed_point_residual(m, p) <= 1e-10
