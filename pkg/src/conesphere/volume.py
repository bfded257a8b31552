"""Weil-Petersson geometry in the (a, b, c) coordinates.

The symplectic density is 1/(xy - x - y) in any of the coordinate pairs,

    w = da^db/(ab - a - b) = db^dc/(bc - b - c) = dc^da/(ac - a - c),

the equalities following from implicit differentiation on a kappa level
set.  Fenchel-Nielsen coordinates of the simple loop with trace 2 - ab:
length from 2*cosh(l/2) = ab - 2 and twist from the cross ratio of the
axis endpoints against the reference cusps at 0 and infinity.  The raw
log-ratio log|alpha+/alpha-| is twice the Darboux-normalized twist (the
pairing |dl ^ dtau| = |da ^ db| / |ab - a - b| pins the scale), so the
twist returned here is half the log-ratio; only |dtau| enters the volume.

The volume of the involution fundamental domain {a, b, c > 2} at level
kappa reduces, via u = a - 2, v = b - 2, to the single integral

    integral_0^inf log((v^2 + K v + K) / v^2) / (v + 1) dv,   K = kappa + 2,

evaluated by adaptive quadrature.  Its closed form is (4 pi^2 - theta^2)/8
in the cone case (2 cos(theta/2) = kappa) and (4 pi^2 + l^2)/8 for a
geodesic boundary, one quarter of the known volume polynomial of the
four-holed sphere; at kappa = 2 it is pi^2/2 and the moduli-space volume
(the quotient by the index-4 subgroup) is 2 pi^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from .charvar import boundary_data, c_from_level, BoundaryKind, ParamTriple
from .config import DEFAULT_TOLERANCES
from .errors import (
    DegenerateAxis,
    NotHyperbolic,
    OnHyperbola,
    OutOfRange,
    QuadratureNotConverged,
)

PAIRS = ("ab", "bc", "ca")


@dataclass(frozen=True)
class SymplecticDensity:
    pair: str
    value: float


def wp_density(p: ParamTriple, pair: str = "ab",
               tol: float = DEFAULT_TOLERANCES.classification) -> SymplecticDensity:
    """Density 1/(xy - x - y) of the symplectic form in the chosen pair."""
    a, b, c = p.as_tuple()
    coords = {"ab": (a, b), "bc": (b, c), "ca": (c, a)}
    if pair not in coords:
        raise ValueError(f"pair must be one of {PAIRS}, got {pair!r}")
    x, y = coords[pair]
    den = x * y - x - y
    if abs(den) <= tol:
        raise OnHyperbola(f"pair {pair} of {p.as_tuple()} lies on xy - x - y = 0", pair=pair)
    return SymplecticDensity(pair, 1.0 / den)


def symplectic_consistency(p: ParamTriple, h: float = 1e-5,
                           tol: float = DEFAULT_TOLERANCES.classification) -> float:
    """Max relative discrepancy between the three coordinate expressions of the form.

    On the level set, c is implicitly a function of (a, b) and the equality
    of densities reads -(dc/da) / (bc - b - c) = 1 / (ab - a - b); the
    derivative is approximated by a central difference of the level solver.
    The cyclic version with a as a function of (b, c) is checked too.
    """
    a, b, c = p.as_tuple()
    kappa = p.kappa
    for x, y in ((a, b), (b, c), (c, a)):
        if abs(x * y - x - y) <= tol:
            raise OnHyperbola(f"{p.as_tuple()} lies on a coordinate hyperbola")
    dc_da = (c_from_level(a + h, b, kappa) - c_from_level(a - h, b, kappa)) / (2.0 * h)
    lhs = -dc_da / (b * c - b - c)
    rhs = 1.0 / (a * b - a - b)
    disc = abs(lhs - rhs) / abs(rhs)
    # kappa is symmetric under cyclic relabeling, so the same solver gives a(b, c)
    da_db = (c_from_level(b + h, c, kappa) - c_from_level(b - h, c, kappa)) / (2.0 * h)
    lhs2 = -da_db / (c * a - c - a)
    rhs2 = 1.0 / (b * c - b - c)
    return max(disc, abs(lhs2 - rhs2) / abs(rhs2))


@dataclass(frozen=True)
class FNCoordinates:
    length: float
    twist: float
    Delta: float  # sqrt((ab - 2)^2 - 4) = 2*sinh(length/2)


def axis_endpoints(a: float, b: float,
                   tol: float = DEFAULT_TOLERANCES.classification) -> tuple:
    """Endpoints alpha+- = (2b - ab +- Delta) / (a + b - ab) of the twisting axis.

    These are twice the fixed points of the holonomy of the loop, a common
    overall factor that drops out of the twist ratio.
    """
    product = a * b
    if product <= 4.0:
        raise NotHyperbolic(f"ab = {product!r} <= 4")
    den = a + b - product
    if abs(den) <= tol:
        raise DegenerateAxis(f"(a, b) = {(a, b)} lies on ab - a - b = 0")
    delta = math.sqrt((product - 2.0) ** 2 - 4.0)
    alpha_plus = (2.0 * b - product + delta) / den
    alpha_minus = (2.0 * b - product - delta) / den
    if alpha_plus == alpha_minus or alpha_minus == 0.0:
        raise DegenerateAxis(f"axis endpoints coincide or degenerate at {(a, b)}")
    return alpha_plus, alpha_minus


def fenchel_nielsen(a: float, b: float,
                    tol: float = DEFAULT_TOLERANCES.classification) -> FNCoordinates:
    """Length and twist of the loop with trace 2 - ab, for ab > 4.

    The twist is half of log|alpha+/alpha-| over the axis endpoints; the
    half factor makes |dl ^ dtau| equal the symplectic density (see the
    module docstring), and only |dtau| enters the volume form.
    """
    alpha_plus, alpha_minus = axis_endpoints(a, b, tol)
    product = a * b
    length = 2.0 * math.acosh((product - 2.0) / 2.0)
    twist = 0.5 * math.log(abs(alpha_plus / alpha_minus))
    return FNCoordinates(length, twist, math.sqrt((product - 2.0) ** 2 - 4.0))


@dataclass(frozen=True)
class DarbouxCheck:
    abs_jacobian: float
    reference: float
    rel_err: float


def darboux_check(a: float, b: float, h: float = 1e-5) -> DarbouxCheck:
    """|det d(length, twist)/d(a, b)| by central differences vs 1/|ab - a - b|.

    The relative error is reported as measured; a coarse step gives a coarse
    answer, nothing is clamped.
    """
    def coords(x, y):
        fn = fenchel_nielsen(x, y)
        return fn.length, fn.twist

    la_p, ta_p = coords(a + h, b)
    la_m, ta_m = coords(a - h, b)
    lb_p, tb_p = coords(a, b + h)
    lb_m, tb_m = coords(a, b - h)
    dl_da = (la_p - la_m) / (2.0 * h)
    dt_da = (ta_p - ta_m) / (2.0 * h)
    dl_db = (lb_p - lb_m) / (2.0 * h)
    dt_db = (tb_p - tb_m) / (2.0 * h)
    jac = abs(dl_da * dt_db - dl_db * dt_da)
    reference = 1.0 / abs(a * b - a - b)
    return DarbouxCheck(jac, reference, abs(jac - reference) / reference)


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    limit: int = 200


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class VolumeResult:
    kappa: float
    value: float
    abs_error_estimate: float
    reference: float
    reference_source: str


def _reference_for(kappa: float) -> tuple:
    if abs(kappa - 2.0) <= 1e-12:
        return math.pi ** 2 / 2.0, "pi^2/2"
    data = boundary_data(kappa)
    if data.kind is BoundaryKind.GEODESIC_BOUNDARY:
        ref = (4.0 * math.pi ** 2 + data.length ** 2) / 8.0
        return ref, "(4*pi^2 + l^2)/8, quarter of the four-holed-sphere volume polynomial"
    theta = data.angle
    ref = (4.0 * math.pi ** 2 - theta ** 2) / 8.0
    return ref, "(4*pi^2 - theta^2)/8, quarter of the four-holed-sphere volume polynomial"


def domain_volume(kappa: float, quad: QuadratureConfig = DEFAULT_QUADRATURE) -> VolumeResult:
    """Symplectic volume of the fundamental domain {a, b, c > 2} at level kappa.

    In u = a - 2, v = b - 2 the region is u, v > 0, uv < kappa + 2 and the
    inner integral closes, leaving the logarithmic integrand of the module
    docstring; the interval splits at v = 1 so the endpoint singularity at 0
    and the algebraic tail are each handled by the adaptive rule.
    """
    if kappa <= -2.0:
        raise OutOfRange(f"kappa = {kappa!r} <= -2", reason="below_range", kappa=kappa)
    level = kappa + 2.0

    def integrand(v: float) -> float:
        return math.log((v * v + level * v + level) / (v * v)) / (v + 1.0)

    head, head_err = integrate.quad(integrand, 0.0, 1.0,
                                    epsabs=quad.abs_tol, epsrel=quad.rel_tol,
                                    limit=quad.limit)
    tail, tail_err = integrate.quad(integrand, 1.0, math.inf,
                                    epsabs=quad.abs_tol, epsrel=quad.rel_tol,
                                    limit=quad.limit)
    value = head + tail
    error = head_err + tail_err
    if error > max(quad.abs_tol, quad.rel_tol * abs(value)) * 100.0:
        raise QuadratureNotConverged(
            f"error estimate {error!r} exceeds the requested tolerance",
            kappa=kappa, estimate=error,
        )
    reference, source = _reference_for(kappa)
    return VolumeResult(kappa, value, error, reference, source)


def moduli_volume(kappa: float, quad: QuadratureConfig = DEFAULT_QUADRATURE) -> VolumeResult:
    """Volume of the moduli space: four fundamental domains (index-4 subgroup)."""
    base = domain_volume(kappa, quad)
    if abs(kappa - 2.0) <= 1e-12:
        reference, source = 2.0 * math.pi ** 2, "2*pi^2"
    else:
        reference, source = 4.0 * base.reference, base.reference_source.replace("quarter of", "full")
    return VolumeResult(kappa, 4.0 * base.value, 4.0 * base.abs_error_estimate,
                        reference, source)


def volume_polynomials(which: str, args) -> complex:
    """Known volume polynomials over complex boundary lengths.

    V0 (four-holed sphere, four lengths): (4 pi^2 + sum l_i^2) / 2.
    V1 (torus with boundary and one extra length): the quartic
        (4 pi^2 + l1^2 + l2^2)(12 pi^2 + l1^2 + l2^2) / 192.
    V1_onehole (one-holed torus): (4 pi^2 + l^2) / 24.
    Purely imaginary lengths encode cone angles.
    """
    values = [complex(arg) for arg in args]
    pi2 = math.pi ** 2
    if which == "V0":
        if len(values) != 4:
            raise ValueError("V0 takes four lengths")
        return 0.5 * (4.0 * pi2 + sum(v * v for v in values))
    if which == "V1":
        if len(values) != 2:
            raise ValueError("V1 takes two lengths")
        s = values[0] ** 2 + values[1] ** 2
        return (4.0 * pi2 + s) * (12.0 * pi2 + s) / 192.0
    if which == "V1_onehole":
        if len(values) != 1:
            raise ValueError("V1_onehole takes one length")
        return (4.0 * pi2 + values[0] ** 2) / 24.0
    raise ValueError(f"unknown polynomial {which!r}")


@dataclass(frozen=True)
class DerivativeRelation:
    ratios: tuple
    constant: bool
    constant_value: complex


def derivative_relation_check(l2_samples, rel_tol: float = 1e-9) -> DerivativeRelation:
    """Ratio of d/dl1 V1(l1, l2) at l1 = 2*pi*i to the one-holed torus volume.

    The derivative is (l1/96)(16 pi^2 + 2 l1^2 + 2 l2^2); at l1 = 2*pi*i the
    ratio against V1_onehole(l2) is pi*i for every l2, which the check
    verifies sample by sample.
    """
    if not l2_samples:
        raise ValueError("need at least one sample")
    l1 = 2.0j * math.pi
    ratios = []
    for l2 in l2_samples:
        derivative = (l1 / 96.0) * (16.0 * math.pi ** 2 + 2.0 * l1 ** 2 + 2.0 * complex(l2) ** 2)
        ratios.append(derivative / volume_polynomials("V1_onehole", [l2]))
    first = ratios[0]
    constant = all(abs(r - first) <= rel_tol * max(1.0, abs(first)) for r in ratios)
    return DerivativeRelation(tuple(ratios), constant, first)


def volume_table(kappas, quad: QuadratureConfig = DEFAULT_QUADRATURE) -> list:
    """Rows (kappa, boundary measure, value, reference, abs error) for export.

    The boundary measure is theta for the cone range and l_delta above it.
    """
    rows = []
    for kappa in kappas:
        result = domain_volume(kappa, quad)
        data = boundary_data(kappa)
        measure = data.angle if data.kind is not BoundaryKind.GEODESIC_BOUNDARY else data.length
        kind = "theta" if data.kind is not BoundaryKind.GEODESIC_BOUNDARY else "l_delta"
        rows.append({
            "kappa": kappa,
            "boundary_kind": kind,
            "boundary_measure": measure,
            "value": result.value,
            "reference": result.reference,
            "abs_error": abs(result.value - result.reference),
            "error_estimate": result.abs_error_estimate,
            "reference_source": result.reference_source,
        })
    return rows
