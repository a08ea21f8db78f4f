"""Hyperbolic 3-space in the upper half-space and Poincaré ball models.

Points of the half-space model are (z, x) with z the horizontal complex
coordinate and x > 0 the height.  Orientation-preserving isometries act on
the boundary plane-at-infinity (C together with the point at infinity) as
Möbius maps and extend to the interior; geodesics are recorded by their
unordered boundary endpoint pairs, which covers both vertical lines and
semicircles uniformly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import DegenerateParameterError
from .euclid import Vec3
from .rootfind import golden_section_min


@dataclass(frozen=True)
class BoundaryPoint:
    """Point of the boundary sphere: a finite complex value or infinity."""

    value: complex | None

    def __post_init__(self) -> None:
        if self.value is not None:
            v = complex(self.value)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError("finite boundary point must have finite value")
            object.__setattr__(self, "value", v)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    @classmethod
    def of(cls, v) -> "BoundaryPoint":
        if isinstance(v, BoundaryPoint):
            return v
        return cls(complex(v))

    def __repr__(self) -> str:
        return "∞" if self.is_infinity else f"{self.value!r}"


INFINITY = BoundaryPoint(None)


def boundary_gap(u: BoundaryPoint, v: BoundaryPoint) -> float:
    """0 for matching infinities, |u - v| for finite pairs, inf otherwise."""
    if u.is_infinity and v.is_infinity:
        return 0.0
    if u.is_infinity or v.is_infinity:
        return math.inf
    return abs(u.value - v.value)


@dataclass(frozen=True)
class H3PointHalf:
    """Upper half-space point (z, x) with height x > 0."""

    z: complex
    x: float

    def __post_init__(self) -> None:
        z = complex(self.z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag) and math.isfinite(self.x)):
            raise ValueError("half-space point must be finite")
        if self.x <= 0.0:
            raise ValueError("half-space height must be strictly positive")
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class H3PointBall:
    """Poincaré ball point, norm strictly below 1."""

    v: Vec3

    def __post_init__(self) -> None:
        if self.v.norm() >= 1.0:
            raise ValueError("ball point must have norm < 1")


@dataclass(frozen=True, eq=False)
class MobiusMap:
    """Fractional linear map (a z + b) / (c z + d), compared projectively."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        if scale == 0.0 or abs(self.det) <= 1e-14 * scale * scale:
            raise ValueError("Möbius map must have nonzero determinant")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """Composite acting as self after other."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def conj_entries(self) -> "MobiusMap":
        return MobiusMap(
            self.a.conjugate(), self.b.conjugate(), self.c.conjugate(), self.d.conjugate()
        )

    def normalized(self) -> "MobiusMap":
        s = cmath.sqrt(self.det)
        return MobiusMap(self.a / s, self.b / s, self.c / s, self.d / s)

    def projectively_close(self, other: "MobiusMap", tol: float = 1e-12) -> bool:
        m1, m2 = self.normalized(), other.normalized()
        diff = max(
            abs(m1.a - m2.a), abs(m1.b - m2.b), abs(m1.c - m2.c), abs(m1.d - m2.d)
        )
        summ = max(
            abs(m1.a + m2.a), abs(m1.b + m2.b), abs(m1.c + m2.c), abs(m1.d + m2.d)
        )
        return min(diff, summ) <= tol


def mobius_apply(m: MobiusMap, p: BoundaryPoint | complex) -> BoundaryPoint:
    """Boundary action with the usual conventions at infinity and poles."""
    p = BoundaryPoint.of(p)
    if p.is_infinity:
        if m.c == 0.0:
            return INFINITY
        return BoundaryPoint(m.a / m.c)
    denom = m.c * p.value + m.d
    if denom == 0.0:
        return INFINITY
    return BoundaryPoint((m.a * p.value + m.b) / denom)


def poincare_extend(m: MobiusMap, p: H3PointHalf) -> H3PointHalf:
    """Canonical extension of the boundary map to the half-space interior.

    For z -> lambda*z + a with lambda > 0 this is (z, x) -> (lambda*z + a,
    lambda*x); in general it agrees with evaluating the map on z + x*j in the
    quaternions.
    """
    cz_d = m.c * p.z + m.d
    denom = abs(cz_d) ** 2 + abs(m.c) ** 2 * p.x * p.x
    z = ((m.a * p.z + m.b) * cz_d.conjugate() + m.a * m.c.conjugate() * p.x * p.x) / denom
    x = abs(m.det) * p.x / denom
    return H3PointHalf(z, x)


def hyperbolic_distance(p: H3PointHalf, q: H3PointHalf) -> float:
    arg = 1.0 + (abs(p.z - q.z) ** 2 + (p.x - q.x) ** 2) / (2.0 * p.x * q.x)
    return math.acosh(max(1.0, arg))


def hyperbolic_distance_ball(p: H3PointBall, q: H3PointBall) -> float:
    du = (p.v - q.v).norm()
    arg = 1.0 + 2.0 * du * du / ((1.0 - p.v.dot(p.v)) * (1.0 - q.v.dot(q.v)))
    return math.acosh(max(1.0, arg))


# ---------------------------------------------------------------------------
# Geodesics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class H3Geodesic:
    """Unordered pair of distinct boundary endpoints.

    Vertical lines carry the infinite endpoint; all other geodesics are
    semicircles over the segment joining the two finite endpoints.
    """

    endpoints: tuple[BoundaryPoint, BoundaryPoint]

    def __post_init__(self) -> None:
        u, v = self.endpoints
        if boundary_gap(u, v) == 0.0:
            raise ValueError("geodesic endpoints must be distinct")
        # canonical storage order: finite endpoints first, sorted by (re, im)
        if u.is_infinity:
            u, v = v, u
        elif not v.is_infinity:
            ku = (u.value.real, u.value.imag)
            kv = (v.value.real, v.value.imag)
            if kv < ku:
                u, v = v, u
        object.__setattr__(self, "endpoints", (u, v))

    @property
    def is_vertical(self) -> bool:
        return self.endpoints[1].is_infinity


def geodesic_from_endpoints(u, v) -> H3Geodesic:
    return H3Geodesic((BoundaryPoint.of(u), BoundaryPoint.of(v)))


def image_of_geodesic(m: MobiusMap, g: H3Geodesic) -> H3Geodesic:
    u, v = g.endpoints
    return H3Geodesic((mobius_apply(m, u), mobius_apply(m, v)))


def point_on_geodesic(g: H3Geodesic, s: float) -> H3PointHalf:
    """Sample the geodesic at parameter s in (0, 1).

    Vertical lines use height tan(s*pi/2), so s = 1/2 sits at height 1;
    semicircles sweep the half-circle angle, so s = 1/2 is the apex.
    """
    if not 0.0 < s < 1.0:
        raise ValueError("geodesic parameter must lie strictly inside (0, 1)")
    u, v = g.endpoints
    if g.is_vertical:
        return H3PointHalf(u.value, math.tan(0.5 * math.pi * s))
    center = 0.5 * (u.value + v.value)
    radius = 0.5 * abs(v.value - u.value)
    e = (v.value - u.value) / abs(v.value - u.value)
    return H3PointHalf(center - radius * math.cos(math.pi * s) * e, radius * math.sin(math.pi * s))


def geodesic_tangent(g: H3Geodesic, p: H3PointHalf) -> Vec3:
    """Chart tangent (d Re z, d Im z, d x) of the geodesic at a point on it."""
    u, v = g.endpoints
    if g.is_vertical:
        return Vec3(0.0, 0.0, 1.0)
    center = 0.5 * (u.value + v.value)
    e = (v.value - u.value) / abs(v.value - u.value)
    dw = -p.x * e
    xi = ((p.z - center) * e.conjugate()).real
    return Vec3(dw.real, dw.imag, xi)


def geodesic_point_distance(g: H3Geodesic, p: H3PointHalf) -> float:
    """Hyperbolic distance from a point to a geodesic (exact closed form)."""
    u, v = g.endpoints
    if g.is_vertical:
        return math.asinh(abs(p.z - u.value) / p.x)
    # send u -> 0 and v -> infinity, then measure against the vertical axis
    m = MobiusMap(1.0, -u.value, 1.0, -v.value)
    q = poincare_extend(m, p)
    return math.asinh(abs(q.z) / q.x)


def endpoint_mismatch(g1: H3Geodesic, g2: H3Geodesic) -> float:
    """Best-pairing gap between the two endpoint sets (inf if shapes differ)."""
    a1, a2 = g1.endpoints
    b1, b2 = g2.endpoints
    straight = max(boundary_gap(a1, b1), boundary_gap(a2, b2))
    crossed = max(boundary_gap(a1, b2), boundary_gap(a2, b1))
    return min(straight, crossed)


def _min_distance_between(g1: H3Geodesic, g2: H3Geodesic) -> float:
    def dist_at(s: float) -> float:
        return geodesic_point_distance(g2, point_on_geodesic(g1, s))

    lo, hi = 1e-7, 1.0 - 1e-7
    n = 33
    best_i, best = 0, math.inf
    for i in range(n):
        s = lo + (hi - lo) * i / (n - 1)
        val = dist_at(s)
        if val < best:
            best_i, best = i, val
    a = lo + (hi - lo) * max(best_i - 1, 0) / (n - 1)
    b = lo + (hi - lo) * min(best_i + 1, n - 1) / (n - 1)
    _, fmin = golden_section_min(dist_at, a, b, xtol=1e-14)
    return min(best, fmin)


class GeodesicRelation(Enum):
    EQUAL = "Equal"
    INTERSECTING = "Intersecting"
    DISJOINT = "Disjoint"


def geodesic_relation(g1: H3Geodesic, g2: H3Geodesic, tol: float) -> GeodesicRelation:
    """Classify two geodesics as Equal, Intersecting, or Disjoint.

    Distinct geodesics sharing a boundary endpoint are asymptotic: their
    distance infimum is 0 at the ideal boundary but they never meet inside
    the space, so they are reported Disjoint.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if endpoint_mismatch(g1, g2) <= tol:
        return GeodesicRelation.EQUAL
    for e1 in g1.endpoints:
        for e2 in g2.endpoints:
            if boundary_gap(e1, e2) <= tol:
                return GeodesicRelation.DISJOINT
    if _min_distance_between(g1, g2) < tol:
        return GeodesicRelation.INTERSECTING
    return GeodesicRelation.DISJOINT


def geodesic_intersection(
    g1: H3Geodesic, g2: H3Geodesic, tol: float
) -> tuple[H3PointHalf, float] | None:
    """Common point and crossing angle of two transversally meeting geodesics.

    Returns None when the geodesics do not meet (within tol) or coincide.
    """
    if geodesic_relation(g1, g2, tol) is not GeodesicRelation.INTERSECTING:
        return None

    def dist_at(s: float) -> float:
        return geodesic_point_distance(g2, point_on_geodesic(g1, s))

    s_star, _ = golden_section_min(dist_at, 1e-7, 1.0 - 1e-7, xtol=1e-15)
    p = point_on_geodesic(g1, s_star)

    def dist_on_g2(s: float) -> float:
        return hyperbolic_distance(p, point_on_geodesic(g2, s))

    s2_star, _ = golden_section_min(dist_on_g2, 1e-7, 1.0 - 1e-7, xtol=1e-15)
    t1 = geodesic_tangent(g1, p)
    t2 = geodesic_tangent(g2, point_on_geodesic(g2, s2_star))
    # the half-space metric is conformal, so chart angles are true angles
    c = abs(t1.dot(t2)) / (t1.norm() * t2.norm())
    return p, math.acos(min(1.0, c))


# ---------------------------------------------------------------------------
# Boundary transforms (Möbius maps plus the orientation-reversing conjugation)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BoundaryTransform:
    """Boundary isometry w -> mobius(w) or w -> mobius(conj(w)).

    The conjugate branch covers the orientation-reversing maps needed to
    move fibration parameters into the canonical region.
    """

    mobius: MobiusMap
    conjugate: bool = False

    @classmethod
    def identity(cls) -> "BoundaryTransform":
        return cls(MobiusMap.identity(), False)

    def apply(self, p: BoundaryPoint | complex) -> BoundaryPoint:
        p = BoundaryPoint.of(p)
        if self.conjugate and not p.is_infinity:
            p = BoundaryPoint(p.value.conjugate())
        return mobius_apply(self.mobius, p)

    def extend(self, p: H3PointHalf) -> H3PointHalf:
        if self.conjugate:
            p = H3PointHalf(p.z.conjugate(), p.x)
        return poincare_extend(self.mobius, p)

    def apply_geodesic(self, g: H3Geodesic) -> H3Geodesic:
        u, v = g.endpoints
        return H3Geodesic((self.apply(u), self.apply(v)))

    def compose(self, other: "BoundaryTransform") -> "BoundaryTransform":
        """Composite acting as self after other."""
        m2 = other.mobius.conj_entries() if self.conjugate else other.mobius
        return BoundaryTransform(self.mobius.compose(m2), self.conjugate != other.conjugate)

    def inverse(self) -> "BoundaryTransform":
        minv = self.mobius.inverse()
        if self.conjugate:
            minv = minv.conj_entries()
        return BoundaryTransform(minv, self.conjugate)


# ---------------------------------------------------------------------------
# Model conversion (half-space <-> Poincaré ball)
# ---------------------------------------------------------------------------

_INV_CENTER = (0.0, 0.0, -1.0)


def _invert(p: tuple[float, float, float]) -> tuple[float, float, float]:
    # inversion in the sphere of radius sqrt(2) centered below the boundary;
    # an involution exchanging the half-space and the unit ball
    cx, cy, cz = _INV_CENTER
    wx, wy, wz = p[0] - cx, p[1] - cy, p[2] - cz
    n2 = wx * wx + wy * wy + wz * wz
    return (cx + 2.0 * wx / n2, cy + 2.0 * wy / n2, cz + 2.0 * wz / n2)


def half_to_ball(p: H3PointHalf) -> H3PointBall:
    """Model isometry sending (0, 1) to the ball center and the boundary real
    axis onto the equator of the ball's z = 0 plane."""
    q = _invert((p.z.real, p.z.imag, p.x))
    return H3PointBall(Vec3(q[0], q[2], -q[1]))


def ball_to_half(p: H3PointBall) -> H3PointHalf:
    v = p.v
    q = _invert((v.x, -v.z, v.y))
    return H3PointHalf(complex(q[0], q[1]), q[2])


# ---------------------------------------------------------------------------
# Catalog of closed connected subgroups of Isom(H^3)
# ---------------------------------------------------------------------------

MobiusFamily = Callable[[float], MobiusMap]


@dataclass(frozen=True)
class SubgroupSpecH3:
    """Catalog entry: a closed connected subgroup of the isometries of H^3,
    given by one-parameter Möbius families."""

    name: str
    dimension: int
    generators: tuple[MobiusFamily, ...]
    parameter: float | None = None

    def __post_init__(self) -> None:
        if len(self.generators) != self.dimension:
            raise ValueError("number of generators must equal the dimension")


H3_GROUP_NAMES = (
    "{1}",
    "Hyp",
    "Par",
    "Ell",
    "Lox",
    "T(2)",
    "⟨Hyp,Par⟩",
    "⟨Ell,Hyp⟩",
    "Hom",
    "ScrewHom",
    "E(2)",
    "H(2)",
    "SO(3)",
    "Sim",
    "H(3)",
)


def translation_family(s: float) -> MobiusMap:
    """Boundary translations in the real direction: w -> w + s."""
    return MobiusMap(1.0, s, 0.0, 1.0)


def imag_translation_family(s: float) -> MobiusMap:
    """Boundary translations in the imaginary direction: w -> w + i s."""
    return MobiusMap(1.0, 1j * s, 0.0, 1.0)


def dilation_family(s: float) -> MobiusMap:
    """Dilations about the origin: w -> exp(s) w."""
    e = math.exp(0.5 * s)
    return MobiusMap(e, 0.0, 0.0, 1.0 / e)


def rotation_family(s: float) -> MobiusMap:
    """Rotations of the boundary about the origin: w -> exp(i s) w."""
    e = cmath.exp(0.5j * s)
    return MobiusMap(e, 0.0, 0.0, 1.0 / e)


def loxodromic_family(ratio: float) -> MobiusFamily:
    """Screw-dilations about the origin: w -> exp((ratio + i) s) w.

    `ratio` is the dilation rate per unit rotation rate.
    """
    if not math.isfinite(ratio):
        raise DegenerateParameterError(
            "loxodromic ratio must be finite; the limit is the pure dilation group Hyp"
        )
    if ratio == 0.0:
        raise DegenerateParameterError(
            "loxodromic ratio 0 degenerates to the rotation group Ell"
        )

    def family(s: float) -> MobiusMap:
        e = cmath.exp(0.5 * (ratio + 1j) * s)
        return MobiusMap(e, 0.0, 0.0, 1.0 / e)

    return family


def halfplane_rotation_family(s: float) -> MobiusMap:
    """Real-coefficient elliptic family fixing the point (0, 1)."""
    c, n = math.cos(0.5 * s), math.sin(0.5 * s)
    return MobiusMap(c, -n, n, c)


def sphere_rotation_x_family(s: float) -> MobiusMap:
    """Unitary elliptic family with boundary axis {-1, 1}."""
    c, n = math.cos(0.5 * s), math.sin(0.5 * s)
    return MobiusMap(c, 1j * n, 1j * n, c)


def lower_translation_family(s: float) -> MobiusMap:
    """Parabolic family fixing 0: w -> w / (s w + 1)."""
    return MobiusMap(1.0, 0.0, s, 1.0)


def lower_imag_translation_family(s: float) -> MobiusMap:
    return MobiusMap(1.0, 0.0, 1j * s, 1.0)


def subgroup_h3(name: str, ratio: float = 1.0) -> SubgroupSpecH3:
    """Look up one catalog subgroup of Isom(H^3) by name.

    `ratio` applies to the loxodromic families Lox and ScrewHom and is
    ignored elsewhere.
    """
    t_re, t_im = translation_family, imag_translation_family
    dil, rot = dilation_family, rotation_family
    if name == "{1}":
        return SubgroupSpecH3(name, 0, ())
    if name == "Hyp":
        return SubgroupSpecH3(name, 1, (dil,))
    if name == "Par":
        return SubgroupSpecH3(name, 1, (t_re,))
    if name == "Ell":
        return SubgroupSpecH3(name, 1, (rot,))
    if name == "Lox":
        return SubgroupSpecH3(name, 1, (loxodromic_family(ratio),), parameter=ratio)
    if name == "T(2)":
        return SubgroupSpecH3(name, 2, (t_re, t_im))
    if name == "⟨Hyp,Par⟩":
        return SubgroupSpecH3(name, 2, (t_re, dil))
    if name == "⟨Ell,Hyp⟩":
        return SubgroupSpecH3(name, 2, (rot, dil))
    if name == "Hom":
        return SubgroupSpecH3(name, 3, (t_re, t_im, dil))
    if name == "ScrewHom":
        return SubgroupSpecH3(
            name, 3, (t_re, t_im, loxodromic_family(ratio)), parameter=ratio
        )
    if name == "E(2)":
        return SubgroupSpecH3(name, 3, (t_re, t_im, rot))
    if name == "H(2)":
        return SubgroupSpecH3(name, 3, (t_re, dil, halfplane_rotation_family))
    if name == "SO(3)":
        return SubgroupSpecH3(
            name, 3, (sphere_rotation_x_family, halfplane_rotation_family, rot)
        )
    if name == "Sim":
        return SubgroupSpecH3(name, 4, (t_re, t_im, rot, dil))
    if name == "H(3)":
        return SubgroupSpecH3(
            name,
            6,
            (t_re, t_im, dil, rot, lower_translation_family, lower_imag_translation_family),
        )
    raise KeyError(f"unknown H3 subgroup name: {name!r}")


def catalog_h3(ratio: float = 1.0) -> list[SubgroupSpecH3]:
    """All 15 closed connected subgroups of Isom(H^3), up to conjugacy.

    The two loxodromic families are instantiated at the given ratio.
    """
    return [subgroup_h3(name, ratio) for name in H3_GROUP_NAMES]
