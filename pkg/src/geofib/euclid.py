"""Euclidean 3-space: rigid motions, lines, screw flows, and the catalog of
closed connected isometry subgroups.

All isometries here are orientation-preserving (rotation part has det +1);
that is all the catalog needs, since its groups are connected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateParameterError

ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class Vec3:
    """Point or vector in E^3."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for c in (self.x, self.y, self.z):
            if not math.isfinite(c):
                raise ValueError(f"non-finite component in Vec3: {c!r}")

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def normalized(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return Vec3(self.x / n, self.y / n, self.z / n)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, a) -> "Vec3":
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def isclose(self, other: "Vec3", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol


ORIGIN = Vec3(0.0, 0.0, 0.0)
EX = Vec3(1.0, 0.0, 0.0)
EY = Vec3(0.0, 1.0, 0.0)
EZ = Vec3(0.0, 0.0, 1.0)


def rotation_about_axis(axis: Vec3, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix about a (not necessarily unit) axis."""
    u = axis.normalized().as_array()
    k = np.array([[0.0, -u[2], u[1]], [u[2], 0.0, -u[0]], [-u[1], u[0], 0.0]])
    return np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)


@dataclass(frozen=True, eq=False)
class EuclideanIsometry:
    """Orientation-preserving rigid motion p -> rotation @ p + translation."""

    rotation: np.ndarray
    translation: Vec3

    def __post_init__(self) -> None:
        r = np.asarray(self.rotation, dtype=float)
        if r.shape != (3, 3):
            raise ValueError("rotation must be a 3x3 matrix")
        if np.max(np.abs(r.T @ r - np.eye(3))) > ORTHO_TOL:
            raise ValueError("rotation is not orthogonal within 1e-12")
        if abs(np.linalg.det(r) - 1.0) > 1e-9:
            raise ValueError("rotation must have determinant +1")
        r = r.copy()
        r.flags.writeable = False
        object.__setattr__(self, "rotation", r)

    @classmethod
    def identity(cls) -> "EuclideanIsometry":
        return cls(np.eye(3), ORIGIN)

    @classmethod
    def translation_by(cls, v: Vec3) -> "EuclideanIsometry":
        return cls(np.eye(3), v)


def apply_isometry(iso: EuclideanIsometry, p: Vec3) -> Vec3:
    return Vec3.from_array(iso.rotation @ p.as_array()) + iso.translation


def compose(a: EuclideanIsometry, b: EuclideanIsometry) -> EuclideanIsometry:
    """Composite isometry acting as a after b: p -> a(b(p))."""
    return EuclideanIsometry(
        a.rotation @ b.rotation,
        Vec3.from_array(a.rotation @ b.translation.as_array()) + a.translation,
    )


def inverse(a: EuclideanIsometry) -> EuclideanIsometry:
    rt = a.rotation.T
    return EuclideanIsometry(rt, Vec3.from_array(-(rt @ a.translation.as_array())))


@dataclass(frozen=True)
class EucLine:
    """Unoriented line through `base` with unit `direction`.

    Two values describe the same line when their directions are parallel
    (either sign) and the base offset has no perpendicular component.
    """

    base: Vec3
    direction: Vec3

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", self.direction.normalized())

    def point_at(self, s: float) -> Vec3:
        return self.base + s * self.direction


def point_line_distance(line: EucLine, p: Vec3) -> float:
    d = p - line.base
    along = d.dot(line.direction)
    return (d - along * line.direction).norm()


def line_mismatch(l1: EucLine, l2: EucLine) -> float:
    """Residual that vanishes exactly when the two lines coincide.

    Sum of the (sign-insensitive) direction gap and the perpendicular
    offset of one base from the other line.
    """
    d1, d2 = l1.direction, l2.direction
    dir_gap = min((d1 - d2).norm(), (d1 + d2).norm())
    return dir_gap + point_line_distance(l1, l2.base)


def image_of_line(iso: EuclideanIsometry, line: EucLine) -> EucLine:
    return EucLine(
        apply_isometry(iso, line.base),
        Vec3.from_array(iso.rotation @ line.direction.as_array()),
    )


class LinesRelation(Enum):
    EQUAL = "Equal"
    PARALLEL = "Parallel"
    INTERSECTING = "Intersecting"
    SKEW = "Skew"


def lines_relation(l1: EucLine, l2: EucLine, tol: float) -> LinesRelation:
    """Classify the mutual position of two lines.

    Directions within `tol` of parallel are treated as parallel; otherwise
    the lines intersect when their closest approach is below `tol`.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d1, d2 = l1.direction, l2.direction
    cross = d1.cross(d2)
    sin_angle = cross.norm()
    if sin_angle <= tol:
        perp = point_line_distance(l1, l2.base)
        return LinesRelation.EQUAL if perp <= tol else LinesRelation.PARALLEL
    sep = abs((l2.base - l1.base).dot(cross)) / sin_angle
    return LinesRelation.INTERSECTING if sep <= tol else LinesRelation.SKEW


def lines_intersection_angle(l1: EucLine, l2: EucLine) -> float:
    """Undirected angle between the two line directions, in [0, pi/2]."""
    c = min(1.0, abs(l1.direction.dot(l2.direction)))
    return math.acos(c)


@dataclass(frozen=True)
class ScrewGenerator:
    """One-parameter flow: rotate at `rotation_rate` about the axis while
    translating at `translation_rate` along it."""

    axis_point: Vec3
    axis_direction: Vec3
    rotation_rate: float
    translation_rate: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis_direction", self.axis_direction.normalized())
        if self.rotation_rate == 0.0 and self.translation_rate == 0.0:
            raise ValueError("screw generator needs a nonzero rate")

    @property
    def kind(self) -> str:
        if self.rotation_rate == 0.0:
            return "pure-translation"
        if self.translation_rate == 0.0:
            return "pure-rotation"
        return "screw"


def exp_screw(gen: ScrewGenerator, s: float) -> EuclideanIsometry:
    """Flow of a screw generator at parameter s; a one-parameter group."""
    rot = rotation_about_axis(gen.axis_direction, gen.rotation_rate * s)
    q = gen.axis_point.as_array()
    shift = (gen.translation_rate * s) * gen.axis_direction.as_array()
    return EuclideanIsometry(rot, Vec3.from_array(q - rot @ q + shift))


def screw_velocity(gen: ScrewGenerator, p: Vec3) -> Vec3:
    """Velocity of the screw flow at p, at parameter 0."""
    omega = gen.rotation_rate * gen.axis_direction
    return omega.cross(p - gen.axis_point) + gen.translation_rate * gen.axis_direction


@dataclass(frozen=True)
class SubgroupSpecE3:
    """Catalog entry: a closed connected subgroup of the isometries of E^3,
    given by one-parameter screw generators."""

    name: str
    dimension: int
    generators: tuple[ScrewGenerator, ...]
    parameter: float | None = None

    def __post_init__(self) -> None:
        if len(self.generators) != self.dimension:
            raise ValueError("number of generators must equal the dimension")


E3_GROUP_NAMES = (
    "{1}",
    "T(1)",
    "SO(2)",
    "SO(2)_t-bar",
    "SO(2)×T(1)",
    "T(2)",
    "E(2)_t-bar",
    "T(3)",
    "E(2)",
    "SO(3)",
    "E(2)×T(1)",
    "E(3)",
)


def _translation_gen(direction: Vec3) -> ScrewGenerator:
    return ScrewGenerator(ORIGIN, direction, 0.0, 1.0)


def _rotation_gen(direction: Vec3) -> ScrewGenerator:
    return ScrewGenerator(ORIGIN, direction, 1.0, 0.0)


def _screw_gen(pitch: float) -> ScrewGenerator:
    # rotates by `pitch` radians per unit of z-translation
    return ScrewGenerator(ORIGIN, EZ, pitch, 1.0)


def _check_pitch(name: str, pitch: float, degenerate_to: str) -> None:
    if pitch == 0.0:
        raise DegenerateParameterError(
            f"{name} with pitch 0 degenerates to {degenerate_to}"
        )
    if pitch < 0.0:
        raise ValueError(
            f"{name} exposes pitch >= 0 only; pitch {pitch} is conjugate to "
            f"pitch {abs(pitch)} by an orientation-reversing isometry, "
            f"so pass {abs(pitch)} instead"
        )


def subgroup_e3(name: str, pitch: float = 1.0) -> SubgroupSpecE3:
    """Look up one catalog subgroup of Isom(E^3) by name.

    `pitch` applies to the screw families SO(2)_t-bar and E(2)_t-bar and is
    ignored elsewhere.
    """
    tx, ty, tz = _translation_gen(EX), _translation_gen(EY), _translation_gen(EZ)
    rx, ry, rz = _rotation_gen(EX), _rotation_gen(EY), _rotation_gen(EZ)
    if name == "{1}":
        return SubgroupSpecE3(name, 0, ())
    if name == "T(1)":
        return SubgroupSpecE3(name, 1, (tz,))
    if name == "SO(2)":
        return SubgroupSpecE3(name, 1, (rz,))
    if name == "SO(2)_t-bar":
        _check_pitch(name, pitch, "T(1)")
        return SubgroupSpecE3(name, 1, (_screw_gen(pitch),), parameter=pitch)
    if name == "SO(2)×T(1)":
        return SubgroupSpecE3(name, 2, (rz, tz))
    if name == "T(2)":
        return SubgroupSpecE3(name, 2, (tx, ty))
    if name == "E(2)_t-bar":
        _check_pitch(name, pitch, "T(3)")
        return SubgroupSpecE3(name, 3, (tx, ty, _screw_gen(pitch)), parameter=pitch)
    if name == "T(3)":
        return SubgroupSpecE3(name, 3, (tx, ty, tz))
    if name == "E(2)":
        return SubgroupSpecE3(name, 3, (tx, ty, rz))
    if name == "SO(3)":
        return SubgroupSpecE3(name, 3, (rx, ry, rz))
    if name == "E(2)×T(1)":
        return SubgroupSpecE3(name, 4, (tx, ty, rz, tz))
    if name == "E(3)":
        return SubgroupSpecE3(name, 6, (tx, ty, tz, rx, ry, rz))
    raise KeyError(f"unknown E3 subgroup name: {name!r}")


def catalog_e3(pitch: float = 1.0) -> list[SubgroupSpecE3]:
    """All 12 closed connected subgroups of Isom(E^3), up to conjugacy.

    The two screw families are instantiated at the given pitch.
    """
    return [subgroup_e3(name, pitch) for name in E3_GROUP_NAMES]
