"""Fibrations of E^3 and H^3 by geodesics: fiber solvers, transitivity
witnesses, conjugation, and canonicalization of the hyperbolic parameter.

The three families are

* twisting line fields of E^3 indexed by a pitch t >= 0 (horizontal lines
  whose direction turns at rate t per unit height),
* nested-semicircle fibrations of H^3 indexed by a complex z with Im z > 0
  (the orbit of a base geodesic under real boundary translations and
  dilations), and
* the vertical-line fibration of H^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import hyper
from .errors import FiberSolveError, NotAFiberError
from .euclid import (
    ORIGIN,
    EZ,
    EucLine,
    EuclideanIsometry,
    ScrewGenerator,
    Vec3,
    apply_isometry,
    compose,
    exp_screw,
    image_of_line,
    inverse,
    line_mismatch,
)
from .hyper import (
    BoundaryTransform,
    H3Geodesic,
    H3PointHalf,
    MobiusMap,
    geodesic_from_endpoints,
    geodesic_point_distance,
)

SOLVER_TOL = 1e-10


@dataclass(frozen=True)
class EuclideanFt:
    """Twisting-line fibration of E^3 with pitch t.

    Negative pitches are accepted and normalized to |t| (the two signs are
    carried onto each other by an orientation-reversing isometry); the
    `flipped` flag records that this happened.
    """

    t: float
    flipped: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.t):
            raise ValueError("pitch must be finite")
        if self.t < 0.0:
            object.__setattr__(self, "t", -self.t)
            object.__setattr__(self, "flipped", True)


@dataclass(frozen=True)
class HyperbolicFz:
    """Semicircle fibration of H^3 with parameter z, Im z > 0."""

    z: complex

    def __post_init__(self) -> None:
        z = complex(self.z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError("fibration parameter must be finite")
        if z.imag <= 0.0:
            raise ValueError("fibration parameter must have positive imaginary part")
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class HyperbolicFInf:
    """Vertical-line fibration of H^3."""


Fibration = Union[EuclideanFt, HyperbolicFz, HyperbolicFInf]


@dataclass(frozen=True)
class HypFiberCoords:
    """Coordinates of one fiber inside a semicircle fibration: the fiber with
    endpoints (a - lam*i, a + lam*z)."""

    lam: float
    a: float

    def __post_init__(self) -> None:
        if self.lam <= 0.0:
            raise ValueError("fiber scale must be strictly positive")


def fiber_endpoints(z: complex, coords: HypFiberCoords) -> H3Geodesic:
    """Geodesic of the z-fibration at the given (lam, a) coordinates."""
    return geodesic_from_endpoints(coords.a - 1j * coords.lam, coords.a + coords.lam * z)


# ---------------------------------------------------------------------------
# Fiber-through-point solvers
# ---------------------------------------------------------------------------


def fiber_e3(t: float, p: Vec3) -> EucLine:
    """Fiber through p: the horizontal line with direction angle t * p.z."""
    return EucLine(p, Vec3(math.cos(t * p.z), math.sin(t * p.z), 0.0))


def fiber_h3_inf(p: H3PointHalf) -> H3Geodesic:
    return geodesic_from_endpoints(p.z, hyper.INFINITY)


def _a_of_lambda(z: complex, w: complex, lam: float) -> float:
    # collinearity of (a - lam*i, w, a + lam*z), solved for the real offset a
    return -((w + 1j * lam) * (z + 1j).conjugate()).imag / (z.imag + 1.0)


def _height_residual(z: complex, w: complex, h: float, lam: float) -> float:
    # h^2 + |w - center|^2 - radius^2 for the candidate fiber at scale lam;
    # positive for small lam, negative for large, zero exactly on the fiber
    a = _a_of_lambda(z, w, lam)
    u = a - 1j * lam
    v = a + lam * z
    c = 0.5 * (u + v)
    r = 0.5 * abs(v - u)
    d = abs(w - c)
    return h * h + d * d - r * r


def fiber_h3_z(
    z: complex,
    p: H3PointHalf,
    lam_bounds: tuple[float, float] = (1e-8, 1e8),
) -> tuple[H3Geodesic, HypFiberCoords]:
    """Unique fiber of the z-fibration through p, with its coordinates.

    The scale lam is bracketed on a geometric grid and pinned by bisection;
    the offset a is eliminated by the collinearity of the point's horizontal
    coordinate with the fiber endpoints.
    """
    z = complex(z)
    if z.imag <= 0.0:
        raise ValueError("fibration parameter must have positive imaginary part")
    w, h = p.z, p.x

    lams = np.geomspace(lam_bounds[0], lam_bounds[1], 161)
    a_vals = -((w + 1j * lams) * np.conj(z + 1j)).imag / (z.imag + 1.0)
    u_vals = a_vals - 1j * lams
    v_vals = a_vals + lams * z
    res = (
        h * h
        + np.abs(w - 0.5 * (u_vals + v_vals)) ** 2
        - (0.5 * np.abs(v_vals - u_vals)) ** 2
    )
    signs = np.sign(res)
    zero_hits = np.nonzero(signs == 0.0)[0]
    if zero_hits.size:
        lam = float(lams[zero_hits[0]])
    else:
        flips = np.nonzero(signs[:-1] != signs[1:])[0]
        if not flips.size:
            raise FiberSolveError(
                f"no fiber scale bracket found for z={z}, point=({w}, {h})"
            )
        i = int(flips[0])
        lo, hi = float(lams[i]), float(lams[i + 1])
        flo, fhi = float(res[i]), float(res[i + 1])
        lam = _bisect_lambda(z, w, h, lo, hi, flo, fhi)

    coords = HypFiberCoords(lam, _a_of_lambda(z, w, lam))
    geo = fiber_endpoints(z, coords)
    residual = geodesic_point_distance(geo, p)
    if residual > SOLVER_TOL:
        raise FiberSolveError(
            f"fiber solver residual {residual:.3e} exceeds {SOLVER_TOL:.1e} "
            f"for z={z}, point=({w}, {h})"
        )
    return geo, coords


def _bisect_lambda(
    z: complex, w: complex, h: float, lo: float, hi: float, flo: float, fhi: float
) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (hi - lo) <= 1e-15 * mid:
            return mid
        fm = _height_residual(z, w, h, mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


def fiber_through(f: Fibration, p) -> EucLine | H3Geodesic:
    """Fiber of f through a point (Vec3 for E^3, H3PointHalf for H^3)."""
    if isinstance(f, EuclideanFt):
        return fiber_e3(f.t, p)
    if isinstance(f, HyperbolicFz):
        return fiber_h3_z(f.z, p)[0]
    if isinstance(f, HyperbolicFInf):
        return fiber_h3_inf(p)
    raise TypeError(f"not a fibration: {f!r}")


# ---------------------------------------------------------------------------
# Fiber membership
# ---------------------------------------------------------------------------


def hyperbolic_fiber_coords(z: complex, g: H3Geodesic) -> tuple[HypFiberCoords, float]:
    """Read (lam, a) off a candidate fiber of the z-fibration.

    Returns the coordinates together with the residual gap of the second
    endpoint; raises NotAFiberError when the geodesic cannot carry fiber
    coordinates at all (vertical, or endpoints on one side of the real axis).
    """
    if g.is_vertical:
        raise NotAFiberError("vertical line is not a fiber of a semicircle fibration")
    u, v = (e.value for e in g.endpoints)
    if u.imag > v.imag:
        u, v = v, u
    if not u.imag < 0.0 < v.imag:
        raise NotAFiberError(
            "fiber endpoints must straddle the real axis in the boundary plane"
        )
    coords = HypFiberCoords(-u.imag, u.real)
    residual = abs(v - (coords.a + coords.lam * complex(z)))
    return coords, residual


def membership_residual(f: Fibration, fiber) -> float:
    """How far a line/geodesic is from being a fiber of f (0 on fibers)."""
    if isinstance(f, EuclideanFt):
        return line_mismatch(fiber, fiber_e3(f.t, fiber.base))
    if isinstance(f, HyperbolicFInf):
        return 0.0 if fiber.is_vertical else math.inf
    if isinstance(f, HyperbolicFz):
        try:
            _, residual = hyperbolic_fiber_coords(f.z, fiber)
        except NotAFiberError:
            return math.inf
        return residual
    raise TypeError(f"not a fibration: {f!r}")


# ---------------------------------------------------------------------------
# Transitivity witnesses
# ---------------------------------------------------------------------------


def _require_fiber(f: Fibration, fiber, tol: float) -> None:
    residual = membership_residual(f, fiber)
    if not residual <= tol:
        raise NotAFiberError(
            f"curve is not a fiber of {f!r} (membership residual {residual:.3e})"
        )


def transitivity_witness(
    f: Fibration, fiber_a, fiber_b, tol: float = 1e-6
) -> EuclideanIsometry | MobiusMap:
    """Isometry taking fiber_a onto fiber_b while preserving all fibers of f.

    The witness is drawn from the group that acts transitively on f: the
    planar-translation/screw group for the Euclidean family (plain
    translations when t = 0), real translations and dilations for the
    semicircle family, and boundary similitudes for the vertical family.
    """
    _require_fiber(f, fiber_a, tol)
    _require_fiber(f, fiber_b, tol)

    if isinstance(f, EuclideanFt):
        dz = fiber_b.base.z - fiber_a.base.z
        lift = exp_screw(ScrewGenerator(ORIGIN, EZ, f.t, 1.0), dz)
        lifted = image_of_line(lift, fiber_a)
        delta = fiber_b.base - lifted.base
        shift = delta - delta.dot(fiber_b.direction) * fiber_b.direction
        return compose(EuclideanIsometry.translation_by(shift), lift)

    if isinstance(f, HyperbolicFz):
        ca, _ = hyperbolic_fiber_coords(f.z, fiber_a)
        cb, _ = hyperbolic_fiber_coords(f.z, fiber_b)
        mu = cb.lam / ca.lam
        beta = cb.a - mu * ca.a
        root = math.sqrt(mu)
        return MobiusMap(root, beta / root, 0.0, 1.0 / root)

    if isinstance(f, HyperbolicFInf):
        za = fiber_a.endpoints[0].value
        zb = fiber_b.endpoints[0].value
        return MobiusMap(1.0, zb - za, 0.0, 1.0)

    raise TypeError(f"not a fibration: {f!r}")


# ---------------------------------------------------------------------------
# Conjugated fibrations
# ---------------------------------------------------------------------------


class ConjugatedFibration:
    """Image of a fibration under an ambient isometry.

    The fiber through p is the transformed fiber of the source fibration
    through the preimage of p; used to test equivalence claims numerically.
    Sources may be fibration values or other fiber-through-point handles,
    so conjugations compose.
    """

    def __init__(self, source, transform) -> None:
        euclidean = (
            isinstance(source, EuclideanFt)
            or getattr(source, "space", None) == "e3"
        )
        if euclidean:
            if not isinstance(transform, EuclideanIsometry):
                raise TypeError("Euclidean fibrations conjugate by EuclideanIsometry")
            self.space = "e3"
        else:
            if isinstance(transform, MobiusMap):
                transform = BoundaryTransform(transform)
            if not isinstance(transform, BoundaryTransform):
                raise TypeError(
                    "hyperbolic fibrations conjugate by MobiusMap or BoundaryTransform"
                )
            self.space = "h3"
        self.source = source
        self.transform = transform
        self._inverse = (
            inverse(transform)
            if isinstance(transform, EuclideanIsometry)
            else transform.inverse()
        )

    def _source_fiber(self, q):
        if isinstance(self.source, ConjugatedFibration):
            return self.source.fiber_through(q)
        return fiber_through(self.source, q)

    def fiber_through(self, p):
        if self.space == "e3":
            q = apply_isometry(self._inverse, p)
            return image_of_line(self.transform, self._source_fiber(q))
        q = self._inverse.extend(p)
        return self.transform.apply_geodesic(self._source_fiber(q))


def conjugate_fibration(f, transform) -> ConjugatedFibration:
    return ConjugatedFibration(f, transform)


# ---------------------------------------------------------------------------
# Canonicalization of the hyperbolic parameter
# ---------------------------------------------------------------------------

ROTATION_PI = BoundaryTransform(MobiusMap(-1.0, 0.0, 0.0, 1.0), conjugate=False)
REFLECT_IMAGINARY = BoundaryTransform(MobiusMap(-1.0, 0.0, 0.0, 1.0), conjugate=True)


def flip_z(z: complex) -> complex:
    """Parameter of the image fibration under the boundary rotation by pi.

    The fiber with one endpoint at i has its other endpoint at
    -(Re z + i)/Im z; rotating by pi relabels that fiber as the base
    geodesic of the new fibration, whose parameter is (Re z + i)/Im z.
    """
    return complex(z.real / z.imag, 1.0 / z.imag)


def reflect_z(z: complex) -> complex:
    """Parameter of the image fibration under reflection in the imaginary axis."""
    return complex(-z.real, z.imag)


@dataclass(frozen=True)
class CanonicalZ:
    """Canonical representative in {Re >= 0, Im >= 1} with the boundary
    transformation that carries the input fibration onto it."""

    z: complex
    witness: str
    steps: tuple[str, ...]
    boundary: BoundaryTransform

    def __post_init__(self) -> None:
        if not (self.z.imag >= 1.0 and self.z.real >= 0.0):
            raise ValueError("canonical parameter must satisfy Re >= 0 and Im >= 1")


def canonicalize_z(z: complex) -> CanonicalZ:
    """Move z into the canonical region {Re z >= 0, Im z >= 1}.

    Applies the reflection in the imaginary axis when Re z < 0, then the
    rotation by pi when Im z < 1 (which sends Im to 1/Im and keeps the sign
    of Re).  Parameters already in the region are returned untouched, so the
    procedure is idempotent.  When both steps fire their composite is the
    reflection in the real axis.
    """
    z = complex(z)
    if z.imag <= 0.0:
        raise ValueError("canonicalization requires Im z > 0")
    steps: list[str] = []
    transform = BoundaryTransform.identity()
    if z.real < 0.0:
        z = reflect_z(z)
        steps.append("reflect-imaginary")
        transform = REFLECT_IMAGINARY.compose(transform)
    if z.imag < 1.0:
        z = flip_z(z)
        steps.append("rotation-pi")
        transform = ROTATION_PI.compose(transform)
    if not steps:
        witness = "identity"
    elif len(steps) == 1:
        witness = steps[0]
    else:
        witness = "reflect-real"
    return CanonicalZ(z, witness, tuple(steps), transform)


# ---------------------------------------------------------------------------
# Equivalence invariant
# ---------------------------------------------------------------------------

def describe(f: Fibration) -> str:
    if isinstance(f, EuclideanFt):
        return f"F_t[t={f.t:.6g}]"
    if isinstance(f, HyperbolicFz):
        return f"F_z[z={f.z:.6g}]"
    if isinstance(f, HyperbolicFInf):
        return "F_inf"
    raise TypeError(f"not a fibration: {f!r}")


TAG_E3 = "E3"
TAG_H3_Z = "H3-z"
TAG_H3_INF = "H3-inf"


def equivalence_invariant(f: Fibration) -> tuple:
    """Canonical tag equal on equivalent fibrations, distinct otherwise.

    The Euclidean tag is |t| (the pitch survives isometries up to sign);
    the semicircle tag is the canonical parameter; the vertical family gets
    its own tag, never equal to any semicircle tag.
    """
    if isinstance(f, EuclideanFt):
        return (TAG_E3, abs(f.t))
    if isinstance(f, HyperbolicFz):
        return (TAG_H3_Z, canonicalize_z(f.z).z)
    if isinstance(f, HyperbolicFInf):
        return (TAG_H3_INF,)
    raise TypeError(f"not a fibration: {f!r}")


def tags_match(tag_a: tuple, tag_b: tuple, tol: float = 1e-9) -> bool:
    if tag_a[0] != tag_b[0]:
        return False
    if tag_a[0] == TAG_H3_INF:
        return True
    return abs(tag_a[1] - tag_b[1]) <= tol
