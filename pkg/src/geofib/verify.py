"""Numerical verification: partition/preservation/transitivity checks, the
curl eigenfield test, orbit-dimension estimates, and the classification demo
that replays the case-by-case elimination over both subgroup catalogs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Any, Callable, Sequence

import numpy as np

from . import fibration as fib
from .euclid import (
    EX,
    EZ,
    ORIGIN,
    EucLine,
    EuclideanIsometry,
    LinesRelation,
    ScrewGenerator,
    SubgroupSpecE3,
    Vec3,
    apply_isometry,
    catalog_e3,
    compose,
    exp_screw,
    image_of_line,
    inverse,
    line_mismatch,
    lines_intersection_angle,
    lines_relation,
    point_line_distance,
    rotation_about_axis,
    screw_velocity,
)
from .fibration import (
    EuclideanFt,
    Fibration,
    HyperbolicFInf,
    HyperbolicFz,
    describe,
    equivalence_invariant,
    fiber_e3,
    fiber_through,
    membership_residual,
    transitivity_witness,
)
from .hyper import (
    GeodesicRelation,
    H3Geodesic,
    H3PointHalf,
    INFINITY,
    MobiusMap,
    SubgroupSpecH3,
    catalog_h3,
    endpoint_mismatch,
    geodesic_from_endpoints,
    geodesic_intersection,
    geodesic_point_distance,
    geodesic_relation,
    geodesic_tangent,
    image_of_geodesic,
    point_on_geodesic,
    poincare_extend,
)

TRANSVERSAL_ANGLE = 1e-3  # rad; below this an intersection counts as tangential

# sampling region for hyperbolic checks: bounded and well-conditioned
H3_RE_RANGE = (-2.0, 2.0)
H3_IM_RANGE = (-2.0, 2.0)
H3_HEIGHT_RANGE = (0.1, 4.0)
E3_BOX = 3.0


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one numeric check; passed iff max_residual < tolerance."""

    name: str
    passed: bool
    max_residual: float
    samples: int
    tolerance: float
    detail: dict[str, Any] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.passed != (self.max_residual < self.tolerance):
            raise ValueError("passed flag must equal max_residual < tolerance")

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: max_residual={self.max_residual:.3e} "
            f"tol={self.tolerance:.1e} samples={self.samples}"
        )


def _report(name, max_residual, samples, tolerance, detail=None) -> CheckReport:
    return CheckReport(
        name=name,
        passed=bool(max_residual < tolerance),
        max_residual=float(max_residual),
        samples=samples,
        tolerance=tolerance,
        detail=detail,
    )


class CaseOutcome(Enum):
    TOO_SMALL = "TooSmall"
    FIXES_FIBER = "FixesFiber"
    TRANSVERSAL_IMAGE = "TransversalImage"
    PRODUCES_FIBRATION = "ProducesFibration"
    PRESERVES_KNOWN_FIBRATION = "PreservesKnownFibration"


@dataclass(frozen=True)
class CaseVerdict:
    """Verdict for one catalog group in the classification demo."""

    group_name: str
    outcome: CaseOutcome
    tag: tuple | None
    evidence: dict[str, Any]


# ---------------------------------------------------------------------------
# Sampling helpers
# ---------------------------------------------------------------------------


def sample_e3_point(rng: np.random.Generator, half: float = E3_BOX) -> Vec3:
    return Vec3(*rng.uniform(-half, half, size=3))


def sample_h3_point(rng: np.random.Generator) -> H3PointHalf:
    re = rng.uniform(*H3_RE_RANGE)
    im = rng.uniform(*H3_IM_RANGE)
    x = rng.uniform(*H3_HEIGHT_RANGE)
    return H3PointHalf(complex(re, im), x)


def _sample_point(f: Fibration, rng: np.random.Generator):
    if isinstance(f, EuclideanFt):
        return sample_e3_point(rng)
    return sample_h3_point(rng)


def _point_on_fiber(fiber, rng: np.random.Generator):
    if isinstance(fiber, EucLine):
        return fiber.point_at(rng.uniform(-E3_BOX, E3_BOX))
    return point_on_geodesic(fiber, rng.uniform(0.08, 0.92))


def _fiber_gap(fiber_a, fiber_b) -> float:
    if isinstance(fiber_a, EucLine):
        return line_mismatch(fiber_a, fiber_b)
    return endpoint_mismatch(fiber_a, fiber_b)


def _point_fiber_distance(fiber, p) -> float:
    if isinstance(fiber, EucLine):
        return point_line_distance(fiber, p)
    return geodesic_point_distance(fiber, p)


# ---------------------------------------------------------------------------
# Partition check
# ---------------------------------------------------------------------------


def check_partition(f: Fibration, n_samples: int, tol: float, seed: int) -> CheckReport:
    """Fibers of f through sampled points behave like a partition: points on
    a fiber reproduce it, points off a fiber get a disjoint one."""
    if n_samples <= 0 or tol <= 0:
        raise ValueError("n_samples and tol must be positive")
    rng = np.random.default_rng(seed)
    max_res = 0.0
    detail = None
    for _ in range(n_samples):
        p = _sample_point(f, rng)
        fiber_p = fiber_through(f, p)

        q_on = _point_on_fiber(fiber_p, rng)
        gap = _fiber_gap(fiber_p, fiber_through(f, q_on))
        max_res = max(max_res, gap)

        q_off = _sample_point(f, rng)
        if _point_fiber_distance(fiber_p, q_off) < 1e-9:
            gap = _fiber_gap(fiber_p, fiber_through(f, q_off))
            max_res = max(max_res, gap)
            continue
        fiber_q = fiber_through(f, q_off)
        if isinstance(fiber_p, EucLine):
            crossing = lines_relation(fiber_p, fiber_q, 1e-9) is LinesRelation.INTERSECTING
        else:
            crossing = (
                geodesic_relation(fiber_p, fiber_q, 1e-9) is GeodesicRelation.INTERSECTING
            )
        if crossing:
            max_res = math.inf
            detail = {"intersecting_pair": (repr(fiber_p), repr(fiber_q))}
            break
    return _report(f"partition[{describe(f)}]", max_res, n_samples, tol, detail)


# ---------------------------------------------------------------------------
# Group elements and fiber images
# ---------------------------------------------------------------------------


def _e3_element(spec: SubgroupSpecE3, params: Sequence[float]) -> EuclideanIsometry:
    isos = [exp_screw(g, s) for g, s in zip(spec.generators, params)]
    return reduce(compose, isos, EuclideanIsometry.identity())


def _h3_element(spec: SubgroupSpecH3, params: Sequence[float]) -> MobiusMap:
    maps = [fam(s) for fam, s in zip(spec.generators, params)]
    return reduce(lambda acc, m: acc.compose(m), maps, MobiusMap.identity())


def _apply_element(element, fiber):
    if isinstance(fiber, EucLine):
        return image_of_line(element, fiber)
    return image_of_geodesic(element, fiber)


def _flow_elements(spec, values: Sequence[float]) -> list[tuple[str, Any]]:
    out = []
    for i, gen in enumerate(spec.generators):
        for s in values:
            if isinstance(spec, SubgroupSpecE3):
                out.append((f"gen{i}({s:+.3g})", exp_screw(gen, s)))
            else:
                out.append((f"gen{i}({s:+.3g})", gen(s)))
    return out


_PAIR_VALUES = ((0.9, 0.9), (-0.9, 0.9), (0.9, -0.9), (2.1, -1.2))


def _word_elements(spec) -> list[tuple[str, Any]]:
    out = []
    n = spec.dimension
    for i in range(n):
        for j in range(i + 1, n):
            for s1, s2 in _PAIR_VALUES:
                if isinstance(spec, SubgroupSpecE3):
                    el = compose(exp_screw(spec.generators[i], s1), exp_screw(spec.generators[j], s2))
                else:
                    el = spec.generators[i](s1).compose(spec.generators[j](s2))
                out.append((f"gen{i}({s1:+.2g})∘gen{j}({s2:+.2g})", el))
    return out


_SCAN_VALUES = (-math.pi, -2.4, -1.5, -0.9, -0.3, 0.3, 0.9, 1.5, 2.4, math.pi)


def _scan_elements(spec) -> list[tuple[str, Any]]:
    return _flow_elements(spec, _SCAN_VALUES) + _word_elements(spec)


# ---------------------------------------------------------------------------
# Preservation check
# ---------------------------------------------------------------------------


def _transversal_evidence(image, original, tol: float) -> dict[str, Any] | None:
    if isinstance(original, EucLine):
        if lines_relation(image, original, 1e-9) is not LinesRelation.INTERSECTING:
            return None
        angle = lines_intersection_angle(image, original)
        if angle <= TRANSVERSAL_ANGLE:
            return None
        return {"kind": "transversal", "angle": angle}
    hit = geodesic_intersection(image, original, 1e-9)
    if hit is None:
        return None
    point, angle = hit
    if angle <= TRANSVERSAL_ANGLE:
        return None
    return {"kind": "transversal", "angle": angle, "point": (point.z.real, point.z.imag, point.x)}


def _special_points(f: Fibration) -> list:
    if isinstance(f, EuclideanFt):
        return [ORIGIN, Vec3(0.0, 0.0, 1.0), Vec3(1.0, -1.0, 0.5)]
    return [H3PointHalf(0.0, 1.0), H3PointHalf(0.5 + 0.5j, 0.8)]


def check_preservation(
    f: Fibration,
    group: SubgroupSpecE3 | SubgroupSpecH3,
    grid: Sequence[float] = (-1.2, -0.6, 0.6, 1.2),
    tol: float = 1e-8,
    n_fibers: int = 100,
    seed: int = 0,
) -> CheckReport:
    """Every generator flow value maps every sampled fiber of f to a fiber.

    A failure records a concrete offending (element, fiber) pair, with the
    transversal crossing when one exists.
    """
    rng = np.random.default_rng(seed)
    points = _special_points(f)
    while len(points) < n_fibers:
        points.append(_sample_point(f, rng))
    fibers = [fiber_through(f, p) for p in points]
    elements = _flow_elements(group, grid)

    max_res = 0.0
    detail: dict[str, Any] | None = None
    for label, el in elements:
        for idx, fiber in enumerate(fibers):
            image = _apply_element(el, fiber)
            res = membership_residual(f, image)
            if res > max_res:
                max_res = res
            if res > tol and detail is None:
                detail = {
                    "element": label,
                    "fiber_index": idx,
                    "fiber": repr(fiber),
                    "residual": res,
                }
                evidence = _transversal_evidence(image, fiber, tol)
                if evidence is not None:
                    detail.update(evidence)
    if detail is not None and "kind" not in detail:
        # look for a transversal pair anywhere before giving up on evidence
        for label, el in elements:
            found = False
            for fiber in fibers:
                image = _apply_element(el, fiber)
                if membership_residual(f, image) <= tol:
                    continue
                evidence = _transversal_evidence(image, fiber, tol)
                if evidence is not None:
                    detail.update(evidence)
                    detail["element"] = label
                    detail["fiber"] = repr(fiber)
                    found = True
                    break
            if found:
                break
    name = f"preservation[{describe(f)} / {group.name}]"
    return _report(name, max_res, len(elements) * len(fibers), tol, detail)


# ---------------------------------------------------------------------------
# Transitivity check
# ---------------------------------------------------------------------------


def check_transitivity(
    f: Fibration,
    n_pairs: int = 100,
    n_probes: int = 100,
    tol: float = 1e-8,
    seed: int = 0,
) -> CheckReport:
    """Witnesses map fiber A onto fiber B and probe fibers onto fibers."""
    rng = np.random.default_rng(seed)
    probe_fibers = [fiber_through(f, _sample_point(f, rng)) for _ in range(n_probes)]
    max_res = 0.0
    for _ in range(n_pairs):
        fiber_a = fiber_through(f, _sample_point(f, rng))
        fiber_b = fiber_through(f, _sample_point(f, rng))
        witness = transitivity_witness(f, fiber_a, fiber_b)
        max_res = max(max_res, _fiber_gap(_apply_element(witness, fiber_a), fiber_b))
        for probe in probe_fibers:
            max_res = max(max_res, membership_residual(f, _apply_element(witness, probe)))
    samples = n_pairs * (1 + n_probes)
    return _report(f"transitivity[{describe(f)}]", max_res, samples, tol)


# ---------------------------------------------------------------------------
# Curl eigenfield test
# ---------------------------------------------------------------------------


def ft_unit_field(t: float) -> Callable[[Vec3], Vec3]:
    """Unit direction field of the Euclidean pitch-t fibration."""

    def field_fn(p: Vec3) -> Vec3:
        return Vec3(math.cos(t * p.z), math.sin(t * p.z), 0.0)

    return field_fn


def curl_fd(field_fn: Callable[[Vec3], Vec3], p: Vec3, h: float) -> Vec3:
    """Central-difference curl with O(h^2) truncation (right-handed)."""
    if h <= 0:
        raise ValueError("step h must be positive")

    def partial(axis: Vec3) -> Vec3:
        return (1.0 / (2.0 * h)) * (field_fn(p + h * axis) - field_fn(p - h * axis))

    dx = partial(Vec3(1.0, 0.0, 0.0))
    dy = partial(Vec3(0.0, 1.0, 0.0))
    dz = partial(Vec3(0.0, 0.0, 1.0))
    return Vec3(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x)


# ---------------------------------------------------------------------------
# Orbit dimension
# ---------------------------------------------------------------------------


def fiber_probe_points(fiber) -> list:
    if isinstance(fiber, EucLine):
        return [fiber.point_at(s) for s in (-2.0, -1.0, 0.0, 1.0, 2.0)]
    return [point_on_geodesic(fiber, s) for s in (0.15, 0.35, 0.5, 0.65, 0.85)]


def _fiber_tangent(fiber, p) -> Vec3:
    if isinstance(fiber, EucLine):
        return fiber.direction
    return geodesic_tangent(fiber, p)


def _h3_velocity(family, p: H3PointHalf, eps: float = 1e-5) -> Vec3:
    fwd = poincare_extend(family(eps), p)
    back = poincare_extend(family(-eps), p)
    return Vec3(
        (fwd.z.real - back.z.real) / (2 * eps),
        (fwd.z.imag - back.z.imag) / (2 * eps),
        (fwd.x - back.x) / (2 * eps),
    )


def orbit_dimension(group, fiber, probe_points: list) -> int:
    """Dimension of the set swept by the group orbit of the fiber.

    Per probe point, the rank of the generator velocities together with the
    fiber tangent (singular values above 1e-6); maximized over probes.
    """
    best = 0
    for p in probe_points:
        rows = [_fiber_tangent(fiber, p).normalized().as_array()]
        for gen in group.generators:
            if isinstance(group, SubgroupSpecE3):
                rows.append(screw_velocity(gen, p).as_array())
            else:
                rows.append(_h3_velocity(gen, p).as_array())
        rank = int(np.linalg.matrix_rank(np.array(rows), tol=1e-6))
        best = max(best, rank)
    return best


# ---------------------------------------------------------------------------
# Classification demo
# ---------------------------------------------------------------------------


@dataclass
class _CandidateRecord:
    name: str
    orbit_dim: int
    fixed: bool
    transversal: dict[str, Any] | None
    produced_tag: tuple | None
    info: dict[str, Any]


def _candidates_e3(rng: np.random.Generator) -> list[tuple[str, EucLine]]:
    cands = [
        ("x-axis", EucLine(ORIGIN, EX)),
        ("z-axis", EucLine(ORIGIN, EZ)),
        ("slant", EucLine(ORIGIN, Vec3(1.0, 0.0, 1.0))),
    ]
    for k in range(2):
        base = sample_e3_point(rng, 1.5)
        direction = Vec3(*rng.normal(size=3))
        cands.append((f"random-{k}", EucLine(base, direction)))
    return cands


def _candidates_h3(rng: np.random.Generator) -> list[tuple[str, H3Geodesic]]:
    cands = [
        ("vertical-0", geodesic_from_endpoints(0.0, INFINITY)),
        ("real-chord", geodesic_from_endpoints(-1.0, 1.0)),
        ("conjugate-chord", geodesic_from_endpoints(-1j, 1j)),
        ("straddling", geodesic_from_endpoints(-1j, 1.0 + 2.0j)),
        ("vertical-upper", geodesic_from_endpoints(0.7 + 0.9j, INFINITY)),
    ]
    u = complex(rng.uniform(-1.5, 1.5), -rng.uniform(0.3, 1.5))
    v = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.3, 1.5))
    cands.append(("random-chord", geodesic_from_endpoints(u, v)))
    return cands


def _fixed_by_all(spec, fiber) -> bool:
    for _, el in _flow_elements(spec, (0.7, -1.3)):
        if _fiber_gap(_apply_element(el, fiber), fiber) > 1e-9:
            return False
    return True


def _find_transversal(spec, fiber, elements) -> dict[str, Any] | None:
    for label, el in elements:
        image = _apply_element(el, fiber)
        evidence = _transversal_evidence(image, fiber, 1e-9)
        if evidence is not None:
            evidence["element"] = label
            return evidence
    return None


def _wrap_half_pi(theta: float) -> float:
    while theta > 0.5 * math.pi:
        theta -= math.pi
    while theta <= -0.5 * math.pi:
        theta += math.pi
    return theta


def _identify_orbit_e3(images: list[EucLine]) -> tuple[Fibration, EuclideanIsometry, float] | None:
    d0 = images[0].direction
    if all(img.direction.cross(d0).norm() <= 1e-7 for img in images):
        axis = d0.cross(EX)
        if axis.norm() <= 1e-12:
            align = EuclideanIsometry.identity()
        else:
            align = EuclideanIsometry(
                rotation_about_axis(axis, math.acos(max(-1.0, min(1.0, d0.dot(EX))))),
                ORIGIN,
            )
        claimed = EuclideanFt(0.0)
        res = max(membership_residual(claimed, image_of_line(align, img)) for img in images)
        return (claimed, align, res) if res <= 1e-6 else None

    if not all(abs(img.direction.z) <= 1e-8 for img in images):
        return None
    angles = [math.atan2(img.direction.y, img.direction.x) % math.pi for img in images]
    levels = [img.base.z for img in images]
    slopes = []
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            dz = levels[j] - levels[i]
            if 0.05 < abs(dz) < 1.3:
                slopes.append(_wrap_half_pi(angles[j] - angles[i]) / dz)
    if not slopes:
        return None
    t_est = float(np.median(slopes))
    if t_est < 0:
        return None
    align = EuclideanIsometry(
        rotation_about_axis(EZ, t_est * levels[0] - angles[0]), ORIGIN
    )
    claimed = EuclideanFt(t_est)
    res = max(membership_residual(claimed, image_of_line(align, img)) for img in images)
    return (claimed, align, res) if res <= 1e-6 else None


def _identify_orbit_h3(images: list[H3Geodesic]) -> tuple[Fibration, None, float] | None:
    if all(img.is_vertical for img in images):
        return (HyperbolicFInf(), None, 0.0)
    z_vals = []
    for img in images:
        if img.is_vertical:
            return None
        u, v = (e.value for e in img.endpoints)
        if u.imag > v.imag:
            u, v = v, u
        if not u.imag < 0.0 < v.imag:
            return None
        z_vals.append((v - u.real) / (-u.imag))
    z0 = z_vals[0]
    if max(abs(zi - z0) for zi in z_vals) > 1e-7:
        return None
    claimed = HyperbolicFz(z0)
    res = max(membership_residual(claimed, img) for img in images)
    return (claimed, None, res) if res <= 1e-6 else None


def _fiber_space_coords(claimed: Fibration, align, fiber) -> tuple[float, float] | None:
    """Coordinates of a curve in the claimed fibration's 2-D space of fibers.

    None when the (aligned) curve is not a fiber of the claimed fibration.
    """
    if isinstance(claimed, EuclideanFt):
        line = fiber if align is None else image_of_line(align, fiber)
        if membership_residual(claimed, line) > 1e-6:
            return None
        zl = line.base.z
        normal = Vec3(-math.sin(claimed.t * zl), math.cos(claimed.t * zl), 0.0)
        return (line.base.dot(normal), zl)
    if isinstance(claimed, HyperbolicFInf):
        if not fiber.is_vertical:
            return None
        w = fiber.endpoints[0].value
        return (w.real, w.imag)
    coords_res = None
    try:
        coords_res = fib.hyperbolic_fiber_coords(claimed.z, fiber)
    except Exception:
        return None
    coords, residual = coords_res
    if residual > 1e-6:
        return None
    return (coords.a, math.log(coords.lam))


def _acts_transitively_on(spec, claimed: Fibration, align, rng) -> tuple[bool, dict]:
    """Whether the group moves fibers of the claimed fibration onto each other
    with full local freedom, everywhere it matters.

    Checks the rank of the generator action on the fiber space at the fiber
    through the distinguished base point (the proofs' anchor), plus two
    random fibers.  A rank below 2 at any of them, or a flow that leaves the
    fibration, rejects the claim.
    """
    euclidean = isinstance(spec, SubgroupSpecE3)
    eps = 1e-5
    if euclidean:
        align_inv = inverse(align)
        points = [ORIGIN, sample_e3_point(rng, 2.0), sample_e3_point(rng, 2.0)]
        targets = [
            image_of_line(align_inv, fiber_e3(claimed.t, apply_isometry(align, p)))
            for p in points
        ]
    else:
        points = [H3PointHalf(0.0, 1.0), sample_h3_point(rng), sample_h3_point(rng)]
        targets = [fiber_through(claimed, p) for p in points]

    for label, target in zip(("base-point", "random-1", "random-2"), targets):
        rows = []
        for gen in spec.generators:
            if euclidean:
                fwd = _fiber_space_coords(claimed, align, image_of_line(exp_screw(gen, eps), target))
                back = _fiber_space_coords(claimed, align, image_of_line(exp_screw(gen, -eps), target))
            else:
                fwd = _fiber_space_coords(claimed, None, image_of_geodesic(gen(eps), target))
                back = _fiber_space_coords(claimed, None, image_of_geodesic(gen(-eps), target))
            if fwd is None or back is None:
                return False, {"fiber_space_failure": label, "reason": "flow leaves the fibration"}
            rows.append(
                ((fwd[0] - back[0]) / (2 * eps), (fwd[1] - back[1]) / (2 * eps))
            )
        rank = int(np.linalg.matrix_rank(np.array(rows), tol=1e-6)) if rows else 0
        if rank < 2:
            return False, {"fiber_space_failure": label, "fiber_space_rank": rank}
    return True, {"fiber_space_rank": 2}


def _evaluate_candidate(spec, name, fiber, rng) -> _CandidateRecord:
    orbit_dim = orbit_dimension(spec, fiber, fiber_probe_points(fiber))
    fixed = spec.dimension > 0 and _fixed_by_all(spec, fiber)
    elements = _scan_elements(spec)
    transversal = _find_transversal(spec, fiber, elements)

    produced_tag = None
    info: dict[str, Any] = {"orbit_dim": orbit_dim, "fixed": fixed}
    if orbit_dim >= 3 and not fixed and transversal is None:
        images = [fiber] + [_apply_element(el, fiber) for _, el in elements]
        if isinstance(spec, SubgroupSpecE3):
            ident = _identify_orbit_e3(images)
        else:
            ident = _identify_orbit_h3(images)
        if ident is None:
            info["note"] = "orbit not identified with a known fibration"
        else:
            claimed, align, ident_res = ident
            transitive, trans_info = _acts_transitively_on(spec, claimed, align, rng)
            info["identification_residual"] = ident_res
            info.update(trans_info)
            if transitive:
                produced_tag = equivalence_invariant(claimed)
                info["produces"] = describe(claimed)
            else:
                info["note"] = "group is not transitive on the identified fibration"
    return _CandidateRecord(name, orbit_dim, fixed, transversal, produced_tag, info)


def _classify_group(spec, candidates, rng) -> CaseVerdict:
    records = [
        _evaluate_candidate(spec, name, fiber, rng) for name, fiber in candidates
    ]
    evidence: dict[str, Any] = {
        "candidates": {
            r.name: {
                "orbit_dim": r.orbit_dim,
                "fixed": r.fixed,
                "transversal": r.transversal,
                "tag": _tag_str(r.produced_tag),
                **{k: v for k, v in r.info.items() if k not in ("orbit_dim", "fixed")},
            }
            for r in records
        }
    }
    produced = [r for r in records if r.produced_tag is not None]
    if produced:
        evidence["tags"] = [_tag_str(r.produced_tag) for r in produced]
        evidence["witness_candidate"] = produced[0].name
        return CaseVerdict(
            spec.name, CaseOutcome.PRODUCES_FIBRATION, produced[0].produced_tag, evidence
        )
    max_dim = max(r.orbit_dim for r in records)
    if max_dim < 3:
        evidence["max_orbit_dimension"] = max_dim
        return CaseVerdict(spec.name, CaseOutcome.TOO_SMALL, None, evidence)
    fixed = [r for r in records if r.fixed]
    if fixed:
        evidence["fixed_candidate"] = fixed[0].name
        return CaseVerdict(spec.name, CaseOutcome.FIXES_FIBER, None, evidence)
    transversal = [r for r in records if r.transversal is not None]
    if transversal:
        evidence["witness_candidate"] = transversal[0].name
        evidence["transversal"] = transversal[0].transversal
        return CaseVerdict(spec.name, CaseOutcome.TRANSVERSAL_IMAGE, None, evidence)
    # orbit is 3-dimensional but fits no known fibration and fixes nothing;
    # does not occur for the shipped catalogs
    return CaseVerdict(spec.name, CaseOutcome.PRESERVES_KNOWN_FIBRATION, None, evidence)


def _tag_str(tag: tuple | None) -> str | None:
    if tag is None:
        return None
    if tag[0] == fib.TAG_H3_INF:
        return "F_inf"
    if tag[0] == fib.TAG_E3:
        return f"t={tag[1]:.6g}"
    return f"z={tag[1]:.6g}"


def classification_demo(
    space: str, tol: float = 1e-8, seed: int = 0, group: str | None = None
) -> list[CaseVerdict]:
    """Run the elimination battery over a full subgroup catalog.

    For each group: orbit-dimension bound, setwise fixed-fiber detection,
    transversal-image scan, and for survivors the constructive identification
    of the produced fibration (with a coverage check that the orbit sweeps
    the sampling region).  `group` restricts the run to a single catalog name.
    """
    space = space.upper()
    rng = np.random.default_rng(seed)
    if space == "E3":
        specs = catalog_e3(pitch=1.0)
        candidates = _candidates_e3(rng)
    elif space == "H3":
        specs = catalog_h3(ratio=1.0)
        candidates = _candidates_h3(rng)
    else:
        raise ValueError("space must be 'E3' or 'H3'")
    if group is not None:
        specs = [s for s in specs if s.name == group]
        if not specs:
            raise KeyError(f"unknown {space} subgroup name: {group!r}")
    del tol  # residual thresholds are fixed by the battery; kept for CLI symmetry
    return [
        _classify_group(spec, candidates, np.random.default_rng(seed + 1 + i))
        for i, spec in enumerate(specs)
    ]
