"""Command-line front end: construct fibrations, run checks, canonicalize
parameters, run the classification demo, and export fiber polylines.

Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import json
import math
import re
import sys

import click
import numpy as np

from .euclid import Vec3, point_line_distance, subgroup_e3
from .fibration import (
    EuclideanFt,
    Fibration,
    HyperbolicFInf,
    HyperbolicFz,
    HypFiberCoords,
    canonicalize_z,
    describe,
    fiber_e3,
    fiber_endpoints,
)
from .goldens import compare_with_expected
from .hyper import (
    H3PointBall,
    H3PointHalf,
    INFINITY,
    SubgroupSpecH3,
    ball_to_half,
    geodesic_from_endpoints,
    geodesic_point_distance,
    half_to_ball,
    point_on_geodesic,
    subgroup_h3,
)
from .verify import (
    CheckReport,
    _tag_str,
    check_partition,
    check_preservation,
    check_transitivity,
    classification_demo,
)

# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_RE_FULL = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?)i$")
_RE_IMAG = re.compile(rf"^(?P<im>[+-]?(?:{_NUM})?)i$")
_RE_REAL = re.compile(rf"^(?P<re>[+-]?{_NUM})$")


def parse_complex(text: str) -> complex:
    """Strict parser for the literal forms a+bi, bi, i, and a."""
    s = text.strip().replace(" ", "")
    m = _RE_FULL.match(s)
    if m:
        im = m.group("im")
        if im in ("+", "-"):
            im += "1"
        return complex(float(m.group("re")), float(im))
    m = _RE_IMAG.match(s)
    if m:
        im = m.group("im")
        if im in ("", "+"):
            im = "1"
        elif im == "-":
            im = "-1"
        return complex(0.0, float(im))
    m = _RE_REAL.match(s)
    if m:
        return complex(float(m.group("re")), 0.0)
    raise click.UsageError(f"cannot parse complex literal {text!r}; expected a+bi")


def format_complex(z: complex) -> str:
    return f"{z.real:g}{z.imag:+g}i"


def _normalize_group_name(name: str) -> str:
    return "".join(ch for ch in name.lower() if ch.isalnum())


_EXTRA_ALIASES = {"so2t": "SO(2)_t-bar", "e2t": "E(2)_t-bar"}


def resolve_group(space: str, name: str):
    from .euclid import E3_GROUP_NAMES
    from .hyper import H3_GROUP_NAMES

    names = E3_GROUP_NAMES if space == "e3" else H3_GROUP_NAMES
    table = {_normalize_group_name(n): n for n in names}
    table.update(
        {k: v for k, v in _EXTRA_ALIASES.items() if v in names}
    )
    key = _normalize_group_name(name)
    if key not in table:
        raise click.UsageError(
            f"unknown {space} subgroup {name!r}; known: {', '.join(names)}"
        )
    resolved = table[key]
    return subgroup_e3(resolved) if space == "e3" else subgroup_h3(resolved)


def _common_options(fn):
    fn = click.option("--seed", type=int, default=0, show_default=True, help="Random seed.")(fn)
    fn = click.option("--tol", type=float, default=1e-8, show_default=True, help="Residual tolerance.")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (stdout when omitted).")(fn)
    fn = click.option(
        "--format", "fmt", type=click.Choice(["json", "obj"]), default="json", show_default=True, help="Export format."
    )(fn)
    return fn


def _build_fibration(space: str, t: float | None, z: str | None, inf: bool) -> Fibration:
    if space == "e3":
        if z is not None or inf:
            raise click.UsageError("--z/--inf apply to --space h3 only")
        if t is None:
            raise click.UsageError("--space e3 requires --t")
        if t < 0:
            raise click.UsageError(
                f"pitch must be nonnegative; t={t:g} is equivalent to t={abs(t):g} "
                f"(orientation-reversing conjugation), so pass --t {abs(t):g}"
            )
        return EuclideanFt(t)
    if t is not None:
        raise click.UsageError("--t applies to --space e3 only")
    if inf and z is not None:
        raise click.UsageError("pass exactly one of --z and --inf")
    if inf:
        return HyperbolicFInf()
    if z is None:
        raise click.UsageError("--space h3 requires --z or --inf")
    zc = parse_complex(z)
    if zc.imag <= 0:
        raise click.UsageError(
            f"parameter z={format_complex(zc)} must have Im z > 0; the canonical "
            f"region is Re z >= 0, Im z >= 1"
        )
    return HyperbolicFz(zc)


# ---------------------------------------------------------------------------
# Export documents
# ---------------------------------------------------------------------------


def _clip_line_to_box(base: Vec3, direction: Vec3, half: float) -> tuple[float, float] | None:
    lo, hi = -math.inf, math.inf
    for b, d in ((base.x, direction.x), (base.y, direction.y), (base.z, direction.z)):
        if abs(d) < 1e-15:
            if abs(b) > half:
                return None
            continue
        s1, s2 = (-half - b) / d, (half - b) / d
        lo, hi = max(lo, min(s1, s2)), min(hi, max(s1, s2))
    return (lo, hi) if lo < hi else None


def _export_e3(t: float, box: float, grid: int) -> dict:
    fibers = []
    levels = np.linspace(-box, box, grid)
    offsets = np.linspace(-box, box, grid)
    fid = 0
    for z in levels:
        line = fiber_e3(t, Vec3(0.0, 0.0, float(z)))
        normal = Vec3(-line.direction.y, line.direction.x, 0.0)
        for u in offsets:
            base = Vec3(0.0, 0.0, float(z)) + float(u) * normal
            span = _clip_line_to_box(base, line.direction, box)
            if span is None:
                continue
            pts = [base + s * line.direction for s in span]
            fibers.append(
                {
                    "id": fid,
                    "params": {
                        "z_level": float(z),
                        "offset": float(u),
                        "direction": [line.direction.x, line.direction.y],
                    },
                    "points": [[p.x, p.y, p.z] for p in pts],
                }
            )
            fid += 1
    return {
        "space": "E3",
        "fibration": {"variant": "euclidean-ft", "t": t},
        "fibers": fibers,
    }


def _h3_point_coords(p: H3PointHalf, ball: bool) -> list[float]:
    if ball:
        v = half_to_ball(p).v
        return [v.x, v.y, v.z]
    return [p.z.real, p.z.imag, p.x]


def _export_h3_z(z: complex, box: float, grid: int, ball: bool) -> dict:
    fibers = []
    lams = np.exp(np.linspace(-1.4, 1.4, grid))
    offsets = np.linspace(-box, box, grid)
    svals = np.linspace(0.04, 0.96, 49)
    fid = 0
    for lam in lams:
        for a in offsets:
            geo = fiber_endpoints(z, HypFiberCoords(float(lam), float(a)))
            pts = [point_on_geodesic(geo, float(s)) for s in svals]
            fibers.append(
                {
                    "id": fid,
                    "params": {"lambda": float(lam), "a": float(a)},
                    "points": [_h3_point_coords(p, ball) for p in pts],
                }
            )
            fid += 1
    return {
        "space": "H3-ball" if ball else "H3-halfspace",
        "fibration": {"variant": "hyperbolic-fz", "z": [z.real, z.imag]},
        "fibers": fibers,
    }


def _export_h3_inf(box: float, grid: int, ball: bool) -> dict:
    fibers = []
    res = np.linspace(-box, box, grid)
    ims = np.linspace(-box, box, grid)
    heights = np.geomspace(0.08, 8.0, 33)
    fid = 0
    for re_ in res:
        for im_ in ims:
            z0 = complex(float(re_), float(im_))
            pts = [H3PointHalf(z0, float(h)) for h in heights]
            fibers.append(
                {
                    "id": fid,
                    "params": {"z0": [z0.real, z0.imag]},
                    "points": [_h3_point_coords(p, ball) for p in pts],
                }
            )
            fid += 1
    return {
        "space": "H3-ball" if ball else "H3-halfspace",
        "fibration": {"variant": "hyperbolic-finf"},
        "fibers": fibers,
    }


def validate_document(doc: dict, tol: float = 1e-8) -> None:
    """Schema and geometry validation of an export document; raises ValueError."""
    for key in ("space", "fibration", "fibers"):
        if key not in doc:
            raise ValueError(f"document is missing the {key!r} field")
    space = doc["space"]
    if space not in ("E3", "H3-halfspace", "H3-ball"):
        raise ValueError(f"unknown space {space!r}")
    variant = doc["fibration"].get("variant")
    for fiber in doc["fibers"]:
        for key in ("id", "params", "points"):
            if key not in fiber:
                raise ValueError(f"fiber is missing the {key!r} field")
        pts = fiber["points"]
        if len(pts) < 2:
            raise ValueError("every fiber needs at least 2 points")
        for p in pts:
            if len(p) != 3 or not all(math.isfinite(float(c)) for c in p):
                raise ValueError("fiber points must be finite [x, y, z] triples")
        if space == "E3":
            if variant != "euclidean-ft":
                raise ValueError("E3 documents require the euclidean-ft variant")
            line = fiber_e3(doc["fibration"]["t"], Vec3(*pts[0]))
            worst = max(point_line_distance(line, Vec3(*p)) for p in pts)
        else:
            half_pts = []
            for p in pts:
                if space == "H3-ball":
                    v = Vec3(*p)
                    if v.norm() >= 1.0:
                        raise ValueError("ball points must have norm < 1")
                    half_pts.append(ball_to_half(H3PointBall(v)))
                else:
                    if p[2] <= 0:
                        raise ValueError("half-space points must have positive height")
                    half_pts.append(H3PointHalf(complex(p[0], p[1]), p[2]))
            if variant == "hyperbolic-fz":
                zre, zim = doc["fibration"]["z"]
                geo = fiber_endpoints(
                    complex(zre, zim),
                    HypFiberCoords(fiber["params"]["lambda"], fiber["params"]["a"]),
                )
            elif variant == "hyperbolic-finf":
                geo = geodesic_from_endpoints(half_pts[0].z, INFINITY)
            else:
                raise ValueError(f"unknown hyperbolic variant {variant!r}")
            worst = max(geodesic_point_distance(geo, q) for q in half_pts)
        if worst >= tol:
            raise ValueError(
                f"fiber {fiber['id']} points stray {worst:.3e} from the claimed fiber"
            )


def _document_to_obj(doc: dict) -> str:
    lines = [f"# space={doc['space']}"]
    index = 1
    for fiber in doc["fibers"]:
        start = index
        for p in fiber["points"]:
            lines.append(f"v {p[0]:.12g} {p[1]:.12g} {p[2]:.12g}")
            index += 1
        chain = " ".join(str(i) for i in range(start, index))
        lines.append(f"l {chain}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(f"wrote {out}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group()
def main() -> None:
    """Geodesic fibrations of Euclidean and hyperbolic 3-space."""


@main.command("sample")
@click.option("--space", type=click.Choice(["e3", "h3"]), required=True)
@click.option("--t", type=float, default=None, help="Euclidean pitch (e3).")
@click.option("--z", type=str, default=None, help="Hyperbolic parameter a+bi (h3).")
@click.option("--inf", "inf_", is_flag=True, help="Vertical-line fibration (h3).")
@click.option("--model", type=click.Choice(["halfspace", "ball"]), default="halfspace", show_default=True)
@click.option("--box", type=float, default=4.0, show_default=True, help="Half-width of the sampled region.")
@click.option("--grid", type=int, default=8, show_default=True, help="Fibers per grid axis.")
@_common_options
def cmd_sample(space, t, z, inf_, model, box, grid, seed, tol, out, fmt) -> None:
    """Export sampled fiber polylines as JSON (or OBJ)."""
    del seed  # sampling grids are deterministic
    f = _build_fibration(space, t, z, inf_)
    if model == "ball" and space == "e3":
        raise click.UsageError("--model ball applies to --space h3 only")
    if isinstance(f, EuclideanFt):
        doc = _export_e3(f.t, box, grid)
    elif isinstance(f, HyperbolicFz):
        doc = _export_h3_z(f.z, box, grid, model == "ball")
    else:
        doc = _export_h3_inf(box, grid, model == "ball")
    validate_document(doc, tol=max(tol, 1e-8))
    if fmt == "obj":
        _emit(_document_to_obj(doc), out)
    else:
        _emit(json.dumps(doc, indent=1) + "\n", out)


_CHECK_NAMES = ("partition", "preservation", "transitivity")


def _default_group(f: Fibration):
    if isinstance(f, EuclideanFt):
        return subgroup_e3("T(3)") if f.t == 0 else subgroup_e3("E(2)_t-bar", pitch=f.t)
    if isinstance(f, HyperbolicFz):
        return subgroup_h3("⟨Hyp,Par⟩")
    return subgroup_h3("Sim")


@main.command("verify")
@click.option("--space", type=click.Choice(["e3", "h3"]), required=True)
@click.option("--t", type=float, default=None)
@click.option("--z", type=str, default=None)
@click.option("--inf", "inf_", is_flag=True)
@click.option("--checks", type=str, default="partition", show_default=True, help="Comma-separated check names.")
@click.option("--group", type=str, default=None, help="Catalog group for the preservation check.")
@click.option("--samples", type=int, default=300, show_default=True)
@_common_options
def cmd_verify(space, t, z, inf_, checks, group, samples, seed, tol, out, fmt) -> None:
    """Run numeric checks against a fibration; exit 0 iff all pass."""
    del out, fmt
    f = _build_fibration(space, t, z, inf_)
    wanted = [c.strip() for c in checks.split(",") if c.strip()]
    for c in wanted:
        if c not in _CHECK_NAMES:
            raise click.UsageError(
                f"unknown check {c!r}; known: {', '.join(_CHECK_NAMES)}"
            )
    if group is not None and "preservation" not in wanted:
        wanted.append("preservation")
    reports: list[CheckReport] = []
    for c in wanted:
        if c == "partition":
            reports.append(check_partition(f, samples, tol, seed))
        elif c == "transitivity":
            reports.append(
                check_transitivity(f, n_pairs=30, n_probes=30, tol=tol, seed=seed)
            )
        else:
            g = resolve_group(space, group) if group else _default_group(f)
            if isinstance(f, EuclideanFt) and isinstance(g, SubgroupSpecH3):
                raise click.UsageError("group catalog does not match the space")
            reports.append(check_preservation(f, g, tol=tol, n_fibers=60, seed=seed))
    failed = False
    for r in reports:
        click.echo(str(r))
        if not r.passed and r.detail:
            click.echo(f"  evidence: {r.detail}")
        failed = failed or not r.passed
    sys.exit(1 if failed else 0)


@main.command("canonicalize")
@click.option("--z", type=str, required=True, help="Parameter a+bi with Im z > 0.")
@_common_options
def cmd_canonicalize(z, seed, tol, out, fmt) -> None:
    """Move a fibration parameter into the canonical region."""
    del seed, tol, out, fmt
    zc = parse_complex(z)
    if zc.imag <= 0:
        raise click.UsageError("canonicalization requires Im z > 0")
    result = canonicalize_z(zc)
    click.echo(f"canonical: {format_complex(result.z)}")
    click.echo(f"witness: {result.witness}")
    click.echo(f"steps: {', '.join(result.steps) if result.steps else '(none)'}")


@main.command("classify")
@click.option("--space", type=click.Choice(["e3", "h3"]), required=True)
@click.option("--group", type=str, default=None, help="Run a single catalog group.")
@click.option("--golden", is_flag=True, help="Compare against the stored expected table.")
@_common_options
def cmd_classify(space, group, golden, seed, tol, out, fmt) -> None:
    """Replay the case analysis over the subgroup catalog."""
    del out, fmt
    group_name = resolve_group(space, group).name if group else None
    verdicts = classification_demo(space.upper(), tol=tol, seed=seed, group=group_name)
    for v in verdicts:
        tag = _tag_str(v.tag)
        tag_part = f" -> {tag}" if tag else ""
        click.echo(f"{v.group_name:<12} {v.outcome.value}{tag_part}")
    if golden:
        if group_name is not None:
            raise click.UsageError("--golden compares the full table; drop --group")
        problems = compare_with_expected(verdicts, space.upper())
        if problems:
            for p in problems:
                click.echo(f"MISMATCH {p}")
            sys.exit(1)
        click.echo(f"golden table matched ({len(verdicts)} rows)")
    sys.exit(0)


if __name__ == "__main__":
    main()
