"""Curve pictures: the 1-skeleton of a plane min-plus curve, rendered to SVG.

Geometry is computed exactly; coordinates become floats only when handed to
matplotlib. Output is byte-stable: the SVG hash salt is pinned and the date
header is stripped.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .core import TropPolynomial, lifted_hull, saturate
from .errors import DomainError
from .geometry import PointCondition, Weighting, dual_complex, weighting_from_points
from . import hull

SVG_HASH_SALT = "tropcram"


@dataclass(frozen=True)
class CurveSkeleton:
    vertices: tuple[tuple[Fraction, Fraction], ...]
    segments: tuple[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]], ...]
    rays: tuple[tuple[tuple[Fraction, Fraction], tuple[int, int]], ...]


def curve_skeleton(f: TropPolynomial) -> CurveSkeleton:
    """Vertices, bounded edges, and rays of a full-dimensional plane curve.

    Each supporting plane's slope, negated, is the point where its cell's
    monomials tie; shared cell edges give bounded curve edges, boundary cell
    edges give rays along the negated outward normal.
    """
    if f.dimension != 2:
        raise DomainError("plot", "only 2-dimensional polynomials can be drawn")
    fs = saturate(f)
    lh = lifted_hull(fs)
    if lh.working_dim != 2:
        raise DomainError("plot", "the support must span the plane")
    planes = lh.planes
    vertex_of = {p.cell: (-p.slope[0], -p.slope[1]) for p in planes}
    edge_owners: dict[frozenset, list[frozenset]] = {}
    for p in planes:
        for face in hull.cell_faces(lh, p.cell):
            if len(face) >= 2:
                edge_owners.setdefault(face, []).append(p.cell)
    segments = []
    rays = []
    for face, owners in sorted(edge_owners.items(), key=lambda kv: sorted(kv[0])):
        if len(owners) == 2:
            a, b = vertex_of[owners[0]], vertex_of[owners[1]]
            segments.append(tuple(sorted((a, b))))
        else:
            assert len(owners) == 1, "an edge belongs to at most two cells"
            cell = owners[0]
            rays.append((vertex_of[cell], _outward_ray(face, cell)))
    vertices = tuple(sorted(vertex_of.values()))
    return CurveSkeleton(vertices, tuple(sorted(set(segments))), tuple(sorted(rays)))


def _outward_ray(face: frozenset, cell: frozenset) -> tuple[int, int]:
    """Negated primitive outward normal of a boundary edge of a cell."""
    pts = sorted(face)
    a, b = pts[0], pts[-1]
    dx, dy = b[0] - a[0], b[1] - a[1]
    g = gcd(abs(dx), abs(dy))
    dx, dy = dx // g, dy // g
    normal = (dy, -dx)
    cx = Fraction(sum(p[0] for p in cell), len(cell))
    cy = Fraction(sum(p[1] for p in cell), len(cell))
    inward = (cx - a[0]) * normal[0] + (cy - a[1]) * normal[1]
    assert inward != 0, "cell centroid cannot sit on its own edge"
    if inward > 0:
        normal = (-normal[0], -normal[1])
    return (-normal[0], -normal[1])


def _ray_endpoint(start, direction, box) -> tuple[Fraction, Fraction]:
    """A point on the ray guaranteed to lie outside the viewport.

    Matplotlib clips the drawn line to the axes, so overshooting is fine;
    primitive integer directions make one unit of t travel at least one
    unit of distance.
    """
    x0, y0, x1, y1 = box
    span = (
        (x1 - x0)
        + (y1 - y0)
        + abs(start[0] - x0)
        + abs(start[1] - y0)
        + abs(start[0] - x1)
        + abs(start[1] - y1)
        + 1
    )
    return (start[0] + span * direction[0], start[1] + span * direction[1])


def render(
    f: TropPolynomial,
    out_path: str,
    conditions: Optional[Sequence[PointCondition]] = None,
    show_dual: bool = False,
    viewport: Optional[tuple[Fraction, Fraction, Fraction, Fraction]] = None,
) -> None:
    """Draw the curve (and optionally its dual subdivision) into an SVG file."""
    import matplotlib

    matplotlib.use("svg")
    import matplotlib.pyplot as plt

    skel = curve_skeleton(f)
    if viewport is None:
        xs = [v[0] for v in skel.vertices]
        ys = [v[1] for v in skel.vertices]
        pad = Fraction(2)
        viewport = (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)
    box = viewport

    weighting: Optional[Weighting] = None
    if conditions:
        try:
            weighting = weighting_from_points(f, conditions)
        except DomainError:
            weighting = None

    with plt.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
        fig = plt.figure(figsize=(6.0, 6.0))
        ax = fig.add_axes([0.08, 0.08, 0.84, 0.84])
        for a, b in skel.segments:
            ax.plot([float(a[0]), float(b[0])], [float(a[1]), float(b[1])], "-", color="black", lw=1.5)
        for start, direction in skel.rays:
            end = _ray_endpoint(start, direction, box)
            ax.plot(
                [float(start[0]), float(end[0])],
                [float(start[1]), float(end[1])],
                "-",
                color="black",
                lw=1.5,
            )
        if conditions:
            for cond in conditions:
                ax.plot([float(cond.point[0])], [float(cond.point[1])], "o", color="black", ms=5)
                ax.annotate(
                    str(cond.mult),
                    (float(cond.point[0]), float(cond.point[1])),
                    textcoords="offset points",
                    xytext=(4, 4),
                    fontsize=9,
                )
        ax.set_xlim(float(box[0]), float(box[2]))
        ax.set_ylim(float(box[1]), float(box[3]))
        ax.set_aspect("equal")

        if show_dual:
            sub = dual_complex(f)
            pts = sub.polytope.lattice_points
            inset = fig.add_axes([0.70, 0.70, 0.24, 0.24])
            # inverted axes: the subdivision superimposes on the curve
            inv = {i: (-pts[i][0], -pts[i][1]) for i in range(len(pts))}
            for cell in sub.cells:
                if weighting and len(cell) >= 3 and weighting.weight(cell) == len(cell) - 1:
                    poly = hull.convex_polygon_hull(
                        [tuple(map(Fraction, inv[i])) for i in cell]
                    )
                    inset.fill(
                        [float(p[0]) for p in poly],
                        [float(p[1]) for p in poly],
                        color="0.8",
                        zorder=0,
                    )
            for cell in sub.cells:
                if len(cell) < 2 or sub.cell_dim(cell) != 1:
                    continue
                ends = sorted(inv[i] for i in cell)
                a, b = ends[0], ends[-1]
                wide = weighting is not None and weighting.weight(cell) > 0
                inset.plot(
                    [a[0], b[0]], [a[1], b[1]],
                    "-",
                    color="black",
                    lw=2.5 if wide else 0.8,
                )
            for i, _ in enumerate(pts):
                inset.plot([inv[i][0]], [inv[i][1]], ".", color="black", ms=3)
            inset.set_aspect("equal")
            inset.set_xticks([])
            inset.set_yticks([])
        fig.savefig(out_path, format="svg", metadata={"Date": None})
        plt.close(fig)
