"""Pictures of the Alexander and Thurston unit balls in rank 2.

The SVG writer is hand-rolled so output is byte-identical across runs and
library versions; the matplotlib figure is for reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .certificates import encode_number
from .family import GluedManifold, LinkDatum, alexander_face, fibered_region, link_classes, link_face
from .norms import unit_ball
from .polytope import Face, Point, Polytope, as_point, dot, hull

SCALE = 400
HALF_WIDTH = 500


@dataclass
class BallPicture:
    title: str
    ball: Polytope
    face: Face | None = None
    fibered: tuple[Point, ...] = ()
    gaps: list[tuple[Point, Point]] = field(default_factory=list)


def _gaps(face: Face, region: Sequence[Point]) -> list[tuple[Point, Point]]:
    """Pieces of a face edge not covered by the fibered region."""
    a, b = face.vertices[0], face.vertices[-1]
    direction = tuple(y - x for x, y in zip(a, b))

    def param(p):
        return dot(tuple(y - x for x, y in zip(a, p)), direction)

    ends = sorted(region, key=param)
    out = []
    if param(ends[0]) > 0:
        out.append((a, ends[0]))
    if param(ends[-1]) < param(b):
        out.append((ends[-1], b))
    return out


def picture_from_model(M: GluedManifold) -> BallPicture:
    ball = unit_ball(M.abasic)
    face = alexander_face(M)
    pic = BallPicture(f"N(K1,K2), g = {M.genera[0]}, {M.genera[1]}", ball, face)
    if face is not None:
        region = fibered_region(M, face)
        pic.fibered = region.vertices
        if M.link.strict_outside:
            pic.gaps = _gaps(face, region.vertices)
    return pic


def picture_from_link(D: LinkDatum) -> BallPicture:
    ball = unit_ball(link_classes(D))
    face = link_face(D)
    pic = BallPicture(f"link exterior {D.name}".strip(), ball, face)
    if face is not None:
        K = as_point(D.face_vertex)
        pic.fibered = tuple(sorted(tuple(x / dot(K, g) for x in g) for g in D.fibered_cone.generators))
        if D.strict_outside:
            pic.gaps = _gaps(face, pic.fibered)
    return pic


def _polygon_order(points: Sequence[Point]) -> list[Point]:
    """Counterclockwise order of convex-position points around their centroid."""
    pts = list(points)
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: (math.atan2(float(p[1] - cy), float(p[0] - cx)), p))


def _drawable_region(ball: Polytope) -> list[Point]:
    """Vertices of the ball, with lineality directions stretched past the frame."""
    if ball.compact:
        return list(ball.vertices)
    reach = Fraction(4 * HALF_WIDTH, SCALE)
    pts = []
    for v in ball.vertices:
        for signs in _sign_patterns(len(ball.lineality)):
            p = list(v)
            for s, d in zip(signs, ball.lineality):
                norm = max(abs(x) for x in d)
                p = [x + s * reach * y / norm for x, y in zip(p, d)]
            pts.append(tuple(p))
    return list(hull(pts).vertices)


def _sign_patterns(n: int):
    if n == 0:
        yield ()
        return
    for rest in _sign_patterns(n - 1):
        yield rest + (1,)
        yield rest + (-1,)


def _fmt(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{float(x):.3f}"


def _xy(p: Point) -> str:
    return f"{_fmt(SCALE * p[0])},{_fmt(-SCALE * p[1])}"


def _label(p: Point) -> str:
    return f"({encode_number(p[0])}, {encode_number(p[1])})"


def render_svg(pic: BallPicture, norm: str = "both") -> str:
    """Deterministic SVG: 400 units per norm unit, y axis pointing up."""
    if pic.ball.rank != 2:
        raise ValueError("only rank-2 balls can be drawn")
    show_a = norm in ("alexander", "both")
    show_t = norm in ("thurston", "both")
    w = HALF_WIDTH
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{-w} {-w} {2 * w} {2 * w}" '
        f'width="{2 * w}" height="{2 * w}">',
        "<defs>",
        '<pattern id="hatch" patternUnits="userSpaceOnUse" width="8" height="8" '
        'patternTransform="rotate(45)">',
        '<line x1="0" y1="0" x2="0" y2="8" stroke="#b03030" stroke-width="2"/>',
        "</pattern>",
        "</defs>",
        f'<title>{pic.title}</title>',
        f'<line x1="{-w}" y1="0" x2="{w}" y2="0" stroke="#999999" stroke-width="1"/>',
        f'<line x1="0" y1="{-w}" x2="0" y2="{w}" stroke="#999999" stroke-width="1"/>',
    ]
    if show_a:
        region = _polygon_order(_drawable_region(pic.ball))
        pts = " ".join(_xy(p) for p in region)
        lines.append(
            f'<polygon id="alexander-ball" points="{pts}" fill="#dde8f6" '
            'stroke="#1f4e8c" stroke-width="2"/>'
        )
    origin = (Fraction(0), Fraction(0))
    if show_t and pic.fibered:
        if len(pic.fibered) > 1:
            pts = " ".join(_xy(p) for p in (origin,) + tuple(pic.fibered))
            lines.append(f'<polygon id="thurston-exact" points="{pts}" fill="#cfe8cf" stroke="none"/>')
            a, b = pic.fibered[0], pic.fibered[-1]
            lines.append(
                f'<line id="fibered-face" x1="{_fmt(SCALE * a[0])}" y1="{_fmt(-SCALE * a[1])}" '
                f'x2="{_fmt(SCALE * b[0])}" y2="{_fmt(-SCALE * b[1])}" stroke="#1d7a1d" stroke-width="5"/>'
            )
        for i, (a, b) in enumerate(pic.gaps):
            pts = " ".join(_xy(p) for p in (origin, a, b))
            lines.append(
                f'<polygon id="thurston-strict-{i}" points="{pts}" fill="url(#hatch)" '
                'stroke="#b03030" stroke-width="1"/>'
            )
    labelled = []
    if show_a and pic.ball.compact:
        labelled.extend(pic.ball.vertices)
    if show_t:
        labelled.extend(pic.fibered)
    for p in sorted(set(labelled)):
        x, y = SCALE * p[0], -SCALE * p[1]
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#000000"/>')
        lines.append(
            f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}" font-family="monospace" '
            f'font-size="12">{_label(p)}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(pic: BallPicture, path: str | Path, norm: str = "both") -> None:
    Path(path).write_text(render_svg(pic, norm), encoding="utf-8")


def plot_balls(pic: BallPicture, path: str | Path, norm: str = "both") -> None:
    """Render the same picture with matplotlib (PNG/PDF by extension)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Polygon

    fig, ax = plt.subplots(figsize=(6, 6))
    if norm in ("alexander", "both"):
        region = _polygon_order(_drawable_region(pic.ball))
        ax.add_patch(Polygon([(float(x), float(y)) for x, y in region], closed=True,
                             facecolor="#dde8f6", edgecolor="#1f4e8c", lw=1.5,
                             label="Alexander unit ball"))
        if pic.ball.compact:
            for x, y in pic.ball.vertices:
                ax.annotate(_label((x, y)), (float(x), float(y)), fontsize=8,
                            xytext=(4, 4), textcoords="offset points")
    if norm in ("thurston", "both") and len(pic.fibered) > 1:
        cone = [(0.0, 0.0)] + [(float(x), float(y)) for x, y in pic.fibered]
        ax.add_patch(Polygon(cone, closed=True, facecolor="#cfe8cf", edgecolor="none",
                             label="Thurston = Alexander"))
        xs, ys = zip(*[(float(x), float(y)) for x, y in pic.fibered])
        ax.plot(xs, ys, color="#1d7a1d", lw=3, label="fibered face")
        for a, b in pic.gaps:
            tri = [(0.0, 0.0), (float(a[0]), float(a[1])), (float(b[0]), float(b[1]))]
            ax.add_patch(Polygon(tri, closed=True, fill=False, hatch="//",
                                 edgecolor="#b03030", lw=0.8))
    extent = max(float(abs(x)) for v in pic.ball.vertices for x in v) * 1.3 or 1.0
    ax.set_xlim(-extent, extent)
    ax.set_ylim(-extent, extent)
    ax.axhline(0, color="#999999", lw=0.5)
    ax.axvline(0, color="#999999", lw=0.5)
    ax.set_aspect("equal")
    ax.set_xlabel("m1")
    ax.set_ylabel("m2")
    ax.set_title(pic.title)
    ax.legend(loc="lower left", fontsize=8)
    fig.savefig(path, dpi=100, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
