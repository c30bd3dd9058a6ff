"""Exact rational convex geometry in rank <= 3.

Everything is computed with ``fractions.Fraction`` (or plain ints after
clearing denominators), so vertex sets, faces and cone memberships are exact.
Orderings are lexicographic throughout.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

Point = tuple[Fraction, ...]

MAX_RANK = 3


def as_point(coords: Iterable) -> Point:
    return tuple(Fraction(c) for c in coords)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _scale(v: Sequence, s) -> tuple:
    return tuple(s * x for x in v)


def _is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


# --- exact linear algebra ---------------------------------------------------


def _rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_of(vectors: Sequence[Sequence]) -> int:
    return len(_rref(vectors)[1]) if vectors else 0


def row_space_basis(vectors: Sequence[Sequence]) -> list[Point]:
    rows, _ = _rref(vectors)
    return [tuple(r) for r in rows]


def nullspace(rows: Sequence[Sequence], n: int) -> list[Point]:
    """Basis of ``{x in Q^n : r.x = 0 for all rows r}``, deterministic."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, pivots = _rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(columns: Sequence[Sequence], target: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``sum_j x_j * columns[j] = target`` for linearly independent columns.

    Returns None when the system is inconsistent.
    """
    k = len(columns)
    n = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    red, pivots = _rref(aug)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("columns are linearly dependent")
    x = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        x[p] = row[k]
    return tuple(x)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector."""
    v = [Fraction(x) for x in v]
    den = reduce(math.lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(math.gcd, ints, 0)
    return tuple(i // g for i in ints) if g else tuple(ints)


def _integerize(points: Sequence[Point]) -> tuple[list[tuple[int, ...]], int]:
    den = reduce(math.lcm, (x.denominator for p in points for x in p), 1)
    return [tuple(int(x * den) for x in p) for p in points], den


def _cross(a: Sequence, b: Sequence) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


# --- affine structure --------------------------------------------------------


def affine_dimension(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank_of([_sub(p, base) for p in points[1:]])


def _direction_basis(points: Sequence[Sequence]) -> list[Point]:
    base = points[0]
    return row_space_basis([_sub(p, base) for p in points[1:]])


def _injective_coordinates(points: Sequence[Sequence], dim: int) -> tuple[int, ...]:
    """Coordinate indices whose projection is injective on the affine hull."""
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    n = len(base)
    for idx in itertools.combinations(range(n), dim):
        if rank_of([[d[i] for i in idx] for d in diffs]) == dim:
            return idx
    raise AssertionError("no injective projection found")


def _relative_facets(points: Sequence[Point]) -> list[tuple[Point, Fraction, frozenset[Point]]]:
    """Facets of conv(points) relative to its affine hull.

    Each facet is ``(c, b, members)`` with ``c`` a covector in the direction
    space of the hull, ``c.x <= b`` on all points and equality exactly on
    ``members``.  Brute force over affinely independent subsets.
    """
    pts = sorted(set(points))
    k = affine_dimension(pts)
    if k <= 0:
        return []
    directions = _direction_basis(pts)
    found: dict[frozenset[Point], tuple[Point, Fraction]] = {}
    for subset in itertools.combinations(pts, k):
        diffs = [_sub(p, subset[0]) for p in subset[1:]]
        if diffs and rank_of(diffs) < k - 1:
            continue
        gram = [[dot(d, u) for u in directions] for d in diffs]
        beta = nullspace(gram, k)
        if len(beta) != 1:
            continue
        c = tuple(sum(b * u[i] for b, u in zip(beta[0], directions)) for i in range(len(pts[0])))
        level = dot(c, subset[0])
        values = [dot(c, p) for p in pts]
        if all(v <= level for v in values):
            pass
        elif all(v >= level for v in values):
            c, level, values = _scale(c, -1), -level, [-v for v in values]
        else:
            continue
        members = frozenset(p for p, v in zip(pts, values) if v == level)
        if members not in found:
            found[members] = (c, level)
    return [(c, b, m) for m, (c, b) in sorted(found.items(), key=lambda kv: sorted(kv[0]))]


def _monotone_chain(pts: list[tuple[int, int]]) -> list[int]:
    """Indices of strict convex-hull vertices of 2D integer points."""
    order = sorted(range(len(pts)), key=lambda i: pts[i])

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(seq):
        chain: list[int] = []
        for i in seq:
            while len(chain) >= 2 and turn(pts[chain[-2]], pts[chain[-1]], pts[i]) <= 0:
                chain.pop()
            chain.append(i)
        return chain

    lower = half(order)
    upper = half(order[::-1])
    return lower[:-1] + upper[:-1]


def _hull_vertices(points: list[Point]) -> tuple[list[Point], int]:
    pts = sorted(set(points))
    dim = affine_dimension(pts)
    if dim == 0:
        return pts, 0
    ints, _ = _integerize(pts)
    if dim == 1:
        d = _sub(ints[1], ints[0])
        keyed = sorted(range(len(pts)), key=lambda i: dot(d, ints[i]))
        return sorted({pts[keyed[0]], pts[keyed[-1]]}), 1
    if dim == 2:
        idx = _injective_coordinates(ints, 2)
        proj = [(p[idx[0]], p[idx[1]]) for p in ints]
        chosen = _monotone_chain(proj)
        return sorted(pts[i] for i in chosen), 2
    # full dimensional in rank 3: a point is a vertex iff the normals of the
    # supporting planes through it have rank 3
    planes: dict[frozenset[int], tuple[int, ...]] = {}
    n = len(ints)
    for a, b, c in itertools.combinations(range(n), 3):
        normal = _cross(_sub(ints[b], ints[a]), _sub(ints[c], ints[a]))
        if _is_zero(normal):
            continue
        level = dot(normal, ints[a])
        values = [dot(normal, p) for p in ints]
        if all(v <= level for v in values) or all(v >= level for v in values):
            members = frozenset(i for i, v in enumerate(values) if v == level)
            planes.setdefault(members, normal)
    verts = []
    for i in range(n):
        normals = [nv for m, nv in planes.items() if i in m]
        if rank_of(normals) == 3:
            verts.append(pts[i])
    return sorted(verts), 3


# --- polytopes ----------------------------------------------------------------


@dataclass(frozen=True)
class Polytope:
    """conv(vertices) + span(lineality).  Compact iff lineality is empty."""

    rank: int
    vertices: tuple[Point, ...]
    dimension: int
    lineality: tuple[Point, ...] = ()

    @property
    def compact(self) -> bool:
        return not self.lineality

    def is_symmetric(self) -> bool:
        vs = set(self.vertices)
        return all(tuple(-x for x in v) in vs for v in vs)

    def to_json(self) -> dict:
        def enc(p):
            return [[x.numerator, x.denominator] for x in p]

        return {
            "rank": self.rank,
            "vertices": [enc(v) for v in self.vertices],
            "lineality": [enc(v) for v in self.lineality],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polytope":
        def dec(p):
            return tuple(Fraction(n, d) for n, d in p)

        P = hull([dec(v) for v in data["vertices"]])
        lin = tuple(dec(v) for v in data.get("lineality", []))
        return _with_lineality(P, lin)


def _with_lineality(P: Polytope, lineality: Sequence[Point]) -> Polytope:
    if not lineality:
        return P
    lin = tuple(row_space_basis(lineality))
    dim = rank_of([_sub(v, P.vertices[0]) for v in P.vertices[1:]] + list(lin))
    return Polytope(P.rank, P.vertices, dim, lin)


def hull(points: Iterable[Iterable]) -> Polytope:
    """Convex hull of a finite point set; vertices are the extreme points."""
    pts = [as_point(p) for p in points]
    if not pts:
        raise ValueError("hull of an empty point set")
    rank = len(pts[0])
    if any(len(p) != rank for p in pts):
        raise ValueError("points have inconsistent rank")
    if rank > MAX_RANK:
        raise ValueError(f"rank {rank} exceeds supported maximum {MAX_RANK}")
    verts, dim = _hull_vertices(pts)
    return Polytope(rank, tuple(verts), dim)


def support_value(P: Polytope, phi: Sequence) -> Fraction | float:
    """max over P of <phi, x>; ``math.inf`` when unbounded along the lineality."""
    if any(dot(phi, d) != 0 for d in P.lineality):
        return math.inf
    return max(Fraction(dot(phi, v)) for v in P.vertices)


def caratheodory(P: Polytope, x: Sequence) -> list[tuple[Fraction, Point]] | None:
    """Express ``x`` as a convex combination of at most dim+1 vertices.

    Returns ``[(weight, vertex), ...]`` or None when ``x`` is outside the
    compact polytope.
    """
    if not P.compact:
        raise ValueError("caratheodory witnesses need a compact polytope")
    x = as_point(x)
    verts = P.vertices
    for size in range(1, P.dimension + 2):
        for subset in itertools.combinations(verts, size):
            if size > 1 and rank_of([_sub(v, subset[0]) for v in subset[1:]]) < size - 1:
                continue
            cols = [tuple(v) + (1,) for v in subset]
            w = solve(cols, tuple(x) + (1,))
            if w is not None and all(c >= 0 for c in w):
                return [(c, v) for c, v in zip(w, subset) if c != 0] or [(Fraction(1), subset[0])]
    return None


def contains(P: Polytope, x: Sequence) -> bool:
    return caratheodory(P, x) is not None


def _orthogonal_complement(basis: Sequence[Point], n: int) -> list[Point]:
    return nullspace(list(basis), n)


def dual_ball(P: Polytope) -> Polytope:
    """The polar body ``{phi : <phi, x> <= 1 for all x in P}`` of a symmetric P.

    A lower-dimensional P yields a noncompact result whose lineality is the
    orthogonal complement of span(P).
    """
    if not P.is_symmetric():
        raise ValueError("dual_ball requires an origin-symmetric polytope")
    n = P.rank
    span = row_space_basis(list(P.vertices) + list(P.lineality))
    if P.lineality:
        if any(dot(v, d) != 0 for v in P.vertices for d in P.lineality):
            raise ValueError("compact part must be orthogonal to the lineality space")
        compact_span = row_space_basis(list(P.vertices))
    else:
        compact_span = span
    lineality = _orthogonal_complement(span, n) if span else [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ]
    origin = (Fraction(0),) * n
    k = len(compact_span)
    if k == 0:
        return Polytope(n, (origin,), len(lineality), tuple(lineality))
    duals: set[Point] = set()
    for subset in itertools.combinations(P.vertices, k):
        gram = [[dot(w, u) for u in compact_span] for w in subset]
        if rank_of(gram) < k:
            continue
        beta = solve([[row[j] for row in gram] for j in range(k)], [1] * k)
        phi = tuple(sum(b * u[i] for b, u in zip(beta, compact_span)) for i in range(n))
        if all(dot(phi, v) <= 1 for v in P.vertices):
            duals.add(phi)
    Q = hull(duals)
    return _with_lineality(Q, lineality)


# --- faces ----------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A face of a compact polytope with a supporting functional.

    ``functional . x <= offset`` on the parent polytope with equality exactly
    on this face.  For a polytope with the origin in its interior the
    functional is scaled to offset 1, so a facet's functional is its dual
    vertex.
    """

    vertices: tuple[Point, ...]
    functional: Point
    offset: Fraction
    dimension: int
    dual_vertex: Point | None = None

    @property
    def rank(self) -> int:
        return len(self.vertices[0])


def _origin_interior(P: Polytope, facets) -> bool:
    return P.dimension == P.rank and all(b > 0 for _, b, _ in facets)


def _normalize_functional(c: Sequence, b: Fraction, unit_offset: bool) -> tuple[Point, Fraction]:
    if unit_offset:
        return tuple(Fraction(x) / b for x in c), Fraction(1)
    prim = primitive(c)
    ratio = next(Fraction(p) / x for p, x in zip(prim, c) if x != 0)
    return tuple(Fraction(p) for p in prim), b * ratio


def faces(P: Polytope) -> list[Face]:
    """All nonempty proper faces of a compact polytope (the point itself for a point)."""
    if not P.compact:
        raise ValueError("face enumeration needs a compact polytope")
    if P.dimension == 0:
        zero = (Fraction(0),) * P.rank
        return [Face(P.vertices, zero, Fraction(0), 0)]
    facets = _relative_facets(list(P.vertices))
    unit = _origin_interior(P, facets)
    # every face is an intersection of facets; its functional is the sum of
    # the facet functionals (maximized exactly on the intersection)
    scaled = [(tuple(Fraction(x) / b for x in c) if unit else c, Fraction(1) if unit else b, m)
              for c, b, m in facets]
    known = {f[2] for f in scaled}
    frontier = set(known)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in list(known):
                meet = a & b
                if meet and meet not in known:
                    fresh.add(meet)
        known |= fresh
        frontier = fresh
    out = []
    for members in known:
        active = [i for i, f in enumerate(scaled) if members <= f[2]]
        c = tuple(sum(scaled[i][0][j] for i in active) for j in range(P.rank))
        b = sum(scaled[i][1] for i in active)
        functional, offset = _normalize_functional(c, b, unit)
        verts = tuple(sorted(members))
        dim = affine_dimension(list(verts))
        dual = functional if unit and dim == P.dimension - 1 else None
        out.append(Face(verts, functional, offset, dim, dual))
    out.sort(key=lambda f: (f.dimension, f.vertices))
    return out


def facet_dual_to(P: Polytope, covector: Sequence) -> Face | None:
    """The face of P maximizing ``covector`` if it is a top-dimensional face."""
    covector = as_point(covector)
    value = support_value(P, covector)
    members = tuple(v for v in P.vertices if dot(covector, v) == value)
    if affine_dimension(list(members)) != P.dimension - 1:
        return None
    for f in faces(P):
        if f.vertices == members:
            return f
    return None


# --- cones ------------------------------------------------------------------------


class Mode(str, enum.Enum):
    OPEN = "open"
    CLOSED = "closed"


@dataclass(frozen=True)
class Cone:
    """Convex cone generated by finitely many nonzero rays."""

    generators: tuple[Point, ...]
    _facets: tuple[Point, ...] = field(default=(), compare=False, repr=False)

    def __init__(self, generators: Iterable[Iterable]):
        gens = tuple(sorted({as_point(g) for g in generators}))
        if not gens:
            raise ValueError("a cone needs at least one generator")
        if any(_is_zero(g) for g in gens):
            raise ValueError("cone generators must be nonzero")
        if len({len(g) for g in gens}) != 1:
            raise ValueError("cone generators have inconsistent rank")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_facets", tuple(_cone_facets(gens)))

    @property
    def rank(self) -> int:
        return len(self.generators[0])

    @property
    def dimension(self) -> int:
        return rank_of(self.generators)

    def contains(self, phi: Sequence, mode: Mode | str = Mode.CLOSED) -> bool:
        return cone_contains(self, phi, mode)

    def to_json(self) -> list:
        return [[_json_number(x) for x in g] for g in self.generators]


def _json_number(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cone_facets(gens: Sequence[Point]) -> list[Point]:
    """Inward facet normals of the cone, taken inside its linear span."""
    span = row_space_basis(gens)
    k = len(span)
    found: set[Point] = set()
    for subset in itertools.combinations(gens, k - 1):
        if subset and rank_of(subset) < k - 1:
            continue
        gram = [[dot(g, u) for u in span] for g in subset]
        beta = nullspace(gram, k)
        if len(beta) != 1:
            continue
        c = tuple(sum(b * u[i] for b, u in zip(beta[0], span)) for i in range(len(gens[0])))
        values = [dot(c, g) for g in gens]
        if all(v >= 0 for v in values):
            pass
        elif all(v <= 0 for v in values):
            c = _scale(c, -1)
        else:
            continue
        found.add(tuple(Fraction(x) for x in primitive(c)))
    return sorted(found)


def cone_over(face: Face) -> Cone:
    if any(_is_zero(v) for v in face.vertices):
        raise ValueError("cone over a face containing the origin")
    return Cone(face.vertices)


def conic_combination(C: Cone, phi: Sequence) -> list[tuple[Fraction, Point]] | None:
    """Nonnegative coefficients on linearly independent generators, or None."""
    phi = as_point(phi)
    if _is_zero(phi):
        return []
    for size in range(1, C.dimension + 1):
        for subset in itertools.combinations(C.generators, size):
            if rank_of(subset) < size:
                continue
            w = solve(subset, phi)
            if w is not None and all(c >= 0 for c in w):
                return list(zip(w, subset))
    return None


def cone_contains(C: Cone, phi: Sequence, mode: Mode | str = Mode.CLOSED) -> bool:
    """Exact membership; OPEN means the relative interior of the cone."""
    mode = Mode(mode)
    phi = as_point(phi)
    if len(phi) != C.rank:
        raise ValueError("rank mismatch between cone and query")
    if conic_combination(C, phi) is None:
        return False
    if mode is Mode.CLOSED:
        return True
    if _is_zero(phi):
        return False
    return all(dot(c, phi) > 0 for c in C._facets)


# --- face comparison ------------------------------------------------------------------


class Containment(str, enum.Enum):
    STRICTLY_CONTAINED = "strictly_contained"
    EQUAL = "equal"
    CONTAINED = "contained"
    CONTAINS = "contains"
    OVERLAPPING = "overlapping"
    DISJOINT = "disjoint"


def face_contained(F1: Face, F2: Face) -> Containment:
    """Compare two faces as point sets.

    STRICTLY_CONTAINED: F1 is a proper subset of F2 of the same dimension, so
    F2 minus F1 has nonempty relative interior.  CONTAINED: a proper subset
    of lower dimension.
    """
    if F1.rank != F2.rank:
        raise ValueError("faces live in different ranks")
    P1, P2 = hull(F1.vertices), hull(F2.vertices)
    one_in_two = all(contains(P2, v) for v in P1.vertices)
    two_in_one = all(contains(P1, v) for v in P2.vertices)
    if one_in_two and two_in_one:
        return Containment.EQUAL
    if one_in_two:
        if P1.dimension == P2.dimension:
            return Containment.STRICTLY_CONTAINED
        return Containment.CONTAINED
    if two_in_one:
        return Containment.CONTAINS
    differences = hull(_sub(a, b) for a in P1.vertices for b in P2.vertices)
    if contains(differences, (0,) * F1.rank):
        return Containment.OVERLAPPING
    return Containment.DISJOINT


def segment_face(a: Sequence, b: Sequence, functional: Sequence, offset=1) -> Face:
    """A Face built from explicit endpoints (used for regions of a sphere)."""
    verts = tuple(sorted({as_point(a), as_point(b)}))
    return Face(verts, as_point(functional), Fraction(offset), affine_dimension(list(verts)))
