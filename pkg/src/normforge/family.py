"""Closed manifolds N(K1, K2) obtained by gluing two fibered knot exteriors
to the exterior of a 2-component link with linking number zero.

Everything here is specialized to that situation: H_1 = Z^2 in the meridian
basis, ord(H_1) = 1, and the link's Thurston norm known only on a declared
fibered cone.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence

from .certificates import Certificate, Verdict, encode_vector
from .laurent import (
    LaurentPoly,
    bounding_box,
    divide_by_binomial,
    embed_univariate,
    evaluate_at_ones,
    multiply,
    symmetrize,
)
from .norms import (
    ClassSet,
    NormBound,
    PolyhedralNorm,
    ThurstonModel,
    alexander_norm,
    mcmullen_verify,
    thurston_eval,
    unit_ball,
)
from .polytope import (
    Cone,
    Containment,
    Face,
    as_point,
    cone_over,
    dot,
    face_contained,
    facet_dual_to,
    hull,
)
from .swdata import SWFunction, abasic, from_alexander


class ModelError(ValueError):
    """Input data that does not describe a valid knot, link or glued model."""


# --- knots and links --------------------------------------------------------------


@dataclass(frozen=True)
class KnotDatum:
    genus: int
    alexander: LaurentPoly
    fibered: bool = True
    name: str = ""

    def to_json(self) -> dict:
        out = {"genus": self.genus, "fibered": self.fibered, "alexander": self.alexander.to_json()}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> "KnotDatum":
        return cls(
            int(data["genus"]),
            LaurentPoly.from_json(data["alexander"]),
            bool(data["fibered"]),
            data.get("name", ""),
        )


def validate_knot(K: KnotDatum) -> Verdict:
    """Check the invariants expected of a fibered knot's Alexander polynomial."""
    failures = []
    delta = K.alexander
    if K.genus < 1:
        failures.append(f"genus must be positive, got {K.genus}")
    if delta.rank != 1:
        return Verdict(False, tuple(failures + ["alexander polynomial must have rank 1"]))
    if delta.is_zero():
        return Verdict(False, tuple(failures + ["alexander polynomial is zero"]))
    (lo,), (hi,) = bounding_box(delta)
    if hi - lo != 2 * K.genus:
        failures.append(f"degree span {hi - lo} != 2*genus = {2 * K.genus}")
    coeffs = [delta.coefficient((e,)) for e in range(lo, hi + 1)]
    if coeffs != coeffs[::-1]:
        failures.append("alexander polynomial is not symmetric")
    if abs(evaluate_at_ones(delta)) != 1:
        failures.append(f"alexander polynomial at 1 is {evaluate_at_ones(delta)}, not +-1")
    if K.fibered and (abs(coeffs[0]) != 1 or abs(coeffs[-1]) != 1):
        failures.append("fibered knot must have monic alexander polynomial")
    return Verdict(not failures, tuple(failures))


@dataclass(frozen=True)
class LinkDatum:
    """A 2-component link exterior with a known fibered cone.

    ``face_vertex`` is the doubled class dual to the Alexander face that
    contains the fibered face, e.g. (1, -1) for t1 t2^-1.
    """

    alexander: LaurentPoly
    fibered_cone: Cone
    face_vertex: tuple[int, ...]
    strict_outside: bool = True
    name: str = ""

    def to_json(self) -> dict:
        out = {
            "alexander": self.alexander.to_json(),
            "fibered_cone": self.fibered_cone.to_json(),
            "face_vertex": list(self.face_vertex),
            "strict_outside": self.strict_outside,
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LinkDatum":
        return cls(
            LaurentPoly.from_json(data["alexander"]),
            Cone(data["fibered_cone"]),
            tuple(int(x) for x in data["face_vertex"]),
            bool(data["strict_outside"]),
            data.get("name", ""),
        )


def link_classes(D: LinkDatum) -> ClassSet:
    return abasic(from_alexander(symmetrize(D.alexander)))


def link_face(D: LinkDatum) -> Face | None:
    return facet_dual_to(unit_ball(link_classes(D)), D.face_vertex)


def validate_link(D: LinkDatum) -> Verdict:
    failures = []
    if D.alexander.rank != 2 or D.fibered_cone.rank != 2 or len(D.face_vertex) != 2:
        return Verdict(False, ("only 2-component links (rank 2) are supported",))
    if D.alexander.is_zero():
        return Verdict(False, ("link alexander polynomial is zero",))
    lk = evaluate_at_ones(D.alexander)
    if lk != 0:
        failures.append(f"linking number {lk} != 0; H_1 of the glued manifold is not Z^2")
    face = link_face(D)
    if face is None:
        failures.append(f"face_vertex {D.face_vertex} is not dual to a top-dimensional face")
    else:
        face_cone = cone_over(face)
        outside = [g for g in D.fibered_cone.generators if not face_cone.contains(g)]
        if outside:
            failures.append(f"fibered cone generator {encode_vector(outside[0])} outside the face cone")
    return Verdict(not failures, tuple(failures))


def link_thurston_model(D: LinkDatum) -> ThurstonModel:
    """Thurston norm of the link exterior: equal to the Alexander norm on the fibered cone."""
    exact = ((D.fibered_cone, PolyhedralNorm.from_classes(link_classes(D))),)
    face = link_face(D)
    strict = cone_over(face) if D.strict_outside and face is not None else None
    return ThurstonModel(2, exact, strict)


# --- gluing ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GluedManifold:
    link: LinkDatum
    knots: tuple[KnotDatum, KnotDatum]
    alexander: LaurentPoly
    abasic: ClassSet
    canonical: tuple[int, ...]
    fibered_cone: Cone
    thurston: ThurstonModel

    @property
    def genera(self) -> tuple[int, int]:
        return (self.knots[0].genus, self.knots[1].genus)

    def sw_function(self) -> SWFunction:
        return from_alexander(symmetrize(self.alexander)).oriented(self.canonical)

    def to_json(self) -> dict:
        return {
            "link": self.link.to_json(),
            "knots": [k.to_json() for k in self.knots],
            "alexander": self.alexander.to_json(),
            "abasic": self.abasic.to_json(),
            "canonical": list(self.canonical),
            "fibered_cone": self.fibered_cone.to_json(),
            "thurston": self.thurston.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "GluedManifold":
        """Load a model as stored; consistency is checked by :func:`verify_theorem`."""
        knots = tuple(KnotDatum.from_json(k) for k in data["knots"])
        if len(knots) != 2:
            raise ModelError("a glued model needs exactly two knots")
        return cls(
            LinkDatum.from_json(data["link"]),
            knots,
            LaurentPoly.from_json(data["alexander"]),
            ClassSet(2, data["abasic"]),
            tuple(int(x) for x in data["canonical"]),
            Cone(data["fibered_cone"]),
            ThurstonModel.from_json(data["thurston"]),
        )


def gluing_polynomial(D: LinkDatum, K1: KnotDatum, K2: KnotDatum) -> LaurentPoly:
    """Delta_D * Delta_K1(t1)/(t1 - 1) * Delta_K2(t2)/(t2 - 1), divided exactly."""
    prod = multiply(
        D.alexander,
        multiply(embed_univariate(K1.alexander, 0, 2), embed_univariate(K2.alexander, 1, 2)),
    )
    try:
        return divide_by_binomial(divide_by_binomial(prod, 0), 1)
    except ValueError as exc:
        raise ModelError(f"gluing formula does not divide exactly: {exc}") from None


def _interior_ray(C: Cone) -> tuple[Fraction, ...]:
    return tuple(sum(g[i] for g in C.generators) for i in range(C.rank))


def _unique_maximizer(classes: ClassSet, phi: Sequence) -> tuple[int, ...] | None:
    ranked = sorted(classes.classes, key=lambda c: dot(c, phi), reverse=True)
    if len(ranked) > 1 and dot(ranked[0], phi) == dot(ranked[1], phi):
        return None
    return ranked[0]


def glue(D: LinkDatum, K1: KnotDatum, K2: KnotDatum) -> GluedManifold:
    for label, K in (("K1", K1), ("K2", K2)):
        verdict = validate_knot(K)
        if not verdict:
            raise ModelError(f"{label} invalid: " + "; ".join(verdict.failures))
        if not K.fibered:
            raise ModelError(f"{label} is not fibered")
    verdict = validate_link(D)
    if not verdict:
        raise ModelError("link invalid: " + "; ".join(verdict.failures))

    alexander = gluing_polynomial(D, K1, K2)
    classes = abasic(from_alexander(symmetrize(alexander)))
    canonical = _unique_maximizer(classes, _interior_ray(D.fibered_cone))
    if canonical is None:
        raise ModelError("no unique canonical class on the fibered cone")

    link_norm = PolyhedralNorm.from_classes(link_classes(D))
    knot_norms = [PolyhedralNorm.axis_multiple(i, 2, 2 * K.genus - 1) for i, K in enumerate((K1, K2))]
    exact = link_norm + knot_norms[0] + knot_norms[1]
    strict = None
    if D.strict_outside:
        face = facet_dual_to(unit_ball(classes), canonical)
        if face is None:
            raise ModelError("canonical class is not dual to a top-dimensional face")
        strict = cone_over(face)
    model = ThurstonModel(2, ((D.fibered_cone, exact),), strict)
    return GluedManifold(D, (K1, K2), alexander, classes, canonical, D.fibered_cone, model)


# --- the two norms on N(K1, K2) --------------------------------------------------------


def _knot_terms(M: GluedManifold, phi: Sequence[int]) -> int:
    return sum(abs(m) * (2 * g - 1) for m, g in zip(phi, M.genera))


def glued_alexander(M: GluedManifold, phi: Sequence[int]) -> int:
    """Alexander norm of the closed manifold: link norm plus |m_i|(2 g_i - 1)."""
    _check_rank2(phi)
    return alexander_norm(M.link.alexander, phi) + _knot_terms(M, phi)


def glued_thurston(M: GluedManifold, phi: Sequence[int]) -> NormBound:
    """Thurston norm as the sum over the JSJ pieces, where that sum is known."""
    _check_rank2(phi)
    if M.fibered_cone.contains(phi):
        # fibered classes of the link exterior have equal Alexander and Thurston norms
        link_part = alexander_norm(M.link.alexander, phi)
        return NormBound.exactly(link_part + _knot_terms(M, phi))
    strict = M.link.strict_outside and alexander_face_cone(M).contains(phi, "open")
    return NormBound.at_least(glued_alexander(M, phi), strict)


def _check_rank2(phi: Sequence) -> None:
    if len(phi) != 2:
        raise ValueError("classes on N(K1, K2) have two coordinates")


def alexander_face(M: GluedManifold) -> Face | None:
    return facet_dual_to(unit_ball(M.abasic), M.canonical)


def alexander_face_cone(M: GluedManifold) -> Cone:
    face = alexander_face(M)
    if face is None:
        raise ModelError(f"canonical class {M.canonical} is not dual to a face of the Alexander ball")
    return cone_over(face)


def extend_fibration(M: GluedManifold, phi: Sequence[int]) -> Certificate:
    """Certify that a fibered class of the link exterior stays fibered after gluing."""
    phi = tuple(int(x) for x in phi)
    if not M.fibered_cone.contains(phi):
        raise ModelError(f"class {phi} is outside the fibered cone")
    cert = Certificate("fibration")
    cert.inputs = {"phi": list(phi), "fibered_cone": M.fibered_cone.to_json(), "genera": list(M.genera)}
    a = glued_alexander(M, phi)
    t = glued_thurston(M, phi)
    pieces = [{"piece": "link", "class": list(phi)}] + [
        {"piece": f"K{i + 1}", "fiber_copies": abs(m), "fiber_genus": g}
        for i, (m, g) in enumerate(zip(phi, M.genera))
    ]
    cert.values = {"alexander": a, "thurston": t.to_json(), "pieces": pieces}
    ok = t.exact and cert.assert_relation("alexander_equals_thurston", a, "=", t.value)
    cert.passed = bool(ok)
    cert.verdict = "fibered" if ok else "inconsistent"
    return cert


# --- the strict containment theorem ------------------------------------------------------


def lattice_shells(radius: int) -> Iterator[tuple[int, int]]:
    """Nonzero lattice points ordered by L1 norm, then lexicographically."""
    for s in range(1, radius + 1):
        shell = {(a, b) for a in range(-s, s + 1) for b in (s - abs(a), abs(a) - s)}
        yield from sorted(shell)


def fibered_region(M: GluedManifold, face: Face) -> Face:
    """Intersection of the Alexander face with the fibered cone."""
    K = as_point(M.canonical)
    points = []
    for g in M.fibered_cone.generators:
        level = dot(K, g)
        if level <= 0:
            raise ModelError(f"fibered generator {encode_vector(g)} pairs nonpositively with K")
        points.append(tuple(x / level for x in g))
    region = hull(points)
    return Face(region.vertices, face.functional, face.offset, region.dimension)


def strictness_witness(M: GluedManifold, radius: int = 50) -> tuple[tuple[int, int], NormBound] | None:
    """First integral class in the open face cone, off the closed fibered cone,
    whose Thurston norm is strictly above its Alexander norm."""
    cone = alexander_face_cone(M)
    for phi in lattice_shells(radius):
        if not cone.contains(phi, "open") or M.fibered_cone.contains(phi):
            continue
        bound = thurston_eval(M.thurston, M.alexander, phi)
        if bound.lower_strict and bound.lower == alexander_norm(M.alexander, phi):
            return phi, bound
    return None


def _check_canonical_maximal(cert: Certificate, M: GluedManifold) -> tuple | None:
    """K must maximize c.phi over all classes on the fibered cone, uniquely inside it.

    Ties on the boundary rays are allowed; the interior ray must single K out.
    """
    K = M.canonical
    others = [c for c in M.abasic if c != K]
    if not others:
        return None
    checks = [(g, ">=") for g in M.fibered_cone.generators]
    checks.append((_interior_ray(M.fibered_cone), ">"))
    for g, rel in checks:
        runner = max(others, key=lambda c: (dot(c, g), c))
        if not cert.assert_relation(f"K.g {rel} c.g at g={encode_vector(g)}", dot(K, g), rel, dot(runner, g)):
            return runner, g
    return None


def verify_theorem(M: GluedManifold) -> Certificate:
    """Check that the fibered face of N(K1, K2) is strictly inside an Alexander face."""
    if M.alexander.rank != 2 or M.abasic.rank != 2 or not len(M.abasic):
        raise ModelError("degenerate model: need rank 2 and a nonempty a-basic set")
    cert = Certificate("containment")
    cert.inputs = {
        "genera": list(M.genera),
        "canonical": list(M.canonical),
        "fibered_cone": M.fibered_cone.to_json(),
        "link": M.link.name or "link",
        "knots": [k.name or f"genus {k.genus}" for k in M.knots],
    }

    def fail(verdict: str, **witness) -> Certificate:
        cert.verdict = verdict
        cert.passed = False
        cert.values["witness"] = witness
        return cert

    try:
        expected = gluing_polynomial(M.link, *M.knots)
    except ModelError as exc:
        return fail("gluing_formula_fails", reason=str(exc))
    if expected != M.alexander:
        return fail("alexander_mismatch", expected=expected.to_json())
    support_classes = abasic(from_alexander(symmetrize(M.alexander)))
    if support_classes != M.abasic:
        diff = sorted(support_classes.classes ^ M.abasic.classes)
        return fail("abasic_mismatch", cls=list(diff[0]))
    if M.canonical not in M.abasic:
        return fail("canonical_not_abasic", cls=list(M.canonical))
    bad = _check_canonical_maximal(cert, M)
    if bad is not None:
        runner, g = bad
        return fail("canonical_not_maximal", cls=list(runner), phi=encode_vector(g))

    face = alexander_face(M)
    if face is None:
        return fail("canonical_not_dual_to_face", cls=list(M.canonical))
    face_cone = cone_over(face)
    for g in M.fibered_cone.generators:
        if not face_cone.contains(g):
            return fail("fibered_cone_outside_face", phi=encode_vector(g))
        a = alexander_norm(M.alexander, g)
        t = thurston_eval(M.thurston, M.alexander, g)
        if not t.exact or not cert.assert_relation(
            f"thurston = alexander at g={encode_vector(g)}", t.value, "=", a
        ):
            return fail("fibered_norms_differ", phi=encode_vector(g))

    region = fibered_region(M, face)
    relation = face_contained(region, face)
    cert.values.update(
        {
            "alexander_face": [encode_vector(v) for v in face.vertices],
            "alexander_face_functional": encode_vector(face.functional),
            "fibered_face": [encode_vector(v) for v in region.vertices],
            "relation": relation.value,
        }
    )
    if relation is not Containment.STRICTLY_CONTAINED:
        cert.verdict = relation.value
        cert.passed = False
        return cert
    found = strictness_witness(M)
    if found is None:
        cert.verdict = "no_strictness_witness"
        cert.passed = False
        return cert
    phi, bound = found
    a = alexander_norm(M.alexander, phi)
    cert.assert_relation("thurston_lower >= alexander at witness", bound.lower, ">=", a)
    cert.values["witness"] = {"phi": list(phi), "alexander": a, "thurston": bound.to_json()}
    cert.verdict = relation.value
    cert.passed = True
    return cert


def mcmullen_sweep(M: GluedManifold, radius: int = 20) -> tuple[Certificate, list[dict]]:
    """Check ||.||_A <= ||.||_T on every class with |m_i| <= radius."""
    rows = []
    violations = []
    for phi in itertools.product(range(-radius, radius + 1), repeat=2):
        a = alexander_norm(M.alexander, phi)
        t = thurston_eval(M.thurston, M.alexander, phi)
        verdict = mcmullen_verify(a, t, b1=2)
        rows.append({"m1": phi[0], "m2": phi[1], "alexander": a, "thurston": t, "passed": verdict.passed})
        if not verdict:
            violations.append((phi, a, t))
    cert = Certificate("mcmullen")
    cert.inputs = {"genera": list(M.genera), "radius": radius, "b1": 2}
    cert.values = {"classes_checked": len(rows), "violations": len(violations)}
    if violations:
        phi, a, t = violations[0]
        cert.assert_relation(f"alexander <= thurston at {list(phi)}", a, "<=", t.lower)
        cert.values["witness"] = {"phi": list(phi), "alexander": a, "thurston": t.to_json()}
    cert.passed = not violations
    cert.verdict = "pass" if cert.passed else "violation"
    return cert, rows


# --- fixture files -------------------------------------------------------------------------


def load_json(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_knot(path: str | Path) -> KnotDatum:
    return KnotDatum.from_json(load_json(path))


def load_link(path: str | Path) -> LinkDatum:
    return LinkDatum.from_json(load_json(path))


def load_model(path: str | Path) -> GluedManifold:
    return GluedManifold.from_json(load_json(path))
