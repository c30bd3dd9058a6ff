"""Alexander and Thurston (semi)norms on H^1 of a 3-manifold.

The Alexander norm is computed from a polynomial or from a set of classes on
the doubled lattice.  The Thurston norm is never computed outright: a
:class:`ThurstonModel` holds the cones where its value is known exactly and
falls back to the Alexander norm as a lower bound everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .certificates import Verdict, decode_number, encode_number
from .laurent import LaurentPoly
from .polytope import Cone, Polytope, as_point, dot, dual_ball, hull


@dataclass(frozen=True)
class ClassSet:
    """A finite set of cohomology classes on the doubled lattice."""

    rank: int
    classes: frozenset[tuple[int, ...]]

    def __init__(self, rank: int, classes: Iterable[Iterable[int]] = ()):
        cs = frozenset(tuple(int(x) for x in c) for c in classes)
        if any(len(c) != rank for c in cs):
            raise ValueError(f"class of wrong rank in set of rank {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "classes", cs)

    def __iter__(self):
        return iter(sorted(self.classes))

    def __len__(self) -> int:
        return len(self.classes)

    def __contains__(self, c) -> bool:
        return tuple(c) in self.classes

    def is_symmetric(self) -> bool:
        return all(tuple(-x for x in c) in self.classes for c in self.classes)

    def issubset(self, other: "ClassSet") -> bool:
        return self.classes <= other.classes

    def union(self, other: Iterable[Iterable[int]]) -> "ClassSet":
        return ClassSet(self.rank, self.classes | {tuple(c) for c in other})

    def to_json(self) -> list:
        return [list(c) for c in self]


def alexander_norm(delta: LaurentPoly, phi: Sequence[int]) -> int:
    """max over support pairs (i, j) of <phi, i - j>."""
    if delta.is_zero():
        raise ValueError("Alexander norm of the zero polynomial is undefined")
    if len(phi) != delta.rank:
        raise ValueError("rank mismatch between polynomial and class")
    values = [dot(phi, exp) for exp, _ in delta.items()]
    return max(values) - min(values)


def norm_from_classes(classes: ClassSet, phi: Sequence) -> int | Fraction:
    """max over c in the set of <c, phi>."""
    if not len(classes):
        raise ValueError("norm from an empty class set")
    if len(phi) != classes.rank:
        raise ValueError("rank mismatch between class set and class")
    return max(dot(c, phi) for c in classes.classes)


def newton_polytope(classes: ClassSet) -> Polytope:
    return hull(classes.classes)


def unit_ball(classes: ClassSet) -> Polytope:
    """Unit ball of ``phi -> max <c, phi>``: the polar of the hull of the classes."""
    if not len(classes):
        raise ValueError("unit ball of an empty class set")
    return dual_ball(newton_polytope(classes))


@dataclass(frozen=True)
class NormBound:
    """What is known about a norm value: ``lower (<|<=) value <= upper``."""

    lower: Fraction
    upper: Fraction | float = math.inf
    lower_strict: bool = False
    exact: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lower", Fraction(self.lower))
        if self.upper != math.inf:
            object.__setattr__(self, "upper", Fraction(self.upper))
        self.validate()

    def validate(self) -> None:
        if self.lower < 0:
            raise ValueError("norm lower bound must be nonnegative")
        if self.lower > self.upper:
            raise ValueError("norm bound has lower > upper")
        if self.exact and (self.lower != self.upper or self.lower_strict):
            raise ValueError("exact bound must have lower == upper and no strictness")
        if self.lower_strict and self.lower == self.upper:
            raise ValueError("strict lower bound equal to upper bound is empty")

    @classmethod
    def exactly(cls, value) -> "NormBound":
        return cls(Fraction(value), Fraction(value), False, True)

    @classmethod
    def at_least(cls, value, strict: bool = False) -> "NormBound":
        return cls(Fraction(value), math.inf, strict, False)

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ValueError("norm value is only bounded, not known exactly")
        return self.lower

    def to_json(self) -> dict:
        return {
            "lower": encode_number(self.lower),
            "upper": encode_number(self.upper),
            "lower_strict": self.lower_strict,
            "exact": self.exact,
        }

    @classmethod
    def from_json(cls, data: dict) -> "NormBound":
        return cls(
            decode_number(data["lower"]),
            decode_number(data["upper"]),
            bool(data["lower_strict"]),
            bool(data["exact"]),
        )

    def __str__(self) -> str:
        if self.exact:
            return f"exact {encode_number(self.lower)}"
        rel = ">" if self.lower_strict else ">="
        return f"{rel} {encode_number(self.lower)}"


@dataclass(frozen=True)
class PolyhedralNorm:
    """``phi -> max <c, phi>`` over finitely many covectors.

    Adding two of these (Minkowski sum of covector sets) adds the norms, which
    is how the norm of a manifold assembled from pieces is built up.
    """

    covectors: tuple[tuple[Fraction, ...], ...]

    def __init__(self, covectors: Iterable[Iterable]):
        cvs = tuple(sorted({as_point(c) for c in covectors}))
        if not cvs:
            raise ValueError("a polyhedral norm needs at least one covector")
        object.__setattr__(self, "covectors", cvs)

    def __call__(self, phi: Sequence) -> Fraction:
        return max(Fraction(dot(c, phi)) for c in self.covectors)

    def __add__(self, other: "PolyhedralNorm") -> "PolyhedralNorm":
        return PolyhedralNorm(
            tuple(a + b for a, b in zip(c1, c2))
            for c1 in self.covectors
            for c2 in other.covectors
        )

    @classmethod
    def from_classes(cls, classes: ClassSet) -> "PolyhedralNorm":
        return cls(hull(classes.classes).vertices)

    @classmethod
    def axis_multiple(cls, axis: int, rank: int, weight) -> "PolyhedralNorm":
        """``phi -> weight * |phi[axis]|``."""
        unit = [0] * rank
        unit[axis] = weight
        return cls([unit, [-x for x in unit]])

    def to_json(self) -> list:
        return [[encode_number(x) for x in c] for c in self.covectors]


@dataclass(frozen=True)
class ThurstonModel:
    """Partial knowledge of a Thurston norm.

    ``exact_cones`` pair a closed cone with the polyhedral norm that gives the
    exact value there.  Outside them the Alexander norm is a lower bound
    (valid for b1 > 1), strict on the open ``strict_region``.
    """

    rank: int
    exact_cones: tuple[tuple[Cone, PolyhedralNorm], ...] = ()
    strict_region: Cone | None = None

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "exact_cones": [
                {"cone": cone.to_json(), "norm": norm.to_json()}
                for cone, norm in self.exact_cones
            ],
            "strict_region": self.strict_region.to_json() if self.strict_region else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ThurstonModel":
        cones = tuple(
            (Cone(item["cone"]), PolyhedralNorm(item["norm"])) for item in data["exact_cones"]
        )
        strict = data.get("strict_region")
        return cls(int(data["rank"]), cones, Cone(strict) if strict else None)


def thurston_eval(model: ThurstonModel, delta: LaurentPoly, phi: Sequence[int]) -> NormBound:
    if len(phi) != model.rank or delta.rank != model.rank:
        raise ValueError("rank mismatch in Thurston evaluation")
    if all(x == 0 for x in phi):
        return NormBound.exactly(0)
    for cone, norm in model.exact_cones:
        if cone.contains(phi):
            return NormBound.exactly(norm(phi))
    strict = model.strict_region is not None and model.strict_region.contains(phi, "open")
    return NormBound.at_least(alexander_norm(delta, phi), strict)


def mcmullen_verify(
    a_val, t_val: NormBound, b1: int, b3: int = 1, div: int = 1
) -> Verdict:
    """Check ``||phi||_A <= ||phi||_T (+ (1 + b3) * div(phi) when b1 = 1)``.

    ``t_val`` may be a bound; the check passes only if the inequality holds
    for every Thurston value compatible with it.
    """
    t_val.validate()
    if b1 < 1:
        raise ValueError("McMullen's inequality needs b1 >= 1")
    if b1 == 1 and div < 1:
        raise ValueError("divisibility must be positive when b1 = 1")
    correction = (1 + b3) * div if b1 == 1 else 0
    bound = t_val.lower + correction
    if Fraction(a_val) <= bound:
        return Verdict(True)
    return Verdict(
        False,
        (f"alexander {encode_number(a_val)} > thurston {t_val} + {correction}",),
        {"alexander": encode_number(a_val), "thurston": t_val.to_json(), "correction": correction},
    )
