"""Seiberg-Witten data as lattice bookkeeping.

Invariants of individual spin-c structures are inputs; this module only
aggregates them over torsion, reads off a-basic classes, and checks the
a-basic / basic / monopole inclusions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .certificates import Verdict
from .laurent import LaurentPoly, is_centered, symmetry_sign
from .norms import ClassSet


@dataclass(frozen=True)
class SpinCRecord:
    """SW invariant of one spin-c structure, keyed by its doubled real Chern class."""

    projected_class: tuple[int, ...]
    value: int

    def to_json(self) -> dict:
        return {"class": list(self.projected_class), "sw": self.value}

    @classmethod
    def from_json(cls, data: dict) -> "SpinCRecord":
        return cls(tuple(int(x) for x in data["class"]), int(data["sw"]))


@dataclass(frozen=True)
class TorsionInfo:
    ord: int = 1

    def __post_init__(self):
        if self.ord < 1:
            raise ValueError("torsion order must be at least 1")


@dataclass(frozen=True)
class SWFunction:
    """SW(N) as a polynomial on the doubled lattice."""

    poly: LaurentPoly

    @property
    def rank(self) -> int:
        return self.poly.rank

    def coefficient(self, c: Sequence[int]) -> int:
        return self.poly.coefficient(c)

    def is_symmetric(self) -> bool:
        return symmetry_sign(self.poly) is not None

    def oriented(self, canonical: Sequence[int]) -> "SWFunction":
        """Fix the global sign so the coefficient at ``canonical`` is positive."""
        c = self.poly.coefficient(canonical)
        if c == 0:
            raise ValueError(f"class {tuple(canonical)} is not in the support")
        return self if c > 0 else SWFunction(-self.poly)


def aggregate(records: Iterable[SpinCRecord], torsion: TorsionInfo = TorsionInfo()) -> SWFunction:
    """Sum SW invariants over spin-c structures with the same real Chern class."""
    records = list(records)
    if not records:
        raise ValueError("no spin-c records to aggregate")
    rank = len(records[0].projected_class)
    if any(len(r.projected_class) != rank for r in records):
        raise ValueError("spin-c records have inconsistent rank")
    counts = Counter(r.projected_class for r in records)
    crowded = [c for c, n in counts.items() if n > torsion.ord]
    if crowded:
        c = min(crowded)
        raise ValueError(
            f"{counts[c]} records share class {c}, more than ord = {torsion.ord}"
        )
    terms: dict[tuple[int, ...], int] = {}
    for r in records:
        terms[r.projected_class] = terms.get(r.projected_class, 0) + r.value
    return SWFunction(LaurentPoly(rank, terms))


def from_alexander(delta_sym: LaurentPoly) -> SWFunction:
    """Identify SW(N) with the symmetrized Alexander polynomial (closed N, b1 > 1)."""
    if delta_sym.is_zero():
        return SWFunction(delta_sym)
    if not is_centered(delta_sym) or symmetry_sign(delta_sym) is None:
        raise ValueError("from_alexander expects a symmetrized (centered, symmetric) polynomial")
    return SWFunction(delta_sym)


def abasic(f: SWFunction) -> ClassSet:
    """Classes c with nonzero aggregated invariant, read on the doubled lattice."""
    return ClassSet(f.rank, (exp for exp, _ in f.poly.items()))


def inclusion_check(a: ClassSet, basic: ClassSet, monopole: ClassSet) -> Verdict:
    """Check a-basic <= basic <= monopole; report the first class breaking it."""
    if not a.rank == basic.rank == monopole.rank:
        raise ValueError("class sets have different ranks")
    for smaller, larger, label in (
        (a, basic, "a-basic class is not basic"),
        (basic, monopole, "basic class is not a monopole class"),
    ):
        missing = sorted(smaller.classes - larger.classes)
        if missing:
            return Verdict(False, (f"{label}: {missing[0]}",), list(missing[0]))
    return Verdict(True)
