"""Sparse multivariable Laurent polynomials with integer coefficients.

A polynomial lives on the lattice Z^rank and is stored as an immutable map
from exponent tuples to nonzero integer coefficients.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

MultiIndex = tuple[int, ...]


class LaurentPoly:
    """An element of the group ring Z[Z^rank]."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Iterable[int], int] | None = None):
        if rank < 1:
            raise ValueError(f"rank must be positive, got {rank}")
        clean: dict[MultiIndex, int] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != rank:
                raise ValueError(f"exponent {exp} does not have rank {rank}")
            coef = int(coef)
            if coef:
                clean[exp] = clean.get(exp, 0) + coef
        self.rank = rank
        self._terms = {k: clean[k] for k in sorted(clean) if clean[k]}
        self._hash = None

    @classmethod
    def constant(cls, value: int, rank: int = 1) -> "LaurentPoly":
        return cls(rank, {(0,) * rank: value})

    @classmethod
    def univariate(cls, coefficients: Mapping[int, int]) -> "LaurentPoly":
        """Build a rank-1 polynomial from ``{exponent: coefficient}``."""
        return cls(1, {(e,): c for e, c in coefficients.items()})

    @classmethod
    def monomial(cls, exp: Iterable[int], coef: int = 1) -> "LaurentPoly":
        exp = tuple(exp)
        return cls(len(exp), {exp: coef})

    @property
    def terms(self) -> dict[MultiIndex, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exp: Iterable[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.rank}, {self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = ["t"] if self.rank == 1 else [f"t{i + 1}" for i in range(self.rank)]
        parts = []
        for exp, coef in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e
            )
            if not mono:
                body = str(abs(coef))
            elif abs(coef) == 1:
                body = mono
            else:
                body = f"{abs(coef)}*{mono}"
            parts.append(("- " if coef < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def _check_rank(self, other: "LaurentPoly") -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_rank(other)
        out = dict(self._terms)
        for exp, coef in other._terms.items():
            out[exp] = out.get(exp, 0) + coef
        return LaurentPoly(self.rank, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return multiply(self, other)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "terms": [{"exp": list(e), "coef": c} for e, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        rank = int(data["rank"])
        terms: dict[MultiIndex, int] = {}
        for term in data["terms"]:
            exp = tuple(term["exp"])
            if exp in terms:
                raise ValueError(f"duplicate exponent {list(exp)}")
            terms[exp] = term["coef"]
        return cls(rank, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def multiply(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Convolution product of two polynomials of equal rank."""
    p._check_rank(q)
    out: dict[MultiIndex, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return LaurentPoly(p.rank, out)


def support(p: LaurentPoly) -> set[MultiIndex]:
    return set(p._terms)


def bounding_box(p: LaurentPoly) -> tuple[MultiIndex, MultiIndex]:
    if p.is_zero():
        raise ValueError("zero polynomial has no support")
    exps = list(p._terms)
    lo = tuple(min(e[k] for e in exps) for k in range(p.rank))
    hi = tuple(max(e[k] for e in exps) for k in range(p.rank))
    return lo, hi


def symmetrize(p: LaurentPoly) -> LaurentPoly:
    """Center the support at the origin on the doubled lattice.

    Exponent ``i`` maps to ``2*i - (lo + hi)`` where ``lo``/``hi`` are the
    componentwise extremes of the support.  For a polynomial that is symmetric
    up to a unit the result satisfies ``f(t^-1) = +-f(t)``.  Applying it to an
    already centered polynomial only doubles the exponents.
    """
    if p.is_zero():
        raise ValueError("cannot symmetrize the zero polynomial")
    lo, hi = bounding_box(p)
    shift = tuple(a + b for a, b in zip(lo, hi))
    return LaurentPoly(
        p.rank,
        {tuple(2 * e - s for e, s in zip(exp, shift)): c for exp, c in p.items()},
    )


def is_centered(p: LaurentPoly) -> bool:
    lo, hi = bounding_box(p)
    return all(a == -b for a, b in zip(lo, hi))


def symmetry_sign(p: LaurentPoly) -> int | None:
    """Return +1 or -1 if ``p(t^-1) = sign * p(t)``, else None."""
    if p.is_zero():
        return 1
    flipped = {tuple(-e for e in exp): c for exp, c in p.items()}
    if flipped == p._terms:
        return 1
    if {e: -c for e, c in flipped.items()} == p._terms:
        return -1
    return None


def evaluate_at_ones(p: LaurentPoly) -> int:
    return sum(p._terms.values())


def embed_univariate(p: LaurentPoly, axis: int, rank: int) -> LaurentPoly:
    """Place a rank-1 polynomial on coordinate ``axis`` of Z^rank."""
    if p.rank != 1:
        raise ValueError("embed_univariate expects a rank-1 polynomial")
    if not 0 <= axis < rank:
        raise ValueError(f"axis {axis} out of range for rank {rank}")
    out = {}
    for (e,), c in p.items():
        exp = [0] * rank
        exp[axis] = e
        out[tuple(exp)] = c
    return LaurentPoly(rank, out)


def normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative modulo units +-t^k.

    The support is translated so each componentwise minimum is 0, and the
    sign is fixed so the lexicographically smallest exponent has a positive
    coefficient.
    """
    if p.is_zero():
        return p
    lo, _ = bounding_box(p)
    out = {tuple(e - m for e, m in zip(exp, lo)): c for exp, c in p.items()}
    first = min(out)
    if out[first] < 0:
        out = {e: -c for e, c in out.items()}
    return LaurentPoly(p.rank, out)


def equal_up_to_units(p: LaurentPoly, q: LaurentPoly) -> bool:
    return p.rank == q.rank and normalize(p) == normalize(q)


def divide_by_binomial(p: LaurentPoly, axis: int) -> LaurentPoly:
    """Exact quotient of ``p`` by ``(t_axis - 1)``.

    Raises ValueError when the division leaves a remainder.
    """
    if not 0 <= axis < p.rank:
        raise ValueError(f"axis {axis} out of range for rank {p.rank}")
    # Group by the other coordinates; each fibre is a univariate polynomial in
    # t_axis, divided by synthetic division from the top degree down.
    fibres: dict[MultiIndex, dict[int, int]] = {}
    for exp, c in p.items():
        key = exp[:axis] + exp[axis + 1:]
        fibres.setdefault(key, {})[exp[axis]] = c
    out: dict[MultiIndex, int] = {}
    for key, coeffs in fibres.items():
        lo, hi = min(coeffs), max(coeffs)
        carry = 0
        for d in range(hi, lo, -1):
            carry += coeffs.get(d, 0)
            if carry:
                out[key[:axis] + (d - 1,) + key[axis:]] = carry
        if carry + coeffs.get(lo, 0) != 0:
            raise ValueError(f"polynomial is not divisible by (t{axis + 1} - 1)")
    return LaurentPoly(p.rank, out)


def binomial(axis: int, rank: int) -> LaurentPoly:
    """The polynomial ``t_axis - 1``."""
    unit = [0] * rank
    unit[axis] = 1
    return LaurentPoly(rank, {tuple(unit): 1, (0,) * rank: -1})
