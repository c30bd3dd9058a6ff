"""Verdicts and machine-checkable certificates.

A certificate stores every asserted inequality with both sides as exact
rationals, so it can be re-checked without the code that produced it.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


def encode_number(x) -> int | str:
    """Exact rational -> JSON: int when integral, else ``"p/q"``; inf -> ``"inf"``."""
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return "inf"
        raise ValueError(f"refusing to encode inexact float {x!r}")
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decode_number(x) -> Fraction | float:
    if x == "inf":
        return math.inf
    return Fraction(x)


def encode_vector(v) -> list:
    return [encode_number(x) for x in v]


def decode_vector(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    failures: tuple[str, ...] = ()
    witness: Any = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failures": list(self.failures),
            "witness": self.witness,
        }


@dataclass
class Certificate:
    """A verified (or refuted) theorem instance.

    ``kind`` is one of taubes_membership, counterexample, containment,
    mcmullen or fibration.
    """

    kind: str
    inputs: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    inequalities: list = field(default_factory=list)
    verdict: str = ""
    passed: bool = False

    def assert_relation(self, name: str, lhs, relation: str, rhs) -> bool:
        """Record ``lhs relation rhs`` and return whether it holds."""
        holds = RELATIONS[relation](lhs, rhs)
        self.inequalities.append(
            {
                "name": name,
                "lhs": encode_number(lhs),
                "rhs": encode_number(rhs),
                "relation": relation,
                "holds": bool(holds),
            }
        )
        return bool(holds)

    def recheck(self) -> bool:
        """Re-evaluate every stored inequality from its serialized sides."""
        for ineq in self.inequalities:
            lhs, rhs = decode_number(ineq["lhs"]), decode_number(ineq["rhs"])
            if RELATIONS[ineq["relation"]](lhs, rhs) != ineq["holds"]:
                return False
        # a passing certificate may not carry a failed inequality
        return not self.passed or all(i["holds"] for i in self.inequalities)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "passed": self.passed,
            "inputs": self.inputs,
            "values": self.values,
            "inequalities": self.inequalities,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        return cls(
            kind=data["kind"],
            inputs=data["inputs"],
            values=data["values"],
            inequalities=list(data["inequalities"]),
            verdict=data["verdict"],
            passed=data["passed"],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"
