"""Symplectic constraints on S^1 x N and the counterexample certificate.

A class on S^1 x N is handled through its Kunneth components
``alpha = phi ^ [dt] + psi`` with ``phi`` in H^1(N) and ``psi`` in H^2(N),
the latter identified with a functional on H^1(N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certificates import Certificate, encode_number, encode_vector
from .family import (
    GluedManifold,
    ModelError,
    alexander_face_cone,
    glued_alexander,
    glued_thurston,
    verify_theorem,
)
from .norms import ClassSet
from .polytope import as_point, dot


class NoEligibleClass(ModelError):
    """No Kunneth component can produce a class in T minus W."""


@dataclass(frozen=True)
class KunnethClass:
    phi: tuple[Fraction, ...]
    psi: tuple[Fraction, ...]

    def __init__(self, phi: Sequence, psi: Sequence):
        if len(phi) != len(psi):
            raise ValueError("phi and psi must have the same rank")
        object.__setattr__(self, "phi", as_point(phi))
        object.__setattr__(self, "psi", as_point(psi))


@dataclass(frozen=True)
class BasicClassSet:
    classes: ClassSet
    canonical: tuple[int, ...]

    def __post_init__(self):
        if tuple(self.canonical) not in self.classes:
            raise ValueError(f"canonical class {self.canonical} is not among the basic classes")
        if not self.classes.is_symmetric():
            raise ValueError("basic classes must be closed under negation")


def square(a: KunnethClass) -> Fraction:
    """alpha . alpha = 2 <psi, phi>."""
    return 2 * Fraction(dot(a.psi, a.phi))


def in_positive_cone(a: KunnethClass) -> bool:
    return square(a) > 0


def in_taubes_cone(a: KunnethClass, B: BasicClassSet, label: str = "basic") -> Certificate:
    """Taubes' constraints: K.phi >= |k.phi| for every class, strictly unless k = +-K.

    ``psi`` plays no role beyond the positivity of the square, since the
    classes are pulled back from N.  ``label`` names the class family being
    tested (basic or monopole).
    """
    sq = square(a)
    if sq <= 0:
        raise ValueError("Taubes cone membership requires a class of positive square")
    K = tuple(B.canonical)
    minus_K = tuple(-x for x in K)
    cert = Certificate("taubes_membership")
    cert.inputs = {"phi": encode_vector(a.phi), "psi": encode_vector(a.psi), "classes": label,
                   "canonical": list(K)}
    k_phi = Fraction(dot(K, a.phi))
    ok = cert.assert_relation("alpha.alpha > 0", sq, ">", 0)
    ok &= cert.assert_relation("K.phi >= |K.phi|", k_phi, ">=", abs(k_phi))
    others = [c for c in B.classes if c not in (K, minus_K)]
    cert.values = {"square": encode_number(sq), "K_dot_phi": encode_number(k_phi)}
    if others:
        runner = max(others, key=lambda c: (abs(dot(c, a.phi)), c))
        r_val = abs(Fraction(dot(runner, a.phi)))
        ok &= cert.assert_relation("K.phi > max |k.phi| over k != +-K", k_phi, ">", r_val)
        cert.values["runner_up"] = {"class": list(runner), "abs_pairing": encode_number(r_val)}
    cert.passed = bool(ok)
    cert.verdict = "member" if ok else "not_member"
    return cert


def in_monopole_taubes_cone(a: KunnethClass, canonical: Sequence[int], monopole: ClassSet) -> Certificate:
    """The same test run against monopole classes instead of basic classes."""
    return in_taubes_cone(a, BasicClassSet(monopole, tuple(canonical)), label="monopole")


def adjunction_chi(M: GluedManifold, gamma_tau: int, phi: Sequence[int]) -> int:
    """chi_-(H) = 2 gamma.tau + ||phi||_A for a symplectic surface H."""
    if gamma_tau < 0:
        raise ValueError("gamma . tau must be nonnegative")
    return 2 * gamma_tau + glued_alexander(M, phi)


def default_psi(phi: Sequence, integral: bool = False) -> tuple[Fraction, ...]:
    """First coordinate functional pairing nonzero with phi, scaled to pairing 1.

    With ``integral`` the functional is only sign-corrected, so psi is integral
    and <psi, phi> = |phi_k|.
    """
    phi = as_point(phi)
    for k, x in enumerate(phi):
        if x != 0:
            psi = [Fraction(0)] * len(phi)
            psi[k] = Fraction(1 if x > 0 else -1) if integral else 1 / x
            return tuple(psi)
    raise ValueError("phi = 0 has no positive functional")


def build_counterexample(
    M: GluedManifold, phi: Sequence[int] | None = None, integral: bool = True
) -> Certificate:
    """A positive-square class in the Taubes cone that no symplectic form represents.

    phi is taken in the open cone over the Alexander face, off the closed
    fibered cone.  There the Thurston norm strictly exceeds the Alexander
    norm, while a symplectic Kunneth component would force them to agree.
    """
    containment = verify_theorem(M)
    if not containment.passed:
        raise NoEligibleClass(f"containment is not strict ({containment.verdict}); no eligible phi")
    if phi is None:
        phi = containment.values["witness"]["phi"]
    phi = tuple(int(x) for x in phi)
    if M.fibered_cone.contains(phi):
        raise NoEligibleClass(f"phi = {list(phi)} lies in the closed fibered cone, not eligible")
    if not alexander_face_cone(M).contains(phi, "open"):
        raise NoEligibleClass(f"phi = {list(phi)} is not in the open cone over the Alexander face")

    psi = default_psi(phi, integral)
    a = KunnethClass(phi, psi)
    B = BasicClassSet(M.abasic, M.canonical)
    taubes = in_taubes_cone(a, B)
    alexander = glued_alexander(M, phi)
    thurston = glued_thurston(M, phi)

    cert = Certificate("counterexample")
    cert.inputs = {
        "genera": list(M.genera),
        "canonical": list(M.canonical),
        "fibered_cone": M.fibered_cone.to_json(),
        "phi": list(phi),
        "psi": encode_vector(psi),
    }
    cert.inequalities.extend(taubes.inequalities)
    ok = taubes.passed
    ok &= cert.assert_relation("thurston_lower >= alexander", thurston.lower, ">=", alexander)
    ok &= thurston.lower_strict
    cert.values = {
        "square": taubes.values["square"],
        "K_dot_phi": taubes.values["K_dot_phi"],
        "runner_up": taubes.values.get("runner_up"),
        "alexander": alexander,
        "thurston": thurston.to_json(),
        "thurston_lower_strict": thurston.lower_strict,
        "in_positive_cone": True,
        "in_taubes_cone": taubes.passed,
        "symplectic_obstruction": "a symplectic Kunneth component has equal Alexander and Thurston norms",
        "conclusion": "alpha in T \\ W" if ok else "inconclusive",
    }
    cert.passed = bool(ok)
    cert.verdict = "alpha_in_T_minus_W" if ok else "inconclusive"
    return cert
