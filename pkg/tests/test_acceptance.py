"""Acceptance criteria, one test per criterion.

Each test prints an ``ACn PASS/FAIL`` line (visible with ``-s``); the
conftest hook also prints the full list in the terminal summary.
"""

import itertools
import json
import random
import time
from fractions import Fraction as F

import pytest

from normforge.certificates import decode_number
from normforge.cli import run
from normforge.family import glue, glued_alexander, glued_thurston, verify_theorem
from normforge.laurent import LaurentPoly, embed_univariate, multiply, symmetrize
from normforge.norms import alexander_norm, norm_from_classes, unit_ball
from normforge.polytope import hull
from normforge.render import picture_from_model, render_svg
from normforge.swdata import abasic, from_alexander
from normforge.taubes import build_counterexample

from conftest import DATA, GOLDEN, SEED, knot

DUNFIELD = LaurentPoly(2, {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})
ac = pytest.mark.acceptance


def report(n, ok, detail):
    print(f"AC{n} {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def pair_oracle(delta, phi):
    exps = [e for e, _ in delta.items()]
    return max(sum(p * (a - b) for p, a, b in zip(phi, i, j)) for i in exps for j in exps)


def random_symmetric(rng):
    while True:
        t = {(rng.randint(-3, 3), rng.randint(-3, 3)): rng.choice([-3, -2, -1, 1, 2, 3])
             for _ in range(rng.randint(1, 5))}
        delta = LaurentPoly(2, t) + LaurentPoly(2, {(-a, -b): c for (a, b), c in t.items()})
        if not delta.is_zero():
            return delta


def rvec(rng, r=15):
    return (rng.randint(-r, r), rng.randint(-r, r))


# --- 1 ---

@ac(1, "Dunfield norm closed form |m1|+|m2| on |m_i| <= 10")
def test_ac1_dunfield_closed_form():
    start = time.perf_counter()
    bad = [phi for phi in itertools.product(range(-10, 11), repeat=2)
           if not alexander_norm(DUNFIELD, phi) == pair_oracle(DUNFIELD, phi) == abs(phi[0]) + abs(phi[1])]
    elapsed = time.perf_counter() - start
    report(1, not bad and elapsed < 1, f"441 classes, {len(bad)} mismatches, {elapsed:.3f}s")


# --- 2 ---

PAIRS = [("k2_3", "k2_3"), ("k2_5", "k2_9"), ("k2_3", "k4_1"), ("k2_7", "k3_4"), ("k4_1", "k2_5")]


@ac(2, "glued polynomial = embedded product; a-basic = doubled support grid")
def test_ac2_gluing_identity(dunfield):
    start = time.perf_counter()
    failures = []
    for a, b in PAIRS:
        K1, K2 = knot(a), knot(b)
        M = glue(dunfield, K1, K2)
        product = multiply(embed_univariate(K1.alexander, 0, 2), embed_univariate(K2.alexander, 1, 2))
        grid = {(2 * i, 2 * j) for (i,), _ in K1.alexander.items() for (j,), _ in K2.alexander.items()}
        if M.alexander != product or set(M.abasic.classes) != grid:
            failures.append((a, b))
    elapsed = time.perf_counter() - start
    report(2, not failures and elapsed < 1, f"{len(PAIRS)} pairs, failures {failures}, {elapsed:.3f}s")


# --- 3 ---

@ac(3, "Thurston = Alexander = 4|m1|+8|m2| on the fibered cone; ball vertices (+-1/4,0),(0,+-1/8)")
def test_ac3_fibered_cone_equality(model24):
    checked, bad = 0, []
    for phi in itertools.product(range(-20, 21), repeat=2):
        if not model24.fibered_cone.contains(phi):
            continue
        checked += 1
        t = glued_thurston(model24, phi)
        expected = 4 * abs(phi[0]) + 8 * abs(phi[1])
        if not (t.exact and t.value == glued_alexander(model24, phi) == alexander_norm(model24.alexander, phi) == expected):
            bad.append(phi)
    ball = set(unit_ball(model24.abasic).vertices)
    want = {(F(1, 4), 0), (F(-1, 4), 0), (0, F(1, 8)), (0, F(-1, 8))}
    svg = render_svg(picture_from_model(model24))
    drawn = 'points="0,50 100,0 0,-50 -100,0"' in svg
    ok = checked > 0 and not bad and ball == want and drawn
    report(3, ok, f"{checked} fibered classes, {len(bad)} mismatches, ball {'ok' if ball == want else ball}")


# --- 4 ---

GENUS_ONE_TWO_FOUR = ["k2_3", "k4_1", "k2_5", "k2_9"]


@ac(4, "strict containment for g_i in {1,2,4}; corrupted model exits 1")
def test_ac4_strict_containment(dunfield, tmp_path, capsys):
    bad = []
    pairs = list(itertools.product(GENUS_ONE_TWO_FOUR, repeat=2))
    for a, b in pairs:
        M = glue(dunfield, knot(a), knot(b))
        cert = verify_theorem(M)
        witness = cert.values.get("witness", {}).get("phi")
        ok = (cert.passed and cert.verdict == "strictly_contained" and witness is not None
              and all(isinstance(x, int) for x in witness)
              and glued_thurston(M, witness).lower_strict
              and not M.fibered_cone.contains(witness))
        if not ok:
            bad.append((a, b))
    # the same through the CLI, including a corrupted model
    model = tmp_path / "m.json"
    codes = []
    for a, b in [("k2_3", "k2_5"), ("k2_9", "k4_1")]:
        run(["glue", "--link", str(DATA / "dunfield.json"), "--k1", str(DATA / f"{a}.json"),
             "--k2", str(DATA / f"{b}.json"), "--out", str(model)])
        codes.append(run(["verify", "--model", str(model), "--which", "containment", "--out", str(tmp_path / "c.json")]))
    data = json.loads(model.read_text())
    data["canonical"] = [data["canonical"][0], data["canonical"][1] + 2]
    model.write_text(json.dumps(data))
    corrupted = run(["verify", "--model", str(model), "--which", "containment", "--out", str(tmp_path / "c.json")])
    capsys.readouterr()
    ok = not bad and codes == [0, 0] and corrupted == 1
    report(4, ok, f"{len(pairs)} pairs, failures {bad}, cli exits {codes}, corrupted exit {corrupted}")


# --- 5 ---

def independent_recheck(cert_json, model):
    """Re-derive every number of a counterexample certificate from scratch."""
    phi = tuple(cert_json["inputs"]["phi"])
    psi = tuple(F(x) for x in cert_json["inputs"]["psi"])
    K = tuple(cert_json["inputs"]["canonical"])
    classes = [tuple(c) for c in model.abasic]
    square = 2 * sum(a * b for a, b in zip(psi, phi))
    k_phi = sum(a * b for a, b in zip(K, phi))
    runner = max(abs(sum(a * b for a, b in zip(c, phi))) for c in classes if c not in (K, tuple(-x for x in K)))
    a_val = pair_oracle(model.alexander, phi)
    ok = square == decode_number(cert_json["values"]["square"]) and square > 0
    ok &= k_phi == cert_json["values"]["K_dot_phi"] and k_phi > runner
    ok &= runner == cert_json["values"]["runner_up"]["abs_pairing"]
    ok &= a_val == cert_json["values"]["alexander"]
    ok &= decode_number(cert_json["values"]["thurston"]["lower"]) >= a_val
    ok &= cert_json["values"]["thurston"]["lower_strict"] is True
    ops = {"<": F.__lt__, "<=": F.__le__, "=": F.__eq__, ">=": F.__ge__, ">": F.__gt__}
    for ineq in cert_json["inequalities"]:
        lhs, rhs = F(ineq["lhs"]), F(ineq["rhs"])
        ok &= ops[ineq["relation"]](lhs, rhs) is True and ineq["holds"] is True
    return ok, runner


@ac(5, "counterexample at phi=(5,-1): square > 0, runner-up 26 < 28, strict Thurston bound, re-checks")
def test_ac5_counterexample(model24):
    start = time.perf_counter()
    cert = build_counterexample(model24, (5, -1))
    elapsed = time.perf_counter() - start
    data = json.loads(cert.dumps())
    rechecked, runner = independent_recheck(data, model24)
    ok = (cert.passed and data["values"]["in_taubes_cone"] and data["values"]["K_dot_phi"] == 28
          and runner == 26 and rechecked and elapsed < 1)
    report(5, ok, f"square {data['values']['square']}, K.phi 28 vs runner-up {runner}, recheck {rechecked}, {elapsed:.3f}s")


# --- 6 ---

@ac(6, "McMullen property suite: 1000 polynomials x 50 classes, supersets of a-basic")
def test_ac6_mcmullen_property():
    rng = random.Random(SEED)
    violations = 0
    for _ in range(1000):
        delta = random_symmetric(rng)
        C = abasic(from_alexander(symmetrize(delta)))
        extra = [(rng.randint(-12, 12), rng.randint(-12, 12)) for _ in range(rng.randint(0, 4))]
        bigger = C.union(extra)
        for _ in range(50):
            phi = rvec(rng)
            if norm_from_classes(bigger, phi) < alexander_norm(delta, phi):
                violations += 1
    report(6, violations == 0, f"50000 evaluations, {violations} violations")


# --- 7 ---

@ac(7, "homogeneity and triangle inequality, 1000 random pairs, both evaluators")
def test_ac7_norm_axioms():
    rng = random.Random(SEED + 7)
    violations = 0
    for _ in range(1000):
        delta = random_symmetric(rng)
        C = abasic(from_alexander(symmetrize(delta)))
        phi, psi, n = rvec(rng), rvec(rng), rng.randint(0, 10)
        both = (phi[0] + psi[0], phi[1] + psi[1])
        scaled = (n * phi[0], n * phi[1])
        for norm in (lambda v: alexander_norm(delta, v), lambda v: norm_from_classes(C, v)):
            violations += norm(scaled) != n * norm(phi)
            violations += norm(both) > norm(phi) + norm(psi)
    report(7, violations == 0, f"1000 pairs x 2 evaluators, {violations} violations")


# --- 8 ---

def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _det3(a, b, c):
    return _dot(a, _cross(b, c))


def _lift(p):
    return tuple(p) + (0,) * (3 - len(p))


def _in_segment(p, a, b):
    d, e = _sub(b, a), _sub(p, a)
    return _cross(d, e) == (0, 0, 0) and 0 <= _dot(e, d) <= _dot(d, d)


def _in_triangle(p, a, b, c):
    n = _cross(_sub(b, a), _sub(c, a))
    if n == (0, 0, 0) or _dot(n, _sub(p, a)) != 0:
        return False
    return all(_dot(n, _cross(_sub(v, u), _sub(p, u))) >= 0 for u, v in ((a, b), (b, c), (c, a)))


def _in_tetrahedron(p, a, b, c, d):
    vol = _det3(_sub(b, a), _sub(c, a), _sub(d, a))
    if vol == 0:
        return False
    verts = [a, b, c, d]
    for i in range(4):
        q = verts[:i] + [p] + verts[i + 1:]
        sub = _det3(_sub(q[1], q[0]), _sub(q[2], q[0]), _sub(q[3], q[0]))
        if sub * vol < 0:
            return False
    return True


def extreme_points(points):
    """Points not in the convex hull of the others, by integer Caratheodory tests."""
    pts = sorted(set(_lift(p) for p in points))
    out = set()
    for p in pts:
        others = [q for q in pts if q != p]
        covered = (
            any(_in_segment(p, a, b) for a, b in itertools.combinations(others, 2))
            or any(_in_triangle(p, *t) for t in itertools.combinations(others, 3))
            or any(_in_tetrahedron(p, *t) for t in itertools.combinations(others, 4))
        )
        if not covered:
            out.add(p)
    return out


@ac(8, "hull = brute-force extreme points: 500 sets in rank 2, 200 in rank 3")
def test_ac8_hull_oracle():
    rng = random.Random(SEED + 8)
    mismatches = 0
    for rank, count in ((2, 500), (3, 200)):
        for _ in range(count):
            pts = [tuple(rng.randint(-5, 5) for _ in range(rank)) for _ in range(rng.randint(1, 12))]
            got = {_lift(v) for v in hull(pts).vertices}
            mismatches += got != extreme_points(pts)
    report(8, mismatches == 0, f"700 sets, {mismatches} mismatches")


# --- 9 ---

def _cli_runs(tmp):
    d = str(DATA)
    model = tmp / "model.json"
    return [
        (["glue", "--link", f"{d}/dunfield.json", "--k1", f"{d}/k2_5.json", "--k2", f"{d}/k2_9.json",
          "--out", str(model)], "model.json", "model_g24.json"),
        (["verify", "--model", str(model), "--which", "containment", "--out", str(tmp / "c.json")],
         "c.json", "containment_g24.json"),
        (["verify", "--model", str(model), "--which", "mcmullen", "--out", str(tmp / "m.json"),
          "--csv", str(tmp / "m.csv")], "m.json", "mcmullen_g24.json"),
        (["counterexample", "--model", str(model), "--class", "5,-1", "--out", str(tmp / "x.json")],
         "x.json", "counterexample_g24.json"),
        (["ball", "--model", str(model), "--svg", str(tmp / "b.svg")], "b.svg", "ball_g24.svg"),
        (["ball", "--link", f"{d}/dunfield.json", "--svg", str(tmp / "d.svg")], "d.svg", "ball_dunfield.svg"),
        (["norm", "--model", str(model), "--class", "5,-1"], None, None),
        (["report", "--model", str(model), "--out", str(tmp / "rep"), "--sweep", "6"], None, None),
    ]


@ac(9, "byte-identical CLI output across runs and against golden files")
def test_ac9_determinism(tmp_path, capsys):
    outputs = []
    for k in range(2):
        tmp = tmp_path / f"run{k}"
        tmp.mkdir()
        files, stdout = {}, []
        for argv, produced, _ in _cli_runs(tmp):
            code = run(argv)
            stdout.append((code, capsys.readouterr().out.replace(str(tmp), "<tmp>")))
            if produced:
                files[produced] = (tmp / produced).read_bytes()
        for p in sorted((tmp / "rep").iterdir()):
            files[f"rep/{p.name}"] = p.read_bytes()
        files["m.csv"] = (tmp / "m.csv").read_bytes()
        outputs.append((files, stdout))
    (files_a, out_a), (files_b, out_b) = outputs
    same = files_a == files_b and out_a == out_b
    golden_diff = [g for _, produced, g in _cli_runs(tmp_path)
                   if g and files_a[produced] != (GOLDEN / g).read_bytes()]
    all_ok = all(code == 0 for code, _ in out_a)
    report(9, same and not golden_diff and all_ok,
           f"{len(files_a)} files identical across runs: {same}; golden mismatches {golden_diff}")


def test_golden_directory_is_complete():
    names = {g for _, _, g in _cli_runs(GOLDEN) if g}
    assert names <= {p.name for p in GOLDEN.iterdir()}


def test_extreme_point_oracle_sanity():
    square = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)]
    assert extreme_points(square) == {(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0)}
    cube = list(itertools.product((0, 2), repeat=3)) + [(1, 1, 1), (1, 1, 2), (0, 1, 0)]
    assert extreme_points(cube) == set(itertools.product((0, 2), repeat=3))
