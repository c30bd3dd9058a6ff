"""normforge command-line driver.

Exit codes: 0 success, 1 mathematical violation, 2 input or usage error.
Every command reads and writes only the paths it is given.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .certificates import Certificate, encode_number
from .family import (
    GluedManifold,
    ModelError,
    glue,
    glued_alexander,
    glued_thurston,
    load_knot,
    load_link,
    load_model,
    mcmullen_sweep,
    verify_theorem,
)
from .render import picture_from_link, picture_from_model, plot_balls, write_svg
from .taubes import NoEligibleClass, build_counterexample

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
NORMS = ("alexander", "thurston", "both")
_CLASS_RE = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*$")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: dict[str, Path] = field(default_factory=dict)
    out: Path | None = None
    norm: str = "both"
    phi: tuple[int, int] | None = None

    def check_inputs(self) -> None:
        for label, path in self.inputs.items():
            if not path.is_file():
                raise InputError(f"--{label}: no such file {path}")


def parse_class(text: str) -> tuple[int, int]:
    m = _CLASS_RE.match(text)
    if not m:
        raise InputError(f"malformed class {text!r}; expected two integers like 5,-1")
    return int(m.group(1)), int(m.group(2))


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _emit(cert: Certificate, out: Path | None) -> int:
    _write(out, cert.dumps())
    print(f"verdict\t{cert.verdict}")
    if out is not None:
        print(f"certificate\t{out}")
    return EXIT_OK if cert.passed else EXIT_VIOLATION


def _model(cfg: RunConfig) -> GluedManifold:
    try:
        return load_model(cfg.inputs["model"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"model file {cfg.inputs['model']} is incomplete: missing {exc}") from None


def _thurston_cells(bound) -> list[str]:
    if bound.exact:
        return ["exact", str(encode_number(bound.value))]
    return ["lower", str(encode_number(bound.lower)), "strict" if bound.lower_strict else "nonstrict"]


# --- commands -----------------------------------------------------------------------------


def cmd_glue(cfg: RunConfig) -> int:
    D = load_link(cfg.inputs["link"])
    K1, K2 = load_knot(cfg.inputs["k1"]), load_knot(cfg.inputs["k2"])
    M = glue(D, K1, K2)
    if cfg.out is not None:
        cfg.out.write_text(json.dumps(M.to_json(), indent=2) + "\n", encoding="utf-8")
    print(f"genera\t{M.genera[0]},{M.genera[1]}")
    print(f"canonical\t{M.canonical[0]},{M.canonical[1]}")
    print(f"abasic_count\t{len(M.abasic)}")
    return EXIT_OK


def cmd_norm(cfg: RunConfig) -> int:
    M = _model(cfg)
    phi = cfg.phi
    print(f"class\t{phi[0]},{phi[1]}")
    if cfg.norm in ("alexander", "both"):
        print(f"alexander\t{glued_alexander(M, phi)}")
    if cfg.norm in ("thurston", "both"):
        print("\t".join(["thurston"] + _thurston_cells(glued_thurston(M, phi))))
    return EXIT_OK


def _write_rows(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["m1", "m2", "alexander", "thurston_kind", "thurston", "strict", "passed"])
        for r in rows:
            t = r["thurston"]
            w.writerow([
                r["m1"], r["m2"], r["alexander"],
                "exact" if t.exact else "lower", encode_number(t.lower),
                int(t.lower_strict), int(r["passed"]),
            ])


def cmd_verify(cfg: RunConfig, which: str, sweep: int, rows_out: Path | None) -> int:
    M = _model(cfg)
    if which == "containment":
        return _emit(verify_theorem(M), cfg.out)
    cert, rows = mcmullen_sweep(M, sweep)
    if rows_out is not None:
        _write_rows(rows, rows_out)
    print(f"classes_checked\t{cert.values['classes_checked']}")
    print(f"violations\t{cert.values['violations']}")
    return _emit(cert, cfg.out)


def cmd_counterexample(cfg: RunConfig, unit_pairing: bool) -> int:
    M = _model(cfg)
    try:
        cert = build_counterexample(M, cfg.phi, integral=not unit_pairing)
    except NoEligibleClass as exc:
        print(f"error\t{exc}", file=sys.stderr)
        return EXIT_VIOLATION
    values = cert.values
    print(f"phi\t{','.join(str(x) for x in cert.inputs['phi'])}")
    print(f"square\t{values['square']}")
    print(f"K_dot_phi\t{values['K_dot_phi']}")
    if values.get("runner_up"):
        print(f"runner_up\t{values['runner_up']['abs_pairing']}")
    return _emit(cert, cfg.out)


def _picture(cfg: RunConfig):
    if "model" in cfg.inputs:
        return picture_from_model(_model(cfg))
    return picture_from_link(load_link(cfg.inputs["link"]))


def cmd_ball(cfg: RunConfig, png: Path | None) -> int:
    pic = _picture(cfg)
    write_svg(pic, cfg.out, cfg.norm)
    if png is not None:
        plot_balls(pic, png, cfg.norm)
    print("vertices\t" + " ".join(
        f"({encode_number(x)},{encode_number(y)})" for x, y in pic.ball.vertices
    ))
    print(f"svg\t{cfg.out}")
    return EXIT_OK


def cmd_report(cfg: RunConfig, sweep: int) -> int:
    """Everything for one model in one directory: certificates, a norm table and figures."""
    M = _model(cfg)
    outdir = cfg.out
    outdir.mkdir(parents=True, exist_ok=True)
    status = EXIT_OK

    containment = verify_theorem(M)
    (outdir / "containment.json").write_text(containment.dumps(), encoding="utf-8")
    mcm, rows = mcmullen_sweep(M, sweep)
    (outdir / "mcmullen.json").write_text(mcm.dumps(), encoding="utf-8")
    _write_rows(rows, outdir / "norms.csv")
    print(f"containment\t{containment.verdict}")
    print(f"mcmullen\t{mcm.verdict}\t{mcm.values['classes_checked']}")
    if not (containment.passed and mcm.passed):
        status = EXIT_VIOLATION
    try:
        cex = build_counterexample(M)
        (outdir / "counterexample.json").write_text(cex.dumps(), encoding="utf-8")
        print(f"counterexample\t{cex.verdict}\t{','.join(map(str, cex.inputs['phi']))}")
    except NoEligibleClass as exc:
        print(f"counterexample\tnone\t{exc}")

    pic = picture_from_model(M)
    write_svg(pic, outdir / "balls.svg")
    plot_balls(pic, outdir / "balls.png")
    print(f"figures\t{outdir / 'balls.svg'}\t{outdir / 'balls.png'}")
    return status


# --- argument parsing -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="normforge", description="Alexander and Thurston norms of glued 3-manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("glue", help="glue two knot exteriors into a link exterior")
    g.add_argument("--link", required=True, type=Path)
    g.add_argument("--k1", required=True, type=Path)
    g.add_argument("--k2", required=True, type=Path)
    g.add_argument("--out", type=Path, help="model JSON to write")

    n = sub.add_parser("norm", help="evaluate the norms at one class")
    n.add_argument("--model", required=True, type=Path)
    n.add_argument("--class", dest="phi", required=True, help="m1,m2 (use --class=-1,2 for a leading minus)")
    n.add_argument("--norm", choices=NORMS, default="both")

    v = sub.add_parser("verify", help="check McMullen's inequality or the face containment")
    v.add_argument("--model", required=True, type=Path)
    v.add_argument("--which", choices=("mcmullen", "containment"), default="containment")
    v.add_argument("--out", type=Path, help="certificate path (stdout if omitted)")
    v.add_argument("--sweep", type=int, default=20, metavar="N", help="sweep |m_i| <= N")
    v.add_argument("--csv", type=Path, help="per-class table for the mcmullen sweep")

    c = sub.add_parser("counterexample", help="emit a class in the Taubes cone with no symplectic form")
    c.add_argument("--model", required=True, type=Path)
    c.add_argument("--class", dest="phi")
    c.add_argument("--out", type=Path)
    c.add_argument("--unit-pairing", action="store_true", help="scale psi so that <psi, phi> = 1")

    b = sub.add_parser("ball", help="draw the unit balls as SVG")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", type=Path)
    src.add_argument("--link", type=Path)
    b.add_argument("--norm", choices=NORMS, default="both")
    b.add_argument("--svg", required=True, type=Path)
    b.add_argument("--png", type=Path, help="also render with matplotlib")

    r = sub.add_parser("report", help="certificates, norm table and figures for one model")
    r.add_argument("--model", required=True, type=Path)
    r.add_argument("--out", required=True, type=Path, help="output directory")
    r.add_argument("--sweep", type=int, default=20, metavar="N")
    return p


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(args.command)
    for label in ("model", "link", "k1", "k2"):
        path = getattr(args, label, None)
        if path is not None:
            cfg.inputs[label] = path
    cfg.out = getattr(args, "svg", None) or getattr(args, "out", None)
    cfg.norm = getattr(args, "norm", "both")
    if getattr(args, "phi", None) is not None:
        cfg.phi = parse_class(args.phi)
    if getattr(args, "sweep", 0) < 0:
        raise InputError("--sweep must be nonnegative")
    cfg.check_inputs()
    return cfg


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.command == "glue":
            return cmd_glue(cfg)
        if cfg.command == "norm":
            return cmd_norm(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg, args.which, args.sweep, args.csv)
        if cfg.command == "counterexample":
            return cmd_counterexample(cfg, args.unit_pairing)
        if cfg.command == "ball":
            return cmd_ball(cfg, args.png)
        return cmd_report(cfg, args.sweep)
    except (InputError, ModelError, ValueError, KeyError, TypeError, OSError) as exc:
        # json.JSONDecodeError is a ValueError
        print(f"error\t{exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
