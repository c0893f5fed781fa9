"""Command line: draw envelopes, sweep section/slab profiles, run the local identity checks.

Exit codes: 0 pass, 1 check failed (sup above tolerance, or a failed check),
2 precondition failure (unknown name, bad scene, containment, symmetry, I/O).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import ContainmentViolated, GeometryError, NotCentrallySymmetric
from .harness import SweepConfig, section_profile, slab_profile, taylor_checks
from .scene import BUILTIN_SCENES, Scene, UnknownName
from .sections import SectionConfig, VertexPolicy
from .support_fn import TWO_PI, SupportFunction, envelope_residual, support_point
from .svg import envelope_svg

TAYLOR_FRAMES = (math.pi / 2, 1.0, 2.5)
RESIDUAL_SAMPLES = 1000


class UsageFailure(Exception):
    """Precondition failure mapped to exit code 2."""


def load_scene(source: str | None) -> Scene:
    if source is None:
        return BUILTIN_SCENES["figure1"]()
    if source in BUILTIN_SCENES:
        return BUILTIN_SCENES[source]()
    try:
        return Scene.load(source)
    except OSError as exc:
        raise UsageFailure(f"cannot read scene {source!r}: {exc}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageFailure(f"invalid scene {source!r}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageFailure(f"cannot write {path!r}: {exc}") from exc


def cmd_envelope(args) -> int:
    scene = load_scene(args.scene)
    h = scene.hedgehog(args.hedgehog)
    n = args.samples or scene.samples
    lines = tuple(float(x) for x in args.lines.split(",")) if args.lines else ()
    _write(args.out, envelope_svg(h, n, lines))
    return 0


def cmd_verify(args) -> int:
    scene = load_scene(args.scene)
    P, Q = scene.polygon(args.p), scene.polygon(args.q)
    h = scene.hedgehog(args.hedgehog)
    pass_tol = args.tol if args.tol is not None else scene.pass_tol
    cfg = SweepConfig(
        samples=args.samples or scene.samples,
        strict=args.strict,
        section=SectionConfig(scene.tolerances, VertexPolicy.REPORT),
    )
    sweep = slab_profile if args.kind == "slabs" else section_profile
    try:
        prof = sweep(P, Q, h, cfg=cfg)
    except (ContainmentViolated, NotCentrallySymmetric) as exc:
        raise UsageFailure(str(exc)) from exc
    if args.out is not None:
        _write(args.out, prof.to_csv())
    ok = prof.sup <= pass_tol
    print(
        f"kind={args.kind} sup={prof.sup!r} arg_sup={prof.arg_sup!r} "
        f"n={len(prof.thetas)} skipped={len(prof.skipped)} pass_tol={pass_tol!r} "
        f"{'PASS' if ok else 'FAIL'}"
    )
    return 0 if ok else 1


def run_checks(h: SupportFunction, seed: int = 0, n: int = RESIDUAL_SAMPLES, scene: Scene | None = None) -> tuple:
    """Envelope residuals, finite-difference derivative and Taylor frames; returns (ok, lines)."""
    tol = scene.tolerances if scene else h.tol
    rng = np.random.default_rng(seed)
    thetas = np.sort(rng.uniform(0.0, TWO_PI, n))
    kinks = h.kinks()
    near_kink = [t for t in thetas if any(
        min(abs(t - k), TWO_PI - abs(t - k)) <= 2 * tol.fd_step for k in kinks)]
    usable = [t for t in thetas if t not in near_kink]
    lines, ok = [], True

    f_max = df_max = 0.0
    for t in usable:
        f, df = envelope_residual(h, t, support_point(h, t))
        f_max, df_max = max(f_max, abs(f)), max(df_max, abs(df))
    good = f_max <= tol.residual and df_max <= tol.residual
    ok &= good
    lines.append(
        f"envelope_residual {'PASS' if good else 'FAIL'} max|F|={f_max:.3e} "
        f"max|dF|={df_max:.3e} samples={len(usable)}"
    )

    step = tol.fd_step
    fd_max = max(
        (abs(h.slope(t) - (h(t + step) - h(t - step)) / (2 * step)) for t in usable), default=0.0
    )
    good = fd_max <= tol.finite_difference
    ok &= good
    lines.append(f"derivative_fd {'PASS' if good else 'FAIL'} max_err={fd_max:.3e} step={step:g}")

    for frame in TAYLOR_FRAMES:
        if h.kink_at(frame) or any(
            min(abs(frame - k), TWO_PI - abs(frame - k)) <= 1e-2 for k in kinks
        ):
            lines.append(f"taylor frame={frame:.6f} SKIP near derivative jump")
            continue
        r = taylor_checks(h, SweepConfig(section=SectionConfig(tol)), base_theta=frame)
        ok &= r.passed
        note = "exact" if r.exact else ("quadratic" if r.quadratic_applicable else "higher-order")
        ratios = ",".join(f"{x:.2f}" for x in r.ratios)
        lines.append(
            f"taylor frame={frame:.6f} {'PASS' if r.passed else 'FAIL'} {note} ratios=[{ratios}] "
            f"fd_err={r.fd_error:.3e} chain_err={r.chain_rule_error:.3e}"
        )
    if kinks:
        lines.append("skipped derivative jumps at theta=" + ",".join(repr(k) for k in kinks))
    return ok, lines


def cmd_checks(args) -> int:
    scene = load_scene(args.scene)
    h = scene.hedgehog(args.hedgehog)
    ok, lines = run_checks(h, args.seed, args.samples or RESIDUAL_SAMPLES, scene)
    for line in lines:
        print(line)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_scene(args) -> int:
    scene = load_scene(args.scene)
    _write(args.out, scene.to_json() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", help="scene JSON path or built-in name (default: figure1)")
    common.add_argument("--samples", type=int, help="number of sampled directions")
    common.add_argument("--tol", type=float, help="pass tolerance for verify (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomly sampled directions")
    common.add_argument("--out", help="output path ('-' for stdout)")

    parser = argparse.ArgumentParser(prog="hedgehog-sections", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("envelope", parents=[common], help="write the hedgehog envelope as SVG")
    p.add_argument("hedgehog")
    p.add_argument("--lines", help="comma-separated angles of supporting lines to overlay")
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("verify", parents=[common], help="sweep |vol(P) - vol(Q)| over directions")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("hedgehog")
    p.add_argument("--kind", choices=("sections", "slabs"), default="slabs")
    p.add_argument("--strict", action="store_true", help="require origin-symmetric P, Q and symmetric h")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("checks", parents=[common], help="envelope residual, derivative and Taylor checks")
    p.add_argument("hedgehog")
    p.set_defaults(func=cmd_checks)

    p = sub.add_parser("scene", parents=[common], help="print a scene as JSON")
    p.set_defaults(func=cmd_scene)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageFailure, UnknownName, ContainmentViolated, NotCentrallySymmetric) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GeometryError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
