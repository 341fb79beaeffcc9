"""Command-line front end: pauli-dilate <command> [options].

Commands: channel, dilate, rep, commutant, evolve, collide, verify.
Exit codes: 0 success, 1 validation failure, 2 tolerance failure.
Reals are printed with 12 significant digits; complex numbers are
serialized as [re, im] pairs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .channels import PauliChannel, PauliLiouvillian, channel_from_descriptor, semigroup_channel
from .collisions import CollisionConfig, convergence_report
from .dilations import (
    defining_pauli_rep,
    pauli_channel_isometry,
    phase_damping_isometry,
    rep_report,
    solve_env_rep,
    solve_su2_generators,
)
from .dynamics import channel_at_time, dilation_from_descriptor
from .linalg import DEFAULT_TOL, ToleranceError, eig_rank
from .pauli import pauli, pauli_commutant


def _fmt_real(x: float) -> str:
    v = float(x)
    if v == 0.0:
        v = 0.0  # normalize -0.0
    return f"{v:.12g}"


def _render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}"{k}": {_render_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rendered = [_render_json(v, indent + 1) for v in obj]
        if all(len(r) < 24 and "\n" not in r for r in rendered):
            return "[" + ", ".join(rendered) + "]"
        return "[\n" + ",\n".join(inner + r for r in rendered) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, complex):
        return f"[{_fmt_real(obj.real)}, {_fmt_real(obj.imag)}]"
    if isinstance(obj, (float, np.floating)):
        return _fmt_real(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise TypeError(f"cannot render {type(obj)}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_descriptor(arg: str | None) -> dict:
    if not arg:
        raise ValueError("missing input descriptor (--in)")
    text = arg if arg.lstrip().startswith("{") else Path(arg).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON descriptor: {exc}") from exc


def _family_isometry(desc: dict, ch: PauliChannel):
    if desc.get("type") == "phase_damping":
        return phase_damping_isometry(float(desc["p"]))
    return pauli_channel_isometry(ch.p)


def cmd_channel(args) -> int:
    desc = _load_descriptor(args.input)
    obj = channel_from_descriptor(desc)
    if isinstance(obj, PauliLiouvillian):
        obj = semigroup_channel(obj, args.tmax if args.tmax is not None else 1.0)
    choi = obj.choi()
    report = {
        "probabilities": list(obj.p),
        "bloch_scaling": list(obj.bloch_scaling()),
        "kraus_rank": eig_rank(choi),
        "choi_eigenvalues": sorted((float(v) for v in np.linalg.eigvalsh(choi)), reverse=True),
    }
    _emit(_render_json(report) + "\n", args.output)
    return 0


def cmd_dilate(args) -> int:
    desc = _load_descriptor(args.input)
    ch = channel_from_descriptor(desc)
    if not isinstance(ch, PauliChannel):
        raise ValueError("dilate expects a channel descriptor, not a Liouvillian")
    v = _family_isometry(desc, ch)
    report = {
        "dim_system": v.dim_s,
        "dim_env": v.dim_e,
        "kraus_rank": eig_rank(ch.choi()),
        "isometry_defect": v.defect(),
        "isometry": [list(row) for row in v.v],
    }
    _emit(_render_json(report) + "\n", args.output)
    return 0


def cmd_rep(args) -> int:
    desc = _load_descriptor(args.input)
    ch = channel_from_descriptor(desc)
    if not isinstance(ch, PauliChannel):
        raise ValueError("rep expects a channel descriptor, not a Liouvillian")
    v = _family_isometry(desc, ch)
    rank = eig_rank(ch.choi())
    if rank != v.dim_e:
        raise ValueError(
            f"dilation is not minimal (Kraus rank {rank}, environment dim {v.dim_e}); "
            "remove vanishing probabilities first")
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    sol = solve_env_rep(v, defining_pauli_rep(), tol=tol)
    report = rep_report(sol)
    report["channel"] = {"probabilities": list(ch.p)}
    px, py, pz = ch.p[1:]
    if v.dim_e == 4 and abs(px - py) <= 1e-12 and abs(py - pz) <= 1e-12:
        gens = solve_su2_generators(v, tol=tol)
        report["su2_generators"] = {
            "jx": [list(row) for row in gens.jx],
            "jy": [list(row) for row in gens.jy],
            "jz": [list(row) for row in gens.jz],
            "residuals": list(gens.residuals),
        }
    _emit(_render_json(report) + "\n", args.output)
    return 0


def cmd_commutant(args) -> int:
    desc = _load_descriptor(args.input)
    gens = desc.get("generators")
    qubits = desc.get("qubits")
    if not isinstance(gens, list) or not isinstance(qubits, int):
        raise ValueError('commutant descriptor needs "generators": [...] and "qubits": n')
    strings = [pauli(s) for s in gens]
    result = pauli_commutant(strings, qubits)
    report = {
        "qubits": qubits,
        "generators": [str(p) for p in strings],
        "count": len(result),
        "commutant": [str(p) for p in result],
    }
    _emit(_render_json(report) + "\n", args.output)
    return 0


def cmd_evolve(args) -> int:
    desc = _load_descriptor(args.input)
    pd = dilation_from_descriptor(desc)
    tmax = args.tmax if args.tmax is not None else 2 * math.pi
    samples = args.samples
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    lines = ["t,pI,px,py,pz,leakage"]
    worst_leak = 0.0
    for t in np.linspace(0.0, tmax, samples):
        fit = channel_at_time(pd, t)
        worst_leak = max(worst_leak, fit.leakage)
        row = [fit.t, *fit.probs, fit.leakage]
        lines.append(",".join(_fmt_real(v) for v in row))
    _emit("\n".join(lines) + "\n", args.output)
    if args.strict and worst_leak > tol:
        print(f"error: non-Pauli leakage {worst_leak:.3e} exceeds {tol:.1e}", file=sys.stderr)
        return 2
    return 0


def cmd_collide(args) -> int:
    desc = _load_descriptor(args.input)
    a = desc.get("a")
    zeta = desc.get("zeta")
    if not isinstance(a, list) or len(a) != 3 or zeta is None:
        raise ValueError('collide descriptor needs "a": [ax, ay, az] and "zeta"')
    if "dts" in desc:
        t_final = float(desc.get("t_final", 1.0))
        dts = [float(v) for v in desc["dts"]]
        cfg = CollisionConfig(tuple(float(v) for v in a), float(zeta), dts[0], 1)
        entries = convergence_report(cfg, dts, t_final)
        lines = ["dt,max_trace_distance"]
        for entry in entries:
            lines.append(f"{_fmt_real(entry.dt)},{_fmt_real(entry.max_error)}")
        _emit("\n".join(lines) + "\n", args.output)
        return 0
    if "dt" not in desc or "n" not in desc:
        raise ValueError('collide descriptor needs "dt" and "n" (or "dts" and "t_final")')
    cfg = CollisionConfig(tuple(float(v) for v in a), float(zeta), float(desc["dt"]),
                          int(desc["n"]))
    entries = convergence_report(cfg, [cfg.dt], cfg.n * cfg.dt)
    lines = ["dt,t,trace_distance"]
    for t, err in entries[0].errors:
        lines.append(f"{_fmt_real(cfg.dt)},{_fmt_real(t)},{_fmt_real(err)}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_verify(args) -> int:
    results = verify_mod.run_all(seed=args.seed)
    width = max(len(r.name) for r in results)
    all_ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        extra = f" {r.detail}" if r.detail else ""
        print(f"{status} {r.name:<{width}} residual={r.residual:.3e} tol={r.tol:.1e}{extra}")
        all_ok = all_ok and r.passed
    print(f"{'all checks passed' if all_ok else 'CHECKS FAILED'} ({len(results)} total)")
    return 0 if all_ok else 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pauli-dilate",
                     description="Construct, evolve, and verify symmetric dilations "
                                 "of single-qubit Pauli channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--in", dest="input", metavar="FILE|JSON",
                           help="JSON descriptor path or inline JSON")
        p.add_argument("--out", dest="output", metavar="FILE",
                       help="output path (default: stdout)")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        p.add_argument("--seed", type=int, default=1234, help="seed for randomized checks")

    p = sub.add_parser("channel", help="probabilities, scalings, Kraus rank, Choi spectrum")
    common(p)
    p.add_argument("--tmax", type=float, default=None,
                   help="evaluation time for Liouvillian descriptors")
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("dilate", help="minimal dilation isometry of a channel")
    common(p)
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("rep", help="solve the environment representation")
    common(p)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("commutant", help="enumerate the Pauli commutant of a string set")
    common(p)
    p.set_defaults(func=cmd_commutant)

    p = sub.add_parser("evolve", help="time series of fitted channel probabilities")
    common(p)
    p.add_argument("--tmax", type=float, default=None)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--strict", action="store_true",
                   help="exit nonzero when non-Pauli leakage exceeds the tolerance")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("collide", help="collision-model convergence tables")
    common(p)
    p.set_defaults(func=cmd_collide)

    p = sub.add_parser("verify", help="run the cross-module invariant suite")
    common(p, needs_input=False)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ToleranceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
