"""Command-line front end: ``lipfree <subcommand> ...``.

Output is a JSON envelope ``{"tool-version", "invocation", "result"}`` with
sorted keys, or CSV / plain text where a table makes sense.  Exit status is
0 after any completed computation, 2 for invalid input and 1 for internal
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .free import FreeVector, free_norm
from .gallery import DEFAULTS, IDS, run_gallery
from .lipschitz import LipFunction, PreconditionError, lip_norm
from .metric import MetricSpace, StructureError, to_mask, validate
from .probes import ProbeSystem, Slice, bound_probe, combo_diameter, slice_diameter, ssd2p_witness
from .rational import fmt, to_fraction
from .transfer import PairWeights, fltp_check, ltp_check


class InputError(Exception):
    """Anything wrong with what the user handed us."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def rational(text) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _space(path, check=True) -> MetricSpace:
    space = MetricSpace.from_json(_read_json(path))
    if check:
        report = validate(space)
        if not report.valid:
            v = report.violations[0]
            raise InputError(f"{path} is not a metric: {v.kind} at {[space.labels[i] for i in v.points]}")
    return space


def _labels(space, text):
    if not text:
        return []
    return [space.index(s.strip()) for s in text.split(",") if s.strip()]


# --------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    space = _space(args.input, check=False)
    return validate(space).to_json(space)


def cmd_free_norm(args):
    space = _space(args.input)
    mu = FreeVector.from_json(space, _read_json(args.mu))
    if args.method == "both":
        a = free_norm(space, mu, "lp", args.mode)
        b = free_norm(space, mu, "flow")
        agree = a == b if args.mode == "exact" else abs(float(a) - float(b)) <= 1e-9
        return {"lp": _num(a), "flow": fmt(b), "agree": agree}
    value = free_norm(space, mu, args.method, args.mode)
    return {"method": args.method, "value": _num(value)}


def cmd_lip_norm(args):
    space = _space(args.input)
    f = LipFunction.from_json(space, _read_json(args.f))
    return {"value": fmt(lip_norm(space, f))}


def _slice(space, path):
    try:
        return Slice.from_json(space, _read_json(path))
    except KeyError as exc:
        raise InputError(f"{path}: missing field {exc}") from exc


def cmd_slice_diam(args):
    space = _space(args.input)
    res = slice_diameter(space, _slice(space, args.slice), mode=args.mode)
    if args.format == "csv":
        return res.table_csv(space)
    return res.to_json(space)


def cmd_combo_diam(args):
    space = _space(args.input)
    slices = [_slice(space, p) for p in args.slices]
    weights = args.weights or [Fraction(1, len(slices))] * len(slices)
    if len(weights) != len(slices):
        raise InputError("give one weight per slice")
    res = combo_diameter(space, list(zip(slices, weights)), mode=args.mode)
    if args.format == "csv":
        return res.table_csv(space)
    return res.to_json(space)


def cmd_ssd2p(args):
    space = _space(args.input)
    slices = [_slice(space, p) for p in args.slices]
    res = ssd2p_witness(space, slices, args.eps, stop_at_first=not args.full_table, mode=args.mode)
    return res.to_json(space)


def cmd_check(args):
    space = _space(args.input)
    kind = args.kind.upper()
    u, v = space.index(args.u), space.index(args.v)
    if kind in ("LTP", "SLTP"):
        N = _labels(space, args.set) if args.set is not None else list(space.points())
        res = ltp_check(space, kind, N, args.eps, u, v)
    else:
        if args.A is None:
            raise InputError("--A is required for fltp/fsltp")
        mu = PairWeights.from_json(space, _read_json(args.mu)) if args.mu else PairWeights()
        fs = [LipFunction.from_json(space, _read_json(p)) for p in args.f or []]
        res = fltp_check(space, kind, mu, args.eps, fs, to_mask(space, _labels(space, args.A)), u, v)
    return res.to_json(space)


def cmd_gallery(args):
    params = {
        "size": args.size, "alpha": args.alpha, "eps": args.eps, "seed": args.seed,
        "N": args.N, "n": args.n, "trials": args.trials, "delta": args.delta,
        "sweep_size": args.sweep_size,
    }
    accepted = DEFAULTS.get(args.id, {})
    given = {k: v for k, v in params.items() if v is not None}
    extra = sorted(set(given) - set(accepted))
    if extra:
        raise InputError(f"gallery {args.id} does not take {', '.join('--' + k for k in extra)}")
    rep = run_gallery(args.id, workers=args.threads, **given)
    if args.format == "csv":
        return rep.to_csv()
    if args.format == "text":
        return rep.to_text()
    return rep.to_json()


def cmd_probe(args):
    space = _space(args.input)
    try:
        system = ProbeSystem.from_json(space, _read_json(args.system))
    except KeyError as exc:
        raise InputError(f"probe system: missing or unknown name {exc}") from exc
    return bound_probe(space, system, args.mode).to_json(space)


def _num(v):
    return fmt(v) if isinstance(v, Fraction) else repr(float(v))


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float"], default="exact")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker cap")

    p = _Parser(prog="lipfree", description="Exact Lipschitz-free norms, slices and transfer checks.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check a metric-space document")
    s.add_argument("--input", required=True)
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("free-norm", parents=[common], help="norm of a free-space element")
    s.add_argument("--input", required=True)
    s.add_argument("--mu", required=True)
    s.add_argument("--method", choices=["lp", "flow", "both"], default="lp")
    s.set_defaults(run=cmd_free_norm)

    s = sub.add_parser("lip-norm", parents=[common], help="Lipschitz constant of a function")
    s.add_argument("--input", required=True)
    s.add_argument("--f", required=True)
    s.set_defaults(run=cmd_lip_norm)

    s = sub.add_parser("slice-diam", parents=[common], help="diameter of a slice")
    s.add_argument("--input", required=True)
    s.add_argument("--slice", required=True)
    s.set_defaults(run=cmd_slice_diam)

    s = sub.add_parser("combo-diam", parents=[common], help="diameter of a convex combination of slices")
    s.add_argument("--input", required=True)
    s.add_argument("--slices", nargs="+", required=True)
    s.add_argument("--weights", nargs="+", type=rational)
    s.set_defaults(run=cmd_combo_diam)

    s = sub.add_parser("ssd2p", parents=[common], help="symmetric witness search")
    s.add_argument("--input", required=True)
    s.add_argument("--slices", nargs="+", required=True)
    s.add_argument("--eps", type=rational, required=True)
    s.add_argument("--full-table", action="store_true", help="scan every pair instead of stopping at the first witness")
    s.set_defaults(run=cmd_ssd2p)

    s = sub.add_parser("check", parents=[common], help="LTP / SLTP / FLTP / FSLTP inequalities")
    s.add_argument("--kind", choices=["ltp", "sltp", "fltp", "fsltp"], required=True)
    s.add_argument("--input", required=True)
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s.add_argument("--eps", type=rational, required=True)
    s.add_argument("--set", help="comma-separated labels of N (ltp/sltp; default all points)")
    s.add_argument("--A", help="comma-separated labels of A (fltp/fsltp)")
    s.add_argument("--mu", help="pair-weights document")
    s.add_argument("--f", nargs="*", help="function documents")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("gallery", parents=[common], help="scripted reproductions")
    s.add_argument("--id", choices=IDS, required=True)
    s.add_argument("--size", type=int)
    s.add_argument("--sweep-size", type=int, dest="sweep_size")
    s.add_argument("--alpha", type=rational)
    s.add_argument("--eps", type=rational)
    s.add_argument("--delta", type=rational)
    s.add_argument("--N", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int)
    s.set_defaults(run=cmd_gallery)

    s = sub.add_parser("probe", parents=[common], help="exact optimum of a bound-probe system")
    s.add_argument("--input", required=True)
    s.add_argument("--system", required=True)
    s.set_defaults(run=cmd_probe)
    return p


def _invocation(args) -> dict:
    skip = {"run", "output", "threads", "command"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        if isinstance(v, Fraction):
            v = fmt(v)
        elif isinstance(v, list):
            v = [fmt(x) if isinstance(x, Fraction) else x for x in v]
        out[k] = v
    return out


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise InputError("--threads must be positive")
        result = args.run(args)
    except (InputError, StructureError, PreconditionError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        err = {"error": {"type": type(exc).__name__, "message": str(msg)}}
        if isinstance(exc, PreconditionError) and exc.witness is not None:
            err["error"]["witness"] = repr(exc.witness)
        sys.stdout.write(json.dumps(err, sort_keys=True) + "\n")
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except Exception as exc:  # pragma: no cover - reported, not hidden
        err = {"error": {"type": type(exc).__name__, "message": str(exc), "internal": True}}
        sys.stdout.write(json.dumps(err, sort_keys=True) + "\n")
        return 1
    if isinstance(result, str):
        _emit(result, args.output)
        return 0
    doc = {"tool-version": __version__, "invocation": {"subcommand": args.command, **_invocation(args)}, "result": result}
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.output)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
