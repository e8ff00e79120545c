"""Command-line front end.

Exit codes: 0 success, 1 invalid certificate (or failed verification),
2 usage errors and degenerate input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .brackets import format_bracket
from .certificates import (
    FAMILIES,
    SamplingError,
    WitnessSearchFailed,
    cb_valid_subsets,
    certify_family,
    saturation_certificate_pencil,
)
from .constructions import (
    DEFAULT_MORE_POINTS_PARAMS,
    DEFAULT_PASCAL_PARAMS,
    build_caminata_schaffler,
    build_cb_grid,
    build_more_points,
    build_pascal,
    build_pencil,
)
from .exact import parse_scalar_list
from .gc import eval_numeric, expand_polynomial, parse
from .matroid import PointConfig, matroid_from_config


class CliError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _read_config(path: str) -> PointConfig:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise CliError(f"cannot read config {path!r}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path!r} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
    return PointConfig.from_json(data)


def _cmd_gc(args) -> int:
    if args.gc_command == "expand":
        print(expand_polynomial(parse(args.expr), args.rank).to_text())
        return 0
    cfg = _read_config(args.config)
    ext = eval_numeric(args.expr, cfg)
    out = {"expression": args.expr, **ext.to_json()}
    if ext.step in (0, ext.r):
        out["value"] = str(ext.value)
    if ext.vectors is not None and not ext.is_zero():
        out["vectors"] = [[str(x) for x in v] for v in ext.vectors]
    print(_dump(out))
    return 0


def _cmd_matroid(args) -> int:
    m = matroid_from_config(_read_config(args.config))
    out = m.to_json()
    out["bases"] = [list(b) for b in sorted(m.bases)]
    out["nonbasis_brackets"] = [format_bracket(b) for b in m.nonbases()]
    print(_dump(out))
    return 0


def _cmd_build(args) -> int:
    kind = args.build_command
    params = parse_scalar_list(args.params) if getattr(args, "params", None) else None
    if kind == "pascal":
        cfg = build_pascal(params if params is not None else DEFAULT_PASCAL_PARAMS)
    elif kind == "pencil":
        cfg = build_pencil()
    elif kind == "more-points":
        if params is None:
            if args.n > len(DEFAULT_MORE_POINTS_PARAMS):
                raise CliError(f"--n {args.n} needs explicit --params (defaults cover n <= {len(DEFAULT_MORE_POINTS_PARAMS)})")
            params = DEFAULT_MORE_POINTS_PARAMS[: args.n]
        elif len(params) != args.n:
            raise CliError(f"--n {args.n} but {len(params)} parameters given")
        cfg = build_more_points(params)
    elif kind == "cs":
        cfg, _ = build_caminata_schaffler(args.d, params)
    else:
        cfg = build_cb_grid(args.k)
    print(cfg.dumps())
    return 0


def _cmd_certify(args) -> int:
    cert = certify_family(args.family, args.which, n=args.n, d=args.d, k=args.k, seed=args.seed, trials=args.trials)
    print(_dump(cert.to_json()))
    return 0 if cert.valid else 1


def _cmd_verify(args) -> int:
    report = saturation_certificate_pencil()
    print(_dump(report))
    return 0 if report["ok"] else 1


def _cmd_cb(args) -> int:
    subsets = cb_valid_subsets(args.k)
    out = {"k": args.k, "count": len(subsets),
           "subsets": [{"index": i, "points": list(s), "line": line} for i, (s, line) in enumerate(subsets)]}
    print(_dump(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gcmatroid", description="Grassmann-Cayley algebra and matroid variety certificates")
    p.add_argument("--threads", type=int, default=1,
                   help="cap on worker threads (computations currently run single-threaded)")
    sub = p.add_subparsers(dest="command", required=True)

    gc = sub.add_parser("gc", help="Grassmann-Cayley expressions")
    gsub = gc.add_subparsers(dest="gc_command", required=True)
    ex = gsub.add_parser("expand", help="expand an expression into a bracket polynomial")
    ex.add_argument("--rank", type=int, required=True)
    ex.add_argument("expr")
    ev = gsub.add_parser("eval", help="evaluate an expression on a configuration")
    ev.add_argument("--config", required=True, help="PointConfig JSON file, or - for stdin")
    ev.add_argument("expr")

    mt = sub.add_parser("matroid", help="bases and nonbases of a configuration")
    mt.add_argument("--config", required=True, help="PointConfig JSON file, or - for stdin")

    bd = sub.add_parser("build", help="build a configuration")
    bsub = bd.add_subparsers(dest="build_command", required=True)
    bp = bsub.add_parser("pascal")
    bp.add_argument("--params", help="six comma-separated rationals")
    bsub.add_parser("pencil")
    bm = bsub.add_parser("more-points")
    bm.add_argument("--n", type=int, default=8)
    bm.add_argument("--params", help="n comma-separated rationals")
    bc = bsub.add_parser("cs")
    bc.add_argument("--d", type=int, default=3)
    bc.add_argument("--params", help="d+4 comma-separated rationals")
    bg = bsub.add_parser("cb")
    bg.add_argument("--k", type=int, default=4)

    ct = sub.add_parser("certify", help="nontriviality certificate for a named polynomial")
    ct.add_argument("--family", required=True, choices=FAMILIES)
    ct.add_argument("--which", help="pascal: f|g7|g8|g9|h78|h79|h89|quartic|cubic|quadric; "
                                    "more_points: i; cs: expression index; cb: subset index")
    ct.add_argument("--seed", type=int, default=42)
    ct.add_argument("--trials", type=int, default=100)
    ct.add_argument("--n", type=int, default=8)
    ct.add_argument("--d", type=int, default=3)
    ct.add_argument("--k", type=int, default=4)

    vf = sub.add_parser("verify", help="identity checks")
    vf.add_argument("what", choices=["pencil-saturation"])

    cb = sub.add_parser("cb", help="Cayley-Bacharach tools")
    csub = cb.add_subparsers(dest="cb_command", required=True)
    cs = csub.add_parser("subsets")
    cs.add_argument("--k", type=int, default=4)
    return p


HANDLERS = {"gc": _cmd_gc, "matroid": _cmd_matroid, "build": _cmd_build, "certify": _cmd_certify,
            "verify": _cmd_verify, "cb": _cmd_cb}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return HANDLERS[args.command](args)
    except (CliError, ValueError, KeyError, IndexError, WitnessSearchFailed, SamplingError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
