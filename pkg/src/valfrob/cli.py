"""valfrob command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, engine
from .classify import classify
from .descriptors import load_center, load_valuation, read_json
from .errors import (
    DescriptorError,
    GroupError,
    ParseError,
    PrecisionExhausted,
    ValfrobError,
    ZeroDenominatorError,
)
from .gallery import load_gallery, run_gallery
from .series import DEFAULT_PRECISION

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _common(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "text"), default=d("text"), help="output format")
    parser.add_argument("--seed", type=_u64, default=d(None),
                        help="seed for sampling (default 0) and for series streams (default: the descriptor's)")
    parser.add_argument("--precision", type=_positive, default=d(None),
                        help=f"starting series precision (default {DEFAULT_PRECISION})")
    parser.add_argument("--samples", type=_positive, default=d(200), help="sample budget for verification sweeps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="valfrob", description="Valuations and Frobenius splittings in characteristic p.")
    ap.add_argument("--version", action="version", version=f"valfrob {__version__}")
    _common(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _common(common, suppress=True)

    p = sub.add_parser("eval", parents=[common], help="value of an expression")
    p.add_argument("--valuation", required=True, help="valuation descriptor JSON file")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("split", parents=[common], help="apply the Frobenius splitting to an expression")
    p.add_argument("--valuation", required=True)
    p.add_argument("--expr", required=True)

    p = sub.add_parser("classify", parents=[common], help="F-finiteness / splitting report")
    p.add_argument("--valuation", required=True)
    p.add_argument("--center", help="center descriptor JSON file")

    p = sub.add_parser("verify", parents=[common], help="run the verification sweep for a descriptor")
    p.add_argument("--valuation", required=True)

    p = sub.add_parser("gallery", parents=[common], help="run the example gallery")
    p.add_argument("--entry", action="append", help="run only this entry (repeatable)")
    p.add_argument("--list", action="store_true", help="list entries and exit")
    p.add_argument("--emit", metavar="DIR", help="write each entry's descriptor files into DIR and exit")
    p.add_argument("--report", action="store_true", help="include full reports in JSON output")
    return ap


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load(args):
    return load_valuation(read_json(args.valuation), seed=args.seed, precision=args.precision)


def _sample_seed(args):
    return 0 if args.seed is None else args.seed


def cmd_eval(args, out):
    nu = _load(args)
    res = engine.evaluate(nu, args.expr)
    if args.format == "json":
        out.write(_dump(res) + "\n")
    else:
        line = f"{res['input']}: value {res['value_text']}"
        if "residue" in res:
            line += f"  (residue {res['residue']})"
        out.write(line + "\n")
    return EXIT_OK


def cmd_split(args, out):
    nu = _load(args)
    res = engine.split(nu, args.expr)
    if args.format == "json":
        out.write(_dump(res) + "\n")
    else:
        out.write(res["image"] + "\n")
    return EXIT_OK if res["claim_holds"] else EXIT_FAIL


def cmd_classify(args, out):
    nu = _load(args)
    R = load_center(read_json(args.center), nu) if args.center else None
    rep = classify(nu, R, samples=args.samples, seed=_sample_seed(args))
    out.write((_dump(rep.to_json()) if args.format == "json" else rep.to_text()) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    nu = _load(args)
    res = engine.verify(nu, samples=args.samples, seed=_sample_seed(args))
    if args.format == "json":
        out.write(_dump(res) + "\n")
    else:
        out.write(f"{res['kind']}: {'PASS' if res['passed'] else 'FAIL'}\n")
        for entry in res.get("log", []):
            out.write(f"  {entry['property']} [{entry['samples']}] {'ok' if entry['passed'] else 'FAILED'}\n")
    return EXIT_OK if res["passed"] else EXIT_FAIL


def cmd_gallery(args, out):
    if args.list:
        for e in load_gallery():
            out.write(f"{e.name}: {e.summary}\n")
        return EXIT_OK
    if args.emit:
        from pathlib import Path

        d = Path(args.emit)
        d.mkdir(parents=True, exist_ok=True)
        for e in load_gallery():
            (d / f"{e.name}.json").write_text(_dump(e.valuation) + "\n")
            if e.center is not None:
                (d / f"{e.name}.center.json").write_text(_dump(e.center) + "\n")
        out.write(f"wrote descriptors to {d}\n")
        return EXIT_OK
    try:
        results = run_gallery(args.entry, samples=min(args.samples, 200), seed=_sample_seed(args))
    except KeyError as exc:
        raise _Usage(str(exc)) from None
    ok = all(r["passed"] for r in results)
    if args.format == "json":
        if not args.report:
            for r in results:
                r.pop("report")
        out.write(_dump({"passed": ok, "entries": results}) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}\n")
            for x in r["results"]:
                if not x["passed"]:
                    out.write(f"    {x['field']}: expected {x['expected']!r}, got {x['got']!r} [{x['source']}: {x['cite']}]\n")
        out.write(f"{sum(r['passed'] for r in results)}/{len(results)} entries pass\n")
    return EXIT_OK if ok else EXIT_FAIL


class _Usage(Exception):
    pass


COMMANDS = {"eval": cmd_eval, "split": cmd_split, "classify": cmd_classify, "verify": cmd_verify,
            "gallery": cmd_gallery}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except PrecisionExhausted as exc:
        err.write(f"valfrob: precision exhausted: {exc}\n")
        return EXIT_PRECISION
    except (_Usage, ParseError, ZeroDenominatorError, DescriptorError, GroupError, FileNotFoundError) as exc:
        err.write(f"valfrob: error: {exc}\n")
        return EXIT_USAGE
    except ValfrobError as exc:
        err.write(f"valfrob: verification failed: {exc}\n")
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
