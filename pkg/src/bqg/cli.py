"""Command line front end.

    bqg list
    bqg verify --instance sweedler --suite all
    bqg pontrjagin --instance fun:Z2 --format json
    bqg export --instance taft:3 --output taft3.json

Exit status: 0 when every requested check passes, 1 when some law fails,
2 for usage errors (unknown subcommand, instance or malformed file).
"""

import argparse
import json
import sys
import time

from .duality import build_dual, dual_report, pair_coords, pontrjagin_check
from .freemod import Vec
from .instances import (CATALOG, InstanceFileError, export_instance, load_custom, resolve)
from .modcomod import modcomod_report
from .modular import modular_report
from .qgcore import SUITES, Report, derivation_report, verify_laws
from .scalars import to_literal

COMMANDS = ("list", "verify", "derive", "modular", "dual", "pontrjagin", "pair", "modcomod", "export")


class UsageError(Exception):
    pass


def build_parser():
    p = argparse.ArgumentParser(prog="bqg", description="Exact law checks for algebraic quantum groups.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name in COMMANDS:
        s = sub.add_parser(name)
        if name == "list":
            s.add_argument("--format", choices=("text", "json"), default="text")
            s.add_argument("--output")
            continue
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--instance", help="catalog name, e.g. fun:S3, alg:Z, sweedler, taft:3, dual:fun:Z3")
        src.add_argument("--file", help="instance file (json)")
        s.add_argument("--radius", type=int, default=3)
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--output")
        s.add_argument("--timing", action="store_true", help="include wall time in json reports")
        if name == "verify":
            s.add_argument("--suite", choices=SUITES, default="all")
        if name == "pair":
            s.add_argument("--element", help="basis label f of H")
            s.add_argument("--dual", help="basis label c of the dual, standing for F_l(c)")
    return p


def load(args):
    if args.file:
        try:
            return load_custom(args.file, check=False)
        except InstanceFileError as exc:
            raise UsageError(str(exc)) from None
    name = args.instance
    dual = name.startswith("dual:")
    try:
        data = resolve(name[5:] if dual else name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return build_dual(data) if dual else data


def _label(data, text):
    for lab in data.labels(data.search_radius):
        if str(lab) == text:
            return lab
    raise UsageError(f"{text!r} is not a basis label of {data.name}")


def pair_report(data, args):
    radius = 0 if data.finite else args.radius
    rep = Report(data.name, radius)
    labels = list(data.labels(radius))
    if args.element or args.dual:
        if not (args.element and args.dual):
            raise UsageError("pair needs both --element and --dual")
        f, c = _label(data, args.element), _label(data, args.dual)
        value = pair_coords(data, Vec.basis(c), Vec.basis(f))
        rep.values = {"pair": [str(f), str(c), to_literal(value)]}
        return rep
    table = [[to_literal(pair_coords(data, Vec.basis(c), Vec.basis(f))) for c in labels] for f in labels]
    rep.values = {"labels": [str(x) for x in labels], "pairing": table}
    # a nonzero row for every f is the faithfulness half of nondegeneracy
    bad = next((str(f) for f, row in zip(labels, table) if all(x == "0" for x in row)), None)
    rep.record("pair.faithful", "every window element pairs nontrivially with the dual",
               bad is None, None if bad is None else {"input": [bad]})
    return rep


def run_command(args, data):
    r = args.radius
    if args.command == "verify":
        return verify_laws(data, args.suite, r)
    if args.command == "derive":
        return derivation_report(data, r)
    if args.command == "modular":
        return modular_report(data, r)
    if args.command == "dual":
        return dual_report(data, r)
    if args.command == "pontrjagin":
        if not data.finite:
            raise UsageError("pontrjagin needs a finite dimensional instance")
        return pontrjagin_check(data, r)
    if args.command == "pair":
        return pair_report(data, args)
    if args.command == "modcomod":
        return modcomod_report(data, r)
    raise UsageError(f"unknown command {args.command!r}")


def render(rep, args, timing_ms):
    if args.format == "json":
        d = rep.to_dict(timing_ms)
        if getattr(rep, "values", None):
            d["values"] = rep.values
        return json.dumps(d, indent=1, default=str) + "\n"
    text = rep.to_text()
    values = getattr(rep, "values", None)
    if values and "pair" in values:
        f, c, v = values["pair"]
        text += f"\n  <F_l({c}), {f}> = {v}"
    elif values:
        text += "\n  pairing rows f, columns F_l(c) over " + " ".join(values["labels"])
        for lab, row in zip(values["labels"], values["pairing"]):
            text += f"\n    {lab}: " + " ".join(row)
    if timing_ms is not None:
        text += f"\n  time: {timing_ms} ms"
    return text + "\n"


def emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def list_text(fmt):
    if fmt == "json":
        return json.dumps({"instances": list(CATALOG)}, indent=1) + "\n"
    return "\n".join(CATALOG) + "\n"


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "list":
            emit(list_text(args.format), args.output)
            return 0
        data = load(args)
        if args.command == "export":
            doc = export_instance(data, args.radius if not data.finite else 0)
            emit(json.dumps(doc, indent=1) + "\n", args.output)
            return 0
        start = time.perf_counter()
        rep = run_command(args, data)
        timing = round((time.perf_counter() - start) * 1000, 1) if args.timing else None
        emit(render(rep, args, timing), args.output)
        return 0 if rep.ok else 1
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bqg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
