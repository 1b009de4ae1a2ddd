"""``lcdforge`` command line.

Exit status: 0 success, 1 a checked property is false, 2 usage / input /
precondition / checksum error, 3 undecided within the work budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from lcdforge import artifacts, gf
from lcdforge.code import (
    LinearCode,
    hull_dimension,
    is_even,
    is_hermitian_lcd,
    is_lcd,
    min_weight,
    min_weight_at_least,
)
from lcdforge.construct import (
    ConstructionError,
    ConstructionRecord,
    TooLarge,
    eaqecc_params,
    kind_for,
)
from lcdforge.matrix import MatrixFormatError, write_matrix
from lcdforge.minweight import DEFAULT_BUDGET, Undecided, WeightMethod
from lcdforge.search import SearchError, SearchSpec, run_search

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer") from None


def _budget(args):
    return args.budget if args.budget is not None else _env_int("LCDFORGE_BUDGET", DEFAULT_BUDGET)


def _workers(args):
    return args.workers if args.workers is not None else _env_int("LCDFORGE_WORKERS", os.cpu_count() or 1)


def load_code(arg: str) -> tuple[LinearCode, str]:
    """A matrix file, or a built-in instance name such as ``data/C_2_27``."""
    if os.path.isfile(arg):
        return LinearCode.read(arg, os.path.basename(arg)), arg
    ident = artifacts.normalize_id(arg)
    if ident in artifacts.instance_ids():
        return artifacts.load_instance(ident), ident
    raise UsageError(f"{arg}: no such file or built-in instance")


def _emit(args, values: dict, text: str):
    print(json.dumps(values) if args.json else text)


def _flag(v: bool) -> str:
    return "true" if v else "false"


# -- subcommands -------------------------------------------------------------------


def cmd_check(args) -> int:
    code, _ = load_code(args.matrix)
    herm = args.hermitian
    if herm and code.q != 4:
        raise UsageError("--hermitian needs a GF(4) matrix")
    label = "hermitian_lcd" if herm else "lcd"
    lcd = is_hermitian_lcd(code) if herm else is_lcd(code)
    values = {"q": code.q, "n": code.n, "k": code.k, label: lcd}
    parts = [f"n={code.n}", f"k={code.k}", f"{label}={_flag(lcd)}"]
    status = EXIT_OK
    if args.at_least is not None:
        ok = min_weight_at_least(code, args.at_least, args.method, _budget(args))
        values["d_at_least"] = {"bound": args.at_least, "holds": ok}
        parts.append(f"d>={args.at_least}:{_flag(ok)}")
        status = EXIT_OK if ok else EXIT_REFUTED
    elif not args.no_min_weight:
        res = min_weight(code, args.method, _budget(args))
        values.update(d=res.d, method=res.method.value, work=res.work)
        parts.append(f"d={res.d}")
    hull = hull_dimension(code, herm)
    values["hull_dim"] = hull
    parts.append(f"hull_dim={hull}")
    if code.q == 2:
        values["even"] = is_even(code)
        parts.append(f"even={_flag(values['even'])}")
    if "method" in values:
        parts.append(f"method={values['method']} work={values['work']}")
    _emit(args, values, " ".join(parts))
    if args.expect_lcd and not lcd:
        return EXIT_REFUTED
    return status


def cmd_minweight(args) -> int:
    code, _ = load_code(args.matrix)
    res = min_weight(code, args.method, _budget(args))
    values = {
        "n": code.n,
        "k": code.k,
        "d": res.d,
        "method": res.method.value,
        "work": res.work,
        "witness": gf.format_vector(code.q, res.witness),
    }
    text = f"d={res.d} method={res.method.value} work={res.work}\nwitness {values['witness']}"
    _emit(args, values, text)
    return EXIT_OK


def _write_result(args, code: LinearCode, record: ConstructionRecord):
    line = record.to_line(code.q)
    if args.output:
        write_matrix(code.gen, args.output)
        with open(args.output + ".record", "w") as fh:
            fh.write(line + "\n")
        if args.json:
            print(json.dumps({"n": code.n, "k": code.k, "output": args.output, "record": line}))
        else:
            print(f"wrote [{code.n},{code.k}] generator to {args.output}; record {line}")
    else:
        sys.stdout.write(code.gen.to_text())
        print(f"record: {line}", file=sys.stderr)


def _parse_a(text):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--a must look like 1,0,0; got {text!r}") from None


def cmd_extend(args) -> int:
    code, seed = load_code(args.seed)
    params = {"x": gf.parse_vector(code.q, args.x)}
    if code.q == 3:
        params["a"] = _parse_a(args.a)
    record = ConstructionRecord(kind_for(code.q), seed, params)
    _write_result(args, record.replay(code), record)
    return EXIT_OK


def cmd_transform(args) -> int:
    code, seed = load_code(args.seed)
    record = ConstructionRecord("even-transform", seed, {"x": gf.parse_vector(code.q, args.x)})
    _write_result(args, record.replay(code), record)
    return EXIT_OK


def cmd_puncture(args) -> int:
    code, seed = load_code(args.seed)
    record = ConstructionRecord("puncture-zero", seed, {"column": args.column})
    _write_result(args, record.replay(code), record)
    return EXIT_OK


def cmd_simplex(args) -> int:
    code, seed = load_code(args.seed)
    record = ConstructionRecord("simplex-extend", seed, {"s": args.s})
    try:
        out = record.replay(code)
    except TooLarge as e:
        d = min_weight(code, budget=_budget(args)).d
        from lcdforge.construct import simplex_params

        p = simplex_params(code.q, code.n, code.k, d, args.s)
        print(f"{e}; parameters [{p.n},{p.k},{p.d}]", file=sys.stderr)
        return EXIT_USAGE
    _write_result(args, out, record)
    return EXIT_OK


def cmd_eaqecc(args) -> int:
    code, _ = load_code(args.matrix)
    p = eaqecc_params(code, args.d)
    _emit(args, p._asdict(), str(p))
    return EXIT_OK


def cmd_search(args) -> int:
    code, seed = load_code(args.seed)
    op = args.op
    if op == "extend":
        op = kind_for(code.q)
    elif op == "transform":
        op = "even-transform"
    spec = SearchSpec(
        seed=seed,
        operation=op,
        target_d=args.target_d,
        mode=args.mode,
        a=_parse_a(args.a),
        count=args.count,
        rng_seed=args.rng_seed,
        normalize=not args.no_normalize,
        stop=args.stop,
        budget=_budget(args),
        workers=_workers(args),
    )
    report = run_search(spec, code)
    doc = report.to_json() if args.json else report.to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(doc)
        print(f"{len(report.hits)} hits, {report.admissible} admissible; report in {args.output}")
    else:
        sys.stdout.write(doc)
    return EXIT_UNDECIDED if report.undecided and not report.hits else EXIT_OK


def cmd_reproduce(args) -> int:
    bad = artifacts.verify_data()
    if bad:
        raise artifacts.ChecksumError(f"checksum mismatch for data file(s): {', '.join(bad)}")
    selector = "all" if args.all or not args.lemma else args.lemma
    report = artifacts.reproduce(selector, budget=_budget(args), workers=_workers(args))
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.ok else EXIT_REFUTED


def cmd_table(args) -> int:
    bad = artifacts.verify_data()
    if bad:
        raise artifacts.ChecksumError(f"checksum mismatch for data file(s): {', '.join(bad)}")
    report = artifacts.reproduce("all", budget=_budget(args), workers=_workers(args)) if args.verify else None
    entries = artifacts.build_table(args.field, report)
    if args.json:
        print(json.dumps([{"n": e.n, "k": e.k, "lower": e.lower, "upper": e.upper, "status": e.status} for e in entries]))
    elif args.csv:
        sys.stdout.write(artifacts.table_csv(entries))
    else:
        sys.stdout.write(artifacts.table_text(entries))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def _common(p, budget=True, workers=False):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    if budget:
        p.add_argument("--budget", type=int, help="work cap in elementary steps (env LCDFORGE_BUDGET)")
    if workers:
        p.add_argument("--workers", type=int, help="worker processes (env LCDFORGE_WORKERS)")


def _methods():
    return [m.value for m in WeightMethod]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcdforge", description="LCD codes over GF(2), GF(3) and GF(4).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="LCD status, hull dimension, evenness, minimum weight")
    p.add_argument("matrix")
    p.add_argument("--hermitian", action="store_true")
    p.add_argument("--method", choices=_methods(), default="auto")
    p.add_argument("--at-least", type=int, metavar="D", help="only decide whether d >= D (exit 1 if not)")
    p.add_argument("--no-min-weight", action="store_true")
    p.add_argument("--expect-lcd", action="store_true", help="exit 1 unless the code is LCD")
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("minweight", help="exact minimum weight with a witness")
    p.add_argument("matrix")
    p.add_argument("--method", choices=_methods(), default="auto")
    _common(p)
    p.set_defaults(func=cmd_minweight)

    for name, func, helptext in (
        ("extend", cmd_extend, "[n+2,k+1] (GF(3): [n+3,k+1]) extension by a vector x"),
        ("transform", cmd_transform, "even transform of a binary even LCD [I_k | A]"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("seed")
        p.add_argument("--x", required=True)
        if name == "extend":
            p.add_argument("--a", default="1,0,0", help="GF(3) header, 1,0,0 or 1,1,2")
        p.add_argument("-o", "--output")
        _common(p, budget=False)
        p.set_defaults(func=func)

    p = sub.add_parser("puncture", help="delete an identically zero coordinate")
    p.add_argument("seed")
    p.add_argument("--column", type=int, required=True, help="1-based")
    p.add_argument("-o", "--output")
    _common(p, budget=False)
    p.set_defaults(func=cmd_puncture)

    p = sub.add_parser("simplex-extend", help="append s copies of the simplex generator")
    p.add_argument("seed")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("-o", "--output")
    _common(p)
    p.set_defaults(func=cmd_simplex)

    p = sub.add_parser("eaqecc", help="[[n,k,d;n-k]] from a Hermitian LCD code")
    p.add_argument("matrix")
    p.add_argument("--d", type=int, help="claimed minimum weight (verified)")
    _common(p, budget=False)
    p.set_defaults(func=cmd_eaqecc)

    p = sub.add_parser("search", help="sweep extension or transform vectors")
    p.add_argument("--seed", required=True)
    p.add_argument("--op", choices=["extend", "transform"], default="extend")
    p.add_argument("--a", default="1,0,0")
    p.add_argument("--target-d", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random", "auto"], default="auto")
    p.add_argument("--count", type=int)
    p.add_argument("--rng-seed", type=int)
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--stop", choices=["first", "all"], default="all")
    p.add_argument("-o", "--output")
    _common(p, workers=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reproduce", help="rebuild and verify the published codes")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--lemma", help="case id such as [29,13,8], or a group name")
    g.add_argument("--all", action="store_true")
    _common(p, workers=True)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("table", help="d_q(n,k) determinations")
    p.add_argument("--field", type=int, choices=[2, 3, 4], required=True)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--verify", action="store_true", help="count only lower bounds reproduced in this run")
    _common(p, workers=True)
    p.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Undecided as e:
        print(f"undecided: {e}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (
        UsageError,
        MatrixFormatError,
        ConstructionError,
        SearchError,
        artifacts.ChecksumError,
        artifacts.Unavailable,
        gf.FieldMismatch,
        KeyError,
        ValueError,
        OSError,
    ) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"lcdforge: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
