"""``mols`` command line.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
Results go to stdout; diagnostics go to stderr.
"""
import argparse
import json
import os
import sys

from .curves import (
    Curve,
    curve_from_json,
    curve_from_linearized,
    desarguesian_bundle,
    identity_curve,
    linear_curve,
)
from .errors import MolsError
from .field import build_field, field_from_json
from .latin import (
    LatinSquare,
    are_orthogonal,
    cycles_of,
    is_complete_mols,
    minisquare,
    minisquare_commutative,
    orthogonality_diagnostics,
    standard_ls,
    nonstandard_ls,
)
from .monomials import bundle_is_mub, numeric_unbiasedness
from .reproduce import REPRODUCERS, hall_curve, load_fixture
from .transforms import (
    CnotOp,
    LocalOp,
    cnot_on_curve,
    local_on_curve,
    local_perms,
    orbit,
    perms_standard_to_standard,
    transform_bundle,
)


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


# -- argument parsing helpers ----------------------------------------------


def _int_list(text, flag):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}")


def _cnot_arg(text):
    vals = _int_list(text, "--cnot")
    if len(vals) != 3:
        raise UsageError(f"--cnot: expected P,Q,M, got {text!r}")
    try:
        return CnotOp(*vals)
    except ValueError as e:
        raise UsageError(f"--cnot: {e}")


def _local_arg(text):
    kind, _, ks = text.partition(":")
    if kind.upper() not in ("S", "F") or not ks:
        raise UsageError(f"--local: expected S:k1,...,kn or F:k1,...,kn, got {text!r}")
    return LocalOp(kind.upper(), tuple(_int_list(ks, "--local")))


def _curve_arg(field, text, flag):
    key, _, val = text.partition("=")
    key = key.strip().lower()
    if key in ("id", "identity") and not val:
        return identity_curve(field)
    if key in ("lambda", "phi") and val:
        vals = _int_list(val, flag)
        if key == "lambda":
            if len(vals) != 1 or not 1 <= vals[0] < field.d:
                raise UsageError(f"{flag}: lambda must be a label in 1..{field.d - 1}")
            return linear_curve(field, vals[0])
        return curve_from_linearized(field, vals)
    raise UsageError(f"{flag}: expected lambda=K, phi=a,b,... or id, got {text!r}")


def _field_from_args(args):
    if args.p is None or args.n is None:
        raise UsageError("--p and --n are required")
    poly = _int_list(args.poly, "--poly") if getattr(args, "poly", None) else None
    return build_field(args.p, args.n, poly)


def _read_gamma_file(path, field_hint=None):
    """Returns (field, gamma) from a JSON or whitespace matrix file."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        field = field_hint
        if "field" in obj:
            field = field_from_json(obj["field"])
        elif "p" in obj and "n" in obj:
            field = field_from_json(obj)
        if field is None:
            raise UsageError(f"{path}: no field given (use --p/--n or a 'field' key)")
        return field, curve_from_json(field, obj)
    rows = [list(map(int, line.split())) for line in text.splitlines() if line.strip()]
    if field_hint is None:
        raise UsageError("--p and --n are required with a plain-text gamma file")
    return field_hint, Curve(field_hint, rows)


def _read_curve_file(path):
    """JSON with a field plus 'curves', 'curve' or 'bundle'."""
    with open(path) as fh:
        obj = json.load(fh)
    field = field_from_json(obj.get("field", obj))
    if obj.get("bundle") == "desarguesian":
        return field, desarguesian_bundle(field)
    if "curves" in obj:
        return field, [curve_from_json(field, c) for c in obj["curves"]]
    if "curve" in obj:
        return field, [curve_from_json(field, obj["curve"])]
    raise UsageError(f"{path}: expected 'curves', 'curve' or 'bundle': 'desarguesian'")


# -- verbs -----------------------------------------------------------------


def cmd_field(args, out, err):
    F = _field_from_args(args)
    if args.format == "json":
        obj = F.to_json()
        obj["elements"] = [
            {"label": a, "coeffs": list(map(int, F.coeffs(a))), "svector": list(map(int, F.svector(a)))}
            for a in F.elements()
        ]
        out.write(_dump(obj) + "\n")
        return 0
    out.write(f"GF({F.p}^{F.n})  poly={list(F.spec.poly)}  theta={list(F.basis.theta)}  c={list(F.basis.c)}\n")
    for a in F.elements():
        out.write(f"{a:>4}  coeffs={list(map(int, F.coeffs(a)))}  s={list(map(int, F.svector(a)))}  tr={F.trace(a)}\n")
    return 0


def cmd_generate(args, out, err):
    F = _field_from_args(args)
    if args.bundle:
        curves = desarguesian_bundle(F)
    elif args.curve:
        curves = [_curve_arg(F, args.curve, "--curve")]
    else:
        curves = [_read_gamma_file(args.gamma, F)[1]]
    squares = [standard_ls(c) for c in curves]
    if args.format == "json":
        out.write(_dump([s.to_json() for s in squares]) + "\n")
    else:
        out.write("\n".join(s.to_text() for s in squares))
    return 0


def cmd_transform(args, out, err):
    field, curves = _read_curve_file(args.infile)
    op = _cnot_arg(args.cnot) if args.cnot else _local_arg(args.local)
    if isinstance(op, LocalOp) and op.n != field.n:
        raise UsageError(f"--local: need {field.n} parameters, got {op.n}")
    if isinstance(op, CnotOp) and max(op.control, op.target) > field.n:
        raise UsageError(f"--cnot: qudit index out of range 1..{field.n}")
    if args.emit == "report":
        report = transform_bundle(curves, op)
        out.write(_dump(report.to_json()) + "\n")
        return 0 if report.verdict == "preserved" and report.triple_verified else 1
    if args.emit == "perms":
        t = perms_standard_to_standard(op, field) if isinstance(op, CnotOp) else local_perms(op, field)
        obj = t.to_json()
        obj["cycles"] = {k: cycles_of(getattr(t, k)) for k in ("rows", "cols", "syms")}
        out.write(_dump(obj) + "\n")
        return 0
    texts = []
    for f in curves:
        if isinstance(op, CnotOp):
            texts.append(standard_ls(cnot_on_curve(f, op)).to_text())
        else:
            texts.append(nonstandard_ls(local_on_curve(f, op)).to_text())
    out.write("\n".join(texts))
    return 0


def _load_square(path):
    return LatinSquare.load(path)


def cmd_verify(args, out, err):
    if args.hall_fixture:
        fx = load_fixture("hall")
        h = hall_curve(field_from_json(fx["field"]))
        ms = minisquare(h)
        verdict = "commutative" if h.is_commutative and minisquare_commutative(ms) else "not commutative"
        out.write(f"Hall curve gamma={h.gamma.tolist()} invertible={h.is_invertible}: {verdict}\n")
        return 0 if verdict == "commutative" else 1
    if args.orthogonal:
        if len(args.orthogonal) < 2:
            raise UsageError("--orthogonal needs at least two square files")
        squares = [_load_square(p) for p in args.orthogonal]
        ok = True
        for i in range(len(squares)):
            for j in range(i + 1, len(squares)):
                good = are_orthogonal(squares[i], squares[j])
                out.write(f"{args.orthogonal[i]} {args.orthogonal[j]}: {'orthogonal' if good else 'NOT orthogonal'}\n")
                if not good:
                    err.write(orthogonality_diagnostics(squares[i], squares[j]))
                ok &= good
        return 0 if ok else 1
    if args.complete:
        if not os.path.isdir(args.complete):
            raise UsageError(f"--complete: {args.complete} is not a directory")
        names = sorted(n for n in os.listdir(args.complete) if n.endswith((".txt", ".json")))
        squares = [_load_square(os.path.join(args.complete, n)) for n in names]
        ok = bool(squares) and is_complete_mols(squares)
        d = squares[0].d if squares else 0
        out.write(f"{len(squares)} squares of order {d}: {'complete MOLS' if ok else 'NOT a complete MOLS set'}\n")
        return 0 if ok else 1
    F = _field_from_args(args)
    bundle = desarguesian_bundle(F)
    report = {"d": F.d, "partition": bundle_is_mub(bundle)}
    ok = report["partition"]
    if F.d <= 32:
        num = numeric_unbiasedness(bundle)
        report["numeric"] = num.to_json()
        ok &= num.passed
    out.write(_dump(report) + "\n")
    return 0 if ok else 1


def cmd_minisquare(args, out, err):
    hint = _field_from_args(args) if args.p is not None and args.n is not None else None
    field, curve = _read_gamma_file(args.gamma, hint)
    ms = minisquare(curve)
    comm = minisquare_commutative(ms)
    if args.format == "json":
        out.write(_dump({
            "minisquare": ms.tolist(),
            "trace": ms.trace_matrix().tolist(),
            "commutative": comm,
        }) + "\n")
    else:
        for row in ms.tolist():
            out.write(" ".join(map(str, row)) + "\n")
        out.write(f"commutative: {'yes' if comm else 'no'}\n")
    return 0 if comm else 1


def cmd_orbit(args, out, err):
    F = _field_from_args(args)
    seed = _curve_arg(F, args.seed, "--seed")
    orb = orbit(seed)
    step = orb[0][1]
    if args.format == "json":
        out.write(_dump({
            "length": len(orb),
            "gammas": [c.gamma.tolist() for c, _ in orb],
            "row_relabel": list(step.rows),
            "cycles": cycles_of(step.rows),
        }) + "\n")
    else:
        out.write(f"orbit length {len(orb)}\n")
        out.write("row relabeling cycles: " + " ".join("(" + " ".join(map(str, c)) + ")" for c in cycles_of(step.rows)) + "\n")
        for c, _ in orb:
            out.write(f"{c.gamma.tolist()}\n")
    return 0


def cmd_reproduce(args, out, err):
    checks = REPRODUCERS[args.which]()
    for c in checks:
        out.write(c.line() + "\n")
    bad = [c for c in checks if not c.ok]
    if bad:
        err.write(f"{len(bad)} of {len(checks)} checks failed\n")
        return 1
    return 0


# -- parser ----------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="mols", description="Latin squares and MUB curves over GF(p^n).")
    sub = ap.add_subparsers(dest="verb", required=True)

    def field_opts(sp, required=True):
        sp.add_argument("--p", type=int, required=required)
        sp.add_argument("--n", type=int, required=required)
        sp.add_argument("--poly", help="monic polynomial, constant term first, e.g. 2,1,1")

    def fmt(sp):
        sp.add_argument("--format", choices=["text", "json"], default="text")

    sp = sub.add_parser("field", help="print field tables")
    field_opts(sp)
    fmt(sp)

    sp = sub.add_parser("generate", help="standard Latin squares from curves")
    field_opts(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--bundle", choices=["desarguesian"])
    g.add_argument("--curve", help='e.g. "lambda=1"')
    g.add_argument("--gamma", metavar="FILE")
    fmt(sp)

    sp = sub.add_parser("transform", help="apply a CNOT or local operation")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--cnot", metavar="P,Q,M")
    g.add_argument("--local", metavar="S:k1,...|F:k1,...")
    sp.add_argument("--in", dest="infile", required=True, metavar="FILE")
    sp.add_argument("--emit", choices=["squares", "perms", "report"], default="squares")

    sp = sub.add_parser("verify", help="orthogonality, completeness and MUB checks")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--orthogonal", nargs="+", metavar="FILE")
    g.add_argument("--complete", metavar="DIR")
    g.add_argument("--mub", action="store_true")
    g.add_argument("--hall-fixture", action="store_true")
    field_opts(sp, required=False)

    sp = sub.add_parser("minisquare", help="minisquare of a curve and its commutativity")
    sp.add_argument("--gamma", metavar="FILE", required=True)
    field_opts(sp, required=False)
    fmt(sp)

    sp = sub.add_parser("orbit", help="composition orbit of a seed curve")
    sp.add_argument("--seed", required=True)
    field_opts(sp)
    fmt(sp)

    sp = sub.add_parser("reproduce", help="rebuild a worked example and self-check it")
    sp.add_argument("which", choices=sorted(REPRODUCERS))
    return ap


COMMANDS = {
    "field": cmd_field,
    "generate": cmd_generate,
    "transform": cmd_transform,
    "verify": cmd_verify,
    "minisquare": cmd_minisquare,
    "orbit": cmd_orbit,
    "reproduce": cmd_reproduce,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.verb](args, out, err)
    except UsageError as e:
        err.write(f"mols {args.verb}: {e}\n")
        return 2
    except (MolsError, ValueError, OSError, json.JSONDecodeError, KeyError) as e:
        err.write(f"mols {args.verb}: {type(e).__name__}: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
