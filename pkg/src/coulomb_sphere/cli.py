"""Command-line front end.

    coulomb-sphere functionals --measure spherical
    coulomb-sphere norms --measure scaled:a=2 --N 16 --kind pfaff --format csv
    coulomb-sphere free-energy --measure spherical --N 2 --geometry sphere
    coulomb-sphere expansion --measure mixture:theta=0.5,a=2 --alpha 1 --N 100
    coulomb-sphere residuals --measure spherical --N-grid 50,100,200,400
    coulomb-sphere verify

Exit status: 0 success, 1 computation failure, 2 invalid arguments,
3 verification failure. Thread count defaults to $COULOMB_SPHERE_THREADS.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from . import acceptance
from .errors import (BracketError, CoefficientOverflowError, ConsistencyError, DomainError,
                     IntegrationError)
from .expansion import coefficients, evaluate, evaluate_n_form, residual_sweep
from .free_energy import log_z_exact, log_z_spherical_closed_form, to_sphere_geometry
from .measure import functionals, parse_measure
from .norms import ChargedEnsemble, Kind, default_workers, log_norms, tau

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


def _num(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g") if math.isfinite(x) else "null"
    raise TypeError(type(x))


def to_json(obj, indent: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}"{k}": {to_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if obj is None:
        return "null"
    return _num(obj)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def _nonneg(text: str) -> float:
    v = float(text)
    if not v >= 0.0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text}")
    return v


def _posint(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _grid(text: str) -> list:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad N grid {text!r}") from exc
    if not vals or any(v < 2 for v in vals) or vals != sorted(vals):
        raise argparse.ArgumentTypeError("N grid must be ascending integers >= 2")
    return vals


def _threads(text: str) -> int:
    if text == "auto":
        return default_workers()
    return _posint(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=_threads, default=None,
                        help="worker threads for norm evaluation (int or 'auto')")

    measure = argparse.ArgumentParser(add_help=False)
    measure.add_argument("--measure", default="spherical",
                         help="spherical | scaled:a=<float> | mixture:theta=<float>,a=<float>")

    charges = argparse.ArgumentParser(add_help=False)
    charges.add_argument("--alpha", type=_nonneg, default=0.0)
    charges.add_argument("--c", type=_nonneg, default=0.0)
    charges.add_argument("--kind", choices=("det", "pfaff"), default="det")

    p = argparse.ArgumentParser(prog="coulomb-sphere", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("functionals", parents=[common, measure])
    s = sub.add_parser("norms", parents=[common, measure, charges])
    s.add_argument("--N", type=_posint, required=True)
    s = sub.add_parser("free-energy", parents=[common, measure, charges])
    s.add_argument("--N", type=_posint, required=True)
    s.add_argument("--geometry", choices=("plane", "sphere"), default="plane")
    s.add_argument("--breakdown", action="store_true")
    s = sub.add_parser("expansion", parents=[common, measure, charges])
    s.add_argument("--N", type=_posint, default=None)
    s = sub.add_parser("residuals", parents=[common, measure, charges])
    s.add_argument("--N-grid", dest="N_grid", type=_grid, required=True)
    s.add_argument("--fit", action="store_true",
                   help="least-squares fit of the five coefficients (needs >= 5 points)")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--only", type=_grid_criteria, default=None,
                   help="comma-separated criterion numbers")
    return p


def _grid_criteria(text: str) -> list:
    vals = sorted({int(x) for x in text.split(",") if x.strip()})
    bad = [v for v in vals if v not in acceptance.CRITERIA]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown criteria {bad}")
    return vals


def _ensemble(args, N: int) -> ChargedEnsemble:
    return ChargedEnsemble(parse_measure(args.measure), N, args.alpha, args.c, Kind(args.kind))


def _cmd_functionals(args):
    m = parse_measure(args.measure)
    f = functionals(m).as_dict()
    if args.format == "csv":
        return to_csv(("name", "value"), f.items())
    return to_json({"measure": m.label, **f})


def _cmd_norms(args):
    ens = _ensemble(args, args.N)
    rows = [(ln.j, tau(ens, ln.j), ln.peak, ln.log_value, ln.quadrature_error)
            for ln in log_norms(ens, workers=args.threads)]
    header = ("j", "tau", "peak", "log_h", "err_estimate")
    if args.format == "csv":
        return to_csv(header, rows)
    return to_json({"measure": ens.measure.label, "N": ens.N, "alpha": ens.alpha, "c": ens.c,
                    "kind": ens.kind.value, "n": ens.n,
                    "norms": [dict(zip(header, r)) for r in rows]})


def _cmd_free_energy(args):
    ens = _ensemble(args, args.N)
    fe = log_z_exact(ens, breakdown=args.breakdown, workers=args.threads)
    if args.geometry == "sphere":
        fe = to_sphere_geometry(fe)
    out = {"measure": ens.measure.label, "N": ens.N, "alpha": ens.alpha, "c": ens.c,
           "kind": ens.kind.value, "n": ens.n, "geometry": fe.geometry.value,
           "log_z": fe.log_z}
    if ens.measure.label == "spherical":
        closed = log_z_spherical_closed_form(ens.N, ens.alpha, ens.c, ens.kind)
        out["closed_form_log_z"] = closed + (fe.log_z - fe.plane_log_z)
    if args.format == "csv":
        return to_csv(tuple(out), [tuple(out.values())])
    if fe.per_norm_breakdown is not None:
        out["log_norms"] = [ln.log_value for ln in fe.per_norm_breakdown]
    return to_json(out)


def _cmd_expansion(args):
    m = parse_measure(args.measure)
    f = functionals(m)
    co = coefficients(f, args.alpha, args.c, args.kind)
    out = {"measure": m.label, "alpha": args.alpha, "c": args.c, "kind": args.kind,
           "coefficients": co.as_dict(), "breakdown": co.breakdown}
    if args.N is not None:
        out["N"] = args.N
        out["value"] = evaluate(co, args.N)
        out["value_n_form"] = evaluate_n_form(f, args.alpha, args.c, args.N, args.kind)
    if args.format == "csv":
        rows = [(name, val) for name, val in co.as_dict().items()]
        if args.N is not None:
            rows += [("value", out["value"]), ("value_n_form", out["value_n_form"])]
        return to_csv(("name", "value"), rows)
    return to_json(out)


def _cmd_residuals(args):
    template = _ensemble(args, args.N_grid[0])
    if args.fit and len(args.N_grid) < 5:
        raise DomainError("--fit needs at least five grid points")
    rep = residual_sweep(template, args.N_grid, fit=args.fit, workers=args.threads)
    rows = list(zip(rep.N_grid, rep.exact, rep.predicted, rep.residual))
    header = ("N", "exact", "predicted", "residual")
    if args.format == "csv":
        return to_csv(header, rows)
    out = {"measure": template.measure.label, "alpha": template.alpha, "c": template.c,
           "kind": template.kind.value, "rows": [dict(zip(header, r)) for r in rows]}
    if rep.fitted_constants is not None:
        out["fitted_constants"] = list(rep.fitted_constants)
    return to_json(out)


def _cmd_verify(args):
    results = []
    for k in args.only or sorted(acceptance.CRITERIA):
        r = acceptance.CRITERIA[k]()
        print(r.line(), file=sys.stderr)
        results.append(r)
    if args.format == "csv":
        text = to_csv(("criterion", "name", "passed", "seconds", "detail"),
                      [(r.number, r.name, r.passed, r.seconds, r.detail) for r in results])
    else:
        text = to_json({"passed": all(r.passed for r in results),
                        "criteria": [{"criterion": r.number, "name": r.name,
                                      "passed": r.passed, "seconds": r.seconds,
                                      "detail": r.detail} for r in results]})
    return text, all(r.passed for r in results)


COMMANDS = {
    "functionals": _cmd_functionals,
    "norms": _cmd_norms,
    "free-energy": _cmd_free_energy,
    "expansion": _cmd_expansion,
    "residuals": _cmd_residuals,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "verify":
            text, ok = _cmd_verify(args)
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
            return EXIT_OK if ok else EXIT_VERIFY
        text = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrationError, BracketError, ConsistencyError, CoefficientOverflowError,
            ArithmeticError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
