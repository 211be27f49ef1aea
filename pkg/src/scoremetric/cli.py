"""Command line front end.

    scoremetric delegates --space interval --x 0.3 --n 9
    scoremetric rho --space finite.json --x a --y b --tol 1/1048576
    scoremetric axioms --space interval --samples 1000 --seed 0

Exit status: 0 on success, 1 when a check reports a violation, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._rational import parse_rational
from .base_space import EnumerationExhausted, SpaceError, make_space
from .convergence_lab import LAB_NMAX, lab_report, remark_check
from .delegates import default_imax, signature
from .propositions import proposition_suite
from .scoring_metric import DEFAULT_NMAX, DEFAULT_TOL, axiom_suite, rho_exact_finite, rho_interval
from .signature_index import build_index, load_index, query
from .weights import make_weights


class InputError(ValueError):
    pass


def load_points(path, space) -> list:
    """One point per line; blank lines and ``#`` comments are skipped."""
    pts = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            pts.append(space.parse_point(text))
        except (SpaceError, ValueError) as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from None
    return pts


def _json_arg(value):
    """A kind name, an inline JSON document, or a path to one."""
    if isinstance(value, (dict, list)):
        return value
    value = str(value)
    if value.lstrip().startswith("{"):
        return json.loads(value)
    p = Path(value)
    if p.suffix == ".json" or p.is_file():
        return json.loads(p.read_text())
    return {"kind": value}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", default="interval",
                        help="interval | euclid | path to a SpaceConfig JSON | inline JSON")
    common.add_argument("--dim", type=int, help="dimension for the euclid kind")
    common.add_argument("--enumeration", choices=("canonical", "block_swap"))
    common.add_argument("--weights", default="geometric",
                        help="geometric | p_series | weight spec JSON (inline or path)")
    common.add_argument("--config", help="JSON file whose keys override flags")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--imax", type=int, help="search budget (env SCOREMETRIC_BUDGET_IMAX)")
    common.add_argument("--nmax", type=int, help="depth cap for rho intervals")
    common.add_argument("--tol", default=None, help="rho interval tolerance, e.g. 1/1048576")

    ap = argparse.ArgumentParser(prog="scoremetric", description="Scoring metrics on separable metric spaces")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delegates", parents=[common], help="delegate signature of a point")
    p.add_argument("--x", required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("rho", parents=[common], help="certified interval for rho(x, y)")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("axioms", parents=[common], help="metric axiom suite")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--depth", type=int, default=64)

    p = sub.add_parser("props", parents=[common], help="proposition checks")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--depth", type=int, default=64)

    p = sub.add_parser("converge", parents=[common], help="convergence lab")
    p.add_argument("--length", type=int, default=20)
    p.add_argument("--samples", type=int, default=200, help="axiom samples per remark cell")
    p.add_argument("--remark", action="store_true", help="also run the enumeration x weights matrix")

    p = sub.add_parser("index-build", parents=[common], help="bucket points by signature")
    p.add_argument("--points", required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("index-query", parents=[common], help="look a point up in an index dump")
    p.add_argument("--index", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--L", type=int)
    return ap


def _apply_config(args) -> None:
    if not args.config:
        return
    cfg = json.loads(Path(args.config).read_text())
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    for key, value in cfg.items():
        setattr(args, key.replace("-", "_"), value)


def _space(args):
    cfg = dict(_json_arg(args.space))
    if args.dim is not None:
        cfg["dim"] = args.dim
    if args.enumeration:
        cfg["enumeration"] = args.enumeration
    return make_space(cfg)


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _report_out(report, fmt, out) -> int:
    _emit(out, report.to_csv() if fmt == "csv" else report.to_json())
    return 0 if report.passed else 1


def _run(args, out) -> int:
    s = _space(args)
    w = make_weights(_json_arg(args.weights))
    imax = args.imax if args.imax is not None else default_imax()
    fmt = args.format
    tol = parse_rational(args.tol) if args.tol is not None else None

    if args.command == "delegates":
        x = s.parse_point(args.x)
        sig = signature(s, x, int(args.n))
        if fmt == "json":
            _emit(out, _dumps({"x": s.format_point(x), "n": int(args.n), "signature": str(sig)}))
        else:
            _emit(out, str(sig))
        return 0

    if args.command == "rho":
        x, y = s.parse_point(args.x), s.parse_point(args.y)
        iv = rho_interval(s, w, x, y, tol or DEFAULT_TOL, args.nmax or DEFAULT_NMAX)
        doc = {"x": s.format_point(x), "y": s.format_point(y), "space": s.describe(),
               "weights": w.to_dict(), "interval": iv.to_dict()}
        if s.kind == "finite":
            ex = rho_exact_finite(s, w, x, y)
            doc["exact"] = ex.to_dict() | {"exact": ex.exact}
        _emit(out, _dumps(doc))
        return 0

    if args.command == "axioms":
        rep = axiom_suite(s, w, int(args.samples), int(args.seed), int(args.depth), imax)
        return _report_out(rep, fmt, out)

    if args.command == "props":
        rep = proposition_suite(s, int(args.samples), int(args.seed), int(args.depth), imax)
        rep.header["weights"] = w.to_dict()
        if s.kind != "finite":
            lab = lab_report(s, w, 20, n_max=args.nmax or LAB_NMAX)
            rep.results += [r for r in lab.results if r.check.startswith("prefix_agreement")]
        return _report_out(rep, fmt, out)

    if args.command == "converge":
        n_max = args.nmax or LAB_NMAX
        rep = lab_report(s, w, int(args.length), n_max=n_max)
        if args.remark:
            base = {k: v for k, v in _json_arg(args.space).items() if k != "enumeration"}
            if args.dim is not None:
                base["dim"] = args.dim
            rem = remark_check(base, samples=int(args.samples), seed=int(args.seed),
                               length=int(args.length), n_max=n_max)
            rep.results += rem.results
        return _report_out(rep, fmt, out)

    if args.command == "index-build":
        pts = load_points(args.points, s)
        idx = build_index(s, w, pts, int(args.L))
        text = idx.dump()
        if args.out:
            Path(args.out).write_text(text)
        else:
            out.write(text)
        return 0

    if args.command == "index-query":
        idx = load_index(Path(args.index).read_text(), s, w, args.L)
        res = query(idx, s.parse_point(args.x))
        _emit(out, _dumps(res.to_dict()))
        return 0

    raise InputError(f"unknown command {args.command!r}")


def cli_run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        _apply_config(args)
        return _run(args, out)
    except (InputError, SpaceError, EnumerationExhausted, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"scoremetric: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_run())


if __name__ == "__main__":
    main()
