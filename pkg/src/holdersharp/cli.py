"""Command-line surface: constants, bellman, foliation, verify.

All reports are deterministic for a fixed configuration and seed; floats are
serialized with 17 significant digits so repeated runs are byte-identical.

Exit codes: 0 success, 1 verification violation, 2 invalid regime,
3 domain error, 4 solver non-convergence.
"""

from __future__ import annotations

import argparse
import sys

from . import bellman as bl
from . import constants as cn
from . import verify as vf
from .errors import ConvergenceError, DomainError, RegimeError
from .kernel import Exponent
from .roots import solve_r0, solve_s0

SCHEMA = "holder-sharp/1"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_json(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return pad + "{}"
        items = [f'{pad}  "{k}": {_to_json(v, indent + 1).lstrip()}' for k, v in obj.items()]
        return pad + "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return pad + "[]"
        items = [_to_json(v, indent + 1) for v in obj]
        return pad + "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return pad + _fmt(obj)


def _emit(report, args) -> None:
    if getattr(args, "format", "json") == "csv":
        text = _to_csv(report)
    else:
        text = _to_json(report) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(report) -> str:
    if isinstance(report, dict) and "rows" in report:
        header = report["columns"]
        lines = [",".join(header)]
        for row in report["rows"]:
            lines.append(",".join(_fmt(v).strip('"') for v in row))
        return "\n".join(lines) + "\n"
    # flat dict fallback: one header row, one value row
    keys = list(report.keys())
    return ",".join(keys) + "\n" + ",".join(_fmt(report[k]).strip('"') for k in keys) + "\n"


def _resolve_exponent(args) -> Exponent:
    if args.p is not None and args.theta is not None:
        raise DomainError("give either --p or --theta, not both")
    if args.p is not None:
        if args.p < 2.0:
            raise DomainError("--p must be >= 2 (use --theta for the small exponent)")
        return Exponent.from_theta(args.p)
    if args.theta is not None:
        return Exponent.from_theta(args.theta)
    raise DomainError("one of --p or --theta is required")


def _const_dict(sc) -> dict:
    return {"value": sc.value, "regime": sc.regime}


def cmd_constants(args) -> int:
    theta = args.p if args.p is not None else args.theta
    r = args.r
    if theta is None or theta <= 1.0 or r is None or r <= 0.0:
        raise RegimeError(f"constants need theta > 1 and r > 0, got ({theta}, {r})")
    exp = _resolve_exponent(args)
    decision = cn.region_lookup(theta, r)
    c_entry = _const_dict(decision.c_star) if decision.c_star else None
    d_entry = _const_dict(decision.d_star) if decision.d_star else None
    report = {
        "schema": SCHEMA,
        "command": "constants",
        "theta": theta,
        "r": r,
        "p": exp.p,
        "q": exp.q,
    }
    residuals = {}
    if theta > 2.0:
        s0 = solve_s0(theta)
        r0 = solve_r0(theta)
        report["s0"] = s0.value
        report["R0"] = r0.value
        residuals["s0"] = s0.residual
        residuals["R0"] = r0.residual
        if c_entry is None and abs(r - theta) <= 1e-12:
            c_entry = _const_dict(cn.c_star_pp(theta))
            d_entry = d_entry or _const_dict(cn.d_star_pp(theta))
        if c_entry is None and r >= max(2.0, theta):
            numeric = cn.c_star_numeric(theta, r, grid=args.grid)
            c_entry = _const_dict(numeric)
        if d_entry is None and abs(r - theta) <= 1e-12:
            d_entry = _const_dict(cn.d_star_pp(theta))
    elif theta < 2.0:
        try:
            c_entry = c_entry or _const_dict(cn.c_star_q_endpoints(theta, r))
        except RegimeError:
            pass
    else:
        c_entry = c_entry or _const_dict(cn.c_star_pp(2.0))
        d_entry = d_entry or _const_dict(cn.d_star_pp(2.0))
    report["c_star"] = c_entry
    report["d_star"] = d_entry
    report["residuals"] = residuals
    _emit(report, args)
    if c_entry is None and d_entry is None:
        return 2
    return 0


def cmd_bellman(args) -> int:
    exp = _resolve_exponent(args)
    p = exp.p
    x = args.x
    report = {"schema": SCHEMA, "command": "bellman", "which": args.which, "p": p, "x": list(x)}
    if args.which == "c+":
        value, info = bl.bellman_c_plus_detail(bl.OmegaCPoint(*x), p)
    elif args.which == "c-":
        value = bl.bellman_c_minus(bl.OmegaCPoint(*x), p)
        _, info = bl.bellman_c_plus_detail(bl.OmegaCPoint(-x[0], x[1], x[2], x[3]), p)
    elif args.which == "d+":
        value, info = bl.bellman_d_plus_detail(bl.OmegaDPoint(*x), p, tol=args.tol)
    else:
        raise DomainError(f"unknown function {args.which}")
    report["value"] = value
    report["kind"] = info.get("kind")
    for key in ("R", "tau", "a1", "a2", "in_closed_form_region"):
        if key in info:
            report[key] = info[key]
    if args.oracle:
        if args.which == "d+":
            report["oracle"] = vf.oracle_bellman_d(
                bl.OmegaDPoint(*x), p, budget=args.samples, seed=args.seed
            )
        else:
            point = bl.OmegaCPoint(*x) if args.which == "c+" else bl.OmegaCPoint(-x[0], *x[1:])
            oracle = vf.oracle_bellman_c(point, p, budget=args.samples, seed=args.seed)
            report["oracle"] = oracle if args.which == "c+" else -oracle
    _emit(report, args)
    return 0


def cmd_foliation(args) -> int:
    exp = _resolve_exponent(args)
    p = exp.p
    if p <= 2.0:
        raise RegimeError("the foliation dataset needs p > 2")
    n = args.grid
    r0 = solve_r0(p).value
    rows = []
    taus = [i / (n - 1) for i in range(n)]
    for tau in taus:
        y1, y2 = bl.eta(tau, r0, p)
        rows.append(("eta_minus", r0, tau, y1, y2))
    for tau in taus:
        y1, y2 = bl.eta(tau, r0, p)
        rows.append(("eta_plus", r0, tau, -y1, -y2))
    chord_rs = [-1.0 + 2.0 * i / (args.chords - 1) for i in range(args.chords)]
    for R in chord_rs:
        for tau in taus:
            y1, y2 = bl.eta(tau, R, p)
            rows.append(("chord", R, tau, y1, y2))
    report = {"columns": ["kind", "R", "tau", "y1", "y2"], "rows": rows}
    if args.format == "json":
        report = {"schema": SCHEMA, "command": "foliation", "p": p, **report}
    _emit(report, args)
    return 0


def cmd_verify(args) -> int:
    exp = _resolve_exponent(args)
    theta = args.p if args.p is not None else args.theta
    r = args.r
    hold = 3 if args.which == "hold3" else 4
    coeff = args.c if hold == 3 else args.d
    source = "user"
    if coeff is None:
        source = "resolved"
        decision = cn.region_lookup(theta, r)
        sc = decision.c_star if hold == 3 else decision.d_star
        if sc is None and theta > 2.0 and abs(r - theta) <= 1e-12:
            sc = cn.c_star_pp(theta) if hold == 3 else cn.d_star_pp(theta)
        if sc is None and hold == 3 and theta < 2.0:
            sc = cn.c_star_q_endpoints(theta, r)
        if sc is None:
            raise RegimeError(
                f"no resolved constant for hold{hold} at (theta, r) = ({theta}, {r}); pass --c/--d"
            )
        coeff = sc.value
    result = vf.run_campaign(hold, theta, r, coeff, samples=args.samples, seed=args.seed)
    report = {"schema": SCHEMA, "command": "verify", "constant_source": source}
    report.update(result.to_dict())
    residuals = {}
    if theta > 2.0:
        residuals["s0"] = solve_s0(theta).residual
        residuals["R0"] = solve_r0(theta).residual
    report["residuals"] = residuals
    _emit(report, args)
    return 0 if result.violations == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="holdersharp", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, grid_default=2048):
        sp.add_argument("--p", type=float, default=None, help="large exponent (>= 2)")
        sp.add_argument("--theta", type=float, default=None, help="norm exponent (> 1)")
        sp.add_argument("--tol", type=float, default=1e-11)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=10000)
        sp.add_argument("--grid", type=int, default=grid_default)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("constants", help="sharp constants for (theta, r)")
    common(sp)
    sp.add_argument("--r", type=float, required=True)
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("bellman", help="evaluate an extremal function at a point")
    common(sp)
    sp.add_argument("which", choices=("c+", "c-", "d+"))
    sp.add_argument("--x", type=float, nargs=4, required=True)
    sp.add_argument("--oracle", action="store_true")
    sp.set_defaults(func=cmd_bellman, samples=2000)

    sp = sub.add_parser("foliation", help="chord-curve dataset for the unit square")
    common(sp, grid_default=101)
    sp.add_argument("--chords", type=int, default=17)
    sp.set_defaults(func=cmd_foliation, format="csv")

    sp = sub.add_parser("verify", help="seeded Monte-Carlo inequality campaign")
    common(sp)
    sp.add_argument("which", choices=("hold3", "hold4"))
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--c", type=float, default=None, help="override the deficit coefficient")
    sp.add_argument("--d", type=float, default=None, help="override the companion coefficient")
    sp.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RegimeError as exc:
        print(f"regime error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"solver did not converge: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
