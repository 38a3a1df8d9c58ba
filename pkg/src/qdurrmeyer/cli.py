"""Command-line surface: moment tables, convergence CSVs, verification reports.

Exit codes: 0 success, 2 usage, 3 numeric-tolerance failure, 4 route or
identity disagreement.  Output is byte-deterministic for a fixed config on
the exact backend: rationals serialize through `fractions.Fraction` (the
"p/q" form), floats as shortest round-trip decimals, rows in fixed order.
Every cell is reproducible by calling the module operation the command
wraps; the CLI itself does no arithmetic.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .asymptotics import (
    ConvergenceRow,
    QSequence,
    convergence_table,
    q_taylor_remainder,
)
from .errors import DomainError, SingularRemainderError
from .moments import (
    central_moment,
    raw_moment_brute,
    raw_moment_closed,
    recurrence_reports,
    stancu_moment,
)
from .operators import OperatorSpec, stancu_apply
from .polyalg import Polynomial
from .qcore import BUILTIN_NAMES, Backend, FunctionSpec, QContext, Scalar
from .verify import build_report

__all__ = ["main", "FUNCTION_NAMES", "build_function"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TOLERANCE = 3
EXIT_DISAGREEMENT = 4

# closed registry: polynomial test functions plus the bounded builtins
_POLY_FUNCTIONS = {
    "one": (1,),
    "t": (0, 1),
    "t2": (0, 0, 1),
    "t3": (0, 0, 0, 1),
    "t4": (0, 0, 0, 0, 1),
}
FUNCTION_NAMES = tuple(_POLY_FUNCTIONS) + BUILTIN_NAMES


def build_function(name: str, backend: Backend) -> FunctionSpec:
    if name in _POLY_FUNCTIONS:
        return FunctionSpec.polynomial(
            [Scalar(c, backend) for c in _POLY_FUNCTIONS[name]]
        )
    return FunctionSpec.builtin(name)


class UsageError(Exception):
    pass


def _parse_scalar(text: str, backend: Backend) -> Scalar:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}: {exc}") from None
    return Scalar.exact(value) if backend is Backend.EXACT else Scalar.floating(float(value))


def _parse_grid(text: str, backend: Backend) -> list[Scalar]:
    """Parse "a:b:steps" into `steps` evenly spaced points from a to b."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must look like a:b:steps, got {text!r}")
    a, b = Fraction(parts[0]), Fraction(parts[1])
    try:
        steps = int(parts[2])
    except ValueError:
        raise UsageError("grid step count must be an integer") from None
    if steps < 1:
        raise UsageError("grid needs at least one step")
    if steps == 1:
        values = [a]
    else:
        h = (b - a) / (steps - 1)
        values = [a + i * h for i in range(steps)]
    if backend is Backend.EXACT:
        return [Scalar.exact(v) for v in values]
    return [Scalar.floating(float(v)) for v in values]


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"cannot parse n list {text!r}") from None
    if not values or values != sorted(set(values)):
        raise UsageError("n list must be strictly increasing")
    return values


def _scalar_cell(s: Scalar | None) -> str:
    if s is None:
        return ""
    return str(s.value) if s.is_exact else repr(s.value)


def _polys_agree(a, b, backend: Backend, tol: float) -> bool:
    """Exact equality on the exact backend, coefficientwise tol on float."""
    if backend is Backend.EXACT:
        return a == b
    top = max(len(a.coeffs), len(b.coeffs))
    return all(
        abs(float(a.coefficient(i)) - float(b.coefficient(i))) <= tol
        for i in range(top)
    )


@dataclass
class RunConfig:
    """Validated options for one command invocation."""

    command: str
    backend: Backend
    fmt: str
    out: str | None
    options: dict = field(default_factory=dict)

    def dump(self) -> dict:
        flat = {"command": self.command, "backend": self.backend.value, "format": self.fmt}
        for key, value in self.options.items():
            if isinstance(value, QContext):
                continue  # the q scalar is stored alongside
            if isinstance(value, Scalar):
                flat[key] = _scalar_cell(value)
            elif isinstance(value, list):
                flat[key] = [
                    _scalar_cell(v) if isinstance(v, Scalar) else v for v in value
                ]
            elif isinstance(value, QSequence):
                flat[key] = value.label
            elif isinstance(value, FunctionSpec):
                flat[key] = repr(value)
            elif value is None or isinstance(value, (int, float, str, bool)):
                flat[key] = value
            else:
                flat[key] = str(value)
        return flat


def _emit(cfg: RunConfig, header: Sequence[str], rows: list[list[str]], verdict: str) -> None:
    if cfg.fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "config": cfg.dump(),
            "rows": [dict(zip(header, row)) for row in rows],
            "verdict": verdict,
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------


def _cmd_moments(cfg: RunConfig) -> int:
    ctx = cfg.options["ctx"]
    n, m_max = cfg.options["n"], cfg.options["m_max"]
    rows, all_agree = [], True
    rec = recurrence_reports(n, m_max, ctx)
    for m in range(m_max + 1):
        brute = raw_moment_brute(n, m, ctx)
        routes = [("brute", brute), (rec[m].route, rec[m].value)]
        if m <= 4:
            routes.insert(0, ("closed", raw_moment_closed(n, m, ctx)))
        agree = all(
            _polys_agree(value, brute, cfg.backend, cfg.options["tol"])
            for _, value in routes
        )
        all_agree &= agree
        for route, value in routes:
            rows.append(
                [
                    str(m),
                    route,
                    "|".join(_scalar_cell(c) for c in value.coeffs) or "0",
                    "true" if agree else "false",
                ]
            )
    verdict = "pass" if all_agree else "fail"
    _emit(cfg, ["m", "route", "coefficients", "agree"], rows, verdict)
    return EXIT_OK if all_agree else EXIT_DISAGREEMENT


def _cmd_central_moments(cfg: RunConfig) -> int:
    ctx = cfg.options["ctx"]
    n, m_max = cfg.options["n"], cfg.options["m_max"]
    rows, all_agree = [], True
    for m in range(1, m_max + 1):
        expansion = central_moment(n, m, ctx, "expansion")
        closed = central_moment(n, m, ctx, "closed")
        agree = _polys_agree(closed, expansion, cfg.backend, cfg.options["tol"])
        all_agree &= agree
        for route, value in (("closed", closed), ("expansion", expansion)):
            rows.append(
                [
                    str(m),
                    route,
                    "|".join(_scalar_cell(c) for c in value.coeffs) or "0",
                    "true" if agree else "false",
                ]
            )
    verdict = "pass" if all_agree else "fail"
    _emit(cfg, ["m", "route", "coefficients", "agree"], rows, verdict)
    return EXIT_OK if all_agree else EXIT_DISAGREEMENT


def _cmd_stancu_moments(cfg: RunConfig) -> int:
    ctx = cfg.options["ctx"]
    n, m_max = cfg.options["n"], cfg.options["m_max"]
    alpha, beta = cfg.options["alpha"], cfg.options["beta"]
    spec = OperatorSpec.stancu(n, ctx, alpha, beta)
    rows, all_agree = [], True
    for m in range(m_max + 1):
        recursion = stancu_moment(n, m, ctx, alpha, beta)
        routes = [("recursion", recursion)]
        if m <= 2:
            routes.append(("closed", stancu_moment(n, m, ctx, alpha, beta, route="closed")))
        routes.append(("direct", stancu_apply(spec, Polynomial.monomial(m, ctx.backend))))
        agree = all(
            _polys_agree(value, recursion, cfg.backend, cfg.options["tol"])
            for _, value in routes
        )
        all_agree &= agree
        for route, value in routes:
            rows.append(
                [
                    str(m),
                    route,
                    "|".join(_scalar_cell(c) for c in value.coeffs) or "0",
                    "true" if agree else "false",
                ]
            )
    verdict = "pass" if all_agree else "fail"
    _emit(cfg, ["m", "route", "coefficients", "agree"], rows, verdict)
    return EXIT_OK if all_agree else EXIT_DISAGREEMENT


def _trend_cell(row: ConvergenceRow) -> str:
    if row.err_decreased is None:
        return ""
    return "dec" if row.err_decreased else "inc"


def _cmd_voronovskaja(cfg: RunConfig) -> int:
    f = cfg.options["f"]
    seq = cfg.options["seq"]
    n_list = cfg.options["n_list"]
    variant = cfg.options["variant"]
    alpha, beta = cfg.options.get("alpha"), cfg.options.get("beta")
    rtol, floor = cfg.options["rtol"], cfg.options["floor"]
    rows_out, worst, ok = [], None, True
    for x in cfg.options["x_grid"]:
        table = convergence_table(
            f, x, seq, n_list, variant, alpha, beta,
            tol=cfg.options.get("tol"), max_terms=cfg.options.get("max_terms"),
        )
        for row in table:
            rows_out.append(
                [
                    str(row.n),
                    _scalar_cell(row.q_n),
                    _scalar_cell(x),
                    _scalar_cell(row.lhs)
                    if row.error is None
                    else ("error:" + row.error).replace(",", ";"),
                    _scalar_cell(row.rhs_limit),
                    _scalar_cell(row.abs_err),
                    _trend_cell(row),
                ]
            )
        final = table[-1]
        if final.abs_err is None:
            ok = False
            worst = (x, final)
            continue
        allowed = max(rtol * abs(float(final.rhs_limit)), rtol * floor)
        if float(final.abs_err) > allowed:
            ok = False
            if worst is None or float(final.abs_err) > float(worst[1].abs_err or 0):
                worst = (x, final)
    verdict = "pass" if ok else "fail"
    _emit(cfg, ["n", "q_n", "x", "lhs", "rhs_limit", "abs_err", "trend"], rows_out, verdict)
    if not ok and worst is not None:
        x, row = worst
        print(
            f"tolerance failure: worst offender x={_scalar_cell(x)} n={row.n} "
            f"lhs={_scalar_cell(row.lhs)} rhs={_scalar_cell(row.rhs_limit)} "
            f"abs_err={_scalar_cell(row.abs_err)}",
            file=sys.stderr,
        )
    return EXIT_OK if ok else EXIT_TOLERANCE


def _cmd_remainder(cfg: RunConfig) -> int:
    ctx = cfg.options["ctx"]
    f = cfg.options["f"]
    x = cfg.options["x"]
    steps = cfg.options["steps"]
    rows = []
    span = Scalar.one(x.backend) - x
    for i in range(1, steps + 1):
        t = x + span / (2 ** i)
        try:
            theta = q_taylor_remainder(f, x, t, ctx)
            rows.append([str(i), _scalar_cell(t), _scalar_cell(theta), ""])
        except SingularRemainderError as exc:
            rows.append([str(i), _scalar_cell(t), "", f"singular:{exc}"])
    _emit(cfg, ["step", "t", "theta", "note"], rows, "pass")
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    report = build_report(n_max=cfg.options["n_max"])
    report["config"].update({"command": "verify", "format": "json"})
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_DISAGREEMENT


# -- argument parsing ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdurrmeyer",
        description="q-Durrmeyer operator tables, limits, and verification reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, q_flag=True):
        p.add_argument("--backend", choices=["exact", "float"], default="exact")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", help="output path (default stdout)")
        if q_flag:
            p.add_argument("--q", default="1/2", help="deformation parameter, e.g. 1/2 or 0.5")
            p.add_argument(
                "--tol", type=float, default=1e-12,
                help="route-agreement tolerance on the float backend",
            )

    p = sub.add_parser("moments", help="raw moments via all routes")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-max", type=int, default=4)

    p = sub.add_parser("central-moments", help="central moments via both routes")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-max", type=int, default=4)

    p = sub.add_parser("stancu-moments", help="Stancu moments: recursion, closed, direct")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--alpha", default="0")
    p.add_argument("--beta", default="0")

    p = sub.add_parser("voronovskaja", help="scaled-deviation convergence table")
    common(p, q_flag=False)
    p.add_argument("--f", choices=FUNCTION_NAMES, default="t2")
    p.add_argument("--x", help="single interior point, e.g. 0.3")
    p.add_argument("--x-grid", help="grid a:b:steps inside (0,1)")
    p.add_argument("--n-list", default="8,16,32,64,128,256,512")
    p.add_argument(
        "--q-seq",
        choices=["one-minus-inv-n", "one-minus-inv-sqrt-n", "one-minus-inv-n-squared"],
        default="one-minus-inv-n",
    )
    p.add_argument("--variant", choices=["plain", "stancu"], default="plain")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--rtol", type=float, default=0.05)
    p.add_argument("--floor", type=float, default=0.1)
    p.add_argument("--tol", type=float, help="Jackson series tolerance")
    p.add_argument("--max-terms", type=int)

    p = sub.add_parser("remainder", help="q-Taylor remainder on an approach grid")
    common(p)
    p.add_argument("--f", choices=FUNCTION_NAMES, default="t3")
    p.add_argument("--x", default="1/2")
    p.add_argument("--steps", type=int, default=10)

    p = sub.add_parser("verify", help="full invariant suite as a JSON report")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--out")
    return parser


_Q_SEQUENCES = {
    "one-minus-inv-n": QSequence.one_minus_inv_n,
    "one-minus-inv-sqrt-n": QSequence.one_minus_inv_sqrt_n,
    "one-minus-inv-n-squared": lambda: QSequence.power_decay(2),
}


def _build_config(args) -> RunConfig:
    backend = Backend(getattr(args, "backend", "exact"))
    cfg = RunConfig(
        command=args.command,
        backend=backend,
        fmt=getattr(args, "format", "json"),
        out=getattr(args, "out", None),
    )
    opts = cfg.options
    if args.command in ("moments", "central-moments", "stancu-moments", "remainder"):
        q = _parse_scalar(args.q, backend)
        if not (0 < q.value < 1):
            raise UsageError("q must satisfy 0 < q < 1")
        opts["ctx"] = QContext(q)
        opts["q"] = q
    if args.command in ("moments", "central-moments", "stancu-moments"):
        if args.tol <= 0:
            raise UsageError("tol must be positive")
        opts["tol"] = args.tol
        if args.n < 1:
            raise UsageError("n must be >= 1")
        if args.m_max < 0:
            raise UsageError("m-max must be >= 0")
        if args.command == "central-moments" and not (1 <= args.m_max <= 4):
            raise UsageError("central moments cover m in 1..4")
        opts["n"], opts["m_max"] = args.n, args.m_max
    if args.command == "stancu-moments":
        alpha = _parse_scalar(args.alpha, backend)
        beta = _parse_scalar(args.beta, backend)
        if not (0 <= alpha.value <= beta.value):
            raise UsageError("need 0 <= alpha <= beta")
        opts["alpha"], opts["beta"] = alpha, beta
    if args.command == "voronovskaja":
        f = build_function(args.f, backend)
        if f.backend is Backend.FLOAT and backend is not Backend.FLOAT:
            raise UsageError(f"function {args.f!r} needs --backend float")
        opts["f"] = f
        if args.x and args.x_grid:
            raise UsageError("give either --x or --x-grid, not both")
        if args.x_grid:
            grid = _parse_grid(args.x_grid, backend)
        else:
            grid = [_parse_scalar(args.x or "0.3", backend)]
        for x in grid:
            if not (0 < x.value < 1):
                raise UsageError("x grid must lie strictly inside (0, 1)")
        opts["x_grid"] = grid
        opts["n_list"] = _parse_n_list(args.n_list)
        if args.q_seq == "one-minus-inv-sqrt-n" and backend is not Backend.FLOAT:
            raise UsageError("one-minus-inv-sqrt-n needs --backend float")
        opts["seq"] = _Q_SEQUENCES[args.q_seq]()
        opts["variant"] = args.variant
        if args.variant == "stancu":
            if args.alpha is None or args.beta is None:
                raise UsageError("stancu variant needs --alpha and --beta")
            alpha = _parse_scalar(args.alpha, backend)
            beta = _parse_scalar(args.beta, backend)
            if not (0 <= alpha.value <= beta.value):
                raise UsageError("need 0 <= alpha <= beta")
            opts["alpha"], opts["beta"] = alpha, beta
        elif args.alpha is not None or args.beta is not None:
            raise UsageError("--alpha/--beta only apply to the stancu variant")
        if args.rtol <= 0 or args.floor < 0:
            raise UsageError("rtol must be positive and floor nonnegative")
        opts["rtol"], opts["floor"] = args.rtol, args.floor
        opts["tol"], opts["max_terms"] = args.tol, args.max_terms
        opts["q_seq"] = args.q_seq
    if args.command == "remainder":
        f = build_function(args.f, backend)
        if f.backend is Backend.FLOAT and backend is not Backend.FLOAT:
            raise UsageError(f"function {args.f!r} needs --backend float")
        opts["f"] = f
        x = _parse_scalar(args.x, backend)
        if not (0 < x.value < 1):
            raise UsageError("x must lie strictly inside (0, 1)")
        opts["x"] = x
        if args.steps < 1:
            raise UsageError("steps must be >= 1")
        opts["steps"] = args.steps
    if args.command == "verify":
        if args.n_max < 1:
            raise UsageError("n-max must be >= 1")
        opts["n_max"] = args.n_max
        cfg.fmt = "json"
    return cfg


_COMMANDS = {
    "moments": _cmd_moments,
    "central-moments": _cmd_central_moments,
    "stancu-moments": _cmd_stancu_moments,
    "voronovskaja": _cmd_voronovskaja,
    "remainder": _cmd_remainder,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    # exact sweeps reach thousands of digits per rational; lift the
    # int -> str guard so "p/q" serialization stays faithful
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(2_000_000)
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
