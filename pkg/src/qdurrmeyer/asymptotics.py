"""Numerical verification of the Voronovskaja-type limits.

For a sequence q_n -> 1 the scaled deviation

    [n]_{q_n} ( D_{n,q_n}(f; x) - f(x) )

is tabulated against its second-order limit target.  In limit form the
target is (1-2x) f'(x) + x(1-x) f''(x) for the plain operator and
(1+alpha-(2+beta)x) f'(x) + x(1-x) f''(x) for the Stancu variant; a
finite-q form with q-derivatives in place of f', f'' is available for
diagnostics.

A caution that the tables make visible: those targets are the limits only
when q_n^n -> 1 (for example q_n = 1 - 1/n^2).  Along q_n = 1 - 1/n one
has q_n^n -> 1/e and the scaled deviation converges instead to a limit
with (1 + lim q_n^n) x in place of 2x in the first-order coefficient.
`q_power_limit` exposes that constant so tables can be read either way.

The q-Taylor remainder theta_q(x; t) normalizes the residue of the
second-order q-Taylor expansion by (t-x)(t-qx); it vanishes identically
for quadratics and on the diagonal t = x, and is singular at t = qx.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import BackendMismatchError, DomainError, SingularRemainderError
from .moments import (
    central_moment,
    raw_moment_brute,
    raw_moment_closed,
    stancu_moment,
)
from .operators import PLAIN, STANCU, OperatorSpec, durrmeyer_apply_fn, stancu_apply
from .polyalg import Polynomial
from .qcore import Backend, FunctionSpec, QContext, Scalar, q_derivative

__all__ = [
    "QSequence",
    "ConvergenceRow",
    "voronovskaja_lhs",
    "voronovskaja_rhs",
    "convergence_table",
    "trend_decreasing_last_half",
    "q_taylor_remainder",
    "central_moment_at",
    "scaled_central_moment_at",
    "decay_slope",
    "q_power_limit",
]

ONE_MINUS_INV_N = "one-minus-inv-n"
ONE_MINUS_INV_SQRT_N = "one-minus-inv-sqrt-n"
CUSTOM = "custom"


@dataclass(frozen=True)
class QSequence:
    """Produces the deformation parameter q_n for each table row."""

    kind: str
    label: str
    _fn: Callable[[int, Backend], Scalar] | None = None

    @classmethod
    def one_minus_inv_n(cls) -> "QSequence":
        return cls(ONE_MINUS_INV_N, ONE_MINUS_INV_N)

    @classmethod
    def one_minus_inv_sqrt_n(cls) -> "QSequence":
        return cls(ONE_MINUS_INV_SQRT_N, ONE_MINUS_INV_SQRT_N)

    @classmethod
    def power_decay(cls, p: int) -> "QSequence":
        """q_n = 1 - n^(-p); p >= 2 gives q_n^n -> 1, exact on both backends."""
        if p < 1:
            raise DomainError("power_decay needs p >= 1")

        def fn(n: int, backend: Backend) -> Scalar:
            if backend is Backend.EXACT:
                return Scalar.exact(Fraction(n ** p - 1, n ** p))
            return Scalar.floating(1.0 - float(n) ** -p)

        return cls(CUSTOM, f"one-minus-inv-n^{p}", fn)

    @classmethod
    def custom(cls, fn: Callable[[int, Backend], Scalar], label: str = CUSTOM) -> "QSequence":
        return cls(CUSTOM, label, fn)

    def value(self, n: int, backend: Backend = Backend.EXACT) -> Scalar:
        if n < 2:
            raise DomainError("q sequences need n >= 2 to satisfy 0 < q_n < 1")
        if self.kind == ONE_MINUS_INV_N:
            q = (
                Scalar.exact(Fraction(n - 1, n))
                if backend is Backend.EXACT
                else Scalar.floating(1.0 - 1.0 / n)
            )
        elif self.kind == ONE_MINUS_INV_SQRT_N:
            if backend is not Backend.FLOAT:
                raise BackendMismatchError(
                    "1 - 1/sqrt(n) is irrational; use the float backend"
                )
            q = Scalar.floating(1.0 - 1.0 / math.sqrt(n))
        elif self.kind == CUSTOM:
            q = self._fn(n, backend)
        else:
            raise DomainError(f"unknown q-sequence kind {self.kind!r}")
        if not (0 < q.value < 1):
            raise DomainError(f"q sequence left (0, 1) at n={n}: {q}")
        return q


def q_power_limit(seq: QSequence, n_probe: int = 1 << 20) -> float:
    """Numerical estimate of lim q_n^n, the constant steering the limits."""
    q = seq.value(n_probe, Backend.FLOAT)
    return float(q) ** n_probe


@dataclass
class ConvergenceRow:
    """One table row; abs_err is always recomputed from lhs and rhs_limit."""

    n: int
    q_n: Scalar
    lhs: Scalar | None
    rhs_limit: Scalar | None
    error: str | None = None
    err_decreased: bool | None = None

    @property
    def abs_err(self) -> Scalar | None:
        if self.lhs is None or self.rhs_limit is None:
            return None
        return abs(self.lhs - self.rhs_limit)


def _as_spec(f: Union[FunctionSpec, Polynomial]) -> FunctionSpec:
    return f.as_function_spec() if isinstance(f, Polynomial) else f


def _validate_interior(x: Scalar):
    if not (0 < x.value < 1):
        raise DomainError("the asymptotic statements hold for x in (0, 1)")


def _plain_image_value(n: int, ctx: QContext, f: FunctionSpec, x: Scalar, tol, max_terms) -> Scalar:
    if f.is_polynomial:
        total = ctx.zero
        for m, c in enumerate(f.coeffs):
            if c.is_zero:
                continue
            raw = raw_moment_closed(n, m, ctx) if m <= 4 else raw_moment_brute(n, m, ctx)
            total = total + c * raw.eval(x)
        return total
    return durrmeyer_apply_fn(OperatorSpec.plain(n, ctx), f, x, tol, max_terms)


def _stancu_image_value(
    n: int, ctx: QContext, f: FunctionSpec, x: Scalar, alpha: Scalar, beta: Scalar, tol, max_terms
) -> Scalar:
    if f.is_polynomial:
        total = ctx.zero
        for m, c in enumerate(f.coeffs):
            if c.is_zero:
                continue
            raw_route = "closed" if m <= 4 else "brute"
            total = total + c * stancu_moment(
                n, m, ctx, alpha, beta, raw_route=raw_route
            ).eval(x)
        return total
    spec = OperatorSpec.stancu(n, ctx, alpha, beta)
    return stancu_apply(spec, f, x, tol, max_terms)


def voronovskaja_lhs(
    f: Union[FunctionSpec, Polynomial],
    x: Scalar,
    n: int,
    q: Scalar,
    variant: str = PLAIN,
    alpha: Scalar | None = None,
    beta: Scalar | None = None,
    tol=None,
    max_terms: int | None = None,
) -> Scalar:
    """[n]_q (operator image of f at x, minus f(x)).

    Exact for polynomial f on the exact backend at any n: polynomial images
    go through the closed moment tables rather than the kernel sum, so a
    sweep up to n = 512 stays cheap.  Non-polynomial f uses the Jackson
    kernel path and is meant for desk-scale n.
    """
    f = _as_spec(f)
    _validate_interior(x)
    ctx = QContext(q)
    if variant == PLAIN:
        image = _plain_image_value(n, ctx, f, x, tol, max_terms)
    elif variant == STANCU:
        if alpha is None or beta is None:
            raise DomainError("stancu variant needs alpha and beta")
        image = _stancu_image_value(n, ctx, f, x, alpha, beta, tol, max_terms)
    else:
        raise DomainError(f"voronovskaja_lhs supports plain or stancu, not {variant!r}")
    return ctx.q_int(n) * (image - f.evaluate(x))


def voronovskaja_rhs(
    f: Union[FunctionSpec, Polynomial],
    x: Scalar,
    variant: str = PLAIN,
    alpha: Scalar | None = None,
    beta: Scalar | None = None,
    ctx: QContext | None = None,
) -> Scalar:
    """Second-order target for the scaled deviation.

    With ctx=None this is the limit form with classical derivatives;
    passing a context evaluates the finite-q form with D_q and D_q^2.
    """
    f = _as_spec(f)
    _validate_interior(x)
    if ctx is None:
        d1 = f.classical_derivative(x, 1)
        d2 = f.classical_derivative(x, 2)
    else:
        d1 = q_derivative(f, x, ctx, 1)
        d2 = q_derivative(f, x, ctx, 2)
    one = Scalar.one(x.backend)
    if variant == PLAIN:
        first = one - 2 * x
    elif variant == STANCU:
        if alpha is None or beta is None:
            raise DomainError("stancu variant needs alpha and beta")
        first = one + alpha - (2 + beta) * x
    else:
        raise DomainError(f"voronovskaja_rhs supports plain or stancu, not {variant!r}")
    return first * d1 + x * (one - x) * d2


def convergence_table(
    f: Union[FunctionSpec, Polynomial],
    x: Scalar,
    seq: QSequence,
    n_list: Sequence[int],
    variant: str = PLAIN,
    alpha: Scalar | None = None,
    beta: Scalar | None = None,
    tol=None,
    max_terms: int | None = None,
) -> list[ConvergenceRow]:
    """One ConvergenceRow per n, with the limit-form target computed once.

    Individual row failures are recorded on their row instead of aborting
    the table.  Rows carry err_decreased relative to the previous row.
    """
    f = _as_spec(f)
    _validate_interior(x)
    if list(n_list) != sorted(set(n_list)):
        raise DomainError("n_list must be strictly increasing")
    rhs = voronovskaja_rhs(f, x, variant, alpha, beta)
    rows: list[ConvergenceRow] = []
    prev_err = None
    for n in n_list:
        q_n = seq.value(n, x.backend)
        try:
            lhs = voronovskaja_lhs(f, x, n, q_n, variant, alpha, beta, tol, max_terms)
        except (ArithmeticError, DomainError) as exc:
            rows.append(ConvergenceRow(n, q_n, None, None, error=str(exc)))
            prev_err = None
            continue
        row = ConvergenceRow(n, q_n, lhs, rhs)
        if prev_err is not None:
            row.err_decreased = bool(row.abs_err < prev_err)
        prev_err = row.abs_err
        rows.append(row)
    return rows


def trend_decreasing_last_half(rows: Sequence[ConvergenceRow]) -> bool:
    """True when abs_err is non-increasing over the last half of the rows."""
    usable = [r for r in rows if r.abs_err is not None]
    tail = usable[len(usable) // 2 :]
    errs = [r.abs_err for r in tail]
    return all(b <= a for a, b in zip(errs, errs[1:]))


# -- scaled central-moment limits ------------------------------------------------


def central_moment_at(n: int, m: int, q: Scalar, x: Scalar) -> Scalar:
    """D_{n,q}((t-x)_q^m; x) through the closed tables; cheap at any n."""
    ctx = QContext(q)
    return central_moment(n, m, ctx, route="closed").eval(x)


def scaled_central_moment_at(n: int, m: int, q: Scalar, x: Scalar) -> Scalar:
    """[n]_q D_{n,q}((t-x)_q^m; x)."""
    ctx = QContext(q)
    return ctx.q_int(n) * central_moment(n, m, ctx, route="closed").eval(x)


def decay_slope(
    m: int,
    x: Scalar,
    seq: QSequence,
    n_list: Sequence[int],
    backend: Backend = Backend.EXACT,
) -> float:
    """Least-squares slope of log |D((t-x)_q^m; x)| against log [n]_q."""
    if len(n_list) < 2:
        raise DomainError("need at least two n values for a slope")
    xs, ys = [], []
    for n in n_list:
        q = seq.value(n, backend)
        ctx = QContext(q)
        value = central_moment(n, m, ctx, route="closed").eval(x)
        if value.is_zero:
            raise DomainError(f"central moment vanished at n={n}; slope undefined")
        xs.append(math.log(float(ctx.q_int(n))))
        ys.append(math.log(abs(float(value))))
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    num = sum((a - mean_x) * (b - mean_y) for a, b in zip(xs, ys))
    den = sum((a - mean_x) ** 2 for a in xs)
    return num / den


# -- q-Taylor remainder -------------------------------------------------------------


def q_taylor_remainder(
    f: Union[FunctionSpec, Polynomial], x: Scalar, t: Scalar, ctx: QContext
) -> Scalar:
    """theta_q(x; t), the normalized second-order q-Taylor residue.

    theta_q(x; t) = (f(t) - f(x) - D_q f(x)(t-x) - D_q^2 f(x)/[2]_q (t-x)_q^2)
                    / (t-x)_q^2,          (t-x)_q^2 = (t-x)(t-qx),

    with theta_q(x; x) = 0 by definition.  The point t = qx (for t != x)
    is a denominator root and raises SingularRemainderError.
    """
    f = _as_spec(f)
    _validate_interior(x)
    if not (0 <= t.value <= 1):
        raise DomainError("t must lie in [0, 1]")
    if t == x:
        return Scalar.zero(x.backend)
    t_minus_x = t - x
    t_minus_qx = t - ctx.q * x
    if t_minus_qx.is_zero:
        raise SingularRemainderError(
            f"theta_q is singular at t = q*x (t={t}, x={x}, q={ctx.q})"
        )
    denom = t_minus_x * t_minus_qx
    d1 = q_derivative(f, x, ctx, 1)
    d2 = q_derivative(f, x, ctx, 2)
    residue = (
        f.evaluate(t)
        - f.evaluate(x)
        - d1 * t_minus_x
        - d2 / ctx.q_int(2) * denom
    )
    return residue / denom
