"""The q-Bernstein basis and the Durrmeyer-type operators.

Plain q-Durrmeyer:

    D_{n,q}(f; x) = [n+1]_q sum_{k=0}^n q^(-k) p_{nk}(q; x)
                    int_0^1 f(t) p_{nk}(q; qt) d_q t,
    p_{nk}(q; x)  = [n choose k]_q x^k (1-x)_q^(n-k).

Stancu variant composes f with t -> ([n]_q t + alpha) / ([n]_q + beta) for
0 <= alpha <= beta.  The classical variant is the q = 1 operator evaluated
through ordinary Beta integrals; it exists as a q -> 1 cross-check target
and accepts polynomials only.

Since p_{nk}(q; qt) carries a factor q^k, the q^(-k) weight is folded
against it before anything is evaluated; no negative powers of q are ever
formed.  All polynomial-input paths go through exact q-Beta values, so the
identity checks in the test-suite can demand exact equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import (
    BackendMismatchError,
    DomainError,
    JacksonTruncationError,
    UnsupportedVariantError,
)
from .polyalg import Polynomial
from .qcore import Backend, FunctionSpec, QContext, Scalar, jackson_series, q_beta

__all__ = [
    "PLAIN",
    "STANCU",
    "CLASSICAL",
    "OperatorSpec",
    "bernstein_basis",
    "basis_polynomial",
    "kernel_mass",
    "durrmeyer_apply_poly",
    "durrmeyer_apply_fn",
    "stancu_apply",
    "classical_durrmeyer_apply",
]

PLAIN = "plain"
STANCU = "stancu"
CLASSICAL = "classical"


@dataclass(frozen=True)
class OperatorSpec:
    """Degree n, deformation context, and operator variant."""

    n: int
    ctx: QContext
    variant: str = PLAIN
    alpha: Scalar | None = None
    beta: Scalar | None = None

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("operator degree n must be >= 1")
        if self.variant not in (PLAIN, STANCU, CLASSICAL):
            raise DomainError(f"unknown variant {self.variant!r}")
        if self.variant == CLASSICAL:
            if not self.ctx.is_classical:
                raise DomainError("classical variant requires the classical context")
        elif self.ctx.is_classical:
            raise DomainError("q-variants require 0 < q < 1")
        if self.variant == STANCU:
            if self.alpha is None or self.beta is None:
                raise DomainError("stancu variant needs alpha and beta")
            if self.alpha.backend is not self.ctx.backend or self.beta.backend is not self.ctx.backend:
                raise BackendMismatchError("alpha/beta backend must match the context")
            if not (0 <= self.alpha.value and self.alpha.value <= self.beta.value):
                raise DomainError("stancu parameters need 0 <= alpha <= beta")
        elif self.alpha is not None or self.beta is not None:
            raise DomainError("alpha/beta are only meaningful for the stancu variant")

    @classmethod
    def plain(cls, n: int, ctx: QContext) -> "OperatorSpec":
        return cls(n, ctx)

    @classmethod
    def stancu(cls, n: int, ctx: QContext, alpha: Scalar, beta: Scalar) -> "OperatorSpec":
        return cls(n, ctx, STANCU, alpha, beta)

    @classmethod
    def classical(cls, n: int) -> "OperatorSpec":
        return cls(n, QContext.classical(), CLASSICAL)

    def plain_twin(self) -> "OperatorSpec":
        return OperatorSpec(self.n, self.ctx) if self.variant != PLAIN else self


def _check_point(x: Scalar, ctx: QContext):
    if x.backend is not ctx.backend:
        raise BackendMismatchError("evaluation point backend differs from context")
    if not (0 <= x.value <= 1):
        raise DomainError(f"x must lie in [0, 1], got {x}")


def bernstein_basis(spec: OperatorSpec, k: int, x: Scalar) -> Scalar:
    """p_{nk}(q; x), nonnegative on [0, 1]."""
    n, ctx = spec.n, spec.ctx
    if not 0 <= k <= n:
        raise DomainError(f"basis index needs 0 <= k <= n, got k={k} n={n}")
    _check_point(x, ctx)
    out = ctx.q_binom(n, k) * x ** k
    for s in range(n - k):
        out = out * (ctx.one - ctx.q_power(s) * x)
    return out


def basis_polynomial(spec: OperatorSpec, k: int) -> Polynomial:
    """p_{nk}(q; x) expanded as a polynomial in x."""
    n, ctx = spec.n, spec.ctx
    if not 0 <= k <= n:
        raise DomainError(f"basis index needs 0 <= k <= n, got k={k} n={n}")
    poly = Polynomial.monomial(k, ctx.backend, ctx.q_binom(n, k))
    for s in range(n - k):
        poly = poly * Polynomial((ctx.one, -ctx.q_power(s)), ctx.backend)
    return poly


def kernel_mass(spec: OperatorSpec, k: int) -> Scalar:
    """int_0^1 p_{nk}(q; qt) d_q t, which collapses to q^k / [n+1]_q."""
    n, ctx = spec.n, spec.ctx
    if spec.variant == CLASSICAL:
        raise UnsupportedVariantError("classical variant has no q-kernel; use the classical path")
    if not 0 <= k <= n:
        raise DomainError(f"kernel index needs 0 <= k <= n, got k={k} n={n}")
    return ctx.q_binom(n, k) * ctx.q_power(k) * q_beta(k + 1, n - k + 1, ctx)


def _kernel_weights(spec: OperatorSpec, p: Polynomial) -> list[Scalar]:
    """Per-k weight [n+1]_q [n choose k]_q sum_m p_m B_q(k+m+1, n-k+1).

    The q^(-k) prefactor and the q^k from p_{nk}(q; qt) have already been
    cancelled against each other.
    """
    n, ctx = spec.n, spec.ctx
    lead = ctx.q_int(n + 1)
    weights = []
    for k in range(n + 1):
        inner = ctx.zero
        for m, cm in enumerate(p.coeffs):
            if cm.is_zero:
                continue
            inner = inner + cm * q_beta(k + m + 1, n - k + 1, ctx)
        weights.append(lead * ctx.q_binom(n, k) * inner)
    return weights


def durrmeyer_apply_poly(spec: OperatorSpec, p: Polynomial) -> Polynomial:
    """Exact image of a polynomial under D_{n,q}, as a polynomial in x."""
    if spec.variant != PLAIN:
        raise UnsupportedVariantError("durrmeyer_apply_poly expects the plain variant")
    ctx = spec.ctx
    if p.backend is not ctx.backend:
        raise BackendMismatchError("polynomial backend differs from context")
    if p.is_zero:
        return Polynomial.zero(ctx.backend)
    out = Polynomial.zero(ctx.backend)
    for k, w in enumerate(_kernel_weights(spec, p)):
        if w.is_zero:
            continue
        out = out + basis_polynomial(spec, k).scale(w)
    return out


def _apply_fn_pointwise(
    spec: OperatorSpec,
    fn: Callable[[Scalar], Scalar],
    x: Scalar,
    tol,
    max_terms,
) -> Scalar:
    """Kernel sum for a black-box integrand evaluated through Jackson series."""
    n, ctx = spec.n, spec.ctx
    lead = ctx.q_int(n + 1)
    total = ctx.zero
    for k in range(n + 1):
        base = bernstein_basis(spec, k, x)
        if base.is_zero:
            continue
        binom = ctx.q_binom(n, k)

        def integrand(t: Scalar, _k=k) -> Scalar:
            # f(t) * t^k * (1-qt)_q^(n-k); the q^k/q^(-k) pair is folded away
            out = fn(t) * t ** _k
            for s in range(n - _k):
                out = out * (ctx.one - ctx.q_power(s + 1) * t)
            return out

        try:
            integral = jackson_series(integrand, ctx, tol=tol, max_terms=max_terms)
        except JacksonTruncationError as exc:
            raise JacksonTruncationError(
                f"{exc} (while integrating kernel index k={k})",
                last_term=exc.last_term,
                terms=exc.terms,
                basis_index=k,
            ) from exc
        total = total + lead * base * binom * integral
    return total


def durrmeyer_apply_fn(
    spec: OperatorSpec,
    f: FunctionSpec,
    x: Scalar,
    tol=None,
    max_terms: int | None = None,
) -> Scalar:
    """D_{n,q}(f; x) for a FunctionSpec; polynomial specs take the exact path."""
    if spec.variant != PLAIN:
        raise UnsupportedVariantError("durrmeyer_apply_fn expects the plain variant")
    _check_point(x, spec.ctx)
    if f.is_polynomial:
        return durrmeyer_apply_poly(spec, Polynomial(f.coeffs, spec.ctx.backend)).eval(x)
    return _apply_fn_pointwise(spec, f.evaluate, x, tol, max_terms)


def _stancu_affine(spec: OperatorSpec) -> tuple[Scalar, Scalar]:
    ctx = spec.ctx
    qn = ctx.q_int(spec.n)
    denom = qn + spec.beta
    return qn / denom, spec.alpha / denom


def stancu_apply(
    spec: OperatorSpec,
    f: Union[Polynomial, FunctionSpec],
    x: Scalar | None = None,
    tol=None,
    max_terms: int | None = None,
):
    """Image under the Stancu variant.

    Polynomial input returns the exact image polynomial (or its value when
    x is given).  Function input needs an evaluation point and goes through
    the Jackson-series path with the affine argument map applied first.
    """
    if spec.variant != STANCU:
        raise UnsupportedVariantError("stancu_apply expects the stancu variant")
    a, b = _stancu_affine(spec)
    plain = spec.plain_twin()
    if isinstance(f, FunctionSpec) and f.is_polynomial:
        f = Polynomial(f.coeffs, spec.ctx.backend)
    if isinstance(f, Polynomial):
        image = durrmeyer_apply_poly(plain, f.compose_affine(a, b))
        if x is None:
            return image
        _check_point(x, spec.ctx)
        return image.eval(x)
    if x is None:
        raise DomainError("function input needs an evaluation point x")
    _check_point(x, spec.ctx)

    def mapped(t: Scalar) -> Scalar:
        return f.evaluate(a * t + b)

    return _apply_fn_pointwise(plain, mapped, x, tol, max_terms)


def classical_durrmeyer_apply(spec: OperatorSpec, p: Polynomial) -> Polynomial:
    """The q = 1 operator via ordinary Beta integrals, exact backend only.

    int_0^1 t^a (1-t)^b dt = a! b! / (a+b+1)!
    """
    if spec.variant != CLASSICAL:
        raise UnsupportedVariantError("classical_durrmeyer_apply expects the classical variant")
    if p.backend is not Backend.EXACT:
        raise BackendMismatchError("the classical cross-check path is exact-only")
    n = spec.n
    one_minus_x = Polynomial.from_fractions([1, -1])
    out = Polynomial.zero(Backend.EXACT)
    for k in range(n + 1):
        inner = Fraction(0)
        for m, cm in enumerate(p.coeffs):
            if cm.is_zero:
                continue
            inner += cm.value * Fraction(
                math.factorial(k + m) * math.factorial(n - k),
                math.factorial(n + m + 1),
            )
        if inner == 0:
            continue
        # both binomials of basis and kernel are identical at q = 1
        weight = Scalar.exact((n + 1) * math.comb(n, k) ** 2 * inner)
        basis = Polynomial.monomial(k, Backend.EXACT)
        for _ in range(n - k):
            basis = basis * one_minus_x
        out = out + basis.scale(weight)
    return out
