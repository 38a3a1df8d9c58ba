"""Exact dense polynomial algebra over Scalar.

Moment formulas live here as polynomials in x, and the q-shifted central
factors (t - x)(t - qx)...(t - q^(m-1) x) as expansions in t whose
coefficients are x-polynomials.  Everything is immutable value semantics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BackendMismatchError, DomainError
from .qcore import Backend, FunctionSpec, QContext, Scalar

__all__ = [
    "Polynomial",
    "BivariateExpansion",
    "poly_arith",
    "poly_eval",
    "poly_q_derivative",
    "poly_compose_affine",
]

_NEG_INF = float("-inf")


class Polynomial:
    """Dense univariate polynomial; coeffs[i] multiplies X^i.

    Normalized on construction: trailing coefficients that are exactly zero
    are stripped, so the zero polynomial has an empty coefficient tuple.
    Float-backend near-zeros are kept as they are; only exact zeros drop.
    """

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs: Iterable[Scalar], backend: Backend | None = None):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, Scalar):
                raise TypeError("polynomial coefficients must be Scalars")
            if backend is None:
                backend = c.backend
            elif c.backend is not backend:
                raise BackendMismatchError("polynomial coefficients mix backends")
        if backend is None:
            raise DomainError("zero polynomial needs an explicit backend")
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, val):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, backend: Backend) -> "Polynomial":
        return cls((), backend)

    @classmethod
    def one(cls, backend: Backend) -> "Polynomial":
        return cls((Scalar.one(backend),))

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, m: int, backend: Backend, coeff: Scalar | None = None) -> "Polynomial":
        if m < 0:
            raise DomainError("monomial degree must be nonnegative")
        if coeff is None:
            coeff = Scalar.one(backend)
        return cls([Scalar.zero(backend)] * m + [coeff], backend)

    @classmethod
    def from_fractions(cls, values: Iterable) -> "Polynomial":
        """Exact polynomial from ints, Fractions, or 'p/q' strings."""
        return cls([Scalar.exact(Fraction(v)) for v in values], Backend.EXACT)

    # -- structure ----------------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else _NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> Scalar:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Scalar.zero(self.backend)

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError("expected a Polynomial")
        if other.backend is not self.backend:
            raise BackendMismatchError("polynomial backends differ")

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            (self.coefficient(i) + other.coefficient(i) for i in range(n)), self.backend
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            (self.coefficient(i) - other.coefficient(i) for i in range(n)), self.backend
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial((-c for c in self.coeffs), self.backend)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.backend)
        out = [Scalar.zero(self.backend)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out, self.backend)

    def scale(self, s) -> "Polynomial":
        if isinstance(s, int):
            s = Scalar(s, self.backend)
        if s.backend is not self.backend:
            raise BackendMismatchError("scale factor backend differs")
        return Polynomial((c * s for c in self.coeffs), self.backend)

    def shift_up(self, k: int = 1) -> "Polynomial":
        """Multiply by X^k."""
        if self.is_zero:
            return self
        return Polynomial([Scalar.zero(self.backend)] * k + list(self.coeffs), self.backend)

    # -- evaluation and calculus --------------------------------------------------

    def eval(self, x: Scalar) -> Scalar:
        if x.backend is not self.backend:
            raise BackendMismatchError("evaluation point backend differs")
        acc = Scalar.zero(self.backend)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = eval

    def q_derivative(self, ctx: QContext) -> "Polynomial":
        """Termwise rule: the X^(m-1) coefficient becomes [m]_q * coeffs[m]."""
        if ctx.backend is not self.backend:
            raise BackendMismatchError("context backend differs")
        return Polynomial(
            (ctx.q_int(m) * self.coeffs[m] for m in range(1, len(self.coeffs))),
            self.backend,
        )

    def derivative(self) -> "Polynomial":
        """Ordinary derivative, the q -> 1 limit of q_derivative."""
        return Polynomial(
            (self.coeffs[m] * m for m in range(1, len(self.coeffs))), self.backend
        )

    def compose_affine(self, a: Scalar, b: Scalar) -> "Polynomial":
        """The polynomial p(a*X + b), expanded exactly."""
        if a.backend is not self.backend or b.backend is not self.backend:
            raise BackendMismatchError("affine parameters backend differs")
        inner = Polynomial((b, a), self.backend)
        acc = Polynomial.zero(self.backend)
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial.constant(c)
        return acc

    def as_function_spec(self) -> FunctionSpec:
        coeffs = self.coeffs if self.coeffs else (Scalar.zero(self.backend),)
        return FunctionSpec.polynomial(coeffs)

    # -- misc -------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.backend is other.backend and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.backend, self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "Polynomial(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            parts.append(str(c) if i == 0 else f"({c})*X^{i}")
        return "Polynomial(" + " + ".join(parts) + ")"


class BivariateExpansion:
    """A finite expansion sum_j c_j(x) t^j with x-polynomial coefficients."""

    __slots__ = ("t_coeffs",)

    def __init__(self, t_coeffs: Sequence[Polynomial]):
        t_coeffs = tuple(t_coeffs)
        if not t_coeffs:
            raise DomainError("expansion needs at least one t-coefficient")
        backend = t_coeffs[0].backend
        if any(p.backend is not backend for p in t_coeffs):
            raise BackendMismatchError("expansion coefficients mix backends")
        object.__setattr__(self, "t_coeffs", t_coeffs)

    def __setattr__(self, name, val):
        raise AttributeError("BivariateExpansion is immutable")

    @property
    def backend(self) -> Backend:
        return self.t_coeffs[0].backend

    @property
    def t_degree(self) -> int:
        return len(self.t_coeffs) - 1

    def coefficient(self, j: int) -> Polynomial:
        if 0 <= j < len(self.t_coeffs):
            return self.t_coeffs[j]
        return Polynomial.zero(self.backend)

    def eval(self, t: Scalar, x: Scalar) -> Scalar:
        acc = Scalar.zero(self.backend)
        for p in reversed(self.t_coeffs):
            acc = acc * t + p.eval(x)
        return acc

    def contract(self, images: Sequence[Polynomial]) -> Polynomial:
        """Substitute x-polynomials for the powers of t: sum_j c_j(x) * images[j]."""
        if len(images) < len(self.t_coeffs):
            raise DomainError("need one image polynomial per power of t")
        acc = Polynomial.zero(self.backend)
        for cj, img in zip(self.t_coeffs, images):
            acc = acc + cj * img
        return acc

    def __eq__(self, other):
        if not isinstance(other, BivariateExpansion):
            return NotImplemented
        return self.t_coeffs == other.t_coeffs

    def __hash__(self):
        return hash(self.t_coeffs)

    def __repr__(self):
        return f"BivariateExpansion(t_degree={self.t_degree})"


# -- spec-facing operation names ------------------------------------------------


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown polynomial op {op!r}")


def poly_eval(p: Polynomial, x: Scalar) -> Scalar:
    return p.eval(x)


def poly_q_derivative(p: Polynomial, ctx: QContext) -> Polynomial:
    return p.q_derivative(ctx)


def poly_compose_affine(p: Polynomial, a: Scalar, b: Scalar) -> Polynomial:
    return p.compose_affine(a, b)
