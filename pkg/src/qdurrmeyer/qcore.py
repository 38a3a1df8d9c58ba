"""Foundational q-arithmetic: q-integers, q-binomials, Jackson integrals, q-Beta.

Conventions (Jackson / Kac-Cheung):

    [n]_q        = 1 + q + ... + q^(n-1),              [0]_q = 0
    [n]_q!       = [1]_q [2]_q ... [n]_q,              [0]_q! = 1
    (1-x)_q^m    = prod_{s=0}^{m-1} (1 - q^s x)
    D_q f(x)     = (f(qx) - f(x)) / ((q-1) x)          for x != 0
    int_0^1 f d_q t = (1-q) sum_{j>=0} q^j f(q^j)
    B_q(a, b)    = int_0^1 t^(a-1) (1-qt)_q^(b-1) d_q t
                 = [a-1]_q! [b-1]_q! / [a+b-1]_q!

Every operation is a pure function of its inputs.  Numbers are `Scalar`
values tagged with a backend: exact rationals (no rounding, decidable
equality) or binary floats.  The two backends never mix silently.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import (
    BackendMismatchError,
    DomainError,
    JacksonTruncationError,
    OriginDerivativeError,
)

__all__ = [
    "Backend",
    "Scalar",
    "QContext",
    "FunctionSpec",
    "BUILTIN_NAMES",
    "q_integer",
    "q_factorial",
    "q_binomial",
    "q_pochhammer_one_minus",
    "q_derivative",
    "jackson_integral",
    "jackson_series",
    "q_beta",
    "DEFAULT_TOL",
    "DEFAULT_MAX_TERMS",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 4096


class Backend(Enum):
    EXACT = "exact"
    FLOAT = "float"


class Scalar:
    """A number tagged with its arithmetic backend.

    Exact scalars wrap `fractions.Fraction`; float scalars wrap a binary
    double.  Arithmetic between the two backends raises
    `BackendMismatchError` instead of coercing.  Plain Python ints are
    backend-neutral literals and adopt the backend of the Scalar operand.
    """

    __slots__ = ("value", "backend")

    def __init__(self, value, backend: Backend):
        if backend is Backend.EXACT:
            if isinstance(value, float):
                raise BackendMismatchError("exact scalar built from a float")
            value = Fraction(value)
        elif backend is Backend.FLOAT:
            value = float(value)
        else:
            raise TypeError(f"unknown backend {backend!r}")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, val):
        raise AttributeError("Scalar is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, numerator, denominator=1) -> "Scalar":
        return cls(Fraction(numerator, denominator), Backend.EXACT)

    @classmethod
    def floating(cls, value) -> "Scalar":
        return cls(float(value), Backend.FLOAT)

    @classmethod
    def zero(cls, backend: Backend) -> "Scalar":
        return cls(0, backend)

    @classmethod
    def one(cls, backend: Backend) -> "Scalar":
        return cls(1, backend)

    # -- helpers -----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.backend is Backend.EXACT

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def to_float(self) -> "Scalar":
        return Scalar(float(self.value), Backend.FLOAT)

    def _lift(self, other):
        """Return the raw value of `other` in this scalar's backend.

        Ints are backend-neutral; Fractions are exact literals and refuse
        to meet a float scalar.
        """
        if isinstance(other, Scalar):
            if other.backend is not self.backend:
                raise BackendMismatchError(
                    f"cannot mix {self.backend.value} and {other.backend.value} scalars"
                )
            return other.value
        if isinstance(other, int):
            return Fraction(other) if self.is_exact else float(other)
        if isinstance(other, Fraction):
            if not self.is_exact:
                raise BackendMismatchError("cannot mix a Fraction with a float scalar")
            return other
        if isinstance(other, float):
            if self.is_exact:
                raise BackendMismatchError("cannot mix a float with an exact scalar")
            return other
        return NotImplemented

    def _wrap(self, value) -> "Scalar":
        return Scalar(value, self.backend)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.value - v)

    def __rsub__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self._wrap(v - self.value)

    def __mul__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.value * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.value / v)

    def __rtruediv__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self._wrap(v / self.value)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("Scalar exponents must be ints")
        return self._wrap(self.value ** exponent)

    def __neg__(self):
        return self._wrap(-self.value)

    def __abs__(self):
        return self._wrap(abs(self.value))

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self.value == v

    def __lt__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self.value < v

    def __le__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self.value <= v

    def __gt__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self.value > v

    def __ge__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else self.value >= v

    def __hash__(self):
        return hash((self.backend, self.value))

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        tag = "x" if self.is_exact else "f"
        return f"Scalar<{tag}>({self.value})"

    def __str__(self):
        return str(self.value)


class QContext:
    """The deformation parameter q plus cached q-integer tables.

    Requires 0 < q < 1 strictly.  The distinguished `classical()` context
    carries q = 1 and is accepted only by the classical evaluator.  Contexts
    are immutable after construction and hash by identity, so any cache
    keyed on a context can never mix values computed for different q.
    Cache growth is append-only under the GIL, which makes sharing a context
    across parallel workers safe.
    """

    __slots__ = ("q", "n_max_hint", "backend", "is_classical", "_qint", "_qfact", "_qpow")

    def __init__(self, q: Scalar, n_max_hint: int = 64, _classical: bool = False):
        if not isinstance(q, Scalar):
            raise TypeError("q must be a Scalar")
        if n_max_hint < 1:
            raise DomainError("n_max_hint must be positive")
        if _classical:
            if q != 1:
                raise DomainError("classical context requires q = 1")
        elif not (0 < q.value < 1):
            raise DomainError("q must satisfy 0 < q < 1")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "n_max_hint", n_max_hint)
        object.__setattr__(self, "backend", q.backend)
        object.__setattr__(self, "is_classical", _classical)
        one = Scalar.one(q.backend)
        object.__setattr__(self, "_qint", [Scalar.zero(q.backend), one])
        object.__setattr__(self, "_qfact", [one, one])
        object.__setattr__(self, "_qpow", [one, q])

    def __setattr__(self, name, val):
        raise AttributeError("QContext is immutable")

    @classmethod
    def exact(cls, numerator, denominator=1, n_max_hint: int = 64) -> "QContext":
        return cls(Scalar.exact(numerator, denominator), n_max_hint)

    @classmethod
    def floating(cls, value, n_max_hint: int = 64) -> "QContext":
        return cls(Scalar.floating(value), n_max_hint)

    @classmethod
    def classical(cls, n_max_hint: int = 64) -> "QContext":
        return cls(Scalar.exact(1), n_max_hint, _classical=True)

    @property
    def zero(self) -> Scalar:
        return Scalar.zero(self.backend)

    @property
    def one(self) -> Scalar:
        return Scalar.one(self.backend)

    def scalar(self, value) -> Scalar:
        """Lift an int or Fraction into this context's backend."""
        if isinstance(value, Scalar):
            if value.backend is not self.backend:
                raise BackendMismatchError("scalar backend does not match context")
            return value
        if self.backend is Backend.FLOAT and isinstance(value, Fraction):
            return Scalar.floating(float(value))
        return Scalar(value, self.backend)

    def q_power(self, j: int) -> Scalar:
        """q^j, cached for j >= 0."""
        if j < 0:
            return self.q ** j
        pows = self._qpow
        while len(pows) <= j:
            pows.append(pows[-1] * self.q)
        return pows[j]

    def q_int(self, n: int) -> Scalar:
        if n < 0:
            raise DomainError("q-integer index must be nonnegative")
        table = self._qint
        while len(table) <= n:
            table.append(table[-1] + self.q_power(len(table) - 1))
        return table[n]

    def q_fact(self, n: int) -> Scalar:
        if n < 0:
            raise DomainError("q-factorial index must be nonnegative")
        table = self._qfact
        while len(table) <= n:
            table.append(table[-1] * self.q_int(len(table)))
        return table[n]

    def q_binom(self, n: int, k: int) -> Scalar:
        if not 0 <= k <= n:
            raise DomainError(f"q-binomial needs 0 <= k <= n, got n={n} k={k}")
        return self.q_fact(n) / (self.q_fact(k) * self.q_fact(n - k))

    def __repr__(self):
        label = "classical" if self.is_classical else str(self.q)
        return f"QContext(q={label}, backend={self.backend.value})"


# -- q-arithmetic operations -------------------------------------------------


def q_integer(n: int, ctx: QContext) -> Scalar:
    """[n]_q = 1 + q + ... + q^(n-1); zero for n = 0."""
    return ctx.q_int(n)


def q_factorial(n: int, ctx: QContext) -> Scalar:
    """[n]_q! with [0]_q! = 1."""
    return ctx.q_fact(n)


def q_binomial(n: int, k: int, ctx: QContext) -> Scalar:
    """Gaussian binomial [n choose k]_q, requires 0 <= k <= n."""
    return ctx.q_binom(n, k)


def q_pochhammer_one_minus(x: Scalar, m: int, ctx: QContext) -> Scalar:
    """(1-x)_q^m = prod_{s=0}^{m-1} (1 - q^s x); empty product is 1."""
    if m < 0:
        raise DomainError("q-Pochhammer length must be nonnegative")
    out = ctx.one
    for s in range(m):
        factor = ctx.one - ctx.q_power(s) * x
        if factor.is_zero:
            return ctx.zero
        out = out * factor
    return out


def q_beta(a: int, b: int, ctx: QContext) -> Scalar:
    """B_q(a, b) = [a-1]_q! [b-1]_q! / [a+b-1]_q! for integers a, b >= 1."""
    if a < 1 or b < 1:
        raise DomainError("q-Beta arguments must be >= 1")
    return ctx.q_fact(a - 1) * ctx.q_fact(b - 1) / ctx.q_fact(a + b - 1)


# -- function specifications ---------------------------------------------------

def _builtin_exp(t: float) -> float:
    return math.exp(t)


def _builtin_sin(t: float) -> float:
    return math.sin(t)


def _builtin_sqrt_shift(t: float) -> float:
    return math.sqrt(t + 0.5)


def _builtin_abs_shift(t: float) -> float:
    return abs(t - 0.5)


def _builtin_reciprocal_shift(t: float) -> float:
    return 1.0 / (t + 0.5)


# name -> (f, f', f'').  All are bounded on [0, 1]; the shifts keep
# singular or non-smooth points away from the endpoints.
_BUILTINS: Mapping[str, tuple] = {
    "exp": (_builtin_exp, math.exp, math.exp),
    "sin": (_builtin_sin, math.cos, lambda t: -math.sin(t)),
    "sqrt-shift": (
        _builtin_sqrt_shift,
        lambda t: 0.5 / math.sqrt(t + 0.5),
        lambda t: -0.25 * (t + 0.5) ** -1.5,
    ),
    "abs-shift": (
        _builtin_abs_shift,
        lambda t: math.copysign(1.0, t - 0.5),
        lambda t: 0.0,
    ),
    "reciprocal-shift": (
        _builtin_reciprocal_shift,
        lambda t: -((t + 0.5) ** -2),
        lambda t: 2.0 * (t + 0.5) ** -3,
    ),
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


class FunctionSpec:
    """A test function on [0, 1]: polynomial, named builtin, or tabulated.

    Polynomials carry their coefficients (ascending powers) and evaluate on
    either backend.  Builtins evaluate through float math and therefore
    demand the float backend.  Tabulated functions are a finite point ->
    value mapping with exact lookup; evaluation off the table is an error.
    """

    __slots__ = ("kind", "coeffs", "name", "table")

    POLYNOMIAL = "polynomial"
    BUILTIN = "builtin"
    TABULATED = "tabulated"

    def __init__(self, kind, coeffs=None, name=None, table=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, val):
        raise AttributeError("FunctionSpec is immutable")

    @classmethod
    def polynomial(cls, coeffs: Sequence[Scalar]) -> "FunctionSpec":
        coeffs = tuple(coeffs)
        if not coeffs:
            raise DomainError("polynomial spec needs at least one coefficient")
        backend = coeffs[0].backend
        if any(c.backend is not backend for c in coeffs):
            raise BackendMismatchError("polynomial coefficients mix backends")
        return cls(cls.POLYNOMIAL, coeffs=coeffs)

    @classmethod
    def monomial(cls, m: int, backend: Backend = Backend.EXACT) -> "FunctionSpec":
        """The function t -> t^m."""
        if m < 0:
            raise DomainError("monomial degree must be nonnegative")
        coeffs = [Scalar.zero(backend)] * m + [Scalar.one(backend)]
        return cls.polynomial(coeffs)

    @classmethod
    def builtin(cls, name: str) -> "FunctionSpec":
        if name not in _BUILTINS:
            raise DomainError(f"unknown builtin {name!r}; choices: {', '.join(BUILTIN_NAMES)}")
        return cls(cls.BUILTIN, name=name)

    @classmethod
    def tabulated(cls, table: Mapping[Scalar, Scalar]) -> "FunctionSpec":
        if not table:
            raise DomainError("tabulated spec needs at least one point")
        return cls(cls.TABULATED, table=dict(table))

    @property
    def is_polynomial(self) -> bool:
        return self.kind == self.POLYNOMIAL

    @property
    def backend(self):
        """Backend this function evaluates in, or None if set by the argument."""
        if self.is_polynomial:
            return self.coeffs[0].backend
        if self.kind == self.BUILTIN:
            return Backend.FLOAT
        return None

    def evaluate(self, x: Scalar) -> Scalar:
        if not (0 <= x.value <= 1):
            raise DomainError(f"function domain is [0, 1], got {x}")
        if self.is_polynomial:
            acc = Scalar.zero(x.backend)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if self.kind == self.BUILTIN:
            if x.backend is not Backend.FLOAT:
                raise BackendMismatchError(
                    f"builtin {self.name!r} evaluates in float arithmetic; "
                    "use the float backend"
                )
            return Scalar.floating(_BUILTINS[self.name][0](x.value))
        try:
            return self.table[x]
        except KeyError:
            raise DomainError(f"tabulated function has no value at {x}") from None

    def classical_derivative(self, x: Scalar, order: int) -> Scalar:
        """Ordinary derivative f'(x) or f''(x), used for limit-form targets."""
        if order not in (1, 2):
            raise DomainError("derivative order must be 1 or 2")
        if self.is_polynomial:
            coeffs = list(self.coeffs)
            for _ in range(order):
                coeffs = [coeffs[m] * m for m in range(1, len(coeffs))] or [
                    Scalar.zero(x.backend)
                ]
            acc = Scalar.zero(x.backend)
            for c in reversed(coeffs):
                acc = acc * x + c
            return acc
        if self.kind == self.BUILTIN:
            if x.backend is not Backend.FLOAT:
                raise BackendMismatchError("builtin derivatives need the float backend")
            if self.name == "abs-shift" and x.value == 0.5:
                raise DomainError("abs-shift is not differentiable at 0.5")
            return Scalar.floating(_BUILTINS[self.name][order](x.value))
        raise DomainError("tabulated functions have no derivative rule")

    def __repr__(self):
        if self.is_polynomial:
            return f"FunctionSpec(poly deg {len(self.coeffs) - 1})"
        if self.kind == self.BUILTIN:
            return f"FunctionSpec({self.name})"
        return f"FunctionSpec(tabulated, {len(self.table)} pts)"


# -- q-derivative ---------------------------------------------------------------


def _poly_q_derivative_coeffs(coeffs, ctx: QContext):
    """Coefficient rule: D_q(x^m) = [m]_q x^(m-1)."""
    return [ctx.q_int(m) * coeffs[m] for m in range(1, len(coeffs))]


def q_derivative(f: FunctionSpec, x: Scalar, ctx: QContext, order: int = 1) -> Scalar:
    """D_q f(x), or the iterated D_q^2 f(x) for order 2.

    Polynomial specs use the exact coefficient rule, valid at every x
    including 0.  Other specs use the difference quotient, which is
    undefined at the origin.
    """
    if order not in (1, 2):
        raise DomainError("q-derivative order must be 1 or 2")
    if not (0 <= x.value <= 1):
        raise DomainError("q-derivative is evaluated on [0, 1]")
    if f.is_polynomial:
        coeffs = list(f.coeffs)
        for _ in range(order):
            coeffs = _poly_q_derivative_coeffs(coeffs, ctx) or [ctx.zero]
        acc = ctx.zero
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc
    if x.is_zero:
        raise OriginDerivativeError(
            "q-derivative at x = 0 is defined only through the polynomial rule"
        )
    q = ctx.q
    denom = (q - 1) * x
    if order == 1:
        return (f.evaluate(q * x) - f.evaluate(x)) / denom
    first_at_qx = (f.evaluate(q * q * x) - f.evaluate(q * x)) / ((q - 1) * q * x)
    first_at_x = (f.evaluate(q * x) - f.evaluate(x)) / denom
    return (first_at_qx - first_at_x) / denom


# -- Jackson integral -------------------------------------------------------------


def jackson_series(
    fn: Callable[[Scalar], Scalar],
    ctx: QContext,
    tol=None,
    max_terms: int | None = None,
) -> Scalar:
    """(1-q) sum_{j>=0} q^j fn(q^j), truncated when a term drops below tol.

    Raises JacksonTruncationError if max_terms is hit first.
    """
    if ctx.is_classical:
        raise DomainError("Jackson integration needs 0 < q < 1")
    if max_terms is None:
        max_terms = DEFAULT_MAX_TERMS
    if tol is None:
        tol = ctx.scalar(Fraction(1, 10 ** 12)) if ctx.backend is Backend.EXACT else Scalar.floating(DEFAULT_TOL)
    elif not isinstance(tol, Scalar):
        tol = ctx.scalar(tol)
    if not tol.value > 0:
        raise DomainError("Jackson tolerance must be positive")
    one_minus_q = ctx.one - ctx.q
    total = ctx.zero
    term = ctx.zero
    for j in range(max_terms):
        node = ctx.q_power(j)
        term = one_minus_q * node * fn(node)
        total = total + term
        if abs(term) < tol:
            return total
    raise JacksonTruncationError(
        f"Jackson series did not reach tol={tol} within {max_terms} terms "
        f"(last term magnitude {abs(term)})",
        last_term=abs(term),
        terms=max_terms,
    )


def jackson_integral(
    f: FunctionSpec,
    ctx: QContext,
    tol=None,
    max_terms: int | None = None,
) -> Scalar:
    """int_0^1 f d_q t.

    Polynomial specs are integrated in closed form, one monomial at a time
    through int_0^1 t^m d_q t = 1/[m+1]_q, so the result is exact and tol is
    ignored.  Everything else goes through the truncated Jackson series.
    """
    if f.is_polynomial:
        total = ctx.zero
        for m, c in enumerate(f.coeffs):
            total = total + c / ctx.q_int(m + 1)
        return total
    return jackson_series(f.evaluate, ctx, tol=tol, max_terms=max_terms)
