import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdurrmeyer import (
    Backend,
    BackendMismatchError,
    DomainError,
    FunctionSpec,
    JacksonTruncationError,
    OriginDerivativeError,
    QContext,
    Scalar,
    jackson_integral,
    q_beta,
    q_binomial,
    q_derivative,
    q_factorial,
    q_integer,
    q_pochhammer_one_minus,
)

rational_q = st.fractions(
    min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=40
)


class TestScalar:
    def test_backends_never_mix(self):
        with pytest.raises(BackendMismatchError):
            Scalar.exact(1, 2) + Scalar.floating(0.5)
        with pytest.raises(BackendMismatchError):
            Scalar.floating(0.5) == Scalar.exact(1, 2)
        with pytest.raises(BackendMismatchError):
            Scalar.floating(0.5) * Fraction(1, 2)

    def test_int_literals_adopt_backend(self):
        assert Scalar.exact(1, 2) + 1 == Fraction(3, 2)
        assert Scalar.floating(0.5) * 2 == 1.0

    def test_exact_from_float_rejected(self):
        with pytest.raises(BackendMismatchError):
            Scalar(0.5, Backend.EXACT)

    def test_exact_arithmetic_is_exact(self):
        total = Scalar.exact(0)
        for _ in range(10):
            total = total + Scalar.exact(1, 10)
        assert total == 1

    def test_hashable(self):
        assert len({Scalar.exact(1, 2), Scalar.exact(2, 4)}) == 1


class TestQContext:
    def test_q_range_enforced(self):
        with pytest.raises(DomainError):
            QContext(Scalar.exact(1))
        with pytest.raises(DomainError):
            QContext(Scalar.exact(3, 2))
        with pytest.raises(DomainError):
            QContext(Scalar.floating(0.0))

    def test_classical_context_is_special(self):
        ctx = QContext.classical()
        assert ctx.is_classical
        assert ctx.q_int(7) == 7

    def test_immutable(self, ctx_half):
        with pytest.raises(AttributeError):
            ctx_half.q = Scalar.exact(1, 3)


class TestQInteger:
    def test_examples(self, ctx_half):
        assert q_integer(0, ctx_half) == 0
        assert q_integer(4, ctx_half) == Fraction(15, 8)
        assert q_integer(3, QContext.exact(3, 4)) == Fraction(37, 16)

    def test_negative_rejected(self, ctx_half):
        with pytest.raises(DomainError):
            q_integer(-1, ctx_half)

    def test_recursion_identities(self, ctx_grid):
        # [n+1]_q = [n]_q + q^n = 1 + q [n]_q, exactly, for n <= 64
        for ctx in ctx_grid:
            for n in range(65):
                step = q_integer(n + 1, ctx)
                assert step == q_integer(n, ctx) + ctx.q_power(n)
                assert step == ctx.one + ctx.q * q_integer(n, ctx)

    def test_limit_is_n(self):
        # along q = 1 - 2^-i the q-integer approaches n at rate O(1-q)
        for i in (4, 8, 12):
            q = Fraction(2 ** i - 1, 2 ** i)
            ctx = QContext.exact(q)
            err = abs(q_integer(6, ctx) - 6)
            assert err <= 15 * (1 - q)


class TestQFactorial:
    def test_examples(self, ctx_half):
        assert q_factorial(0, ctx_half) == 1
        assert q_factorial(3, ctx_half) == Fraction(21, 8)
        assert q_factorial(2, QContext.exact(3, 4)) == Fraction(7, 4)

    def test_negative_rejected(self, ctx_half):
        with pytest.raises(DomainError):
            q_factorial(-2, ctx_half)


class TestQBinomial:
    def test_examples(self, ctx_half):
        assert q_binomial(5, 0, ctx_half) == 1
        assert q_binomial(2, 1, ctx_half) == Fraction(3, 2)
        assert q_binomial(4, 2, ctx_half) == Fraction(35, 16)

    def test_out_of_range_rejected(self, ctx_half):
        with pytest.raises(DomainError):
            q_binomial(3, -1, ctx_half)
        with pytest.raises(DomainError):
            q_binomial(3, 4, ctx_half)

    @given(q=rational_q, n=st.integers(1, 24))
    @settings(max_examples=40, deadline=None)
    def test_both_pascal_recursions(self, q, n):
        ctx = QContext.exact(q)
        for k in range(n + 1):
            b = q_binomial(n, k, ctx)
            upper_left = q_binomial(n - 1, k - 1, ctx) if k >= 1 else ctx.zero
            upper = q_binomial(n - 1, k, ctx) if k <= n - 1 else ctx.zero
            assert b == upper_left + ctx.q_power(k) * upper
            assert b == ctx.q_power(n - k) * upper_left + upper


class TestPochhammer:
    def test_examples(self, ctx_half):
        assert q_pochhammer_one_minus(Scalar.exact(0), 7, ctx_half) == 1
        assert q_pochhammer_one_minus(Scalar.exact(1), 3, ctx_half) == 0
        assert q_pochhammer_one_minus(Scalar.exact(1, 2), 2, ctx_half) == Fraction(3, 8)

    def test_negative_length_rejected(self, ctx_half):
        with pytest.raises(DomainError):
            q_pochhammer_one_minus(Scalar.exact(1, 2), -1, ctx_half)


class TestQDerivative:
    def test_examples(self, ctx_half):
        t2, t3 = FunctionSpec.monomial(2), FunctionSpec.monomial(3)
        assert q_derivative(t2, Scalar.exact(1), ctx_half) == Fraction(3, 2)
        const = FunctionSpec.polynomial([Scalar.exact(5)])
        assert q_derivative(const, Scalar.exact(2, 3), ctx_half) == 0
        assert q_derivative(t3, Scalar.exact(1, 2), ctx_half) == Fraction(7, 16)

    def test_polynomial_rule_works_at_origin(self, ctx_half):
        f = FunctionSpec.polynomial([Scalar.exact(1), Scalar.exact(2), Scalar.exact(3)])
        assert q_derivative(f, Scalar.exact(0), ctx_half) == 2

    def test_builtin_at_origin_rejected(self):
        ctx = QContext.floating(0.5)
        with pytest.raises(OriginDerivativeError):
            q_derivative(FunctionSpec.builtin("exp"), Scalar.floating(0.0), ctx)

    def test_difference_quotient_matches_rule(self):
        # tabulated copy of t^2 on the three needed nodes vs the exact rule
        ctx = QContext.exact(1, 2)
        x = Scalar.exact(1, 2)
        nodes = [x, ctx.q * x, ctx.q * ctx.q * x]
        table = {p: p * p for p in nodes}
        f = FunctionSpec.tabulated(table)
        assert q_derivative(f, x, ctx, order=1) == q_derivative(
            FunctionSpec.monomial(2), x, ctx, order=1
        )
        assert q_derivative(f, x, ctx, order=2) == q_derivative(
            FunctionSpec.monomial(2), x, ctx, order=2
        )

    def test_order_two_of_cubic(self, ctx_half):
        # D_q^2 t^3 = [3][2] x
        got = q_derivative(FunctionSpec.monomial(3), Scalar.exact(1, 4), ctx_half, order=2)
        assert got == Fraction(7, 4) * Fraction(3, 2) * Fraction(1, 4)

    def test_slope_toward_classical_derivative(self):
        # D_q exp at 0.5 approaches exp(0.5) at rate O(1-q)
        errs = []
        for i in (4, 6, 8, 10):
            ctx = QContext.floating(1 - 2.0 ** -i)
            d = q_derivative(FunctionSpec.builtin("exp"), Scalar.floating(0.5), ctx)
            errs.append(abs(float(d) - math.exp(0.5)))
        ratios = [b / a for a, b in zip(errs, errs[1:])]
        assert all(0.15 < r < 0.35 for r in ratios)  # halving q-gap halves the error


class TestJacksonIntegral:
    def test_examples(self, ctx_half):
        one = FunctionSpec.polynomial([Scalar.exact(1)])
        assert jackson_integral(one, ctx_half) == 1
        assert jackson_integral(FunctionSpec.monomial(1), ctx_half) == Fraction(2, 3)
        assert jackson_integral(FunctionSpec.monomial(2), ctx_half) == Fraction(4, 7)

    def test_monomial_matches_beta(self, ctx_grid):
        for ctx in ctx_grid:
            for m in range(9):
                value = jackson_integral(FunctionSpec.monomial(m), ctx)
                assert value == q_beta(m + 1, 1, ctx)
                assert value == ctx.one / ctx.q_int(m + 1)

    def test_series_path_on_tabulated_nodes(self, ctx_half):
        # t -> t sampled on the Jackson nodes; series must reproduce 1/[2]
        table = {ctx_node: ctx_node for ctx_node in (ctx_half.q_power(j) for j in range(200))}
        got = jackson_integral(
            FunctionSpec.tabulated(table), ctx_half, tol=Fraction(1, 10 ** 30)
        )
        assert abs(got - Fraction(2, 3)) < Fraction(1, 10 ** 25)

    def test_truncation_failure_is_diagnosed(self):
        ctx = QContext.floating(0.999)
        with pytest.raises(JacksonTruncationError) as err:
            jackson_integral(FunctionSpec.builtin("exp"), ctx, tol=1e-12, max_terms=10)
        assert err.value.last_term is not None
        assert err.value.terms == 10

    def test_builtin_needs_float_backend(self, ctx_half):
        with pytest.raises(BackendMismatchError):
            jackson_integral(FunctionSpec.builtin("sin"), ctx_half)

    def test_builtin_series_value(self):
        # int_0^1 sin d_q t at q close to 1 approaches 1 - cos(1)
        ctx = QContext.floating(1 - 2.0 ** -14)
        got = jackson_integral(FunctionSpec.builtin("sin"), ctx, tol=1e-13, max_terms=400000)
        assert abs(float(got) - (1 - math.cos(1.0))) < 2e-4


class TestQBeta:
    def test_examples(self, ctx_half):
        assert q_beta(1, 1, ctx_half) == 1
        assert q_beta(2, 1, ctx_half) == Fraction(2, 3)
        assert q_beta(2, 2, ctx_half) == Fraction(8, 21)

    def test_domain(self, ctx_half):
        with pytest.raises(DomainError):
            q_beta(0, 1, ctx_half)
        with pytest.raises(DomainError):
            q_beta(1, 0, ctx_half)

    def test_matches_jackson_series_exactly(self, ctx_grid):
        # expand t^(a-1)(1-qt)_q^(b-1) and integrate in closed form, a+b <= 20
        from qdurrmeyer import Polynomial

        for ctx in ctx_grid:
            for a in range(1, 10):
                for b in range(1, 21 - a):
                    poly = Polynomial.monomial(a - 1, ctx.backend)
                    for s in range(b - 1):
                        poly = poly * Polynomial((ctx.one, -ctx.q_power(s + 1)), ctx.backend)
                    assert jackson_integral(poly.as_function_spec(), ctx) == q_beta(a, b, ctx)


class TestFunctionSpec:
    def test_builtins_bounded_on_unit_interval(self):
        for name in ("exp", "sin", "sqrt-shift", "abs-shift", "reciprocal-shift"):
            f = FunctionSpec.builtin(name)
            values = [float(f.evaluate(Scalar.floating(t / 64))) for t in range(65)]
            assert all(math.isfinite(v) for v in values)
            assert max(abs(v) for v in values) < 3.0

    def test_domain_enforced(self, ctx_half):
        f = FunctionSpec.monomial(2)
        with pytest.raises(DomainError):
            f.evaluate(Scalar.exact(3, 2))

    def test_tabulated_missing_point(self):
        f = FunctionSpec.tabulated({Scalar.exact(1, 2): Scalar.exact(1, 4)})
        assert f.evaluate(Scalar.exact(1, 2)) == Fraction(1, 4)
        with pytest.raises(DomainError):
            f.evaluate(Scalar.exact(1, 3))

    def test_unknown_builtin_rejected(self):
        with pytest.raises(DomainError):
            FunctionSpec.builtin("tan")
