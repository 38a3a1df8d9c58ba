from fractions import Fraction

import pytest

from qdurrmeyer import (
    Backend,
    BackendMismatchError,
    DomainError,
    FunctionSpec,
    JacksonTruncationError,
    OperatorSpec,
    Polynomial,
    QContext,
    Scalar,
    UnsupportedVariantError,
    bernstein_basis,
    classical_durrmeyer_apply,
    durrmeyer_apply_fn,
    durrmeyer_apply_poly,
    kernel_mass,
    stancu_apply,
)
from qdurrmeyer.operators import basis_polynomial

from conftest import Q_GRID, X_GRID_16


class TestOperatorSpec:
    def test_validation(self, ctx_half):
        with pytest.raises(DomainError):
            OperatorSpec.plain(0, ctx_half)
        with pytest.raises(DomainError):
            OperatorSpec(2, ctx_half, "classical")
        with pytest.raises(DomainError):
            OperatorSpec(2, QContext.classical(), "plain")
        with pytest.raises(DomainError):
            OperatorSpec.stancu(2, ctx_half, Scalar.exact(3), Scalar.exact(1))
        with pytest.raises(DomainError):
            OperatorSpec(2, ctx_half, "plain", alpha=Scalar.exact(1))

    def test_stancu_accepts_boundary(self, ctx_half):
        OperatorSpec.stancu(2, ctx_half, Scalar.exact(0), Scalar.exact(0))
        OperatorSpec.stancu(2, ctx_half, Scalar.exact(2), Scalar.exact(2))


class TestBernsteinBasis:
    def test_endpoint_examples(self, ctx_half):
        spec = OperatorSpec.plain(3, ctx_half)
        assert bernstein_basis(spec, 0, Scalar.exact(0)) == 1
        assert bernstein_basis(spec, 3, Scalar.exact(1)) == 1

    def test_interior_value(self, ctx_half):
        # [2;1]_q x (1-x) at x = 1/2: (3/2)(1/2)(1/2)
        spec = OperatorSpec.plain(2, ctx_half)
        assert bernstein_basis(spec, 1, Scalar.exact(1, 2)) == Fraction(3, 8)

    def test_partition_of_unity(self):
        for q in Q_GRID:
            ctx = QContext.exact(q)
            for n in range(1, 21):
                spec = OperatorSpec.plain(n, ctx)
                for xf in X_GRID_16:
                    x = Scalar.exact(xf)
                    total = ctx.zero
                    for k in range(n + 1):
                        total = total + bernstein_basis(spec, k, x)
                    assert total == 1, (n, q, xf)

    def test_nonnegative_on_unit_interval(self, ctx_half):
        spec = OperatorSpec.plain(6, ctx_half)
        for xf in X_GRID_16:
            for k in range(7):
                assert bernstein_basis(spec, k, Scalar.exact(xf)) >= 0

    def test_index_range(self, ctx_half):
        spec = OperatorSpec.plain(3, ctx_half)
        with pytest.raises(DomainError):
            bernstein_basis(spec, 4, Scalar.exact(1, 2))
        with pytest.raises(DomainError):
            bernstein_basis(spec, -1, Scalar.exact(1, 2))

    def test_x_outside_unit_interval_rejected(self, ctx_half):
        spec = OperatorSpec.plain(3, ctx_half)
        with pytest.raises(DomainError):
            bernstein_basis(spec, 1, Scalar.exact(11, 10))

    def test_polynomial_form_matches_pointwise(self, ctx_half):
        spec = OperatorSpec.plain(4, ctx_half)
        for k in range(5):
            poly = basis_polynomial(spec, k)
            for xf in (Fraction(1, 3), Fraction(2, 3), Fraction(1)):
                x = Scalar.exact(xf)
                assert poly.eval(x) == bernstein_basis(spec, k, x)


class TestKernelMass:
    def test_examples(self, ctx_half):
        spec = OperatorSpec.plain(2, ctx_half)
        assert kernel_mass(spec, 0) == Fraction(4, 7)
        assert kernel_mass(spec, 1) == Fraction(2, 7)
        assert kernel_mass(spec, 2) == Fraction(1, 7)

    def test_closed_value(self):
        for q in Q_GRID:
            ctx = QContext.exact(q)
            for n in range(1, 9):
                spec = OperatorSpec.plain(n, ctx)
                for k in range(n + 1):
                    assert kernel_mass(spec, k) == ctx.q_power(k) / ctx.q_int(n + 1)

    def test_classical_unsupported(self):
        spec = OperatorSpec.classical(3)
        with pytest.raises(UnsupportedVariantError):
            kernel_mass(spec, 0)

    def test_total_mass_is_one(self, ctx_half):
        # sum_k [n+1] q^-k mass_k p_nk(x) == 1, the operator normalization
        for n in (1, 4, 7):
            spec = OperatorSpec.plain(n, ctx_half)
            x = Scalar.exact(5, 9)
            total = ctx_half.zero
            for k in range(n + 1):
                total = total + (
                    ctx_half.q_int(n + 1)
                    * ctx_half.q_power(-k)
                    * kernel_mass(spec, k)
                    * bernstein_basis(spec, k, x)
                )
            assert total == 1


class TestDurrmeyerPolynomial:
    def test_constant_preserved(self, ctx_half):
        spec = OperatorSpec.plain(2, ctx_half)
        assert durrmeyer_apply_poly(spec, Polynomial.one(Backend.EXACT)) == Polynomial.one(
            Backend.EXACT
        )

    def test_first_moment_example(self, ctx_half):
        spec = OperatorSpec.plain(2, ctx_half)
        image = durrmeyer_apply_poly(spec, Polynomial.monomial(1, Backend.EXACT))
        assert image == Polynomial.from_fractions([Fraction(8, 15), Fraction(2, 5)])
        assert image.eval(Scalar.exact(1, 2)) == Fraction(11, 15)

    def test_linearity(self, ctx_half):
        spec = OperatorSpec.plain(3, ctx_half)
        p = Polynomial.from_fractions([1, -2, 3])
        g = Polynomial.from_fractions([0, 1, 0, 2])
        combo = p.scale(Scalar.exact(2, 3)) + g.scale(Scalar.exact(-5))
        expect = durrmeyer_apply_poly(spec, p).scale(Scalar.exact(2, 3)) + (
            durrmeyer_apply_poly(spec, g).scale(Scalar.exact(-5))
        )
        assert durrmeyer_apply_poly(spec, combo) == expect

    def test_degree_bound(self, ctx_half):
        for n in (1, 2, 5):
            spec = OperatorSpec.plain(n, ctx_half)
            for m in range(7):
                image = durrmeyer_apply_poly(spec, Polynomial.monomial(m, Backend.EXACT))
                assert image.degree <= min(m, n)

    def test_variant_guard(self, ctx_half):
        spec = OperatorSpec.stancu(2, ctx_half, Scalar.exact(0), Scalar.exact(0))
        with pytest.raises(UnsupportedVariantError):
            durrmeyer_apply_poly(spec, Polynomial.one(Backend.EXACT))


class TestDurrmeyerFunction:
    def test_constant_float_path(self):
        ctx = QContext.floating(0.5)
        spec = OperatorSpec.plain(4, ctx)
        one = FunctionSpec.polynomial([Scalar.floating(1.0)])
        got = durrmeyer_apply_fn(spec, one, Scalar.floating(0.37))
        assert abs(float(got) - 1.0) < 1e-12

    def test_polynomial_delegates_to_exact_path(self, ctx_half):
        spec = OperatorSpec.plain(2, ctx_half)
        got = durrmeyer_apply_fn(spec, FunctionSpec.monomial(1), Scalar.exact(1, 2))
        assert got == Fraction(11, 15)
        assert durrmeyer_apply_fn(spec, FunctionSpec.monomial(2), Scalar.exact(1)) == (
            Fraction(28, 31)
        )

    def test_series_path_matches_exact_path(self):
        # black-box t^2 via a tabulated function against the q-Beta route
        ctx = QContext.floating(0.5)
        spec = OperatorSpec.plain(3, ctx)
        x = Scalar.floating(0.4)
        exact = durrmeyer_apply_fn(spec, FunctionSpec.monomial(2, Backend.FLOAT), x)

        def sq(t):
            return t * t

        table = {ctx.q_power(j): sq(ctx.q_power(j)) for j in range(1200)}
        series = durrmeyer_apply_fn(spec, FunctionSpec.tabulated(table), x, tol=1e-14)
        assert abs(float(series) - float(exact)) < 1e-12

    def test_positivity(self):
        ctx = QContext.floating(0.5)
        spec = OperatorSpec.plain(5, ctx)
        for name in ("exp", "abs-shift", "reciprocal-shift"):
            got = durrmeyer_apply_fn(spec, FunctionSpec.builtin(name), Scalar.floating(0.62))
            assert float(got) >= 0.0

    def test_endpoint_reduces_to_single_kernel(self):
        ctx = QContext.floating(0.5)
        n = 4
        spec = OperatorSpec.plain(n, ctx)
        f = FunctionSpec.builtin("exp")
        got = durrmeyer_apply_fn(spec, f, Scalar.floating(0.0))

        def weighted(t):
            out = f.evaluate(t)
            for s in range(n):
                out = out * (ctx.one - ctx.q_power(s + 1) * t)
            return out

        from qdurrmeyer.qcore import jackson_series

        expect = ctx.q_int(n + 1) * jackson_series(weighted, ctx)
        assert abs(float(got) - float(expect)) < 1e-12

    def test_truncation_error_carries_kernel_index(self):
        ctx = QContext.floating(0.999)
        spec = OperatorSpec.plain(2, ctx)
        with pytest.raises(JacksonTruncationError) as err:
            durrmeyer_apply_fn(spec, FunctionSpec.builtin("exp"), Scalar.floating(0.5), max_terms=5)
        assert err.value.basis_index is not None


class TestStancu:
    def test_zero_parameters_collapse_to_plain(self, ctx_half):
        spec = OperatorSpec.stancu(3, ctx_half, Scalar.exact(0), Scalar.exact(0))
        plain = OperatorSpec.plain(3, ctx_half)
        for m in range(5):
            p = Polynomial.monomial(m, Backend.EXACT)
            assert stancu_apply(spec, p) == durrmeyer_apply_poly(plain, p)

    def test_constant_preserved(self, ctx_half):
        spec = OperatorSpec.stancu(2, ctx_half, Scalar.exact(1), Scalar.exact(2))
        assert stancu_apply(spec, Polynomial.one(Backend.EXACT)) == Polynomial.one(Backend.EXACT)

    def test_first_moment_at_origin(self, ctx_half):
        spec = OperatorSpec.stancu(2, ctx_half, Scalar.exact(1), Scalar.exact(2))
        assert stancu_apply(
            spec, Polynomial.monomial(1, Backend.EXACT), Scalar.exact(0)
        ) == Fraction(18, 35)

    def test_function_path_matches_polynomial_path(self):
        ctx = QContext.floating(0.5)
        spec = OperatorSpec.stancu(3, ctx, Scalar.floating(1.0), Scalar.floating(2.0))
        x = Scalar.floating(0.3)
        exact = stancu_apply(spec, Polynomial.monomial(2, Backend.FLOAT), x)

        table = {ctx.q_power(j): None for j in range(1200)}
        # the affine map sends nodes off the Jackson grid, so tabulate the
        # mapped points instead of the nodes themselves
        a = ctx.q_int(3) / (ctx.q_int(3) + Scalar.floating(2.0))
        b = Scalar.floating(1.0) / (ctx.q_int(3) + Scalar.floating(2.0))
        mapped = {a * p + b: (a * p + b) ** 2 for p in table}
        series = stancu_apply(spec, FunctionSpec.tabulated(mapped), x, tol=1e-14)
        assert abs(float(series) - float(exact)) < 1e-11

    def test_needs_stancu_variant(self, ctx_half):
        plain = OperatorSpec.plain(2, ctx_half)
        with pytest.raises(UnsupportedVariantError):
            stancu_apply(plain, Polynomial.one(Backend.EXACT))


class TestClassical:
    def test_examples(self):
        assert classical_durrmeyer_apply(
            OperatorSpec.classical(3), Polynomial.one(Backend.EXACT)
        ) == Polynomial.one(Backend.EXACT)
        assert classical_durrmeyer_apply(
            OperatorSpec.classical(1), Polynomial.monomial(1, Backend.EXACT)
        ) == Polynomial.from_fractions([Fraction(1, 3), Fraction(1, 3)])
        assert classical_durrmeyer_apply(
            OperatorSpec.classical(2), Polynomial.monomial(1, Backend.EXACT)
        ) == Polynomial.from_fractions([Fraction(1, 4), Fraction(1, 2)])

    def test_first_moment_closed_form(self):
        # (1 + n x) / (n + 2) for every n
        for n in range(1, 9):
            got = classical_durrmeyer_apply(
                OperatorSpec.classical(n), Polynomial.monomial(1, Backend.EXACT)
            )
            assert got == Polynomial.from_fractions(
                [Fraction(1, n + 2), Fraction(n, n + 2)]
            )

    def test_polynomial_only(self):
        spec = OperatorSpec.classical(2)
        with pytest.raises(BackendMismatchError):
            classical_durrmeyer_apply(spec, Polynomial((Scalar.floating(1.0),)))

    def test_q_to_one_bridge(self):
        # plain image of t at q = 1 - 2^-i approaches the classical image
        # coefficientwise at rate O(1-q)
        for n in range(1, 5):
            classical = classical_durrmeyer_apply(
                OperatorSpec.classical(n), Polynomial.monomial(1, Backend.EXACT)
            )
            prev = None
            for i in (4, 6, 8, 10, 12):
                q = Fraction(2 ** i - 1, 2 ** i)
                ctx = QContext.exact(q)
                image = durrmeyer_apply_poly(
                    OperatorSpec.plain(n, ctx), Polynomial.monomial(1, Backend.EXACT)
                )
                worst = max(
                    abs(image.coefficient(j) - classical.coefficient(j)) for j in range(2)
                )
                assert worst <= 4 * (1 - q)
                if prev is not None:
                    assert worst < prev
                prev = worst
