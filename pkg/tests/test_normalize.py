"""Lowering parsed expressions to canonical density form.

The commutation tests compare the normalized density's value against a
direct evaluation of the raw AST (delta nodes treated as infinite-unit
indicators, everything combined in the ring), which exercises the
distribute/collect/sift pipeline end to end.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hyperdelta.densitynd import (
    DensityND,
    MultiAtom,
    Permutation,
    TensorTerm,
    eval_nd,
    integrate_nd,
    integrate_nd_result,
    to_density1d,
)
from hyperdelta.errors import EvalDomainError, NormalizeError
from hyperdelta.expr import Call, Const, Mul, Neg, Pow, Var, ONE_EXPR, ZERO_EXPR
from hyperdelta.normalize import normalize, normalize_text
from hyperdelta.parser import parse
from hyperdelta.quadrature import QuadratureConfig
from hyperdelta.ring import CoeffMode, coefficient_mode

from helpers import direct_ast_value, rand_point


class TestCanonicalForms:
    def test_permuted_tensor_term(self):
        f = normalize_text("sin(x2*x3)*delta(x1)")
        assert f.dims == 3
        assert f.smooth == ZERO_EXPR
        (term,) = f.terms
        assert isinstance(term, TensorTerm)
        assert term.u == Call("sin", Mul(Var(0), Var(1)))
        assert term.alpha == 1.0
        assert term.beta == 0.0
        assert term.sigma == Permutation((1, 2, 0))

    def test_two_variable_product_becomes_multi_atom(self):
        f = normalize_text("7*delta(x-1)*delta(y+2)")
        (term,) = f.terms
        assert isinstance(term, MultiAtom)
        assert term.alpha == 7.0
        assert term.locs == ((0, 1.0, 1), (1, -2.0, 1))
        assert integrate_nd(f) == 7

    def test_sifting_folds_the_smooth_factor(self):
        f = normalize_text("(x^2+1)*delta(x-3)")
        d = to_density1d(f)
        assert d.train.atoms == ((10.0, 3.0),)
        assert d.residue == ()

    def test_smooth_only_input_has_no_terms(self):
        f = normalize_text("exp(-x^2) + x")
        assert f.terms == ()
        assert f.dims == 1

    def test_mass_variable_moves_to_the_last_slot(self):
        f = normalize_text("x2*delta(x1-1)")
        (term,) = f.terms
        assert isinstance(term, TensorTerm)
        # residual variable first, mass variable last
        assert term.sigma == Permutation((1, 0))
        assert term.u == Var(0)


class TestSiftingAndCancellation:
    def test_vanishing_factor_kills_the_term(self):
        f = normalize_text("x*delta(x)")
        assert f == DensityND(dims=1)

    def test_atoms_at_distinct_locations_annihilate(self):
        f = normalize_text("delta(x)*delta(x-1)")
        assert f == DensityND(dims=1)

    def test_same_location_product_piles_power(self):
        f = normalize_text("delta(x)*delta(x)")
        (term,) = f.terms
        assert isinstance(term, MultiAtom)
        assert term.locs == ((0, 0.0, 2),)

    def test_like_terms_merge(self):
        f = normalize_text("delta(x) + delta(x)")
        g = normalize_text("2*delta(x)")
        assert f == g

    def test_opposite_terms_cancel(self):
        f = normalize_text("delta(x-1) - delta(x-1)")
        assert f == DensityND(dims=1)

    def test_singular_sift_raises_at_normalize_time(self):
        with pytest.raises(EvalDomainError):
            normalize_text("(1/x)*delta(x)")


class TestPowers:
    def test_zeroth_power_of_mass_is_one(self):
        f = normalize_text("delta(x)^0")
        assert f == DensityND(dims=1, smooth=ONE_EXPR)

    def test_square_is_product(self):
        assert normalize_text("delta(x)^2") == normalize_text("delta(x)*delta(x)")

    def test_negative_power_of_mass_rejected(self):
        with pytest.raises(NormalizeError):
            normalize_text("delta(x)^-1")

    def test_oversized_power_rejected(self):
        with pytest.raises(NormalizeError, match="too large"):
            normalize_text("delta(x)^33")


class TestRejections:
    def test_division_by_mass_carries_a_span(self):
        text = "1/(delta(x))"
        with pytest.raises(NormalizeError) as exc:
            normalize_text(text)
        assert "division" in str(exc.value)
        s, e = exc.value.span
        assert text[s:e] == "(delta(x))"

    def test_call_over_mass(self):
        with pytest.raises(NormalizeError, match="exp"):
            normalize_text("exp(delta(x))")

    def test_smooth_division_is_fine(self):
        f = normalize_text("delta(x) / 2")
        d = to_density1d(f)
        assert d.train.atoms == ((0.5, 0.0),)


class TestDims:
    def test_dims_default_is_variable_count(self):
        assert normalize_text("delta(x)").dims == 1
        assert normalize_text("sin(x2*x3)*delta(x1)").dims == 3

    def test_dims_override_widens(self):
        f = normalize_text("delta(x)", dims=3)
        assert f.dims == 3
        (term,) = f.terms
        assert term.sigma == Permutation((1, 2, 0))

    def test_constant_input_still_has_one_dim(self):
        assert normalize_text("3").dims == 1


class TestCommutation:
    GRID_EXPRS = (
        "exp(-x^2) + 3*delta(x-1.5)",
        "(x^2+1)*delta(x-3)",
        "delta(x)*delta(y)",
        "sin(x2*x3)*delta(x1)",
        "7*delta(x-1)*delta(y+2)",
        "x*y + y*delta(x-1) - 2*delta(y)",
        "(1+delta(x))*(1-delta(y))",
        "delta(x)^2 + cos(x)*delta(x)",
        "-(delta(x-1) + delta(y+1))*3",
    )

    def test_commutation_in_exact_mode(self):
        # default mode: all-rational points make both sides exact
        rng = random.Random(61)
        specials = tuple(
            Fraction(v) for v in (0, 1, -1, Fraction(3, 2), 3, -2)
        )
        for text in self.GRID_EXPRS:
            ast = parse(text)
            f = normalize(ast)
            for _ in range(30):
                pt = rand_point(rng, f.dims, special=specials)
                assert eval_nd(f, pt) == direct_ast_value(ast, pt), (text, pt)

    def test_commutation_in_float_mode(self):
        rng = random.Random(67)
        specials = (0.0, 1.0, -1.0, 1.5, 3.0, -2.0)
        with coefficient_mode(CoeffMode.FLOAT):
            for text in self.GRID_EXPRS:
                ast = parse(text)
                f = normalize(ast)
                for _ in range(30):
                    pt = tuple(
                        float(c) for c in rand_point(rng, f.dims, special=specials)
                    )
                    assert eval_nd(f, pt) == direct_ast_value(ast, pt), (text, pt)


class TestLinearity:
    def test_integral_of_sum_is_sum_of_integrals(self):
        cfg = QuadratureConfig(1e-9, 1e-9)
        a = "exp(-x^2)"
        b = "3*delta(x-1)"
        va, ea = integrate_nd_result(normalize_text(a), cfg)
        vb, eb = integrate_nd_result(normalize_text(b), cfg)
        vs, es = integrate_nd_result(normalize_text(f"{a} + {b}"), cfg)
        tol = 1e-9 + (ea or 0) + (eb or 0) + (es or 0)
        assert abs(vs - (va + vb)) < tol


class TestCaps:
    def test_term_explosion_is_reported(self):
        # nine mass variables to the ninth power distributes past the cap
        # even after like-term merging (distinct signatures ~ C(18,9))
        body = "(1 + " + " + ".join(f"delta(x{i})" for i in range(1, 10)) + ")"
        with pytest.raises(NormalizeError, match="term"):
            normalize_text("*".join([body] * 9))
