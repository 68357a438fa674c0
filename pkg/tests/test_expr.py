"""Unit tests for the smooth expression trees."""

import math
from fractions import Fraction

import pytest

from hyperdelta.errors import EvalDomainError
from hyperdelta.expr import (
    Add,
    Call,
    Const,
    Div,
    Mul,
    Neg,
    ONE_EXPR,
    Pow,
    Sub,
    Var,
    ZERO_EXPR,
    arity,
    const_value,
    eval_expr,
    fold_constants,
    is_constant,
    is_zero_expr,
    pretty_expr,
    relabel_vars,
    substitute,
    variables,
)

GAUSS = Call("exp", Neg(Pow(Var(0), 2)))


class TestEval:
    def test_polynomial(self):
        e = Add(Pow(Var(0), 2), Const(1))
        assert eval_expr(e, (3,)) == 10
        assert eval_expr(e, (Fraction(1, 2),)) == Fraction(5, 4)

    def test_primitives(self):
        assert eval_expr(GAUSS, (0.0,)) == 1.0
        assert eval_expr(Call("sqrt", Const(9)), ()) == 3.0
        assert eval_expr(Call("abs", Const(-Fraction(2, 3))), ()) == Fraction(2, 3)
        assert eval_expr(Call("sin", Const(0)), ()) == 0.0
        assert eval_expr(Call("cos", Const(0)), ()) == 1.0

    def test_division(self):
        assert eval_expr(Div(Const(1), Var(0)), (4,)) == Fraction(1, 4)

    def test_divide_by_zero(self):
        with pytest.raises(EvalDomainError):
            eval_expr(Div(Const(1), Var(0)), (0,))

    def test_zero_to_negative_power(self):
        with pytest.raises(EvalDomainError):
            eval_expr(Pow(Var(0), -2), (0,))

    def test_sqrt_of_negative(self):
        with pytest.raises(EvalDomainError):
            eval_expr(Call("sqrt", Const(-1)), ())

    def test_exp_overflow(self):
        with pytest.raises(EvalDomainError):
            eval_expr(Call("exp", Const(1e6)), ())

    def test_negative_power(self):
        assert eval_expr(Pow(Var(0), -2), (2,)) == Fraction(1, 4)

    def test_bad_variable_index(self):
        with pytest.raises(ValueError):
            eval_expr(Var(3), (1.0,))


class TestStructure:
    def test_variables_and_arity(self):
        e = Mul(Var(2), Add(Var(0), Const(1)))
        assert variables(e) == frozenset({0, 2})
        assert arity(e) == 3
        assert arity(Const(5)) == 0

    def test_substitute(self):
        e = Mul(Var(0), Var(1))
        assert eval_expr(substitute(e, 0, 3), (99, 4)) == 12

    def test_relabel(self):
        e = Mul(Var(0), Var(1))
        r = relabel_vars(e, {0: 1, 1: 0})
        assert eval_expr(r, (2, 5)) == 10
        assert eval_expr(e, (2, 5)) == 10  # original untouched

    def test_predicates(self):
        assert is_zero_expr(ZERO_EXPR)
        assert not is_zero_expr(ONE_EXPR)
        assert is_constant(Add(Const(1), Const(2)))
        assert const_value(Add(Const(1), Const(2))) == 3


class TestFold:
    def test_constant_subtrees_collapse(self):
        e = Mul(Add(Const(2), Const(3)), Var(0))
        assert fold_constants(e) == Mul(Const(5), Var(0))

    def test_identity_eliminations(self):
        x = Var(0)
        assert fold_constants(Mul(ONE_EXPR, x)) == x
        assert fold_constants(Mul(x, ONE_EXPR)) == x
        assert fold_constants(Div(x, ONE_EXPR)) == x
        assert fold_constants(Add(x, ZERO_EXPR)) == x
        assert fold_constants(Add(ZERO_EXPR, x)) == x
        assert fold_constants(Sub(x, ZERO_EXPR)) == x
        assert fold_constants(Pow(x, 1)) == x

    def test_zero_multiplication_not_stripped(self):
        # 0 * (1/x) must keep its singularity at 0
        e = Mul(ZERO_EXPR, Div(Const(1), Var(0)))
        folded = fold_constants(e)
        with pytest.raises(EvalDomainError):
            eval_expr(folded, (0,))

    def test_singular_constant_left_alone(self):
        e = Div(Const(1), Const(0))
        assert fold_constants(e) == e


class TestPretty:
    @pytest.mark.parametrize(
        "e, text",
        [
            (Add(Pow(Var(0), 2), Const(1)), "x1^2 + 1"),
            (GAUSS, "exp(-x1^2)"),
            (Mul(Const(3), Var(1)), "3*x2"),
            (Neg(Add(Var(0), Var(1))), "-(x1 + x2)"),
            (Pow(Neg(Var(0)), 2), "(-x1)^2"),
            (Div(Var(0), Mul(Var(1), Var(2))), "x1/(x2*x3)"),
            (Const(Fraction(1, 2)), "1/2"),
            # 1/2 is a single rational token, so no parentheses are needed
            (Mul(Const(Fraction(1, 2)), Var(0)), "1/2*x1"),
            # ... but a p/q raised to a power must parenthesize to bind right
            (Pow(Const(Fraction(1, 2)), 2), "(1/2)^2"),
            (Div(Var(0), Const(Fraction(1, 2))), "x1/(1/2)"),
        ],
    )
    def test_examples(self, e, text):
        assert pretty_expr(e) == text

    def test_value_preserved_under_printing(self):
        # the printed text evaluates the same through the density language
        from hyperdelta.normalize import normalize_text

        e = Sub(Mul(Const(2), Pow(Var(0), 3)), Div(Var(1), Const(4)))
        d = normalize_text(pretty_expr(e), dims=2)
        for point in ((0.5, 2.0), (1.5, -3.0), (-2.0, 0.25)):
            assert eval_expr(d.smooth, point) == pytest.approx(
                float(eval_expr(e, point)), rel=1e-15
            )
