"""Tokenizer and recursive-descent parser for the density language."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hyperdelta.errors import LexError, ParseError
from hyperdelta.parser import (
    AAdd,
    ACall,
    ADelta,
    ADiv,
    AMul,
    ANeg,
    ANum,
    APow,
    ASub,
    AVar,
    ast_dims,
    ast_equal,
    ast_to_json,
    parse,
    pretty_ast,
    tokenize,
)


class TestTokenize:
    def test_atom_product_token_stream(self):
        toks = tokenize("3*delta(x-1)")
        assert [repr(t) for t in toks] == [
            "Num 3",
            "Star",
            "Ident delta",
            "LParen",
            "Ident x",
            "Minus",
            "Num 1",
            "RParen",
        ]

    def test_empty_input_has_no_tokens(self):
        assert tokenize("") == []
        assert tokenize("   \t ") == []

    def test_illegal_character_span(self):
        with pytest.raises(LexError) as exc:
            tokenize("3 @ 4")
        assert exc.value.span == (2, 3)

    def test_decimal_literal_is_exact(self):
        (tok,) = tokenize("1.5")
        assert tok.value == Fraction(3, 2)

    def test_contiguous_rational_is_one_token(self):
        toks = tokenize("1/2")
        assert len(toks) == 1
        assert toks[0].value == Fraction(1, 2)

    def test_spaced_division_is_three_tokens(self):
        toks = tokenize("1 / 2")
        assert [repr(t) for t in toks] == ["Num 1", "Slash", "Num 2"]

    def test_zero_denominator_rejected(self):
        with pytest.raises(LexError, match="zero denominator"):
            tokenize("3/0")

    def test_bare_decimal_point_rejected(self):
        with pytest.raises(LexError, match="decimal point"):
            tokenize("3.")

    def test_spans_cover_the_lexemes(self):
        text = "exp(-x^2) + 3*delta(x-1.5)"
        for tok in tokenize(text):
            s, e = tok.span
            assert 0 <= s < e <= len(text)
            assert text[s:e] == tok.text


class TestParse:
    def test_gaussian_plus_scaled_atom(self):
        ast = parse("exp(-x^2) + 3*delta(x-1.5)")
        assert ast == AAdd(
            ACall("exp", ANeg(APow(AVar(0), 2))),
            AMul(ANum(Fraction(3)), ADelta(0, Fraction(3, 2))),
        )

    def test_product_of_atoms_on_two_variables(self):
        ast = parse("delta(x)*delta(y)")
        assert ast == AMul(ADelta(0, Fraction(0)), ADelta(1, Fraction(0)))

    def test_delta_argument_must_be_affine(self):
        with pytest.raises(ParseError, match="variable ± constant"):
            parse("delta(x*y)")

    def test_delta_shift_signs(self):
        assert parse("delta(x-3)") == ADelta(0, Fraction(3))
        assert parse("delta(x+3)") == ADelta(0, Fraction(-3))
        assert parse("delta(x)") == ADelta(0, Fraction(0))

    def test_named_and_numbered_variables_coincide(self):
        assert parse("x*y*z") == parse("x1*x2*x3")

    def test_precedence_pow_binds_tightest(self):
        assert parse("-x^2") == ANeg(APow(AVar(0), 2))
        assert parse("2*x^3") == AMul(ANum(Fraction(2)), APow(AVar(0), 3))

    def test_left_associativity(self):
        assert parse("1 - 2 - 3") == ASub(
            ASub(ANum(Fraction(1)), ANum(Fraction(2))), ANum(Fraction(3))
        )
        assert parse("8 / 2 / 2") == ADiv(
            ADiv(ANum(Fraction(8)), ANum(Fraction(2))), ANum(Fraction(2))
        )

    def test_negative_exponent(self):
        assert parse("x^-2") == APow(AVar(0), -2)

    def test_fractional_exponent_rejected(self):
        with pytest.raises(ParseError, match="integer"):
            parse("x^(1/2)")

    def test_parenthesized_grouping(self):
        assert parse("(1+2)*x") == AMul(
            AAdd(ANum(Fraction(1)), ANum(Fraction(2))), AVar(0)
        )

    def test_empty_input(self):
        with pytest.raises(ParseError) as exc:
            parse("")
        assert exc.value.span == (0, 0)

    def test_trailing_junk(self):
        with pytest.raises(ParseError, match="after expression"):
            parse("x + 1 y")

    def test_unbalanced_parenthesis(self):
        with pytest.raises(ParseError):
            parse("(x + 1")

    def test_unknown_function(self):
        with pytest.raises(ParseError, match="unknown function"):
            parse("sinh(x)")

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="unknown"):
            parse("w + 1")

    def test_delta_is_reserved(self):
        with pytest.raises(ParseError, match="reserved"):
            parse("delta + 1")

    def test_errors_carry_in_bounds_spans(self):
        cases = ["delta(x*y)", "x +", "sinh(x)", "1 ^ x", "(x"]
        for text in cases:
            with pytest.raises(ParseError) as exc:
                parse(text)
            s, e = exc.value.span
            assert 0 <= s <= e <= len(text)


class TestAstDims:
    def test_dims_is_highest_variable_plus_one(self):
        assert ast_dims(parse("x1")) == 1
        assert ast_dims(parse("sin(x2*x3)*delta(x1)")) == 3
        assert ast_dims(parse("3")) == 0


def random_ast(rng: random.Random, depth: int = 0):
    """A generator matched to the parser's image: literals are non-negative
    (the grammar spells minus as a unary operator node)."""
    if depth >= 4 or rng.random() < 0.3:
        kind = rng.randrange(3)
        if kind == 0:
            return ANum(Fraction(rng.randint(0, 20), rng.randint(1, 9)))
        if kind == 1:
            return AVar(rng.randrange(3))
        return ADelta(rng.randrange(3), Fraction(rng.randint(-5, 5)))
    kind = rng.randrange(7)
    if kind == 0:
        return AAdd(random_ast(rng, depth + 1), random_ast(rng, depth + 1))
    if kind == 1:
        return ASub(random_ast(rng, depth + 1), random_ast(rng, depth + 1))
    if kind == 2:
        return AMul(random_ast(rng, depth + 1), random_ast(rng, depth + 1))
    if kind == 3:
        return ADiv(random_ast(rng, depth + 1), random_ast(rng, depth + 1))
    if kind == 4:
        return APow(random_ast(rng, depth + 1), rng.randint(-3, 5))
    if kind == 5:
        return ANeg(random_ast(rng, depth + 1))
    return ACall(rng.choice(("exp", "sin", "cos")), random_ast(rng, depth + 1))


class TestRoundTrip:
    def test_spec_strings_survive_pretty_reparse(self):
        for text in (
            "exp(-x^2) + 3*delta(x-1.5)",
            "delta(x)*delta(y)",
            "sin(x2*x3)*delta(x1)",
            "7*delta(x-1)*delta(y+2)",
            "(x^2+1)*delta(x-3)",
            "1/2*x1 + x2/3",
            "x^-2",
            "-(x+1)^3",
        ):
            ast = parse(text)
            again = parse(pretty_ast(ast))
            assert ast_equal(ast, again), pretty_ast(ast)

    def test_random_trees_survive_pretty_reparse(self):
        rng = random.Random(97)
        for _ in range(300):
            ast = random_ast(rng)
            printed = pretty_ast(ast)
            again = parse(printed)
            assert ast_equal(ast, again), printed


class TestStructuralEquality:
    def test_spans_do_not_count(self):
        a = parse("x + 1")
        b = parse("  x   +   1  ")
        assert ast_equal(a, b)
        assert a == b

    def test_value_difference_counts(self):
        assert not ast_equal(parse("x + 1"), parse("x + 2"))


class TestJson:
    def test_atom_product_record(self):
        rec = ast_to_json(parse("3*delta(x-1)"))
        assert rec["node"] == "mul"
        assert rec["lhs"] == {"node": "num", "value": 3, "span": [0, 1]}
        assert rec["rhs"] == {
            "node": "delta",
            "var": 0,
            "location": 1,
            "span": [2, 12],
        }

    def test_every_node_reports_a_span(self):
        def walk(rec):
            assert "span" in rec and len(rec["span"]) == 2
            for v in rec.values():
                if isinstance(v, dict):
                    walk(v)

        walk(ast_to_json(parse("exp(-x^2) + 3*delta(x-1.5)")))
