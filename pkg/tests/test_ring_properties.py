"""Law tests for the expanded-real ring, driven by hypothesis."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdelta.ring import (
    CoeffMode,
    Ordering,
    ZERO,
    coefficient_mode,
    compare,
    embed,
    hy_part,
    make,
    parse_expanded,
    format_expanded,
    re_part,
)

exponents = st.fractions(min_value=0, max_value=10, max_denominator=6)
coefficients = st.fractions(min_value=-100, max_value=100, max_denominator=12)


@st.composite
def expanded(draw):
    pairs = draw(st.lists(st.tuples(exponents, coefficients), max_size=5))
    with coefficient_mode(CoeffMode.EXACT):
        return make(pairs)


@given(expanded(), expanded(), expanded())
def test_add_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(expanded(), expanded())
def test_add_commutative(a, b):
    assert a + b == b + a


@given(expanded(), expanded(), expanded())
@settings(deadline=None)
def test_mul_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(expanded(), expanded())
def test_mul_commutative(a, b):
    assert a * b == b * a


@given(expanded(), expanded(), expanded())
@settings(deadline=None)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(expanded())
def test_identities(a):
    assert a + ZERO == a
    assert a * embed(1) == a
    assert a * ZERO == ZERO


@given(expanded())
def test_additive_inverse(a):
    assert a + (-a) == ZERO


@given(expanded(), expanded(), expanded())
def test_order_translation_invariant(a, b, c):
    if compare(a, b) is Ordering.GREATER:
        assert compare(a + c, b + c) is Ordering.GREATER


@given(expanded(), expanded())
def test_positive_products(a, b):
    if compare(a, ZERO) is Ordering.GREATER and compare(b, ZERO) is Ordering.GREATER:
        assert compare(a * b, ZERO) is Ordering.GREATER


@given(expanded(), expanded())
def test_compare_matches_leading_sign_of_difference(a, b):
    d = a - b
    verdict = compare(a, b)
    if not d.terms:
        assert verdict is Ordering.EQUAL
    elif d.terms[0][1] > 0:
        assert verdict is Ordering.GREATER
    else:
        assert verdict is Ordering.LESS


@given(expanded())
def test_decomposition(a):
    assert embed(re_part(a)) + hy_part(a) == a
    assert re_part(hy_part(a)) == 0


@given(coefficients, coefficients)
def test_embedding_is_ring_homomorphism(x, y):
    with coefficient_mode(CoeffMode.EXACT):
        assert embed(x) + embed(y) == embed(x + y)
        assert embed(x) * embed(y) == embed(x * y)
        cmp_ring = compare(embed(x), embed(y))
        if x > y:
            assert cmp_ring is Ordering.GREATER
        elif x < y:
            assert cmp_ring is Ordering.LESS
        else:
            assert cmp_ring is Ordering.EQUAL


@given(expanded())
def test_normalization_idempotent(a):
    assert make(list(a.terms)) == a


@given(expanded())
def test_text_round_trip(a):
    with coefficient_mode(CoeffMode.EXACT):
        assert parse_expanded(format_expanded(a)) == a


@given(expanded())
def test_invariants_of_representation(a):
    exps = [p for p, _ in a.terms]
    assert all(p >= 0 for p in exps)
    assert all(x > y for x, y in zip(exps, exps[1:]))
    assert all(c != 0 for _, c in a.terms)
    assert all(isinstance(c, Fraction) for _, c in a.terms)
