"""Shared oracles and random generators for the test suite.

Oracles here are deliberately independent of the package's own quadrature
and normal forms: plain composite-trapezoid sums (exact for these rapidly
decaying integrands at the chosen resolution thanks to fsum), closed forms
via math.erf, and a direct tree-walk evaluator that multiplies point
masses in ring arithmetic without ever building a canonical density.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from hyperdelta.expr import Call, Const, eval_expr
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
)
from hyperdelta.ring import ExpandedReal, ZERO, embed, make

# Composite trapezoid of exp(-x^2) over [-20, 20], 400_000 panels, summed
# with math.fsum; agrees with sqrt(pi) to 1 ulp.  Frozen so the suite does
# not depend on the library under test to produce its own expectations.
SQRT_PI_ORACLE = 1.772453850905516


def trapezoid(f, a: float, b: float, n: int) -> float:
    """Composite trapezoid rule with compensated summation."""
    h = (b - a) / n
    terms = [0.5 * f(a), 0.5 * f(b)]
    terms.extend(f(a + i * h) for i in range(1, n))
    return math.fsum(terms) * h


def nascent_gaussian(n: int) -> float:
    """integral of exp(-x^2) * g_n where g_n is n on (-1/(2n), 1/(2n)).

    Closed form n * sqrt(pi) * erf(1/(2n)); erf comes from libm, not from
    this package.
    """
    return n * math.sqrt(math.pi) * math.erf(1.0 / (2 * n))


def nascent_sift(f, location: float, n: int, panels: int = 2000) -> float:
    """integral of f * g_n with the box centered at ``location``."""
    half = 1.0 / (2 * n)
    return n * trapezoid(f, location - half, location + half, panels)


# ---------------------------------------------------------------------------
# direct (non-canonicalizing) evaluation of a parsed density
# ---------------------------------------------------------------------------

def direct_ast_value(node, point) -> ExpandedReal:
    """Value of the raw expression tree at a point, in ring arithmetic.

    Point masses evaluate to w at their location and 0 elsewhere; products
    and sums run through ExpandedReal operators.  No sifting, no
    distribution -- an independent check that normalization preserves
    pointwise values.
    """
    if isinstance(node, ANum):
        return embed(node.value)
    if isinstance(node, AVar):
        return embed(point[node.index])
    if isinstance(node, ADelta):
        if point[node.var] == node.location:
            return make([(1, 1)])
        return ZERO
    if isinstance(node, ANeg):
        return -direct_ast_value(node.operand, point)
    if isinstance(node, AAdd):
        return direct_ast_value(node.lhs, point) + direct_ast_value(node.rhs, point)
    if isinstance(node, ASub):
        return direct_ast_value(node.lhs, point) - direct_ast_value(node.rhs, point)
    if isinstance(node, AMul):
        return direct_ast_value(node.lhs, point) * direct_ast_value(node.rhs, point)
    if isinstance(node, ADiv):
        num = direct_ast_value(node.lhs, point)
        den = direct_ast_value(node.rhs, point)
        r = _real_only(den)
        return num * embed(1 / r if isinstance(r, float) else Fraction(1) / r)
    if isinstance(node, APow):
        if node.power >= 0:
            out = embed(1)
            base = direct_ast_value(node.base, point)
            for _ in range(node.power):
                out = out * base
            return out
        r = _real_only(direct_ast_value(node.base, point))
        return embed(_real_pow(r, node.power))
    if isinstance(node, ACall):
        r = _real_only(direct_ast_value(node.arg, point))
        return embed(eval_expr(Call(node.fn, Const(r)), ()))
    raise TypeError(f"not an AST node: {node!r}")


def _real_only(v: ExpandedReal):
    if v.terms and v.terms[0][0] != 0:
        raise ValueError("operation needs a purely real operand")
    return v.terms[0][1] if v.terms else 0


def _real_pow(r, k: int):
    if isinstance(r, Fraction) or isinstance(r, int):
        return Fraction(r) ** k
    return float(r) ** k


# ---------------------------------------------------------------------------
# random generators (plain random.Random: fast enough for 1e5-sized loops)
# ---------------------------------------------------------------------------

def rand_fraction(rng: random.Random, span: int = 50, den: int = 8) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_exponent(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(0, 12), rng.randint(1, 4))


def rand_expanded(rng: random.Random, max_terms: int = 4) -> ExpandedReal:
    pairs = []
    for _ in range(rng.randint(0, max_terms)):
        pairs.append((rand_exponent(rng), rand_fraction(rng)))
    return make(pairs)


def rand_point(rng: random.Random, dims: int, special=()) -> tuple:
    coords = []
    for _ in range(dims):
        if special and rng.random() < 0.4:
            coords.append(rng.choice(special))
        else:
            coords.append(rand_fraction(rng, span=6, den=4))
    return tuple(coords)
