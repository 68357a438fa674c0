"""Expression trees for smooth real-valued functions of several variables.

Nodes: constants, 0-indexed variables, ``+ - * /``, integer powers, and the
primitives ``exp sin cos sqrt abs``.  Evaluation is numeric-polymorphic:
field operations on exact rationals stay exact, the primitives go through
binary64.  Trees are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import EvalDomainError
from .ring import Real, format_number


class SmoothExpr:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Const(SmoothExpr):
    value: Real


@dataclass(frozen=True, slots=True)
class Var(SmoothExpr):
    index: int


@dataclass(frozen=True, slots=True)
class Neg(SmoothExpr):
    operand: SmoothExpr


@dataclass(frozen=True, slots=True)
class Add(SmoothExpr):
    lhs: SmoothExpr
    rhs: SmoothExpr


@dataclass(frozen=True, slots=True)
class Sub(SmoothExpr):
    lhs: SmoothExpr
    rhs: SmoothExpr


@dataclass(frozen=True, slots=True)
class Mul(SmoothExpr):
    lhs: SmoothExpr
    rhs: SmoothExpr


@dataclass(frozen=True, slots=True)
class Div(SmoothExpr):
    lhs: SmoothExpr
    rhs: SmoothExpr


@dataclass(frozen=True, slots=True)
class Pow(SmoothExpr):
    base: SmoothExpr
    power: int


@dataclass(frozen=True, slots=True)
class Call(SmoothExpr):
    fn: str
    arg: SmoothExpr


PRIMITIVES = ("exp", "sin", "cos", "sqrt", "abs")

ZERO_EXPR = Const(0)
ONE_EXPR = Const(1)

Number = Union[int, float, Fraction]


def eval_expr(e: SmoothExpr, point) -> Number:
    """Evaluate at ``point`` (a sequence of reals, one per variable index).

    Raises :class:`EvalDomainError` for division by zero, ``sqrt`` of a
    negative, ``0`` raised to a negative power, or overflow in ``exp``.
    """
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        if e.index >= len(point):
            raise ValueError(f"point of length {len(point)} lacks variable x{e.index + 1}")
        return point[e.index]
    if isinstance(e, Neg):
        return -eval_expr(e.operand, point)
    if isinstance(e, Add):
        return eval_expr(e.lhs, point) + eval_expr(e.rhs, point)
    if isinstance(e, Sub):
        return eval_expr(e.lhs, point) - eval_expr(e.rhs, point)
    if isinstance(e, Mul):
        return eval_expr(e.lhs, point) * eval_expr(e.rhs, point)
    if isinstance(e, Div):
        num = eval_expr(e.lhs, point)
        den = eval_expr(e.rhs, point)
        if den == 0:
            raise EvalDomainError("division by zero")
        return num / den
    if isinstance(e, Pow):
        base = eval_expr(e.base, point)
        k = e.power
        if base == 0 and k < 0:
            raise EvalDomainError("zero raised to a negative power")
        try:
            return base ** k
        except OverflowError as exc:
            raise EvalDomainError("overflow in power") from exc
    if isinstance(e, Call):
        x = eval_expr(e.arg, point)
        if e.fn == "abs":
            return abs(x)
        xf = float(x)
        if e.fn == "sqrt":
            if xf < 0:
                raise EvalDomainError("sqrt of a negative number")
            return math.sqrt(xf)
        if e.fn == "exp":
            try:
                return math.exp(xf)
            except OverflowError as exc:
                raise EvalDomainError("overflow in exp") from exc
        if e.fn == "sin":
            return math.sin(xf)
        if e.fn == "cos":
            return math.cos(xf)
        raise ValueError(f"unknown primitive {e.fn!r}")
    raise TypeError(f"not a smooth expression: {e!r}")


def replace_var(e: SmoothExpr, var: int, repl: SmoothExpr) -> SmoothExpr:
    """Tree with every ``Var(var)`` replaced by the expression ``repl``."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return repl if e.index == var else e
    if isinstance(e, Neg):
        return Neg(replace_var(e.operand, var, repl))
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(replace_var(e.lhs, var, repl), replace_var(e.rhs, var, repl))
    if isinstance(e, Pow):
        return Pow(replace_var(e.base, var, repl), e.power)
    if isinstance(e, Call):
        return Call(e.fn, replace_var(e.arg, var, repl))
    raise TypeError(f"not a smooth expression: {e!r}")


def substitute(e: SmoothExpr, var: int, value: Real) -> SmoothExpr:
    """Pin variable ``var`` to a constant."""
    return replace_var(e, var, Const(value))


def relabel_vars(e: SmoothExpr, mapping: dict[int, int]) -> SmoothExpr:
    """Rename variable indices; indices missing from ``mapping`` stay put."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return Var(mapping.get(e.index, e.index))
    if isinstance(e, Neg):
        return Neg(relabel_vars(e.operand, mapping))
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(relabel_vars(e.lhs, mapping), relabel_vars(e.rhs, mapping))
    if isinstance(e, Pow):
        return Pow(relabel_vars(e.base, mapping), e.power)
    if isinstance(e, Call):
        return Call(e.fn, relabel_vars(e.arg, mapping))
    raise TypeError(f"not a smooth expression: {e!r}")


def variables(e: SmoothExpr) -> frozenset[int]:
    if isinstance(e, Const):
        return frozenset()
    if isinstance(e, Var):
        return frozenset((e.index,))
    if isinstance(e, Neg):
        return variables(e.operand)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return variables(e.lhs) | variables(e.rhs)
    if isinstance(e, Pow):
        return variables(e.base)
    if isinstance(e, Call):
        return variables(e.arg)
    raise TypeError(f"not a smooth expression: {e!r}")


def arity(e: SmoothExpr) -> int:
    """1 + the highest variable index referenced; 0 for constant expressions."""
    vs = variables(e)
    return max(vs) + 1 if vs else 0


def is_zero_expr(e: SmoothExpr) -> bool:
    return isinstance(e, Const) and e.value == 0


def is_constant(e: SmoothExpr) -> bool:
    return not variables(e)


def const_value(e: SmoothExpr) -> Number:
    """Value of a variable-free expression (may raise EvalDomainError)."""
    return eval_expr(e, ())


def _is_one(e: SmoothExpr) -> bool:
    return isinstance(e, Const) and e.value == 1


def fold_constants(e: SmoothExpr) -> SmoothExpr:
    """Collapse variable-free subtrees to constants where evaluation is safe.

    Also strips the value-preserving identities 1*x, x*1, x/1, 0+x, x+0,
    x-0, and x^1 (but never 0*x, which would erase a singularity).
    """
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Neg):
        inner = fold_constants(e.operand)
        e = Neg(inner)
    elif isinstance(e, (Add, Sub, Mul, Div)):
        lhs, rhs = fold_constants(e.lhs), fold_constants(e.rhs)
        if isinstance(e, Mul) and _is_one(lhs):
            return rhs
        if isinstance(e, (Mul, Div)) and _is_one(rhs):
            return lhs
        if isinstance(e, (Add, Sub)) and is_zero_expr(rhs):
            return lhs
        if isinstance(e, Add) and is_zero_expr(lhs):
            return rhs
        e = type(e)(lhs, rhs)
    elif isinstance(e, Pow):
        base = fold_constants(e.base)
        if e.power == 1:
            return base
        e = Pow(base, e.power)
    elif isinstance(e, Call):
        e = Call(e.fn, fold_constants(e.arg))
    if is_constant(e):
        try:
            return Const(const_value(e))
        except EvalDomainError:
            return e
    return e


# precedence levels for printing: sums < products < unary minus < powers < atoms
_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e: SmoothExpr) -> int:
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_NEG
    if isinstance(e, Pow):
        return _PREC_POW
    if isinstance(e, Const) and (e.value < 0 or (isinstance(e.value, Fraction) and e.value.denominator != 1)):
        # negative constants and p/q literals reparse at product level
        return _PREC_MUL
    return _PREC_ATOM


def _wrap(e: SmoothExpr, minimum: int) -> str:
    s = pretty_expr(e)
    return f"({s})" if _prec(e) < minimum else s


def pretty_expr(e: SmoothExpr) -> str:
    """Render in the expression-language syntax (variables as ``x1..x9``)."""
    if isinstance(e, Const):
        return format_number(e.value)
    if isinstance(e, Var):
        return f"x{e.index + 1}"
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _PREC_NEG)
    if isinstance(e, Add):
        return f"{_wrap(e.lhs, _PREC_ADD)} + {_wrap(e.rhs, _PREC_ADD + 1)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.lhs, _PREC_ADD)} - {_wrap(e.rhs, _PREC_ADD + 1)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.lhs, _PREC_MUL)}*{_wrap(e.rhs, _PREC_MUL + 1)}"
    if isinstance(e, Div):
        return f"{_wrap(e.lhs, _PREC_MUL)}/{_wrap(e.rhs, _PREC_MUL + 1)}"
    if isinstance(e, Pow):
        exp = str(e.power)
        return f"{_wrap(e.base, _PREC_ATOM)}^{exp}"
    if isinstance(e, Call):
        return f"{e.fn}({pretty_expr(e.arg)})"
    raise TypeError(f"not a smooth expression: {e!r}")
