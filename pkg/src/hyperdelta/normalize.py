"""Lower a parsed density expression to canonical form.

The pipeline per additive term:

1. distribute products across sums, but only where a point mass is in
   play -- a mass-free subtree is carried whole as a single smooth factor;
2. collect the mass factors of each term per variable: two masses on the
   same variable at different locations annihilate the term, at the same
   location their powers add;
3. sift: substitute each mass location into the term's smooth factor
   (the 1-D product rule ``g * d[b] = g(b) * d[b]``, applied per variable);
4. classify: no masses -> summed into the smooth part; one first-power
   mass -> a permuted tensor term whose slot order moves the mass variable
   last; anything else -> a multi-atom (kept for evaluation; powers above
   one refuse to integrate).

Division by a mass-bearing subexpression has no meaning here and raises
:class:`NormalizeError`, as does feeding one to a smooth primitive.
Substituting a location where the smooth factor is singular surfaces as
:class:`EvalDomainError` (for example ``(1/x) * delta(x)``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .density1d import _num
from .densitynd import DensityND, MultiAtom, Permutation, TensorTerm
from .errors import NormalizeError
from .expr import (
    Add,
    Const,
    Div,
    Mul,
    Neg,
    ONE_EXPR,
    Pow,
    SmoothExpr,
    Sub,
    ZERO_EXPR,
    Call,
    Var,
    eval_expr,
    fold_constants,
    is_zero_expr,
    relabel_vars,
    substitute,
    variables,
)
from .parser import (
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
    DensityAst,
    ast_dims,
    parse,
)

_MAX_TERMS = 4096
_MAX_MASS_POWER = 32


@dataclass(frozen=True, slots=True)
class _Term:
    """One additive term mid-normalization.

    ``masses`` maps variable -> (location, power); ``factor`` is the smooth
    multiplier, not yet sifted.  A mass-free subtree is a single _Term with
    an empty map.
    """

    masses: tuple  # sorted ((var, location, power), ...)
    factor: SmoothExpr

    def is_smooth(self) -> bool:
        return not self.masses


def _smooth(e: SmoothExpr) -> list:
    return [_Term((), e)]


def _signature(masses: tuple) -> tuple:
    return tuple((v, str(b), p) for v, b, p in masses)


def _merge(terms: list) -> list:
    acc: dict = {}
    for t in terms:
        key = _signature(t.masses)
        if key in acc:
            prev = acc[key]
            acc[key] = _Term(t.masses, Add(prev.factor, t.factor))
        else:
            acc[key] = t
    out = []
    for t in acc.values():
        folded = fold_constants(t.factor)
        if is_zero_expr(folded):
            continue
        out.append(_Term(t.masses, folded))
    if len(out) > _MAX_TERMS:
        raise NormalizeError(f"expansion produced more than {_MAX_TERMS} terms")
    return out


def _mul_pair(a: _Term, b: _Term):
    """Product of two terms, or None when masses annihilate."""
    masses = dict((v, (loc, p)) for v, loc, p in a.masses)
    for v, loc, p in b.masses:
        if v in masses:
            prev_loc, prev_p = masses[v]
            if prev_loc != loc:
                return None
            masses[v] = (loc, prev_p + p)
        else:
            masses[v] = (loc, p)
    flat = tuple(sorted((v, lp[0], lp[1]) for v, lp in masses.items()))
    return _Term(flat, Mul(a.factor, b.factor))


def _mul_lists(xs: list, ys: list) -> list:
    out = []
    for a in xs:
        for b in ys:
            t = _mul_pair(a, b)
            if t is not None:
                out.append(t)
    return _merge(out)


def _neg_list(xs: list) -> list:
    return [_Term(t.masses, Neg(t.factor)) for t in xs]


def _lower(node: DensityAst) -> list:
    if isinstance(node, ANum):
        return _smooth(Const(node.value))
    if isinstance(node, AVar):
        return _smooth(Var(node.index))
    if isinstance(node, ADelta):
        return [_Term(((node.var, node.location, 1),), ONE_EXPR)]
    if isinstance(node, ANeg):
        inner = _lower(node.operand)
        if len(inner) == 1 and inner[0].is_smooth():
            return _smooth(Neg(inner[0].factor))
        return _merge(_neg_list(inner))
    if isinstance(node, AAdd):
        return _combine_sum(node.lhs, node.rhs, negate_rhs=False)
    if isinstance(node, ASub):
        return _combine_sum(node.lhs, node.rhs, negate_rhs=True)
    if isinstance(node, AMul):
        lhs, rhs = _lower(node.lhs), _lower(node.rhs)
        if _all_smooth(lhs) and _all_smooth(rhs):
            return _smooth(Mul(_only(lhs), _only(rhs)))
        return _mul_lists(lhs, rhs)
    if isinstance(node, ADiv):
        lhs, rhs = _lower(node.lhs), _lower(node.rhs)
        if not _all_smooth(rhs):
            raise NormalizeError(
                "division by a delta-bearing expression", span=node.rhs.span
            )
        den = _only(rhs)
        if _all_smooth(lhs):
            return _smooth(Div(_only(lhs), den))
        return _merge([_Term(t.masses, Div(t.factor, den)) for t in lhs])
    if isinstance(node, APow):
        base = _lower(node.base)
        if _all_smooth(base):
            return _smooth(Pow(_only(base), node.power))
        if node.power < 0:
            raise NormalizeError(
                "division by a delta-bearing expression", span=node.span
            )
        if node.power == 0:
            return _smooth(ONE_EXPR)
        if node.power > _MAX_MASS_POWER:
            raise NormalizeError(
                f"exponent {node.power} too large for a delta-bearing base",
                span=node.span,
            )
        out = base
        for _ in range(node.power - 1):
            out = _mul_lists(out, base)
        return out
    if isinstance(node, ACall):
        arg = _lower(node.arg)
        if not _all_smooth(arg):
            raise NormalizeError(
                f"{node.fn}() of a delta-bearing expression", span=node.arg.span
            )
        return _smooth(Call(node.fn, _only(arg)))
    raise TypeError(f"not an AST node: {node!r}")


def _combine_sum(lhs_ast, rhs_ast, negate_rhs: bool) -> list:
    lhs, rhs = _lower(lhs_ast), _lower(rhs_ast)
    if _all_smooth(lhs) and _all_smooth(rhs):
        ctor = Sub if negate_rhs else Add
        return _smooth(ctor(_only(lhs), _only(rhs)))
    if negate_rhs:
        rhs = _neg_list(rhs)
    return _merge(lhs + rhs)


def _all_smooth(terms: list) -> bool:
    return all(t.is_smooth() for t in terms)


def _only(terms: list) -> SmoothExpr:
    if not terms:
        return ZERO_EXPR
    (t,) = terms
    return t.factor


def _sift(term: _Term, dims: int):
    """Substitute mass locations into the factor; split a constant out.

    Returns (alpha, u, residual_vars) where ``u`` is relabelled onto
    0..len(residual_vars)-1 and alpha carries any fully-constant value.
    """
    mass_vars = [v for v, _loc, _p in term.masses]
    folded = term.factor
    for v, loc, _p in term.masses:
        folded = substitute(folded, v, loc)
    folded = fold_constants(folded)
    residual = [v for v in range(dims) if v not in mass_vars]
    if not variables(folded):
        # evaluate rather than pattern-match so a singular substitution
        # ((1/x) * delta(x)) raises EvalDomainError here, not later
        alpha = eval_expr(folded, ())
        return alpha, ONE_EXPR, residual
    u = relabel_vars(folded, {v: i for i, v in enumerate(residual)})
    return 1, u, residual


def normalize(ast: DensityAst, dims: int | None = None) -> DensityND:
    """Canonical density for a parsed expression.

    ``dims`` may declare extra trailing variables; it can never shrink
    below what the expression mentions.
    """
    n = max(dims or 0, ast_dims(ast), 1)
    terms = _merge(_lower(ast))
    smooth_parts = []
    out_terms = []
    for t in terms:
        if t.is_smooth():
            smooth_parts.append(t.factor)
            continue
        alpha, u, residual = _sift(t, n)
        if alpha == 0 and u == ONE_EXPR:
            continue
        alpha = _num(alpha)
        if len(t.masses) == 1 and t.masses[0][2] == 1:
            (v, loc, _p), = t.masses
            sigma = Permutation(tuple(residual) + (v,))
            out_terms.append(TensorTerm(u, alpha, _num(loc), sigma))
        else:
            locs = tuple((v, _num(loc), p) for v, loc, p in t.masses)
            out_terms.append(MultiAtom(alpha, locs, u))
    smooth = ZERO_EXPR
    for part in smooth_parts:
        smooth = part if is_zero_expr(smooth) else Add(smooth, part)
    smooth = fold_constants(smooth)
    if is_zero_expr(smooth):
        smooth = ZERO_EXPR
    return DensityND(n, smooth, tuple(out_terms))


def normalize_text(text: str, dims: int | None = None) -> DensityND:
    return normalize(parse(text), dims)
