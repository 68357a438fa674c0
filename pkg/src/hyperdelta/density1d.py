"""One-dimensional densities: a smooth part plus point masses of size omega.

A density is ``f = f_smooth + sum_n alpha_n * d[beta_n]`` where ``d[beta]``
is the unit point mass at ``beta``: zero away from ``beta`` and the
infinitely large value ``w`` at it, with line integral one.  Products of
point masses at one location pile up higher powers of ``w``; those land in
the ``residue`` slot, which evaluates fine but blocks integration.

Pointwise algebra follows the usual function rules; the one non-obvious
product is smooth-times-atom, which collapses to an atom carrying the
smooth factor's value at the location: ``g * alpha*d[beta] ->
(g(beta)*alpha)*d[beta]``.  Atoms at distinct locations multiply to zero.

Integration is ``h + s``: adaptive quadrature of the smooth part plus the
exact sum of the atom sizes.  A density with no smooth part integrates
without touching floating-point quadrature at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import NotIntegrable
from .expr import (
    Add,
    Const,
    Mul,
    SmoothExpr,
    ZERO_EXPR,
    arity,
    eval_expr,
    is_zero_expr,
)
from .quadrature import QuadratureConfig, integrate_real_1d_result
from .ring import (
    CoeffMode,
    ExpandedReal,
    Real,
    current_coefficient_mode,
    make,
)

Atom = tuple  # (alpha, beta)
ResidueEntry = tuple  # (power >= 2, coeff, location)


def _num(v: Real, mode: CoeffMode | None = None) -> Real:
    from fractions import Fraction

    mode = mode or current_coefficient_mode()
    if mode is CoeffMode.FLOAT:
        return float(v)
    return Fraction(v)


def _merge_atoms(pairs: Iterable[tuple]) -> tuple:
    acc: dict = {}
    for alpha, beta in pairs:
        if beta in acc:
            acc[beta] = acc[beta] + alpha
        else:
            acc[beta] = alpha
    return tuple((acc[b], b) for b in sorted(acc) if acc[b] != 0)


def _merge_residue(entries: Iterable[tuple]) -> tuple:
    acc: dict = {}
    for power, coeff, loc in entries:
        key = (loc, power)
        if key in acc:
            acc[key] = acc[key] + coeff
        else:
            acc[key] = coeff
    return tuple(
        (power, acc[(loc, power)], loc)
        for loc, power in sorted(acc)
        if acc[(loc, power)] != 0
    )


@dataclass(frozen=True, slots=True)
class DeltaTrain:
    """A finite sum of point masses, locations strictly ascending."""

    atoms: tuple = ()  # ((alpha, beta), ...)

    @staticmethod
    def from_atoms(pairs: Iterable[tuple], mode: CoeffMode | str | None = None) -> "DeltaTrain":
        mode = CoeffMode(mode) if mode is not None else current_coefficient_mode()
        coerced = [(_num(a, mode), _num(b, mode)) for a, b in pairs]
        return DeltaTrain(_merge_atoms(coerced))

    @property
    def is_zero(self) -> bool:
        return not self.atoms

    def alpha_at(self, x) -> Real:
        for alpha, beta in self.atoms:
            if beta == x:
                return alpha
        return 0


@dataclass(frozen=True, slots=True)
class Density1D:
    smooth: SmoothExpr = ZERO_EXPR
    train: DeltaTrain = field(default_factory=DeltaTrain)
    residue: tuple = ()  # ((power, coeff, location), ...) sorted by (location, power)

    def __post_init__(self):
        if arity(self.smooth) > 1:
            raise ValueError("the smooth part of a 1-D density takes one variable")


def smooth_density(e: SmoothExpr) -> Density1D:
    return Density1D(smooth=e)


def delta(alpha: Real, beta: Real, mode: CoeffMode | str | None = None) -> Density1D:
    """The point mass ``alpha * d[beta]``; ``alpha == 0`` gives the zero density."""
    return Density1D(train=DeltaTrain.from_atoms([(alpha, beta)], mode=mode))


def add_density(f: Density1D, g: Density1D) -> Density1D:
    if is_zero_expr(f.smooth):
        smooth = g.smooth
    elif is_zero_expr(g.smooth):
        smooth = f.smooth
    else:
        smooth = Add(f.smooth, g.smooth)
    train = DeltaTrain(_merge_atoms(f.train.atoms + g.train.atoms))
    residue = _merge_residue(f.residue + g.residue)
    return Density1D(smooth, train, residue)


def scale_density(c: Real, f: Density1D) -> Density1D:
    c = _num(c)
    if c == 0:
        return Density1D()
    smooth = f.smooth if is_zero_expr(f.smooth) else Mul(Const(c), f.smooth)
    train = DeltaTrain(_merge_atoms((c * a, b) for a, b in f.train.atoms))
    residue = _merge_residue((p, c * k, loc) for p, k, loc in f.residue)
    return Density1D(smooth, train, residue)


def mul_density(f: Density1D, g: Density1D) -> Density1D:
    """Pointwise product.

    Crossing rules: smooth x smooth stays smooth; smooth x atom sifts the
    smooth factor's value at the location into the atom size (raising
    :class:`EvalDomainError` if it is undefined there); atom x atom at one
    location makes a power-2 residue entry; atoms at distinct locations
    vanish.  Residue entries combine the same way with powers adding.
    """
    fs, gs = f.smooth, g.smooth
    smooth = ZERO_EXPR if (is_zero_expr(fs) or is_zero_expr(gs)) else Mul(fs, gs)

    atoms: list[tuple] = []
    residue: list[tuple] = []

    def sift(expr: SmoothExpr, where):
        return eval_expr(expr, (where,))

    if not is_zero_expr(fs):
        for alpha, beta in g.train.atoms:
            atoms.append((sift(fs, beta) * alpha, beta))
        for power, coeff, loc in g.residue:
            residue.append((power, sift(fs, loc) * coeff, loc))
    if not is_zero_expr(gs):
        for alpha, beta in f.train.atoms:
            atoms.append((sift(gs, beta) * alpha, beta))
        for power, coeff, loc in f.residue:
            residue.append((power, sift(gs, loc) * coeff, loc))

    for a1, b1 in f.train.atoms:
        for a2, b2 in g.train.atoms:
            if b1 == b2:
                residue.append((2, a1 * a2, b1))
        for power, coeff, loc in g.residue:
            if b1 == loc:
                residue.append((power + 1, a1 * coeff, loc))
    for a2, b2 in g.train.atoms:
        for power, coeff, loc in f.residue:
            if b2 == loc:
                residue.append((power + 1, a2 * coeff, loc))
    for p1, c1, l1 in f.residue:
        for p2, c2, l2 in g.residue:
            if l1 == l2:
                residue.append((p1 + p2, c1 * c2, l1))

    return Density1D(smooth, DeltaTrain(_merge_atoms(atoms)), _merge_residue(residue))


def eval_density(f: Density1D, x: Real) -> ExpandedReal:
    """Value at ``x`` as a ring element (the atom hit contributes ``alpha*w``)."""
    contributions = [(0, eval_expr(f.smooth, (x,)))]
    hit = f.train.alpha_at(x)
    if hit != 0:
        contributions.append((1, hit))
    for power, coeff, loc in f.residue:
        if loc == x:
            contributions.append((power, coeff))
    return make(contributions)


def fn_re(f: Density1D) -> Density1D:
    """The real-valued component: the smooth part alone."""
    return Density1D(smooth=f.smooth)


def fn_hy(f: Density1D) -> Density1D:
    """The infinitely-large component: atoms and residue, no smooth part."""
    return Density1D(train=f.train, residue=f.residue)


def integrate_1d_result(f: Density1D, cfg: QuadratureConfig | None = None):
    """Returns ``(value, abs_error_estimate | None)``.

    The atom sum is exact; the error estimate is reported only when the
    smooth part actually went through quadrature.
    """
    if f.residue:
        raise NotIntegrable("hyperreal part is not a sum of delta functions")
    s = 0
    for alpha, _beta in f.train.atoms:
        s = s + alpha
    if is_zero_expr(f.smooth):
        return s, None
    res = integrate_real_1d_result(f.smooth, cfg)
    return res.value + s, res.error_estimate


def integrate_1d(f: Density1D, cfg: QuadratureConfig | None = None) -> Real:
    """Line integral: quadrature of the smooth part plus the exact atom sum."""
    return integrate_1d_result(f, cfg)[0]


def density1d_to_json(f: Density1D) -> dict:
    from .expr import pretty_expr
    from .ring import num_to_json

    return {
        "smooth": pretty_expr(f.smooth),
        "atoms": [{"alpha": num_to_json(a), "beta": num_to_json(b)} for a, b in f.train.atoms],
        "residue": [
            {"power": p, "coeff": num_to_json(c), "location": num_to_json(l)}
            for p, c, l in f.residue
        ],
    }
