"""Densities of several real variables with point-mass factors.

The canonical shapes, stored per additive term:

* :class:`TensorTerm` -- a permuted tensor product ``u (x) alpha*d[beta]``:
  a smooth factor of n-1 variables times one point mass on the remaining
  variable.  The permutation ``sigma`` says which incoming coordinate feeds
  which slot: the term's value at ``y`` is
  ``u(y[sigma(0)], ..., y[sigma(n-2)]) * alpha * d[beta](y[sigma(n-1)])``.

* :class:`MultiAtom` -- a product of point masses on two or more distinct
  variables (or a repeated mass on one variable), with one overall size
  ``alpha`` and an optional smooth factor over the untouched variables.
  At a point hitting every location it contributes ``alpha * w^k`` where
  ``k`` counts mass factors; powers above one are kept for evaluation but
  refuse to integrate.

Variable permutation acts by ``(perm f)(x) = f(x o sigma)``, i.e. slot ``i``
of ``f`` reads coordinate ``sigma(i)``; composing permutations composes the
action: ``permute_vars(s, permute_vars(t, f)) == permute_vars(s.compose(t), f)``.

Integration: quadrature of the full smooth part over R^n, plus for each
term the (n-1)-fold integral of ``u`` times ``alpha`` -- each point-mass
factor contributes its size exactly, no quadrature in sight for pure atoms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .density1d import Density1D, DeltaTrain, _merge_atoms, _merge_residue, _num
from .errors import DimensionTooLarge, NotIntegrable, PermutationArityError
from .expr import (
    Const,
    ONE_EXPR,
    SmoothExpr,
    ZERO_EXPR,
    arity,
    const_value,
    eval_expr,
    is_constant,
    is_zero_expr,
    pretty_expr,
    relabel_vars,
)
from .quadrature import (
    MAX_QUAD_DIMS,
    QuadratureConfig,
    integrate_real_nd_result,
)
from .ring import ExpandedReal, Real, make, num_to_json


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of ``{0..n-1}`` stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"{self.images!r} is not a permutation of 0..{n - 1}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """``(self . other)(i) = self(other(i))`` -- apply ``other`` first."""
        if len(self) != len(other):
            raise PermutationArityError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))


@dataclass(frozen=True, slots=True)
class TensorTerm:
    u: SmoothExpr
    alpha: Real
    beta: Real
    sigma: Permutation


@dataclass(frozen=True, slots=True)
class MultiAtom:
    alpha: Real
    locs: tuple  # ((var, beta, power), ...) sorted by var, powers >= 1
    u: SmoothExpr = ONE_EXPR  # over the non-mass variables, relabelled 0..m-1

    def total_power(self) -> int:
        return sum(p for _v, _b, p in self.locs)


Term = Union[TensorTerm, MultiAtom]


@dataclass(frozen=True, slots=True)
class DensityND:
    dims: int
    smooth: SmoothExpr = ZERO_EXPR
    terms: tuple = ()

    def __post_init__(self):
        n = self.dims
        if n < 1:
            raise ValueError("dims must be at least 1")
        if arity(self.smooth) > n:
            raise ValueError("smooth part references more variables than dims")
        for t in self.terms:
            if isinstance(t, TensorTerm):
                if len(t.sigma) != n:
                    raise PermutationArityError(
                        f"term permutation acts on {len(t.sigma)} letters, density has {n}"
                    )
                if arity(t.u) > n - 1:
                    raise ValueError("tensor factor must leave one variable for the point mass")
            elif isinstance(t, MultiAtom):
                vars_ = [v for v, _b, _p in t.locs]
                if vars_ != sorted(set(vars_)):
                    raise ValueError("mass locations must be sorted by distinct variable")
                if any(v < 0 or v >= n for v in vars_):
                    raise ValueError("mass variable out of range")
                if any(p < 1 for _v, _b, p in t.locs):
                    raise ValueError("mass powers must be positive")
                if len(t.locs) < 2 and t.total_power() < 2:
                    raise ValueError("single first-power masses belong in a TensorTerm")
                if arity(t.u) > n - len(t.locs):
                    raise ValueError("smooth factor references a mass-carrying variable")
            else:
                raise TypeError(f"not a density term: {t!r}")


def tensor(u: SmoothExpr, alpha: Real, beta: Real, dims: int | None = None) -> TensorTerm:
    """``u (x) alpha*d[beta]`` with the identity slot assignment.

    ``dims`` defaults to one more than the number of variables ``u`` uses.
    """
    n = dims if dims is not None else arity(u) + 1
    if arity(u) > n - 1:
        raise ValueError("tensor factor must have arity dims - 1")
    return TensorTerm(u, _num(alpha), _num(beta), Permutation.identity(n))


def _relabel_for(residual_old: list[int], residual_new: list[int], u: SmoothExpr) -> SmoothExpr:
    # u's slot j read old residual variable residual_old[j]; find where that
    # variable landed in the new ascending order
    mapping = {j: residual_new.index(v) for j, v in enumerate(residual_old)}
    return relabel_vars(u, mapping)


def permute_vars(sigma: Permutation, f: DensityND) -> DensityND:
    """The density ``x -> f(x[sigma(0)], ..., x[sigma(n-1)])``."""
    if len(sigma) != f.dims:
        raise PermutationArityError(
            f"permutation acts on {len(sigma)} letters, density has {f.dims}"
        )
    smooth = relabel_vars(f.smooth, {i: sigma(i) for i in range(f.dims)})
    terms = []
    for t in f.terms:
        if isinstance(t, TensorTerm):
            terms.append(TensorTerm(t.u, t.alpha, t.beta, sigma.compose(t.sigma)))
        else:
            new_pairs = sorted((sigma(v), b, p) for v, b, p in t.locs)
            old_residual = [v for v in range(f.dims) if v not in {v0 for v0, _b, _p in t.locs}]
            new_residual = sorted(sigma(v) for v in old_residual)
            u = _relabel_for([sigma(v) for v in old_residual], new_residual, t.u)
            terms.append(MultiAtom(t.alpha, tuple(new_pairs), u))
    return DensityND(f.dims, smooth, tuple(terms))


def eval_nd(f: DensityND, point) -> ExpandedReal:
    """Value at a point, as a ring element."""
    if len(point) != f.dims:
        raise ValueError(f"point has {len(point)} coordinates, density has {f.dims}")
    contributions = [(0, eval_expr(f.smooth, point))]
    for t in f.terms:
        if isinstance(t, TensorTerm):
            mapped = [point[t.sigma(i)] for i in range(f.dims)]
            if mapped[-1] == t.beta:
                coeff = eval_expr(t.u, mapped[:-1]) * t.alpha
                contributions.append((1, coeff))
        else:
            if all(point[v] == b for v, b, _p in t.locs):
                mass_vars = {v for v, _b, _p in t.locs}
                rest = [point[v] for v in range(f.dims) if v not in mass_vars]
                coeff = eval_expr(t.u, rest) * t.alpha
                contributions.append((t.total_power(), coeff))
    return make(contributions)


def fn_re_nd(f: DensityND) -> DensityND:
    return DensityND(f.dims, smooth=f.smooth)


def fn_hy_nd(f: DensityND) -> DensityND:
    return DensityND(f.dims, terms=f.terms)


def _factor_integral(u: SmoothExpr, m: int, cfg: QuadratureConfig | None):
    """Integral of a smooth factor over R^m; m == 0 means plain evaluation.

    Returns (value, err | None)."""
    if m == 0:
        return const_value(u), None
    if is_zero_expr(u):
        return 0, None
    res = integrate_real_nd_result(u, m, cfg)
    return res.value, res.error_estimate


def integrate_nd_result(f: DensityND, cfg: QuadratureConfig | None = None):
    """Returns ``(value, abs_error_estimate | None)``."""
    if f.dims > MAX_QUAD_DIMS:
        raise DimensionTooLarge(
            f"iterated quadrature supports at most {MAX_QUAD_DIMS} variables, got {f.dims}"
        )
    total: Real = 0
    est = None
    if not is_zero_expr(f.smooth):
        res = integrate_real_nd_result(f.smooth, f.dims, cfg)
        total = total + res.value
        est = (est or 0.0) + res.error_estimate
    for idx, t in enumerate(f.terms):
        if isinstance(t, TensorTerm):
            value, err = _factor_integral(t.u, f.dims - 1, cfg)
            total = total + t.alpha * value
            if err is not None:
                est = (est or 0.0) + abs(float(t.alpha)) * err
        else:
            if any(p > 1 for _v, _b, p in t.locs):
                raise NotIntegrable(
                    f"hyperreal part is not a sum of delta functions (term {idx})",
                    term_index=idx,
                )
            value, err = _factor_integral(t.u, f.dims - len(t.locs), cfg)
            total = total + t.alpha * value
            if err is not None:
                est = (est or 0.0) + abs(float(t.alpha)) * err
    return total, est


def integrate_nd(f: DensityND, cfg: QuadratureConfig | None = None) -> Real:
    """Iterated integral over R^dims; exact on the point-mass terms."""
    return integrate_nd_result(f, cfg)[0]


# ---------------------------------------------------------------------------
# bridges to the 1-D representation
# ---------------------------------------------------------------------------

def from_density1d(d: Density1D) -> DensityND:
    terms: list[Term] = []
    for alpha, beta in d.train.atoms:
        terms.append(TensorTerm(ONE_EXPR, alpha, beta, Permutation.identity(1)))
    for power, coeff, loc in d.residue:
        terms.append(MultiAtom(coeff, ((0, loc, power),), ONE_EXPR))
    return DensityND(1, d.smooth, tuple(terms))


def to_density1d(f: DensityND) -> Density1D:
    if f.dims != 1:
        raise ValueError("only one-dimensional densities convert")
    atoms = []
    residue = []
    for t in f.terms:
        if isinstance(t, TensorTerm):
            atoms.append((t.alpha * const_value(t.u), t.beta))
        else:
            (_v, beta, power), = t.locs
            residue.append((power, t.alpha * const_value(t.u), beta))
    return Density1D(f.smooth, DeltaTrain(_merge_atoms(atoms)), _merge_residue(residue))


def density_to_json(f: DensityND) -> dict:
    """The interchange record ``{dims, smooth, terms}``.

    MultiAtom entries list their locations under ``betas``; when masses do
    not cover every variable, or carry a non-unit smooth factor, the extra
    ``vars`` / ``u`` fields appear.
    """
    terms = []
    for t in f.terms:
        if isinstance(t, TensorTerm):
            terms.append(
                {
                    "u": pretty_expr(t.u),
                    "alpha": num_to_json(t.alpha),
                    "beta": num_to_json(t.beta),
                    "sigma": list(t.sigma.images),
                }
            )
        else:
            record: dict = {
                "alpha": num_to_json(t.alpha),
                "betas": [num_to_json(b) for _v, b, _p in t.locs],
            }
            if [v for v, _b, _p in t.locs] != list(range(f.dims)):
                record["vars"] = [v for v, _b, _p in t.locs]
            if any(p != 1 for _v, _b, p in t.locs):
                record["powers"] = [p for _v, _b, p in t.locs]
            if t.u != ONE_EXPR and not (is_constant(t.u) and const_value(t.u) == 1):
                record["u"] = pretty_expr(t.u)
            terms.append({"multi_atom": record})
    return {
        "dims": f.dims,
        "smooth": pretty_expr(f.smooth),
        "terms": terms,
    }
