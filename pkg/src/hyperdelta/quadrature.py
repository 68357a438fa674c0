"""Adaptive quadrature of smooth expressions over the whole real line.

Improper integrals are compactified by the substitution ``x = u/(1-u^2)``,
which maps the open interval (-1, 1) onto the real line with Jacobian
``(1+u^2)/(1-u^2)^2``.  The transformed integrand is scored on panels by a
Gauss-Kronrod 7/15 pair (all nodes interior, so the endpoints u = +-1 are
never touched); the panel with the largest |K15 - G7| difference is bisected
until the summed estimate meets ``max(abs_tolerance, rel_tolerance*|I|)`` or
the panel budget runs out, which raises :class:`NonConvergent` -- integrands
without enough decay (a nonzero constant, say) always terminate that way
rather than hanging.

``tail_cutoff`` shapes the initial panelization: the u-points mapping to
``+-tail_cutoff`` bound the core region, which starts uniformly split, and
the two remaining slivers next to u = +-1 cover the far tails.

Multiple dimensions (up to three) iterate the one-dimensional rule, one
variable per level with the remaining coordinates pinned.  Each inner level
runs at a tighter tolerance and its error estimates propagate through the
outer rule's weights into the reported estimate.  Everything is sequential
and summation orders are fixed, so results are deterministic.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass

from . import backend
from ._tape import GK_NODES, GK_WG, GK_WK, compile_expr
from .errors import DimensionTooLarge, NonConvergent
from .expr import SmoothExpr, arity

MAX_QUAD_DIMS = 3


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budget for the adaptive rule."""

    abs_tolerance: float = 1e-8
    rel_tolerance: float = 1e-8
    max_subdivisions: int = 512
    tail_cutoff: float = 8.0

    def __post_init__(self):
        if not (self.abs_tolerance > 0):
            raise ValueError("abs_tolerance must be positive")
        if not (self.rel_tolerance > 0):
            raise ValueError("rel_tolerance must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")
        if not (self.tail_cutoff > 0):
            raise ValueError("tail_cutoff must be positive")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    panels: int


def _u_of_x(x: float) -> float:
    # inverse of x = u/(1-u^2) on the positive branch
    return (math.sqrt(1.0 + 4.0 * x * x) - 1.0) / (2.0 * x)


def _seed_boundaries(cfg: QuadratureConfig) -> list[float]:
    ut = _u_of_x(cfg.tail_cutoff)
    core = [-ut + (2.0 * ut) * j / 8.0 for j in range(9)]
    return [-1.0] + core + [1.0]


def _adapt(panel_fn, cfg: QuadratureConfig) -> QuadratureResult:
    """Generic adaptive loop; ``panel_fn(a, b) -> (k15, g7, carried_err)``."""
    panels: list[list[float]] = []

    def score(a: float, b: float) -> list[float]:
        k15, g7, carried = panel_fn(a, b)
        err = abs(k15 - g7) + carried
        if not (math.isfinite(k15) and math.isfinite(g7) and math.isfinite(carried)):
            err = math.inf
        return [a, b, k15, err]

    bounds = _seed_boundaries(cfg)
    for a, b in zip(bounds, bounds[1:]):
        panels.append(score(a, b))

    while True:
        ordered = sorted(panels, key=lambda p: p[0])
        total = 0.0
        err_sum = 0.0
        for p in ordered:
            total += p[2]
            err_sum += p[3]
        if math.isfinite(total) and err_sum <= max(
            cfg.abs_tolerance, cfg.rel_tolerance * abs(total)
        ):
            return QuadratureResult(total, err_sum, len(panels))
        if len(panels) >= cfg.max_subdivisions:
            raise NonConvergent(
                f"estimated error {err_sum:.3e} after {len(panels)} panels "
                f"exceeds tolerance; integrand may lack decay at infinity"
            )
        worst = max(range(len(panels)), key=lambda i: panels[i][3])
        a, b = panels[worst][0], panels[worst][1]
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            raise NonConvergent(
                f"panel [{a!r}, {b!r}] cannot be split further at the working precision"
            )
        panels[worst] = score(a, mid)
        panels.append(score(mid, b))


def _callable_panel(f, a: float, b: float):
    """GK panel for an integrand given as ``f(x) -> (value, err)``.

    Used by the outer levels of iterated integration, where the integrand
    is itself an adaptive integral.  Per-node errors ride along through the
    Kronrod weights so inner inaccuracy shows up in the outer estimate.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    k15 = 0.0
    g7 = 0.0
    carried = 0.0
    for i in range(15):
        u = c + h * GK_NODES[i]
        q = (1.0 - u) * (1.0 + u)
        if q != 0.0:
            x = u / q
            wt = (1.0 + u * u) / (q * q)
        else:
            x = math.copysign(math.inf, u)
            wt = math.inf
        v, ev = f(x)
        g = v * wt
        k15 += GK_WK[i] * g
        g7 += GK_WG[i] * g
        carried += GK_WK[i] * (ev * wt)
    return (k15 * h, g7 * h, carried * h)


def _level_config(cfg: QuadratureConfig, depth: int) -> QuadratureConfig:
    # inner levels run tighter so their carried error stays below the
    # outer tolerance even after integration over the core width
    if depth == 0:
        return cfg
    shrink_abs = (8.0 * cfg.tail_cutoff) ** depth
    return QuadratureConfig(
        abs_tolerance=cfg.abs_tolerance / shrink_abs,
        rel_tolerance=cfg.rel_tolerance / (4.0 ** depth),
        max_subdivisions=cfg.max_subdivisions,
        tail_cutoff=cfg.tail_cutoff,
    )


def integrate_real_1d_result(e: SmoothExpr, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    cfg = cfg or DEFAULT_CONFIG
    if arity(e) > 1:
        raise ValueError("expression references more than one variable")
    tape = compile_expr(e, 1)
    base = array("d", [0.0])

    def panel(a: float, b: float):
        k15, g7 = backend.tape_panel(tape, base, 0, a, b)
        return (k15, g7, 0.0)

    return _adapt(panel, cfg)


def integrate_real_1d(e: SmoothExpr, cfg: QuadratureConfig | None = None) -> float:
    """Integral of a one-variable smooth expression over the whole line."""
    return integrate_real_1d_result(e, cfg).value


def integrate_real_nd_result(e: SmoothExpr, dims: int, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    cfg = cfg or DEFAULT_CONFIG
    if dims > MAX_QUAD_DIMS:
        raise DimensionTooLarge(f"iterated quadrature supports at most {MAX_QUAD_DIMS} variables, got {dims}")
    if dims < 1:
        raise ValueError("dims must be at least 1")
    if arity(e) > dims:
        raise ValueError(f"expression references more variables than dims={dims}")
    tape = compile_expr(e, dims)
    base = array("d", [0.0] * dims)
    configs = [_level_config(cfg, depth) for depth in range(dims)]

    def level(axis: int) -> QuadratureResult:
        if axis == dims - 1:
            def panel(a: float, b: float):
                k15, g7 = backend.tape_panel(tape, base, axis, a, b)
                return (k15, g7, 0.0)
        else:
            def node(x: float):
                base[axis] = x
                inner = level(axis + 1)
                return (inner.value, inner.error_estimate)

            def panel(a: float, b: float):
                return _callable_panel(node, a, b)

        return _adapt(panel, configs[axis])

    return level(0)


def integrate_real_nd(e: SmoothExpr, dims: int, cfg: QuadratureConfig | None = None) -> float:
    """Iterated integral over the whole of R^dims (dims <= 3)."""
    return integrate_real_nd_result(e, dims, cfg).value
