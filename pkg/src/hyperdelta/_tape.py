"""Flat postfix programs ("tapes") compiled from expression trees.

The quadrature hot loop evaluates one expression at thousands of points;
a tape turns the tree walk into a tight loop over opcode/argument pairs
that both the compiled kernel and the pure-Python kernel execute with
identical operation order, so the two backends agree bit-for-bit on
well-defined inputs.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from . import expr as ex

OPCODES = {
    "const": 0,   # arg: index into consts
    "var": 1,     # arg: variable index
    "add": 2,
    "sub": 3,
    "mul": 4,
    "div": 5,
    "neg": 6,
    "pow": 7,     # arg: integer exponent
    "exp": 8,
    "sin": 9,
    "cos": 10,
    "sqrt": 11,
    "abs": 12,
}

_CALL_OPS = {"exp": OPCODES["exp"], "sin": OPCODES["sin"], "cos": OPCODES["cos"],
             "sqrt": OPCODES["sqrt"], "abs": OPCODES["abs"]}

_BIN_OPS = {ex.Add: OPCODES["add"], ex.Sub: OPCODES["sub"],
            ex.Mul: OPCODES["mul"], ex.Div: OPCODES["div"]}

# The compiled kernel evaluates on a fixed-size C stack; deeper tapes fall
# back to the Python kernel (see backend.tape_panel).
KERNEL_MAX_STACK = 64
KERNEL_MAX_DIMS = 16


@dataclass(frozen=True)
class Tape:
    ops: array        # int32 opcodes
    args: array       # int32 arguments, parallel to ops
    consts: array     # float64 constant pool
    stack_depth: int
    nvars: int


def compile_expr(e: ex.SmoothExpr, nvars: int) -> Tape:
    """Compile to a postfix tape; constants are narrowed to binary64."""
    ops: list[int] = []
    args: list[int] = []
    consts: list[float] = []
    depth = 0
    max_depth = 0

    def emit(op: int, arg: int, delta: int):
        nonlocal depth, max_depth
        ops.append(op)
        args.append(arg)
        depth += delta
        if depth > max_depth:
            max_depth = depth

    def walk(node: ex.SmoothExpr):
        if isinstance(node, ex.Const):
            consts.append(float(node.value))
            emit(OPCODES["const"], len(consts) - 1, +1)
        elif isinstance(node, ex.Var):
            if node.index >= nvars:
                raise ValueError(f"variable x{node.index + 1} out of range for {nvars} variable(s)")
            emit(OPCODES["var"], node.index, +1)
        elif isinstance(node, ex.Neg):
            walk(node.operand)
            emit(OPCODES["neg"], 0, 0)
        elif type(node) in _BIN_OPS:
            walk(node.lhs)
            walk(node.rhs)
            emit(_BIN_OPS[type(node)], 0, -1)
        elif isinstance(node, ex.Pow):
            if not -2**31 < node.power < 2**31:
                raise ValueError("power exponent out of range")
            walk(node.base)
            emit(OPCODES["pow"], node.power, 0)
        elif isinstance(node, ex.Call):
            walk(node.arg)
            emit(_CALL_OPS[node.fn], 0, 0)
        else:
            raise TypeError(f"not a smooth expression: {node!r}")

    walk(e)
    return Tape(array("i", ops), array("i", args), array("d", consts), max_depth, nvars)


# ---------------------------------------------------------------------------
# Gauss-Kronrod 7/15 rule on [-1, 1].
#
# The 15 Kronrod nodes sorted ascending; WK are the Kronrod weights; WG has
# the embedded 7-point Gauss weight at the Gauss nodes (every second node)
# and zero elsewhere, so one pass over the nodes yields both estimates.
# All nodes are interior, which the substitution u -> u/(1-u^2) relies on.
# ---------------------------------------------------------------------------

_XGK_HALF = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
)
_WGK_HALF = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
)
_WGK_CENTER = 0.209482141084727828012999174891714
_WG_HALF = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
)
_WG_CENTER = 0.417959183673469387755102040816327


def _build_rule():
    nodes = [-x for x in _XGK_HALF] + [0.0] + [x for x in reversed(_XGK_HALF)]
    wk = list(_WGK_HALF) + [_WGK_CENTER] + list(reversed(_WGK_HALF))
    wg = [0.0] * 15
    # Gauss nodes sit at ascending positions 1, 3, 5, 7, 9, 11, 13
    wg[1] = wg[13] = _WG_HALF[0]
    wg[3] = wg[11] = _WG_HALF[1]
    wg[5] = wg[9] = _WG_HALF[2]
    wg[7] = _WG_CENTER
    return tuple(nodes), tuple(wk), tuple(wg)


GK_NODES, GK_WK, GK_WG = _build_rule()
