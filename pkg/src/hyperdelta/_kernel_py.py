"""Pure-Python evaluation kernel.

Mirror of the compiled kernel in ``_kernel.pyx``: same opcode set, same
node ordering, same accumulation order.  Arithmetic follows C99/IEEE-754
semantics (division by zero and overflow produce infinities, domain errors
produce NaN) so quadrature can classify bad panels instead of unwinding
through exceptions.
"""

from __future__ import annotations

import math

from ._tape import GK_NODES, GK_WG, GK_WK, OPCODES

NAME = "python"

_OP_CONST = OPCODES["const"]
_OP_VAR = OPCODES["var"]
_OP_ADD = OPCODES["add"]
_OP_SUB = OPCODES["sub"]
_OP_MUL = OPCODES["mul"]
_OP_DIV = OPCODES["div"]
_OP_NEG = OPCODES["neg"]
_OP_POW = OPCODES["pow"]
_OP_EXP = OPCODES["exp"]
_OP_SIN = OPCODES["sin"]
_OP_COS = OPCODES["cos"]
_OP_SQRT = OPCODES["sqrt"]
_OP_ABS = OPCODES["abs"]

_INF = math.inf
_NAN = math.nan


def _div(a: float, b: float) -> float:
    # IEEE division: x/0 is a signed infinity, 0/0 is NaN
    if b != 0.0:
        return a / b
    if a != a or a == 0.0:
        return _NAN
    return math.copysign(_INF, a) * math.copysign(1.0, b)


def _pow(a: float, k: int) -> float:
    # C99 pow(a, k) for integer k
    try:
        return a ** k
    except ZeroDivisionError:
        if math.copysign(1.0, a) < 0 and k % 2 != 0:
            return -_INF
        return _INF
    except OverflowError:
        if a < 0 and k % 2 != 0:
            return -_INF
        return _INF


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return _INF


def _sin(x: float) -> float:
    try:
        return math.sin(x)
    except ValueError:
        return _NAN


def _cos(x: float) -> float:
    try:
        return math.cos(x)
    except ValueError:
        return _NAN


def _sqrt(x: float) -> float:
    try:
        return math.sqrt(x)
    except ValueError:
        return _NAN


def eval_tape(ops, args, consts, point) -> float:
    stack: list[float] = []
    push = stack.append
    for i in range(len(ops)):
        op = ops[i]
        if op == _OP_CONST:
            push(consts[args[i]])
        elif op == _OP_VAR:
            push(point[args[i]])
        elif op == _OP_ADD:
            b = stack.pop()
            stack[-1] = stack[-1] + b
        elif op == _OP_SUB:
            b = stack.pop()
            stack[-1] = stack[-1] - b
        elif op == _OP_MUL:
            b = stack.pop()
            stack[-1] = stack[-1] * b
        elif op == _OP_DIV:
            b = stack.pop()
            stack[-1] = _div(stack[-1], b)
        elif op == _OP_NEG:
            stack[-1] = -stack[-1]
        elif op == _OP_POW:
            stack[-1] = _pow(stack[-1], args[i])
        elif op == _OP_EXP:
            stack[-1] = _exp(stack[-1])
        elif op == _OP_SIN:
            stack[-1] = _sin(stack[-1])
        elif op == _OP_COS:
            stack[-1] = _cos(stack[-1])
        elif op == _OP_SQRT:
            stack[-1] = _sqrt(stack[-1])
        else:
            stack[-1] = abs(stack[-1])
    return stack[0]


def tape_panel(ops, args, consts, base, axis, a, b):
    """Gauss-Kronrod 7/15 panel of the compactified integrand over [a, b].

    The integration variable lives in u-space; each node maps through
    x = u/(1-u^2) with weight (1+u^2)/(1-u^2)^2.  Returns (K15, G7),
    both scaled by the panel half-width.
    """
    buf = list(base)
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    k15 = 0.0
    g7 = 0.0
    for i in range(15):
        u = c + h * GK_NODES[i]
        q = (1.0 - u) * (1.0 + u)
        if q != 0.0:
            x = u / q
            wt = (1.0 + u * u) / (q * q)
        else:
            x = math.copysign(_INF, u)
            wt = _INF
        buf[axis] = x
        v = eval_tape(ops, args, consts, buf) * wt
        k15 += GK_WK[i] * v
        g7 += GK_WG[i] * v
    return (k15 * h, g7 * h)
