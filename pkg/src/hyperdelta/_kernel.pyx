# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled evaluation kernel: postfix-tape evaluation and GK-7/15 panels.

Semantics match _kernel_py bit-for-bit on well-defined inputs: identical
node order, identical accumulation order, the same libm calls.
"""

from libc.math cimport exp as c_exp, sin as c_sin, cos as c_cos, sqrt as c_sqrt
from libc.math cimport fabs, pow as c_pow

import hyperdelta._tape as _tape

NAME = "compiled"

# opcode layout is pinned by _tape.OPCODES; guard against drift
assert _tape.OPCODES == {
    "const": 0, "var": 1, "add": 2, "sub": 3, "mul": 4, "div": 5,
    "neg": 6, "pow": 7, "exp": 8, "sin": 9, "cos": 10, "sqrt": 11, "abs": 12,
}

cdef double[15] NODES
cdef double[15] WK
cdef double[15] WG

cdef Py_ssize_t _i
for _i in range(15):
    NODES[_i] = _tape.GK_NODES[_i]
    WK[_i] = _tape.GK_WK[_i]
    WG[_i] = _tape.GK_WG[_i]


cdef double _eval(const int* ops, const int* args, Py_ssize_t n,
                  const double* consts, const double* point,
                  double* stack) noexcept nogil:
    cdef Py_ssize_t ip, sp = 0
    cdef int op, ar
    for ip in range(n):
        op = ops[ip]
        ar = args[ip]
        if op == 0:    # const
            stack[sp] = consts[ar]
            sp += 1
        elif op == 1:  # var
            stack[sp] = point[ar]
            sp += 1
        elif op == 2:  # add
            sp -= 1
            stack[sp - 1] = stack[sp - 1] + stack[sp]
        elif op == 3:  # sub
            sp -= 1
            stack[sp - 1] = stack[sp - 1] - stack[sp]
        elif op == 4:  # mul
            sp -= 1
            stack[sp - 1] = stack[sp - 1] * stack[sp]
        elif op == 5:  # div
            sp -= 1
            stack[sp - 1] = stack[sp - 1] / stack[sp]
        elif op == 6:  # neg
            stack[sp - 1] = -stack[sp - 1]
        elif op == 7:  # pow
            stack[sp - 1] = c_pow(stack[sp - 1], <double> ar)
        elif op == 8:
            stack[sp - 1] = c_exp(stack[sp - 1])
        elif op == 9:
            stack[sp - 1] = c_sin(stack[sp - 1])
        elif op == 10:
            stack[sp - 1] = c_cos(stack[sp - 1])
        elif op == 11:
            stack[sp - 1] = c_sqrt(stack[sp - 1])
        else:
            stack[sp - 1] = fabs(stack[sp - 1])
    return stack[0]


def eval_tape(int[::1] ops not None, int[::1] args not None,
              double[::1] consts not None, double[::1] point not None):
    cdef double stack[64]
    cdef const double* pc = NULL
    cdef const double* pp = NULL
    if consts.shape[0] > 0:
        pc = &consts[0]
    if point.shape[0] > 0:
        pp = &point[0]
    return _eval(&ops[0], &args[0], ops.shape[0], pc, pp, stack)


def tape_panel(int[::1] ops not None, int[::1] args not None,
               double[::1] consts not None, double[::1] base not None,
               Py_ssize_t axis, double a, double b):
    cdef double stack[64]
    cdef double buf[16]
    cdef Py_ssize_t n = base.shape[0]
    cdef Py_ssize_t i
    if n > 16:
        raise ValueError("kernel supports at most 16 variables")
    for i in range(n):
        buf[i] = base[i]
    cdef const double* pc = NULL
    if consts.shape[0] > 0:
        pc = &consts[0]
    cdef const int* po = &ops[0]
    cdef const int* pa = &args[0]
    cdef Py_ssize_t nops = ops.shape[0]
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double k15 = 0.0
    cdef double g7 = 0.0
    cdef double u, q, x, wt, v
    with nogil:
        for i in range(15):
            u = c + h * NODES[i]
            q = (1.0 - u) * (1.0 + u)
            x = u / q
            wt = (1.0 + u * u) / (q * q)
            buf[axis] = x
            v = _eval(po, pa, nops, pc, buf, stack) * wt
            k15 += WK[i] * v
            g7 += WG[i] * v
    return (k15 * h, g7 * h)
