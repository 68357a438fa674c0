"""Kernel selection: compiled extension when importable, pure Python otherwise.

Both kernels implement the same two entry points (``eval_tape``,
``tape_panel``) with matching semantics; see ``_kernel_py`` for the
contract.  Selection happens once at import.  ``HYPERDELTA_BACKEND``
forces a choice ("compiled" or "python"); :func:`force_backend` switches
temporarily, which the benchmark and parity tests use.
"""

from __future__ import annotations

import os
from array import array
from contextlib import contextmanager

from . import _kernel_py
from ._tape import KERNEL_MAX_DIMS, KERNEL_MAX_STACK, Tape

_FORCED = os.environ.get("HYPERDELTA_BACKEND")

_compiled = None
if _FORCED != "python":
    try:
        from . import _kernel as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None
        if _FORCED == "compiled":
            raise ImportError(
                "HYPERDELTA_BACKEND=compiled but the compiled kernel is not built"
            )

_active = _compiled if _compiled is not None else _kernel_py


def active_backend_name() -> str:
    return _active.NAME


def available_backends() -> dict[str, object]:
    out: dict[str, object] = {"python": _kernel_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


@contextmanager
def force_backend(name: str):
    """Temporarily pin the kernel (``"python"`` or ``"compiled"``)."""
    global _active
    try:
        chosen = available_backends()[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available") from None
    previous = _active
    _active = chosen
    try:
        yield
    finally:
        _active = previous


def _fits_compiled(tape: Tape) -> bool:
    return tape.stack_depth <= KERNEL_MAX_STACK and tape.nvars <= KERNEL_MAX_DIMS


def eval_tape(tape: Tape, point) -> float:
    impl = _active
    if impl is not _kernel_py and not _fits_compiled(tape):
        impl = _kernel_py
    if impl is not _kernel_py and not isinstance(point, array):
        point = array("d", point)
    return impl.eval_tape(tape.ops, tape.args, tape.consts, point)


def tape_panel(tape: Tape, base, axis: int, a: float, b: float) -> tuple[float, float]:
    impl = _active
    if impl is not _kernel_py and not _fits_compiled(tape):
        impl = _kernel_py
    return impl.tape_panel(tape.ops, tape.args, tape.consts, base, axis, a, b)
