"""The ordered ring of omega-polynomials.

Values are finite formal sums ``a1*w^p1 + ... + an*w^pn`` where ``w`` is a
fixed infinitely large unit (larger than every real number), the exponents
``p`` are nonnegative rationals kept in strictly descending order, and the
coefficients ``a`` are nonzero reals.  Ordinary reals embed as the single
term with exponent zero; the empty sum is zero.

Ordering: ``a > b`` exactly when the leading (highest-exponent) coefficient
of ``a - b`` is positive.  This makes the ring totally ordered with ``w``
infinite: ``w > r`` for every real ``r``, and ``w^2 > c*w`` for any real
``c > 0``.

Coefficients come in two modes, chosen per computation context and never
mixed inside one value:

* ``CoeffMode.EXACT`` -- arbitrary-precision rationals (`fractions.Fraction`),
* ``CoeffMode.FLOAT`` -- binary64 floats (finite only).

Exponents are exact rationals in both modes.

Example::

    >>> x = make([(2, 3), (1, 2), (0, 5)])
    >>> format_expanded(x)
    '3*w^2 + 2*w + 5'
    >>> re_part(x), format_expanded(hy_part(x))
    (Fraction(5, 1), '3*w^2 + 2*w')
"""

from __future__ import annotations

import enum
import math
import re
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Iterator, Tuple, Union

from .errors import InvalidExponent

Real = Union[int, float, Fraction]
Coefficient = Union[Fraction, float]
TermTuple = Tuple[Fraction, Coefficient]


class CoeffMode(enum.Enum):
    """Coefficient representation used when building ring values."""

    EXACT = "exact"
    FLOAT = "float"


_MODE: ContextVar[CoeffMode] = ContextVar("hyperdelta_coeff_mode", default=CoeffMode.EXACT)


def current_coefficient_mode() -> CoeffMode:
    return _MODE.get()


@contextmanager
def coefficient_mode(mode: CoeffMode | str) -> Iterator[None]:
    """Run a block under the given coefficient mode (``"exact"`` / ``"float"``)."""
    token = _MODE.set(CoeffMode(mode))
    try:
        yield
    finally:
        _MODE.reset(token)


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _coerce_exponent(p) -> Fraction:
    try:
        q = Fraction(p)
    except (TypeError, ValueError, OverflowError) as exc:
        raise InvalidExponent(f"exponent {p!r} is not a rational number") from exc
    if q < 0:
        raise InvalidExponent(f"exponent {q} is negative")
    return q


def _coerce_coefficient(c, mode: CoeffMode) -> Coefficient:
    if mode is CoeffMode.EXACT:
        try:
            return Fraction(c)
        except (TypeError, ValueError, OverflowError) as exc:
            raise ValueError(f"coefficient {c!r} is not an exact rational") from exc
    f = float(c)
    if not math.isfinite(f):
        raise ValueError("float coefficients must be finite")
    return f


@dataclass(frozen=True, slots=True)
class ExpandedReal:
    """A finite sum of ``coeff * w^exponent`` terms, exponents strictly descending.

    Build values with :func:`make` (which normalizes); the raw constructor
    trusts its argument.  Instances are immutable and hashable, and the
    arithmetic operators delegate to the module-level functions.
    """

    terms: tuple[TermTuple, ...] = ()

    # ---- structure -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> TermTuple:
        if not self.terms:
            return (Fraction(0), Fraction(0))
        return self.terms[0]

    def coefficient(self, p) -> Coefficient | int:
        p = Fraction(p)
        for q, c in self.terms:
            if q == p:
                return c
        return 0

    # ---- operators ---------------------------------------------------

    def __add__(self, other):
        other = _as_ring(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ring(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        return add(self, neg(other))

    def __rsub__(self, other):
        other = _as_ring(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        return add(other, neg(self))

    def __mul__(self, other):
        other = _as_ring(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return neg(self)

    def __bool__(self):
        return bool(self.terms)

    def _cmp(self, other) -> Ordering:
        other = _as_ring(other, like=self)
        if other is NotImplemented:
            raise TypeError("cannot order ExpandedReal against this type")
        return compare(self, other)

    def __lt__(self, other):
        return self._cmp(other) is Ordering.LESS

    def __le__(self, other):
        return self._cmp(other) is not Ordering.GREATER

    def __gt__(self, other):
        return self._cmp(other) is Ordering.GREATER

    def __ge__(self, other):
        return self._cmp(other) is not Ordering.LESS

    def __str__(self):
        return format_expanded(self)

    def __repr__(self):
        return f"ExpandedReal({format_expanded(self)!r})"


ZERO = ExpandedReal()


def _mode_of(x: ExpandedReal) -> CoeffMode | None:
    # zero carries no coefficients, hence no mode of its own
    if not x.terms:
        return None
    return CoeffMode.FLOAT if isinstance(x.terms[0][1], float) else CoeffMode.EXACT


def _as_ring(v, like: ExpandedReal | None = None) -> ExpandedReal:
    if isinstance(v, ExpandedReal):
        return v
    if isinstance(v, (int, float, Fraction)):
        mode = _mode_of(like) if like is not None else None
        return embed(v, mode=mode)
    return NotImplemented  # type: ignore[return-value]


def make(pairs: Iterable[tuple], mode: CoeffMode | str | None = None) -> ExpandedReal:
    """Build a normalized value from ``(exponent, coefficient)`` pairs.

    Duplicate exponents are merged, zero coefficients dropped, terms sorted
    with the highest exponent first.  Raises :class:`InvalidExponent` for a
    negative exponent.
    """
    mode = CoeffMode(mode) if mode is not None else current_coefficient_mode()
    acc: dict[Fraction, Coefficient] = {}
    for p, c in pairs:
        q = _coerce_exponent(p)
        a = _coerce_coefficient(c, mode)
        if q in acc:
            acc[q] = acc[q] + a
        else:
            acc[q] = a
    terms = tuple((q, acc[q]) for q in sorted(acc, reverse=True) if acc[q] != 0)
    return ExpandedReal(terms)


def embed(r: Real, mode: CoeffMode | str | None = None) -> ExpandedReal:
    """Embed a real number as the ``w^0`` term."""
    return make([(0, r)], mode=mode)


def _unify(a: ExpandedReal, b: ExpandedReal) -> tuple[ExpandedReal, ExpandedReal]:
    # float coefficients are contagious, mirroring int/float promotion
    ma, mb = _mode_of(a), _mode_of(b)
    if ma is mb or ma is None or mb is None:
        return a, b
    if ma is CoeffMode.FLOAT:
        return a, _to_float(b)
    return _to_float(a), b


def _to_float(x: ExpandedReal) -> ExpandedReal:
    return ExpandedReal(tuple((p, float(c)) for p, c in x.terms))


def add(a: ExpandedReal, b: ExpandedReal) -> ExpandedReal:
    a, b = _unify(a, b)
    acc: dict[Fraction, Coefficient] = dict(a.terms)
    for p, c in b.terms:
        if p in acc:
            acc[p] = acc[p] + c
        else:
            acc[p] = c
    terms = tuple((p, acc[p]) for p in sorted(acc, reverse=True) if acc[p] != 0)
    return ExpandedReal(terms)


def neg(a: ExpandedReal) -> ExpandedReal:
    return ExpandedReal(tuple((p, -c) for p, c in a.terms))


def sub(a: ExpandedReal, b: ExpandedReal) -> ExpandedReal:
    return add(a, neg(b))


def mul(a: ExpandedReal, b: ExpandedReal) -> ExpandedReal:
    a, b = _unify(a, b)
    acc: dict[Fraction, Coefficient] = {}
    for p, c in a.terms:
        for q, d in b.terms:
            r = p + q
            cd = c * d
            if r in acc:
                acc[r] = acc[r] + cd
            else:
                acc[r] = cd
    terms = tuple((p, acc[p]) for p in sorted(acc, reverse=True) if acc[p] != 0)
    return ExpandedReal(terms)


def compare(a: ExpandedReal, b: ExpandedReal) -> Ordering:
    """Total order: the sign of the leading coefficient of ``a - b``."""
    d = sub(a, b)
    if not d.terms:
        return Ordering.EQUAL
    lead = d.terms[0][1]
    return Ordering.GREATER if lead > 0 else Ordering.LESS


def re_part(a: ExpandedReal) -> Real:
    """The real (exponent-zero) coefficient; 0 when absent."""
    if a.terms and a.terms[-1][0] == 0:
        return a.terms[-1][1]
    return 0


def hy_part(a: ExpandedReal) -> ExpandedReal:
    """Everything except the exponent-zero term.  ``embed(re_part(a)) + hy_part(a) == a``."""
    if a.terms and a.terms[-1][0] == 0:
        return ExpandedReal(a.terms[:-1])
    return a


# ---------------------------------------------------------------------------
# textual format
# ---------------------------------------------------------------------------

def format_number(value: Real) -> str:
    """Canonical text for a real: rationals as ``p/q``, integral values bare."""
    if isinstance(value, float):
        if value == 0.0:
            return "0"
        if math.isfinite(value) and value == int(value) and abs(value) < 1e16:
            return str(int(value))
        return repr(value)
    return str(value)


def num_to_json(value: Real):
    """JSON-friendly form: exact integers as ints, other rationals as ``"p/q"``
    strings (JSON numbers cannot hold them), floats as they are."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return str(value)
    if isinstance(value, int):
        return value
    return float(value)


def _format_term(p: Fraction, mag: str) -> str:
    if p == 0:
        return mag
    if p == 1:
        return f"{mag}*w"
    if p.denominator == 1:
        return f"{mag}*w^{p.numerator}"
    return f"{mag}*w^({p})"


def format_expanded(x: ExpandedReal) -> str:
    """Render in the canonical interchange format, e.g. ``3*w^2 + 2*w + 5``.

    Terms appear with descending exponents, joined by `` + `` / `` - ``;
    ``w^1`` prints as ``w`` and ``w^0`` is omitted.  Zero prints as ``0``.
    """
    if not x.terms:
        return "0"
    pieces = []
    for i, (p, c) in enumerate(x.terms):
        negative = c < 0
        mag = format_number(-c if negative else c)
        body = _format_term(p, mag)
        if i == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


_NUM_RE = re.compile(r"(?:\d+/\d+)|(?:\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)")
_WS_RE = re.compile(r"\s*")


def _number_value(text: str, mode: CoeffMode):
    if mode is CoeffMode.FLOAT:
        return float(text)
    if "/" in text:
        p, q = text.split("/")
        return Fraction(int(p), int(q))
    try:
        return Fraction(Decimal(text))
    except InvalidOperation as exc:  # pragma: no cover - regex prevents this
        raise ValueError(f"bad number {text!r}") from exc


class _RingScanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        self.pos = _WS_RE.match(self.text, self.pos).end()

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def take(self, lit: str) -> bool:
        self.skip_ws()
        if self.text.startswith(lit, self.pos):
            self.pos += len(lit)
            return True
        return False

    def number(self) -> str | None:
        self.skip_ws()
        m = _NUM_RE.match(self.text, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group(0)

    def fail(self, why: str):
        raise ValueError(f"invalid expanded-real literal at offset {self.pos}: {why}")


def parse_expanded(text: str, mode: CoeffMode | str | None = None) -> ExpandedReal:
    """Parse the textual format back into a value.

    Exact mode round-trips :func:`format_expanded` output bit-for-bit.
    """
    mode = CoeffMode(mode) if mode is not None else current_coefficient_mode()
    sc = _RingScanner(text)
    pairs: list[tuple[Fraction, Real]] = []
    sign = -1 if sc.take("-") else 1
    while True:
        coeff_text = sc.number()
        if coeff_text is not None:
            coeff = _number_value(coeff_text, mode)
            has_w = sc.take("*")
            if has_w and not sc.take("w"):
                sc.fail("expected 'w' after '*'")
        else:
            # bare "w" means coefficient one
            if not sc.take("w"):
                sc.fail("expected a number or 'w'")
            coeff = Fraction(1) if mode is CoeffMode.EXACT else 1.0
            has_w = True
        exponent = Fraction(0)
        if has_w:
            exponent = Fraction(1)
            if sc.take("^"):
                if sc.take("("):
                    num = sc.number()
                    if num is None:
                        sc.fail("expected an exponent")
                    if not sc.take(")"):
                        sc.fail("expected ')'")
                else:
                    num = sc.number()
                    if num is None:
                        sc.fail("expected an exponent")
                if "/" in num:
                    p, q = num.split("/")
                    exponent = Fraction(int(p), int(q))
                else:
                    exponent = Fraction(Decimal(num))
        pairs.append((exponent, sign * coeff))
        if sc.done():
            break
        if sc.take("+"):
            sign = 1
        elif sc.take("-"):
            sign = -1
        else:
            sc.fail("expected '+' or '-'")
    return make(pairs, mode=mode)
