"""Surface syntax for densities: tokenizer, recursive-descent parser, printer.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := ("-")? power | "-" factor
    power  := atom ("^" ("-")? integer)?
    atom   := number | ident | ident "(" arg ")" | "(" expr ")"
    arg    := expr                      -- for the smooth primitives
            | var (("+" | "-") number)? -- the only shape delta accepts

Numbers are decimal literals or exact rationals written ``p/q``; a rational
is a single token only when the three parts touch, so ``1/2`` is the number
one-half while ``1 / 2`` is a division.  Variables are ``x``, ``y``, ``z``
or ``x1`` .. ``x9`` (the two spellings are aliases: ``y`` is ``x2``).
``delta`` is reserved and must be applied to a variable with an optional
constant shift; ``delta(x - c)`` places the unit point mass at ``c``.

Every token and AST node carries a byte span ``(start, end)`` into the
input; spans are ignored by structural equality so a pretty-printed tree
reparses equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

from .errors import LexError, ParseError
from .expr import PRIMITIVES
from .ring import format_number, num_to_json

Span = tuple

VAR_NAMES = {"x": 0, "y": 1, "z": 2}
VAR_NAMES.update({f"x{i}": i - 1 for i in range(1, 10)})

_SYMBOLS = {
    "+": "Plus",
    "-": "Minus",
    "*": "Star",
    "/": "Slash",
    "^": "Caret",
    "(": "LParen",
    ")": "RParen",
}


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    span: Span
    value: Fraction | None = None

    def __repr__(self):  # compact, for test failure output
        if self.kind == "Num":
            return f"Num {self.text}"
        if self.kind == "Ident":
            return f"Ident {self.text}"
        return self.kind


def _number_token(text: str, i: int) -> Token:
    j = i
    n = len(text)
    while j < n and text[j].isdigit():
        j += 1
    if j < n and text[j] == ".":
        k = j + 1
        while k < n and text[k].isdigit():
            k += 1
        if k == j + 1:
            raise LexError((i, j + 1), "digits must follow the decimal point")
        lexeme = text[i:k]
        try:
            value = Fraction(Decimal(lexeme))
        except InvalidOperation:  # pragma: no cover - scan guarantees validity
            raise LexError((i, k), f"bad number {lexeme!r}") from None
        return Token("Num", lexeme, (i, k), value)
    if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
        k = j + 1
        while k < n and text[k].isdigit():
            k += 1
        lexeme = text[i:k]
        if int(text[j + 1 : k]) == 0:
            raise LexError((i, k), f"zero denominator in {lexeme!r}")
        return Token("Num", lexeme, (i, k), Fraction(lexeme))
    lexeme = text[i:j]
    return Token("Num", lexeme, (i, j), Fraction(lexeme))


def tokenize(text: str) -> list:
    """Tokens with byte spans; whitespace separates but is not kept."""
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            tok = _number_token(text, i)
            out.append(tok)
            i = tok.span[1]
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("Ident", text[i:j], (i, j)))
            i = j
            continue
        kind = _SYMBOLS.get(c)
        if kind is None:
            raise LexError((i, i + 1), f"illegal character {c!r}")
        out.append(Token(kind, c, (i, i + 1)))
        i += 1
    return out


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

_NO_SPAN: Span = (0, 0)


@dataclass(frozen=True, slots=True)
class ANum:
    value: Fraction
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class AVar:
    index: int
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class ADelta:
    """``delta(x_var - location)``: the unit point mass at ``location``."""

    var: int
    location: Fraction
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class ANeg:
    operand: "DensityAst"
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class AAdd:
    lhs: "DensityAst"
    rhs: "DensityAst"
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class ASub:
    lhs: "DensityAst"
    rhs: "DensityAst"
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class AMul:
    lhs: "DensityAst"
    rhs: "DensityAst"
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class ADiv:
    lhs: "DensityAst"
    rhs: "DensityAst"
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class APow:
    base: "DensityAst"
    power: int
    span: Span = field(default=_NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class ACall:
    fn: str
    arg: "DensityAst"
    span: Span = field(default=_NO_SPAN, compare=False)


DensityAst = Union[ANum, AVar, ADelta, ANeg, AAdd, ASub, AMul, ADiv, APow, ACall]

_BIN_NODES = {"Plus": AAdd, "Minus": ASub, "Star": AMul, "Slash": ADiv}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def _peek(self) -> Token:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        end = len(self.text)
        return Token("Eof", "", (end, end))

    def _next(self) -> Token:
        tok = self._peek()
        self.pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> Token:
        tok = self._next()
        if tok.kind != kind:
            got = tok.text or "end of input"
            raise ParseError(tok.span, f"expected {what}, found {got!r}")
        return tok

    def parse(self) -> DensityAst:
        node = self.expr()
        tok = self._peek()
        if tok.kind != "Eof":
            raise ParseError(tok.span, f"unexpected {tok.text!r} after expression")
        return node

    def expr(self) -> DensityAst:
        node = self.term()
        while self._peek().kind in ("Plus", "Minus"):
            op = self._next()
            rhs = self.term()
            node = _BIN_NODES[op.kind](node, rhs, (node.span[0], rhs.span[1]))
        return node

    def term(self) -> DensityAst:
        node = self.factor()
        while self._peek().kind in ("Star", "Slash"):
            op = self._next()
            rhs = self.factor()
            node = _BIN_NODES[op.kind](node, rhs, (node.span[0], rhs.span[1]))
        return node

    def factor(self) -> DensityAst:
        tok = self._peek()
        if tok.kind == "Minus":
            self._next()
            operand = self.factor()
            return ANeg(operand, (tok.span[0], operand.span[1]))
        return self.power()

    def power(self) -> DensityAst:
        base = self.atom()
        if self._peek().kind != "Caret":
            return base
        self._next()
        sign = 1
        tok = self._peek()
        if tok.kind == "Minus":
            self._next()
            sign = -1
        num = self._expect("Num", "an integer exponent")
        if num.value.denominator != 1:
            raise ParseError(num.span, "exponent must be an integer")
        return APow(base, sign * int(num.value), (base.span[0], num.span[1]))

    def atom(self) -> DensityAst:
        tok = self._next()
        if tok.kind == "Num":
            return ANum(tok.value, tok.span)
        if tok.kind == "LParen":
            node = self.expr()
            close = self._expect("RParen", "a closing parenthesis")
            return _respan(node, (tok.span[0], close.span[1]))
        if tok.kind == "Ident":
            if self._peek().kind == "LParen":
                self._next()
                if tok.text == "delta":
                    return self._delta_arg(tok)
                if tok.text not in PRIMITIVES:
                    raise ParseError(tok.span, f"unknown function {tok.text!r}")
                arg = self.expr()
                close = self._expect("RParen", "a closing parenthesis")
                return ACall(tok.text, arg, (tok.span[0], close.span[1]))
            if tok.text == "delta":
                raise ParseError(tok.span, "'delta' is reserved and takes an argument")
            index = VAR_NAMES.get(tok.text)
            if index is None:
                raise ParseError(tok.span, f"unknown variable {tok.text!r}")
            return AVar(index, tok.span)
        got = tok.text or "end of input"
        raise ParseError(tok.span, f"expected a number, variable, or call, found {got!r}")

    def _delta_arg(self, head: Token) -> ADelta:
        start = self._peek().span[0]

        def reject():
            end = max(self._peek().span[1], start)
            raise ParseError((start, end), "delta argument must be variable ± constant")

        tok = self._next()
        if tok.kind != "Ident" or tok.text not in VAR_NAMES:
            reject()
        var = VAR_NAMES[tok.text]
        location = Fraction(0)
        nxt = self._next()
        if nxt.kind in ("Plus", "Minus"):
            num = self._next()
            if num.kind != "Num":
                reject()
            location = num.value if nxt.kind == "Minus" else -num.value
            nxt = self._next()
        if nxt.kind != "RParen":
            reject()
        return ADelta(var, location, (head.span[0], nxt.span[1]))


def _respan(node: DensityAst, span: Span) -> DensityAst:
    object.__setattr__(node, "span", span)
    return node


def parse(text: str) -> DensityAst:
    """Parse one density expression; the whole input must be consumed."""
    parser = _Parser(text)
    if not parser.tokens:
        raise ParseError((0, 0), "empty input")
    return parser.parse()


def ast_dims(node: DensityAst) -> int:
    """Smallest dimension count that covers every variable mentioned."""
    if isinstance(node, AVar):
        return node.index + 1
    if isinstance(node, ADelta):
        return node.var + 1
    if isinstance(node, ANum):
        return 0
    if isinstance(node, (ANeg, ACall)):
        inner = node.operand if isinstance(node, ANeg) else node.arg
        return ast_dims(inner)
    if isinstance(node, APow):
        return ast_dims(node.base)
    return max(ast_dims(node.lhs), ast_dims(node.rhs))


# ---------------------------------------------------------------------------
# printing and interchange
# ---------------------------------------------------------------------------

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 5


def _var_name(index: int) -> str:
    return f"x{index + 1}"


def _num_text(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return format_number(value)


def pretty_ast(node: DensityAst) -> str:
    """Source text that reparses to a structurally identical tree."""
    return _pp(node, 0)


def _pp(node: DensityAst, parent: int) -> str:
    if isinstance(node, ANum):
        text = _num_text(node.value)
        level = _PREC_ATOM if node.value >= 0 else _PREC_NEG
        if text.startswith("-"):
            text, level = f"(-{text[1:]})", _PREC_ATOM
        return _wrap(text, level, parent)
    if isinstance(node, AVar):
        return _var_name(node.index)
    if isinstance(node, ADelta):
        head = f"delta({_var_name(node.var)}"
        if node.location > 0:
            return f"{head} - {_num_text(node.location)})"
        if node.location < 0:
            return f"{head} + {_num_text(-node.location)})"
        return head + ")"
    if isinstance(node, ANeg):
        return _wrap(f"-{_pp(node.operand, _PREC_NEG)}", _PREC_NEG, parent)
    if isinstance(node, AAdd):
        body = f"{_pp(node.lhs, _PREC_ADD)} + {_pp(node.rhs, _PREC_ADD + 1)}"
        return _wrap(body, _PREC_ADD, parent)
    if isinstance(node, ASub):
        body = f"{_pp(node.lhs, _PREC_ADD)} - {_pp(node.rhs, _PREC_ADD + 1)}"
        return _wrap(body, _PREC_ADD, parent)
    if isinstance(node, AMul):
        body = f"{_pp(node.lhs, _PREC_MUL)} * {_pp(node.rhs, _PREC_MUL + 1)}"
        return _wrap(body, _PREC_MUL, parent)
    if isinstance(node, ADiv):
        body = f"{_pp(node.lhs, _PREC_MUL)} / {_pp(node.rhs, _PREC_MUL + 1)}"
        return _wrap(body, _PREC_MUL, parent)
    if isinstance(node, APow):
        return _wrap(f"{_pp(node.base, _PREC_ATOM)}^{node.power}", _PREC_POW, parent)
    if isinstance(node, ACall):
        return f"{node.fn}({_pp(node.arg, 0)})"
    raise TypeError(f"not an AST node: {node!r}")


def _wrap(text: str, level: int, parent: int) -> str:
    return f"({text})" if level < parent else text


def ast_equal(a: DensityAst, b: DensityAst) -> bool:
    """Structural equality; spans do not participate."""
    return a == b


def ast_to_json(node: DensityAst) -> dict:
    span = list(node.span)
    if isinstance(node, ANum):
        return {"node": "num", "value": num_to_json(node.value), "span": span}
    if isinstance(node, AVar):
        return {"node": "var", "index": node.index, "span": span}
    if isinstance(node, ADelta):
        return {
            "node": "delta",
            "var": node.var,
            "location": num_to_json(node.location),
            "span": span,
        }
    if isinstance(node, ANeg):
        return {"node": "neg", "operand": ast_to_json(node.operand), "span": span}
    if isinstance(node, (AAdd, ASub, AMul, ADiv)):
        kind = {AAdd: "add", ASub: "sub", AMul: "mul", ADiv: "div"}[type(node)]
        return {
            "node": kind,
            "lhs": ast_to_json(node.lhs),
            "rhs": ast_to_json(node.rhs),
            "span": span,
        }
    if isinstance(node, APow):
        return {
            "node": "pow",
            "base": ast_to_json(node.base),
            "power": node.power,
            "span": span,
        }
    if isinstance(node, ACall):
        return {"node": "call", "fn": node.fn, "arg": ast_to_json(node.arg), "span": span}
    raise TypeError(f"not an AST node: {node!r}")
