"""Expression parser and canonical printer for phase-space polynomials.

Grammar (whitespace insensitive):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := ('-')* atom ('^' UINT)?
    atom    := RATIONAL | 'i' | IDENT | '(' expr ')'
    RATIONAL:= UINT ('/' UINT)?
    IDENT   := q0..q3 | p0..p3 | x | y | px | py

The aliases x, y, px, py resolve to q1, q2, p1, p2. The printer emits
terms in graded-lexicographic order (highest total degree first) and its
output always re-parses to the same polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import ComplexRational, PhasePolynomial

__all__ = ["ParseError", "parse_expression", "format_polynomial"]

MAX_EXPONENT = 64

_ALIASES = {"x": ("q", 1), "y": ("q", 2), "px": ("p", 1), "py": ("p", 2)}
_VAR_NAMES = ["q0", "q1", "q2", "q3", "p0", "p1", "p2", "p3"]


class ParseError(ValueError):
    """Syntax or range error, with the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._scan()
        self.index = 0

    def _scan(self):
        text, n = self.text, len(self.text)
        i = 0
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j], i))
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("ident", text[i:j], i))
                i = j
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", "", n))

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        if tok[0] != "end":
            self.index += 1
        return tok


class _Parser:
    def __init__(self, text: str, dims: int):
        self.toks = _Tokenizer(text)
        self.dims = dims

    def parse(self) -> PhasePolynomial:
        poly = self._expr()
        kind, value, pos = self.toks.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", pos)
        return poly

    def _expr(self) -> PhasePolynomial:
        out = self._term()
        while True:
            kind, _, _ = self.toks.peek()
            if kind == "+":
                self.toks.next()
                out = out + self._term()
            elif kind == "-":
                self.toks.next()
                out = out - self._term()
            else:
                return out

    def _term(self) -> PhasePolynomial:
        out = self._factor()
        while True:
            kind = self.toks.peek()[0]
            if kind == "*":
                self.toks.next()
                out = out * self._factor()
            elif kind == "/":
                # division only by a positive integer literal
                self.toks.next()
                dkind, dvalue, dpos = self.toks.next()
                if dkind != "int" or int(dvalue) == 0:
                    raise ParseError("denominator must be a positive integer", dpos)
                out = out.scale(Fraction(1, int(dvalue)))
            else:
                return out

    def _factor(self) -> PhasePolynomial:
        sign = 1
        while self.toks.peek()[0] == "-":
            self.toks.next()
            sign = -sign
        base = self._atom()
        if self.toks.peek()[0] == "^":
            self.toks.next()
            kind, value, pos = self.toks.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            exponent = int(value)
            if exponent > MAX_EXPONENT:
                raise ParseError(f"exponent {exponent} exceeds limit {MAX_EXPONENT}", pos)
            base = base**exponent
        return base if sign == 1 else -base

    def _atom(self) -> PhasePolynomial:
        kind, value, pos = self.toks.next()
        if kind == "int":
            numerator = int(value)
            if self.toks.peek()[0] == "/":
                self.toks.next()
                dkind, dvalue, dpos = self.toks.next()
                if dkind != "int" or int(dvalue) == 0:
                    raise ParseError("denominator must be a positive integer", dpos)
                return PhasePolynomial.constant(
                    Fraction(numerator, int(dvalue)), self.dims
                )
            return PhasePolynomial.constant(numerator, self.dims)
        if kind == "ident":
            if value == "i":
                return PhasePolynomial.constant(
                    ComplexRational(Fraction(0), Fraction(1)), self.dims
                )
            return self._variable(value, pos)
        if kind == "(":
            inner = self._expr()
            ckind, _, cpos = self.toks.next()
            if ckind != ")":
                raise ParseError("expected ')'", cpos)
            return inner
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", pos)

    def _variable(self, name: str, pos: int) -> PhasePolynomial:
        if name in _ALIASES:
            kind, index = _ALIASES[name]
        elif len(name) == 2 and name[0] in "qp" and name[1].isdigit():
            kind, index = name[0], int(name[1])
        else:
            raise ParseError(f"unknown identifier {name!r}", pos)
        if index >= self.dims:
            raise ParseError(
                f"identifier {name!r} out of range for dims={self.dims}", pos
            )
        return PhasePolynomial.coordinate(kind, index, self.dims)


def parse_expression(text: str, dims: int = 4) -> PhasePolynomial:
    """Parse ``text`` into an exact PhasePolynomial over ``dims`` coordinate pairs."""
    return _Parser(text, dims).parse()


def _format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _format_coeff(c: ComplexRational, has_monomial: bool) -> str:
    """Render a nonzero coefficient, assuming any overall '-' was already pulled out."""
    if c.im == 0:
        if c.re == 1 and has_monomial:
            return ""
        return _format_fraction(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        return f"{_format_fraction(c.im)}*i"
    sign = " + " if c.im > 0 else " - "
    im = abs(c.im)
    im_str = "i" if im == 1 else f"{_format_fraction(im)}*i"
    return f"({_format_fraction(c.re)}{sign}{im_str})"


def _format_monomial(key: tuple) -> str:
    parts = []
    for slot, e in enumerate(key):
        if e == 0:
            continue
        name = _VAR_NAMES[slot]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _is_negative(c: ComplexRational) -> bool:
    return c.re < 0 or (c.re == 0 and c.im < 0)


def format_polynomial(poly: PhasePolynomial) -> str:
    """Canonical string form: graded-lex term order, exact rational coefficients."""
    if not poly.terms:
        return "0"
    keys = sorted(poly.terms, key=lambda k: (-sum(k), tuple(-e for e in k)))
    pieces = []
    for idx, key in enumerate(keys):
        coeff = poly.terms[key]
        negative = _is_negative(coeff)
        if negative:
            coeff = -coeff
        mono = _format_monomial(key)
        coeff_str = _format_coeff(coeff, bool(mono))
        if mono and coeff_str:
            body = f"{coeff_str}*{mono}"
        else:
            body = mono or coeff_str
        if idx == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
