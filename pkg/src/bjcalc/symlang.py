"""Textual language for polynomial symbols.

Grammar (EBNF):
    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' uint]
    atom   := rational | 'i' | 'hbar' | var | '(' expr ')' | '-' factor
    var    := ('x'|'p') [uint]
    rational := uint ['/' uint]

Implicit multiplication is rejected.  In one dimension bare "x"/"p" alias
"x1"/"p1".  format() emits the canonical form that parse() reads back
exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import ExactScalar, SymbolPoly
from .operators import OpPoly

MAX_DEPTH = 256
MAX_EXPONENT = 1000


class SymLangError(ValueError):
    """Lexical, syntax or dimension error with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_PUNCT = set("+-*^/()")
_DIGITS = set("0123456789")
_LETTERS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind  # "int" | "ident" | punctuation | "eof"
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        # ASCII only: str.isdigit/isalnum accept characters like superscript
        # digits that int() rejects.
        if ch in _DIGITS:
            j = i
            while j < n and text[j] in _DIGITS:
                j += 1
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch in _LETTERS or ch == "_":
            j = i
            while j < n and (text[j] in _LETTERS or text[j] in _DIGITS
                             or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], i))
            i = j
            continue
        raise SymLangError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("eof", "", n))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token], dim: int):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim
        self.depth = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise SymLangError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.pos
            )
        return self.advance()

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise SymLangError("expression too deeply nested", self.peek().pos)

    def _leave(self):
        self.depth -= 1

    def parse_expr(self) -> SymbolPoly:
        self._enter()
        try:
            acc = self.parse_term()
            while self.peek().kind in ("+", "-"):
                op = self.advance()
                rhs = self.parse_term()
                acc = acc + rhs if op.kind == "+" else acc - rhs
            return acc
        finally:
            self._leave()

    def parse_term(self) -> SymbolPoly:
        acc = self.parse_factor()
        while self.peek().kind == "*":
            self.advance()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> SymbolPoly:
        base = self.parse_atom()
        if self.peek().kind == "^":
            caret = self.advance()
            tok = self.peek()
            if tok.kind != "int":
                raise SymLangError(
                    "exponent must be a non-negative integer literal",
                    tok.pos if tok.kind != "eof" else caret.pos,
                )
            self.advance()
            exponent = int(tok.text)
            if exponent > MAX_EXPONENT:
                raise SymLangError(f"exponent exceeds limit {MAX_EXPONENT}", tok.pos)
            result = SymbolPoly.constant(self.dim, ExactScalar.one())
            for _ in range(exponent):
                result = result * base
            return result
        return base

    def parse_atom(self) -> SymbolPoly:
        self._enter()
        try:
            tok = self.peek()
            if tok.kind == "int":
                self.advance()
                num = int(tok.text)
                if self.peek().kind == "/":
                    self.advance()
                    den_tok = self.expect("int")
                    den = int(den_tok.text)
                    if den == 0:
                        raise SymLangError("zero denominator", den_tok.pos)
                    value = Fraction(num, den)
                else:
                    value = Fraction(num)
                return SymbolPoly.constant(self.dim, ExactScalar.rational(value))
            if tok.kind == "ident":
                self.advance()
                return self._resolve_ident(tok)
            if tok.kind == "(":
                self.advance()
                inner = self.parse_expr()
                self.expect(")")
                return inner
            if tok.kind == "-":
                # negation applies after exponentiation so that the canonical
                # form "-x^2" round-trips as -(x^2)
                self.advance()
                return -self.parse_factor()
            raise SymLangError(
                f"expected a value, found {tok.text or 'end of input'!r}", tok.pos
            )
        finally:
            self._leave()

    def _resolve_ident(self, tok: _Token) -> SymbolPoly:
        name = tok.text
        if name == "i":
            return SymbolPoly.constant(self.dim, ExactScalar.i())
        if name == "hbar":
            return SymbolPoly.constant(self.dim, ExactScalar.hbar())
        block = name[0]
        suffix = name[1:]
        if block in ("x", "p") and (suffix == "" or suffix.isdigit()):
            if suffix:
                index = int(suffix) - 1
            elif self.dim == 1:
                index = 0
            else:
                raise SymLangError(
                    f"bare {block!r} is ambiguous in dimension {self.dim}", tok.pos
                )
            if not 0 <= index < self.dim:
                raise SymLangError(
                    f"variable {name!r} out of range for dimension {self.dim}", tok.pos
                )
            return SymbolPoly.variable(self.dim, (block, index))
        raise SymLangError(f"unknown identifier {name!r}", tok.pos)


def parse(text: str, dim: int = 1) -> SymbolPoly:
    """Parse a symbol expression into canonical form.

    Raises SymLangError with a character position on any invalid input.
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    if not isinstance(text, str):
        raise TypeError("input must be a string")
    parser = _Parser(_tokenize(text), dim)
    result = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise SymLangError(f"unexpected trailing input {trailing.text!r}", trailing.pos)
    return result


# ---------------------------------------------------------------------------
# Formatter
# ---------------------------------------------------------------------------


def _format_rational(q: Fraction) -> str:
    return str(q)  # "3" or "1/6"


def _coeff_factors(re: Fraction, im: Fraction) -> list[str]:
    """Factor strings for a Gaussian rational, sign already removed."""
    if im == 0:
        if re == 1:
            return []
        s = _format_rational(re)
        return [f"({s})" if "/" in s else s]
    if re == 0:
        factors = []
        if im != 1:
            s = _format_rational(im)
            factors.append(f"({s})" if "/" in s else s)
        factors.append("i")
        return factors
    im_part = f"{_format_rational(abs(im))}*i" if abs(im) != 1 else "i"
    sign = "+" if im > 0 else "-"
    return [f"({_format_rational(re)}{sign}{im_part})"]


def _aux_factors(hbar_pow: int, tau_pow: int, t_pow: int) -> list[str]:
    out = []
    for name, k in (("hbar", hbar_pow), ("tau", tau_pow), ("t", t_pow)):
        if k == 1:
            out.append(name)
        elif k > 1:
            out.append(f"{name}^{k}")
    return out


def _var_factors(names: list[str], exps: tuple[int, ...]) -> list[str]:
    out = []
    for name, e in zip(names, exps):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return out


def _format_terms(pieces: list[tuple[tuple, int, int, int, Fraction, Fraction]],
                  var_namer) -> str:
    """pieces: (monomial key, hbar_pow, tau_pow, t_pow, re, im), canonical order."""
    if not pieces:
        return "0"
    rendered = []
    for key, h, tau_p, t_p, re, im in pieces:
        negative = re < 0 or (re == 0 and im < 0)
        if negative:
            re, im = -re, -im
        factors = _coeff_factors(re, im) + _aux_factors(h, tau_p, t_p) + var_namer(key)
        body = "*".join(factors) if factors else "1"
        rendered.append((negative, body))
    first_neg, first_body = rendered[0]
    out = ("-" if first_neg else "") + first_body
    for negative, body in rendered[1:]:
        out += (" - " if negative else " + ") + body
    return out


def _split_scalar(coeff: ExactScalar):
    """Scalar components as (hbar_pow, tau_pow, t_pow, re, im), sorted."""
    for key in sorted(coeff.terms):
        re, im = coeff.terms[key]
        yield key[0], key[1], key[2], re, im


def format_symbol(a: SymbolPoly) -> str:
    """Canonical string form; parse(format_symbol(a), a.dim) == a."""
    names_x = ["x"] if a.dim == 1 else [f"x{j+1}" for j in range(a.dim)]
    names_p = ["p"] if a.dim == 1 else [f"p{j+1}" for j in range(a.dim)]

    def namer(key):
        kx, kp = key
        return _var_factors(names_x, kx) + _var_factors(names_p, kp)

    pieces = []
    for key, coeff in a.sorted_terms():
        for h, tau_p, t_p, re, im in _split_scalar(coeff):
            pieces.append((key, h, tau_p, t_p, re, im))
    return _format_terms(pieces, namer)


def format_operator(op: OpPoly) -> str:
    """Canonical text form of a normal-ordered operator polynomial."""
    if op.dim == 1:
        names_x, names_p = ["xhat"], ["phat"]
    else:
        names_x = [f"xhat{j+1}" for j in range(op.dim)]
        names_p = [f"phat{j+1}" for j in range(op.dim)]

    def namer(key):
        kx, kp = key
        return _var_factors(names_x, kx) + _var_factors(names_p, kp)

    pieces = []
    for key, coeff in op.sorted_terms():
        for h, tau_p, t_p, re, im in _split_scalar(coeff):
            pieces.append((key, h, tau_p, t_p, re, im))
    return _format_terms(pieces, namer)
