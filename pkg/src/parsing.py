"""Tokenizer and recursive-descent helpers shared by every text grammar.

Grammars built on top of this module (expressions, partitions, matrices,
chains) all read integers, rationals ``p/q`` and Gaussian-rational literals
``a+b*i``; positions reported in errors are 0-based character offsets.
"""

import re
from fractions import Fraction
from typing import List, NamedTuple, Optional

from src.errors import ParseError
from src.scalars import ExactComplex

TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),;=]))"
)
TRAILING_SPACE = re.compile(r"\s*")


class Token(NamedTuple):
    kind: str  # number | name | op | end
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    """Split text into tokens, ending with an ``end`` token."""
    tokens: List[Token] = []
    pos = 0
    while True:
        blank = TRAILING_SPACE.match(text, pos)
        if blank.end() == len(text):
            tokens.append(Token("end", "", len(text)))
            return tokens
        match = TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[blank.end()]!r}", blank.end())
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()


class TokenStream:
    """Cursor over a token list with the usual peek/next/expect helpers."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def next(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def lookahead(self, offset: int = 1) -> Token:
        index = min(self.index + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def at(self, text: str) -> bool:
        token = self.peek()
        return token.kind in ("op", "name") and token.text == text

    def accept(self, text: str) -> Optional[Token]:
        if self.at(text):
            return self.next()
        return None

    def accept_prefix(self, prefix: str) -> Optional[Token]:
        """Accept ``prefix`` glued to the front of a longer name, leaving the rest as a name."""
        token = self.peek()
        if token.kind != "name" or len(token.text) <= len(prefix) or not token.text.startswith(prefix):
            return None
        rest = Token("name", token.text[len(prefix):], token.pos + len(prefix))
        self.tokens[self.index] = rest
        return Token("name", prefix, token.pos)

    def expect(self, text: str) -> Token:
        token = self.peek()
        if not self.at(text):
            found = token.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", token.pos)
        return self.next()

    def expect_end(self) -> None:
        token = self.peek()
        if token.kind != "end":
            raise ParseError(f"unexpected trailing input {token.text!r}", token.pos)

    def integer(self) -> int:
        token = self.peek()
        if token.kind != "number":
            found = token.text or "end of input"
            raise ParseError(f"expected an integer, found {found!r}", token.pos)
        self.next()
        return int(token.text)


def read_rational(stream: TokenStream) -> Fraction:
    """rational ::= ['+'|'-'] int ['/' int]"""
    negative = False
    if stream.accept("-"):
        negative = True
    else:
        stream.accept("+")
    value = read_unsigned_rational(stream)
    return -value if negative else value


def read_unsigned_rational(stream: TokenStream) -> Fraction:
    """unsigned ::= int ['/' int]"""
    numerator = stream.integer()
    value = Fraction(numerator)
    if stream.at("/"):
        slash = stream.next()
        denominator = stream.integer()
        if denominator == 0:
            raise ParseError("zero denominator", slash.pos)
        value = Fraction(numerator, denominator)
    return value


def _read_term(stream: TokenStream, negative: bool) -> ExactComplex:
    # term ::= unsigned ['*' 'i'] | 'i'; the sign is read by the caller
    if stream.accept("i"):
        coefficient = Fraction(1)
        imaginary = True
    else:
        coefficient = read_unsigned_rational(stream)
        imaginary = False
        if stream.accept("*"):
            stream.expect("i")
            imaginary = True
    if negative:
        coefficient = -coefficient
    if imaginary:
        return ExactComplex(im=coefficient)
    return ExactComplex(re=coefficient)


def read_complex(stream: TokenStream) -> ExactComplex:
    """complex ::= ['+'|'-'] term (('+'|'-') term)*"""
    negative = bool(stream.accept("-"))
    if not negative:
        stream.accept("+")
    value = _read_term(stream, negative)
    while stream.at("+") or stream.at("-"):
        sign = stream.next()
        value = value + _read_term(stream, sign.text == "-")
    return value


def parse_rational(text: str) -> Fraction:
    stream = TokenStream(text)
    value = read_rational(stream)
    stream.expect_end()
    return value


def parse_complex(text: str) -> ExactComplex:
    """Parse a Gaussian-rational literal such as ``-1/2+3*i``."""
    stream = TokenStream(text)
    value = read_complex(stream)
    stream.expect_end()
    return value
