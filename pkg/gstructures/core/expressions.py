"""
Expression text parsing

Grammar (whitespace ignored):

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := ("+" | "-") factor | atom ("^" integer)?
    atom   := integer | identifier | "(" expr ")"

Identifiers must name generators of the target ring. Division is only
allowed by nonzero rational constants; anything that does not reduce to a
polynomial is rejected.
"""

import keyword
import logging
import re
from tokenize import TokenError
from typing import Dict, Iterable

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from gstructures.errors import ExpressionError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\d+)|([-+*/^()]))")
_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

_TRANSFORMATIONS = standard_transformations + (convert_xor,)

# Names the sympy parser injects into generated code.
_PARSER_GLOBALS = {
    "Integer": sympy.Integer,
    "Rational": sympy.Rational,
    "Float": sympy.Float,
    "Symbol": sympy.Symbol,
}

RESERVED_NAMES = frozenset(_PARSER_GLOBALS) | frozenset(keyword.kwlist)


def validate_identifier(name: str) -> str:
    """Check a generator or coframe name is usable inside expressions"""
    if not _IDENTIFIER.match(name or ""):
        raise ExpressionError(f"invalid identifier '{name}'")
    if name in RESERVED_NAMES:
        raise ExpressionError(f"'{name}' is reserved and cannot name a generator")
    return name


def tokenize(text: str) -> Iterable[str]:
    """Split expression text into tokens, rejecting anything outside the grammar"""
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ExpressionError(f"unexpected character {text[pos:pos + 1]!r} in '{text}'")
        yield match.group(match.lastindex)
        pos = match.end()


def parse(text: str, names: Iterable[str]) -> sympy.Expr:
    """
    Parse expression text into a sympy expression over the given generator names.

    Raises:
        ExpressionError on characters outside the grammar, unknown identifiers
        or syntax errors.
    """
    if not isinstance(text, str):
        text = str(text)
    if not text.strip():
        raise ExpressionError("empty expression")

    symbols: Dict[str, sympy.Symbol] = {name: sympy.Symbol(name) for name in names}
    for token in tokenize(text):
        if _IDENTIFIER.match(token) and not token.isdigit():
            if token not in symbols:
                raise ExpressionError(f"unknown generator '{token}' in '{text}'")

    try:
        return parse_expr(
            text,
            local_dict=symbols,
            global_dict=dict(_PARSER_GLOBALS),
            transformations=_TRANSFORMATIONS,
        )
    except (SyntaxError, TypeError, ValueError, TokenError) as exc:
        raise ExpressionError(f"cannot parse '{text}': {exc}") from exc
