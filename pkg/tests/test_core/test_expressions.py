"""
Tests for the expression grammar
"""

import pytest
import sympy

from gstructures.core.expressions import parse, tokenize, validate_identifier
from gstructures.errors import ExpressionError


class TestParse:
    """Tests for parsing expression text"""

    def test_parse_polynomial(self):
        """Test rationals, powers with ^ and implicit generator names"""
        x, y = sympy.symbols("x y")
        assert parse("x^2 + 1/2*y", ["x", "y"]) == x**2 + y / 2

    def test_parse_parentheses_and_unary_minus(self):
        x, y = sympy.symbols("x y")
        assert sympy.expand(parse("-(x - y)*(x + y)", ["x", "y"])) == y**2 - x**2

    def test_parse_integer_input(self):
        """Test non-string input is read as text"""
        assert parse(3, []) == 3

    def test_unknown_generator_rejected(self):
        with pytest.raises(ExpressionError, match="unknown generator 'z'"):
            parse("x + z", ["x"])

    def test_character_outside_grammar_rejected(self):
        with pytest.raises(ExpressionError, match="unexpected character"):
            parse("x % 2", ["x"])

    def test_function_call_rejected(self):
        """Test names the grammar does not declare cannot be smuggled in"""
        with pytest.raises(ExpressionError):
            parse("sin(x)", ["x"])

    def test_decimal_point_rejected(self):
        with pytest.raises(ExpressionError):
            parse("0.5*x", ["x"])

    def test_empty_rejected(self):
        with pytest.raises(ExpressionError, match="empty"):
            parse("   ", ["x"])

    def test_syntax_error_rejected(self):
        with pytest.raises(ExpressionError):
            parse("x +* 2", ["x"])


class TestTokenize:
    """Tests for the tokenizer"""

    def test_tokens(self):
        assert list(tokenize("2*x1^3 - y")) == ["2", "*", "x1", "^", "3", "-", "y"]

    def test_whitespace_ignored(self):
        assert list(tokenize("  a +  b  ")) == ["a", "+", "b"]


class TestIdentifiers:
    """Tests for generator name validation"""

    @pytest.mark.parametrize("name", ["x", "x1", "sin_t", "Ei", "_h"])
    def test_valid(self, name):
        assert validate_identifier(name) == name

    @pytest.mark.parametrize("name", ["2x", "", "a-b", "x y"])
    def test_malformed(self, name):
        with pytest.raises(ExpressionError, match="invalid identifier"):
            validate_identifier(name)

    @pytest.mark.parametrize("name", ["lambda", "Integer", "Rational", "if"])
    def test_reserved(self, name):
        with pytest.raises(ExpressionError, match="reserved"):
            validate_identifier(name)
