"""Tests for the validation module."""

from fractions import Fraction

import pytest
from marshmallow import ValidationError

from macroelast.validation import validate_header, validate_triangle, validate_vertex


class TestValidateHeader:
    def test_valid(self) -> None:
        assert validate_header(["4", "2"]) == (4, 2)

    def test_too_few_vertices(self) -> None:
        with pytest.raises(ValidationError):
            validate_header(["2", "1"])

    def test_no_triangles(self) -> None:
        with pytest.raises(ValidationError):
            validate_header(["3", "0"])

    def test_wrong_arity(self) -> None:
        with pytest.raises(ValidationError, match="expected 2 values"):
            validate_header(["3"])


class TestValidateVertex:
    @pytest.mark.parametrize(
        ("tokens", "expected"),
        [
            (["1", "2"], (Fraction(1), Fraction(2))),
            (["0.25", "-3"], (Fraction(1, 4), Fraction(-3))),
            (["1/3", "2/7"], (Fraction(1, 3), Fraction(2, 7))),
        ],
    )
    def test_rational_formats(self, tokens: list[str], expected: tuple[Fraction, Fraction]) -> None:
        assert validate_vertex(tokens) == expected

    def test_exactness(self) -> None:
        x, _ = validate_vertex(["0.1", "0"])
        assert x == Fraction(1, 10)

    @pytest.mark.parametrize("token", ["abc", "1/0", ""])
    def test_invalid(self, token: str) -> None:
        with pytest.raises(ValidationError):
            validate_vertex([token, "0"])


class TestValidateTriangle:
    def test_valid(self) -> None:
        assert validate_triangle(["0", "2", "1"], 3) == (0, 2, 1)

    def test_out_of_range(self) -> None:
        with pytest.raises(ValidationError):
            validate_triangle(["0", "1", "3"], 3)

    def test_negative(self) -> None:
        with pytest.raises(ValidationError):
            validate_triangle(["-1", "1", "2"], 3)

    def test_repeated(self) -> None:
        with pytest.raises(ValidationError, match="repeated"):
            validate_triangle(["0", "1", "1"], 3)
