"""Validation module – marshmallow schemas for mesh-file records.

Each record of a mesh file (header, vertex, triangle) is deserialized
through a marshmallow ``Schema`` for type casting and range checking.
Coordinates go through :class:`RationalField`, which accepts integers,
decimals and ``p/q`` fractions and always yields an exact
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from marshmallow import Schema, ValidationError, fields, validate as ma_validate


class RationalField(fields.Field):
    """Deserialize ``"3"``, ``"0.25"`` or ``"1/3"`` into an exact Fraction."""

    default_error_messages = {"invalid": "Not a valid rational number."}

    def _deserialize(self, value: Any, attr: str | None, data: Any, **kwargs: Any) -> Fraction:
        try:
            return Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise self.make_error("invalid") from exc


HeaderSchema = Schema.from_dict(
    {
        "nv": fields.Integer(required=True, validate=ma_validate.Range(min=3)),
        "nt": fields.Integer(required=True, validate=ma_validate.Range(min=1)),
    }
)

VertexSchema = Schema.from_dict(
    {
        "x": RationalField(required=True),
        "y": RationalField(required=True),
    }
)


def _fields(tokens: list[str], names: tuple[str, ...]) -> dict[str, str]:
    if len(tokens) != len(names):
        raise ValidationError(f"expected {len(names)} values, got {len(tokens)}")
    return dict(zip(names, tokens))


def validate_header(tokens: list[str]) -> tuple[int, int]:
    """Return ``(nv, nt)`` from the header record."""
    data = HeaderSchema().load(_fields(tokens, ("nv", "nt")))
    return data["nv"], data["nt"]


def validate_vertex(tokens: list[str]) -> tuple[Fraction, Fraction]:
    """Return the exact coordinates of a vertex record."""
    data = VertexSchema().load(_fields(tokens, ("x", "y")))
    return data["x"], data["y"]


def validate_triangle(tokens: list[str], nv: int) -> tuple[int, int, int]:
    """Return the vertex indices of a triangle record.

    Raises
    ------
    marshmallow.ValidationError
        If an index is not an integer in ``[0, nv)`` or is repeated.
    """
    in_range = ma_validate.Range(min=0, max=nv - 1)
    schema = Schema.from_dict(
        {name: fields.Integer(required=True, validate=in_range) for name in ("i", "j", "k")}
    )()
    data = schema.load(_fields(tokens, ("i", "j", "k")))
    indices = (data["i"], data["j"], data["k"])
    if len(set(indices)) != 3:
        raise ValidationError(f"repeated vertex index in {indices}")
    return indices
