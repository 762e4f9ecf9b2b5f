"""Elements module – local stress, potential and displacement elements.

Local elements are cached by the translation-invariant shape of their macro
triangle, the degree and the edge orientation, so congruent translated
copies in a mesh share one exact construction.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from macroelast.elements.base import LocalElement
from macroelast.elements.c1 import C1Element
from macroelast.elements.displacement import DisplacementElement
from macroelast.elements.dofs import DEFAULT_ORIENTATION, ElementOrientation
from macroelast.elements.stress import StressElement
from macroelast.geometry import MacroTriangle

logger = logging.getLogger(__name__)

ELEMENT_FAMILIES: dict[str, type[LocalElement]] = {
    "U": C1Element,
    "Sigma": StressElement,
    "V": DisplacementElement,
}


@lru_cache(maxsize=None)
def _cached_element(family: str, shape: MacroTriangle, k: int, orientation: ElementOrientation) -> LocalElement:
    logger.debug("building %s element of degree %d for shape %s", family, k, shape.parent.vertices)
    return ELEMENT_FAMILIES[family](shape, k, orientation)


def local_element(
    family: str, macro: MacroTriangle, k: int, orientation: ElementOrientation = DEFAULT_ORIENTATION
) -> LocalElement:
    """Shared element instance for *macro* (up to translation)."""
    if family not in ELEMENT_FAMILIES:
        raise ValueError(f"unknown element family '{family}' (choose from {', '.join(ELEMENT_FAMILIES)})")
    return _cached_element(family, macro.shape_key(), k, orientation)


def clear_element_cache() -> None:
    _cached_element.cache_clear()


__all__ = [
    "C1Element",
    "DisplacementElement",
    "ELEMENT_FAMILIES",
    "LocalElement",
    "StressElement",
    "clear_element_cache",
    "local_element",
]
