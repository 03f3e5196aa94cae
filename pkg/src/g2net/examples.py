"""Bundled example diagrams and their known values."""
from __future__ import annotations

from importlib import resources
from typing import Dict

from .coeffs import build_table
from .net import Diagram, parse
from .ring import Q, R, FieldValue

__all__ = ["NAMES", "load_text", "load", "expected", "expected_values"]

NAMES = ("unknot", "hopf", "trefoil", "figure8", "theta", "k4")


def _laurent(coeffs: Dict[int, int]) -> FieldValue:
    total = FieldValue(0)
    for e, c in coeffs.items():
        total = total + c * Q**e
    return total


def load_text(name: str) -> str:
    return resources.files("g2net.data").joinpath(f"{name}.net").read_text()


def load(name: str) -> Diagram:
    return parse(load_text(name))


def expected(name: str) -> FieldValue:
    c7 = build_table().sevenC
    q = Q
    if name == "unknot":
        return c7
    if name == "hopf":
        return c7 * _laurent({7: 1, 5: 1, 2: 1, 0: 1, -2: 1, -5: 1, -7: 1})
    if name == "trefoil":
        return c7 * _laurent({8: 1, 6: 1, 5: -1, 3: 1, 2: -1, 1: 1, 0: -1, -1: 1, -4: 1,
                              -5: -2, -6: 2, -7: -1, -9: -1, -10: -1, -11: 1, -12: -1,
                              -13: 1})
    if name == "figure8":
        return c7 * _laurent({14: 1, 13: -1, 12: 2, 11: -2, 9: 1, 8: -2, 7: 4, 6: -4, 5: 4,
                              4: -2, 3: -1, 2: 3, 1: -5, 0: 5, -1: -5, -2: 3, -3: -1,
                              -4: -2, -5: 4, -6: -4, -7: 4, -8: -2, -9: 1, -11: -2,
                              -12: 2, -13: -1, -14: 1})
    if name == "theta":
        return c7 * R
    if name == "k4":
        return -c7 * q * (q**2 - q + 1) / (q**4 + 1) * R**2
    raise KeyError(name)


def expected_values() -> Dict[str, FieldValue]:
    return {n: expected(n) for n in NAMES}
