"""Cardinals in {0, 1, 2, ...} together with aleph-null.

Finite cardinals are plain ``int`` values; the single infinite value is the
``ALEPH0`` singleton. Arithmetic follows the convention that subtracting a
finite number from an infinite cardinal leaves it unchanged.
"""
from __future__ import annotations

import functools
from typing import Union

from .errors import InputError, UnderflowError


@functools.total_ordering
class _Aleph0:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALEPH0"

    def __str__(self):
        return "ℵ₀"

    def __reduce__(self):
        return (_Aleph0, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("aleph0")

    def __lt__(self, other):
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __add__(self, other):
        if other is self or isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__


ALEPH0 = _Aleph0()

Card = Union[int, _Aleph0]


def is_finite(a: Card) -> bool:
    return a is not ALEPH0


def check_card(a) -> Card:
    if a is ALEPH0:
        return a
    if isinstance(a, bool) or not isinstance(a, int) or a < 0:
        raise InputError(f"not a cardinal: {a!r}")
    return a


def card_sub(a: Card, n: int) -> Card:
    """Return ``a - n``; infinite ``a`` absorbs the subtraction.

    Raises UnderflowError when ``a`` is finite and smaller than ``n``.
    """
    if n < 0:
        raise InputError(f"cannot subtract negative amount {n}")
    if a is ALEPH0:
        return ALEPH0
    if a < n:
        raise UnderflowError(f"{a} - {n} is negative")
    return a - n


def card_min_with(a: Card, cap: int) -> int:
    """Truncate ``a`` to at most ``cap``; the result is always a plain int."""
    if cap < 0:
        raise InputError(f"negative cap {cap}")
    if a is ALEPH0:
        return cap
    return min(a, cap)


def card_to_json(a: Card):
    return "aleph0" if a is ALEPH0 else a


def card_from_json(value) -> Card:
    if value == "aleph0":
        return ALEPH0
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InputError(f"cardinal must be a nonnegative integer or 'aleph0', got {value!r}")
    return value
