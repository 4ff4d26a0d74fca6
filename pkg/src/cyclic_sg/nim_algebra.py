"""Values of the generalized Sprague-Grundy function and their Nim-sum algebra.

A value is either a plain nonnegative ``int`` or an :class:`Inf` carrying the
set K of finite values found among the followers. Plain ints keep the common
case cheap; ``Inf`` is a frozen dataclass so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union


@dataclass(frozen=True, order=True)
class Inf:
    """The infinite value ``inf(K)``; ``K`` is kept sorted and duplicate-free."""

    K: tuple[int, ...] = ()

    def __init__(self, K: Iterable[int] = ()):
        ks = sorted(set(K))
        if any(k < 0 for k in ks):
            raise ValueError("K must contain nonnegative integers")
        object.__setattr__(self, "K", tuple(ks))

    def __contains__(self, k: int) -> bool:
        return k in self.K

    def __str__(self) -> str:
        return "inf(" + ",".join(map(str, self.K)) + ")"


GammaValue = Union[int, Inf]


def is_finite(value: GammaValue) -> bool:
    return not isinstance(value, Inf)


def render(value: GammaValue) -> str:
    return str(value)


def parse_value(text: str) -> GammaValue:
    """Inverse of :func:`render`."""
    text = text.strip()
    if text.startswith("inf(") and text.endswith(")"):
        body = text[4:-1].strip()
        return Inf(int(k) for k in body.split(",")) if body else Inf()
    n = int(text)
    if n < 0:
        raise ValueError(f"negative value {text!r}")
    return n


def mex(values: Iterable[int]) -> int:
    """Least nonnegative integer not in ``values``."""
    present = set(values)
    m = 0
    while m in present:
        m += 1
    return m


def xor(a: int, b: int) -> int:
    return a ^ b


def gnim_sum(a: GammaValue, b: GammaValue) -> GammaValue:
    """Generalized Nim-sum.

    Two finite values combine by XOR; a finite ``a`` shifts every element of an
    ``inf(L)`` to ``l ^ a``; two infinite values give ``inf()``.
    """
    a_inf, b_inf = isinstance(a, Inf), isinstance(b, Inf)
    if a_inf and b_inf:
        return Inf()
    if a_inf:
        return Inf(k ^ b for k in a.K)
    if b_inf:
        return Inf(k ^ a for k in b.K)
    return a ^ b


def sigma(values: Iterable[GammaValue]) -> GammaValue:
    """Generalized Nim-sum of a list of values (0 for the empty list)."""
    return reduce(gnim_sum, values, 0)
