"""Exact ratios of maximal-good-set counts to the binomial bound."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Context
from fractions import Fraction
from math import comb
from typing import Iterable

from .good_sets import count_maximal_good

DEFAULT_PRECISION = 6


def to_decimal(q: Fraction, precision: int = DEFAULT_PRECISION) -> str:
    """Render ``q`` with ``precision`` significant digits (display only)."""
    ctx = Context(prec=precision)
    return str(ctx.divide(q.numerator, q.denominator))


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RatioRecord:
    m: int
    n: int
    tree_count: int
    binom: int
    ratio: Fraction
    precision: int = DEFAULT_PRECISION

    @property
    def ratio_decimal(self) -> str:
        return to_decimal(self.ratio, self.precision)


def ratio_exact(m: int, n: int, precision: int = DEFAULT_PRECISION) -> RatioRecord:
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    trees = count_maximal_good(m, n)
    binom = comb(m * n, m + n - 1)
    return RatioRecord(m, n, trees, binom, Fraction(trees, binom), precision)


def ratio_constant_alpha(m1: int, n1: int, a: int) -> Fraction:
    """a^(m1+n1-1) m1^(n1-1) n1^(m1-1) / C(a m1 n1, m1+n1-1)."""
    if m1 < 1 or n1 < 1 or a < 1:
        raise ValueError("m1, n1 and a must be positive")
    k = m1 + n1 - 1
    return Fraction(a**k * count_maximal_good(m1, n1), comb(a * m1 * n1, k))


def ratio_table(m_range: Iterable[int], n_range: Iterable[int], precision: int = DEFAULT_PRECISION) -> list[RatioRecord]:
    ms, ns = list(m_range), list(n_range)
    if not ms or not ns:
        raise ValueError("ranges must be nonempty")
    return [ratio_exact(m, n, precision) for m in ms for n in ns]


def ratio_diagonal(ks: Iterable[int], precision: int = DEFAULT_PRECISION) -> list[RatioRecord]:
    ks = list(ks)
    if not ks:
        raise ValueError("range must be nonempty")
    return [ratio_exact(k, k, precision) for k in ks]
