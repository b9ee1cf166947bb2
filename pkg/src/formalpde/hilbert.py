"""Hilbert series of principal-class ideals and counted Hilbert functions.

The closed form for an ideal of rank r generated by r polynomials of degrees
l_1..l_r is the truncation of (1-x^{l_1})...(1-x^{l_r})*(1-x)^{-n}.  The
counted Hilbert function of a completed system (parametric jets per strict
order) is treated as ground truth; the series is the claim under test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .jetspace import monomial_count
from .pdesystem import LinearSystem, slice_at


@dataclass(frozen=True)
class PowerSeries:
    """Integer coefficients of a series truncated at degree `truncation`."""

    coefficients: tuple
    truncation: int

    def __post_init__(self):
        if len(self.coefficients) != self.truncation + 1:
            raise ValueError("coefficient list does not match truncation")

    def __getitem__(self, t: int) -> int:
        return self.coefficients[t]

    def total(self) -> int:
        return sum(self.coefficients)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)


@dataclass(frozen=True)
class SeriesComparison:
    per_degree: tuple  # booleans, degree by degree
    first_mismatch: int | None

    @property
    def agrees(self) -> bool:
        return self.first_mismatch is None


def principal_class_series(degrees, n: int, truncation: int) -> PowerSeries:
    """Truncated product prod(1 - x^l_i) * (1-x)^{-n} by integer convolution."""
    degrees = list(degrees)
    if len(degrees) > n:
        raise ValueError("rank exceeds variable count")
    if any(l < 1 for l in degrees):
        raise ValueError("generator degrees must be >= 1")
    coeffs = [monomial_count(n, t) for t in range(truncation + 1)]
    for l in degrees:
        coeffs = [c - (coeffs[t - l] if t >= l else 0) for t, c in enumerate(coeffs)]
    return PowerSeries(tuple(coeffs), truncation)


def hilbert_function(sys: LinearSystem, truncation: int) -> PowerSeries:
    """Counted parametric jets per strict order: dim R_t - dim R_{t-1}."""
    coeffs = []
    prev = 0
    for t in range(truncation + 1):
        cur = slice_at(sys, t).dimension
        coeffs.append(cur - prev)
        prev = cur
    return PowerSeries(tuple(coeffs), truncation)


def compare(a: PowerSeries, b: PowerSeries) -> SeriesComparison:
    if a.truncation != b.truncation:
        raise ValueError("series truncations differ")
    per_degree = tuple(x == y for x, y in zip(a.coefficients, b.coefficients))
    first = next((t for t, ok in enumerate(per_degree) if not ok), None)
    return SeriesComparison(per_degree, first)
