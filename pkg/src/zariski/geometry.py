"""Worked surfaces: the plane, a blown-up cubic, and the plane blown up at two points."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .cones import IntersectionSpace, pairing, validate_space
from .decomposition import ZariskiDecomposition
from .errors import NonPositiveInput, UnsupportedCase
from .exact_linalg import as_rational


def two_point_blowup_space() -> IntersectionSpace:
    """Line ``L`` through two blown-up points with exceptional curves ``E1``, ``E2``."""
    return validate_space([[-1, 1, 1], [1, -1, 0], [1, 0, -1]], ["L", "E1", "E2"])


def blown_up_cubic_space() -> IntersectionSpace:
    """Conic ``C1`` and line ``C2`` after blowing up one of their intersection points."""
    return validate_space([[3, 1, 1], [1, 0, 1], [1, 1, -1]], ["C1", "C2", "E"])


def plane_cubic_space() -> IntersectionSpace:
    """Conic and line in the plane, before any blow-up."""
    return validate_space([[4, 2], [2, 1]], ["C1", "C2"])


@dataclass(frozen=True)
class BlowupDivisor:
    """``a L + b E1 + c E2`` with nonnegative coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a, b, c):
        a, b, c = (as_rational(x) for x in (a, b, c))
        if min(a, b, c) < 0:
            raise ValueError(f"divisor coefficients must be nonnegative, got {(a, b, c)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c


class CaseTag(enum.IntEnum):
    NEF = 1
    BOTH_EXCEPTIONAL = 2
    FIRST_EXCEPTIONAL = 3
    SECOND_EXCEPTIONAL = 4
    LINE = 5

    @property
    def condition(self) -> str:
        return _CONDITIONS[self]


_CONDITIONS = {
    CaseTag.NEF: "a >= b, a >= c, b + c >= a",
    CaseTag.BOTH_EXCEPTIONAL: "a <= b, a <= c",
    CaseTag.FIRST_EXCEPTIONAL: "c <= a <= b",
    CaseTag.SECOND_EXCEPTIONAL: "b <= a <= c",
    CaseTag.LINE: "b + c <= a",
}


def applicable_cases(d: BlowupDivisor) -> list[CaseTag]:
    a, b, c = d.coefficients
    tests = {
        CaseTag.NEF: a >= b and a >= c and b + c >= a,
        CaseTag.BOTH_EXCEPTIONAL: a <= b and a <= c,
        CaseTag.FIRST_EXCEPTIONAL: c <= a <= b,
        CaseTag.SECOND_EXCEPTIONAL: b <= a <= c,
        CaseTag.LINE: b + c <= a,
    }
    return [tag for tag in CaseTag if tests[tag]]


def _case_formula(tag: CaseTag, a, b, c) -> tuple[tuple, tuple]:
    zero = Fraction(0)
    if tag is CaseTag.NEF:
        return (a, b, c), (zero, zero, zero)
    if tag is CaseTag.BOTH_EXCEPTIONAL:
        return (a, a, a), (zero, b - a, c - a)
    if tag is CaseTag.FIRST_EXCEPTIONAL:
        return (a, a, c), (zero, b - a, zero)
    if tag is CaseTag.SECOND_EXCEPTIONAL:
        return (a, b, a), (zero, zero, c - a)
    return (b + c, b, c), (a - (b + c), zero, zero)


def five_case_decomposition(d: BlowupDivisor) -> tuple[ZariskiDecomposition, CaseTag]:
    """Closed-form decomposition on the two-point blow-up.

    Uses the first matching case; every other case that also matches on a
    boundary is evaluated and must give the same answer.
    """
    cases = applicable_cases(d)
    # the five regions cover the nonnegative octant
    assert cases, f"no case applies to {d}"
    results = {tag: _case_formula(tag, *d.coefficients) for tag in cases}
    first = results[cases[0]]
    for tag, res in results.items():
        assert res == first, f"cases {cases[0].value} and {tag.value} disagree on {d}"
    return ZariskiDecomposition(first[0], first[1]), cases[0]


def self_intersection_closed_form(d: BlowupDivisor, tag: CaseTag) -> Fraction:
    a, b, c = d.coefficients
    if tag is CaseTag.NEF:
        return -a * a - b * b - c * c + 2 * a * b + 2 * a * c
    if tag is CaseTag.LINE:
        return 2 * b * c
    raise UnsupportedCase(f"no closed form for case {tag.value}")


def positive_self_intersection(d: BlowupDivisor) -> Fraction:
    dec, _ = five_case_decomposition(d)
    return pairing(two_point_blowup_space(), dec.positive, dec.positive)


def _require_positive(**kwargs):
    for name, value in kwargs.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise NonPositiveInput(f"{name} must be a positive integer, got {value!r}")


def dim_plane_system(d: int, n: int) -> int:
    """Dimension of ``|nD|`` for a plane curve ``D`` of degree ``d``."""
    _require_positive(d=d, n=n)
    return comb(n * d + 2, 2) - 1


def dim_two_point_system(d: BlowupDivisor, n: int) -> int:
    """Dimension of ``|nD|`` on the two-point blow-up, for the nef and line cases only."""
    _require_positive(n=n)
    if any(x.denominator != 1 for x in d.coefficients):
        raise ValueError(f"dimension formulas need integer coefficients, got {d}")
    a, b, c = (int(x) for x in d.coefficients)
    cases = applicable_cases(d)
    values = []
    if CaseTag.NEF in cases:
        values.append(comb(n * a + 2, 2) - comb(n * (a - b) + 1, 2) - comb(n * (a - c) + 1, 2) - 1)
    if CaseTag.LINE in cases:
        values.append((n * b + 1) * (n * c + 1) - 1)
    if not values:
        raise UnsupportedCase(
            f"no dimension formula for {format_divisor(d.coefficients, ('L', 'E1', 'E2'))}"
            f" (case {cases[0].value}); only cases 1 and 5 are known"
        )
    assert all(x == values[0] for x in values)
    return values[0]


def asymptotic_ratio_report(
    dim_values: Callable[[int], int] | Sequence[int], target, n_max: int
) -> list[tuple[int, Fraction]]:
    """Exact ``|dim(n) / (n^2/2) - target|`` for ``n = 1..n_max``.

    ``dim_values`` is either a function of ``n`` or a sequence with
    ``dim_values[n]`` defined for ``1 <= n <= n_max`` (index 0 is ignored).
    """
    _require_positive(n_max=n_max)
    target = as_rational(target)
    get = dim_values if callable(dim_values) else dim_values.__getitem__
    return [(n, abs(Fraction(2 * get(n), n * n) - target)) for n in range(1, n_max + 1)]


def format_divisor(coeffs: Sequence[Fraction], labels: Sequence[str]) -> str:
    """Render e.g. ``2L+E1+E2``; fractional coefficients are parenthesized."""
    parts = []
    for x, name in zip(coeffs, labels):
        if x == 0:
            continue
        mag = abs(x)
        if mag == 1:
            coef = ""
        elif mag.denominator == 1:
            coef = str(mag)
        else:
            coef = f"({mag})"
        sign = "-" if x < 0 else "+"
        parts.append((sign, coef + name))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += sign + term
    return out
