"""Exact rational linear programming.

A bounded-variable primal simplex on a dense Fraction tableau. Phase 1 drives
artificial variables out of an all-artificial starting basis; phase 2
maximizes the objective. Both phases use Bland's least-index rule for the
entering and the leaving variable, so the method terminates without any
perturbation or tolerance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, MalformedProgram
from .exact_linalg import RationalMatrix, RationalVector, as_rational, to_vector

Bound = Optional[Fraction]


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """maximize ``objective . x`` subject to ``a x >= b`` and per-variable bounds.

    A bound of ``None`` means the variable is unbounded on that side.
    """

    objective: RationalVector
    a: RationalMatrix
    b: RationalVector
    lower: tuple[Bound, ...]
    upper: tuple[Bound, ...]

    def __post_init__(self):
        n = len(self.objective)
        if self.a.ncols != n:
            raise MalformedProgram(f"constraint matrix has {self.a.ncols} columns, objective {n}")
        if len(self.b) != self.a.nrows:
            raise MalformedProgram(f"{self.a.nrows} constraint rows but {len(self.b)} right-hand sides")
        if len(self.lower) != n or len(self.upper) != n:
            raise MalformedProgram("bounds length does not match the number of variables")
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if lo is not None and hi is not None and lo > hi:
                raise MalformedProgram(f"variable {j} has lower bound {lo} > upper bound {hi}")

    @classmethod
    def build(cls, objective, a_rows=(), b=(), lower=None, upper=None) -> LinearProgram:
        """Convenience constructor; ``lower`` defaults to all zeros, ``upper`` to none."""
        objective = to_vector(objective)
        n = len(objective)
        try:
            a = RationalMatrix.from_rows(a_rows, ncols=n)
        except DimensionMismatch as exc:
            raise MalformedProgram(str(exc)) from exc
        if lower is None:
            lower = [0] * n
        if upper is None:
            upper = [None] * n
        return cls(
            objective,
            a,
            to_vector(b),
            tuple(None if x is None else as_rational(x) for x in lower),
            tuple(None if x is None else as_rational(x) for x in upper),
        )

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if len(x) != len(self.objective):
            return False
        for xj, lo, hi in zip(x, self.lower, self.upper):
            if (lo is not None and xj < lo) or (hi is not None and xj > hi):
                return False
        return all(ax >= bi for ax, bi in zip(self.a.apply(x), self.b))


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    point: RationalVector | None = None
    value: Fraction | None = None


class _Tableau:
    """Dense tableau ``T = B^{-1} A`` plus explicit values for every variable."""

    def __init__(self, rows, rhs, lower, upper):
        m = len(rows)
        n = len(lower)
        self.n_struct = n
        self.lower = list(lower) + [Fraction(0)] * m
        self.upper = list(upper) + [None] * m
        x = []
        for lo, hi in zip(lower, upper):
            x.append(lo if lo is not None else hi if hi is not None else Fraction(0))
        self.t = []
        for i, (r, bi) in enumerate(zip(rows, rhs)):
            resid = bi - sum((a * xj for a, xj in zip(r, x)), Fraction(0))
            s = 1 if resid >= 0 else -1
            art = [Fraction(0)] * m
            art[i] = Fraction(1)
            self.t.append([s * a for a in r] + art)
            x.append(s * resid)
        self.x = x
        self.basis = list(range(n, n + m))

    @property
    def artificials(self) -> range:
        return range(self.n_struct, len(self.x))

    def _entering(self, cost):
        basic = set(self.basis)
        cb = [cost[k] for k in self.basis]
        for j in range(len(self.x)):
            if j in basic:
                continue
            d = cost[j] - sum((c * row[j] for c, row in zip(cb, self.t)), Fraction(0))
            lo, hi = self.lower[j], self.upper[j]
            if d > 0 and (hi is None or self.x[j] < hi):
                return j, 1
            if d < 0 and (lo is None or self.x[j] > lo):
                return j, -1
        return None, 0

    def run(self, cost) -> bool:
        """Maximize ``cost . x``; False if the objective is unbounded."""
        while True:
            j, direction = self._entering(cost)
            if j is None:
                return True
            best = None  # (step, variable index, row or None for a bound flip)
            lo, hi = self.lower[j], self.upper[j]
            if lo is not None and hi is not None:
                best = (hi - lo, j, None)
            for i, row in enumerate(self.t):
                rate = -direction * row[j]
                if rate == 0:
                    continue
                k = self.basis[i]
                if rate < 0:
                    if self.lower[k] is None:
                        continue
                    step = (self.x[k] - self.lower[k]) / -rate
                else:
                    if self.upper[k] is None:
                        continue
                    step = (self.upper[k] - self.x[k]) / rate
                if best is None or (step, k) < best[:2]:
                    best = (step, k, i)
            if best is None:
                return False
            step, _, r = best
            for i, row in enumerate(self.t):
                self.x[self.basis[i]] -= direction * row[j] * step
            self.x[j] += direction * step
            if r is not None:
                self._pivot(r, j)

    def _pivot(self, r, j):
        prow = self.t[r]
        p = prow[j]
        prow = [a / p for a in prow]
        self.t[r] = prow
        for i, row in enumerate(self.t):
            f = row[j]
            if i != r and f != 0:
                self.t[i] = [a - f * b for a, b in zip(row, prow)]
        self.basis[r] = j

    def phase_one(self) -> bool:
        cost = [Fraction(0)] * self.n_struct + [Fraction(-1)] * len(self.artificials)
        self.run(cost)
        if any(self.x[k] != 0 for k in self.artificials):
            return False
        for k in self.artificials:
            self.upper[k] = Fraction(0)
        return True


def _solve(rows, rhs, lower, upper, objective=None):
    tab = _Tableau(rows, rhs, lower, upper)
    if not tab.phase_one():
        return LpStatus.INFEASIBLE, None
    if objective is not None:
        cost = list(objective) + [Fraction(0)] * (len(tab.x) - len(objective))
        if not tab.run(cost):
            return LpStatus.UNBOUNDED, None
    return LpStatus.OPTIMAL, tuple(tab.x[: tab.n_struct])


def maximize(lp: LinearProgram) -> LpResult:
    """Exact optimum of ``lp``; the least-index rule makes the vertex deterministic."""
    n = len(lp.objective)
    m = lp.a.nrows
    # a x - s = b with surplus s >= 0
    rows = [
        list(r) + [Fraction(-1) if k == i else Fraction(0) for k in range(m)]
        for i, r in enumerate(lp.a.rows)
    ]
    lower = list(lp.lower) + [Fraction(0)] * m
    upper = list(lp.upper) + [None] * m
    objective = list(lp.objective) + [Fraction(0)] * m
    status, z = _solve(rows, lp.b, lower, upper, objective)
    if status is not LpStatus.OPTIMAL:
        return LpResult(status)
    x = z[:n]
    assert lp.is_feasible(x), "simplex returned an infeasible point"
    value = sum((c * xi for c, xi in zip(lp.objective, x)), Fraction(0))
    return LpResult(LpStatus.OPTIMAL, x, value)


def feasible_point(e: RationalMatrix, d: Sequence) -> RationalVector | None:
    """Some ``y >= 0`` with ``e y == d``, or None when there is none."""
    d = to_vector(d)
    if len(d) != e.nrows:
        raise MalformedProgram(f"{e.nrows} equations but {len(d)} right-hand sides")
    n = e.ncols
    status, y = _solve(
        [list(r) for r in e.rows], d, [Fraction(0)] * n, [None] * n
    )
    if status is not LpStatus.OPTIMAL:
        return None
    assert e.apply(y) == d and all(v >= 0 for v in y)
    return y
