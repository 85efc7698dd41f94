"""Zariski decomposition of effective and quasi-effective vectors.

Three independent routes compute the same pair ``(p, n)``:

* :func:`decompose_direct` maximizes ``sum(x)`` over the polytope
  ``0 <= x <= v, M x >= 0`` with the exact simplex;
* :func:`decompose_zariski` runs Zariski's iterative algorithm, growing the
  support of the negative part through negative definite subspaces;
* :func:`decompose_oracle` tries every candidate support by brute force.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cones import (
    IntersectionSpace,
    QVector,
    SupportSet,
    add,
    all_subsets,
    is_effective,
    is_nef,
    sub,
    support,
    validate_space,
)
from .errors import (
    DimensionCapExceeded,
    DimensionMismatch,
    NotEffective,
    NotQuasiEffective,
    UniquenessViolation,
)
from .exact_linalg import (
    RationalMatrix,
    is_negative_definite,
    solve_linear_system,
    to_vector,
)
from .exact_lp import LinearProgram, LpStatus, feasible_point, maximize

DEFAULT_ORACLE_CAP = 12


@dataclass(frozen=True)
class ZariskiDecomposition:
    positive: QVector
    negative: QVector

    @property
    def total(self) -> QVector:
        return add(self.positive, self.negative)

    @property
    def negative_support(self) -> SupportSet:
        return support(self.negative)


@dataclass(frozen=True)
class TraceStep:
    subspace: SupportSet
    increment: QVector
    remainder: QVector


@dataclass(frozen=True)
class AlgorithmTrace:
    steps: tuple[TraceStep, ...] = ()

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, k):
        return self.steps[k]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of each defining condition, with a short reason for failures."""

    reconstruction: bool
    positive_nef: bool
    negative_effective: bool
    orthogonal_on_support: bool
    negative_definite_support: bool
    positive_effective: bool
    failures: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        """All four conditions and ``v == p + n``; effectivity of ``p`` is reported separately."""
        return (
            self.reconstruction
            and self.positive_nef
            and self.negative_effective
            and self.orthogonal_on_support
            and self.negative_definite_support
        )

    def as_dict(self) -> dict[str, bool]:
        return {
            "reconstruction": self.reconstruction,
            "positive_nef": self.positive_nef,
            "negative_effective": self.negative_effective,
            "orthogonal_on_support": self.orthogonal_on_support,
            "negative_definite_support": self.negative_definite_support,
            "positive_effective": self.positive_effective,
        }


def verify_decomposition(space: IntersectionSpace, v, p, n) -> VerificationReport:
    v, p, n = to_vector(v), to_vector(p), to_vector(n)
    for x in (v, p, n):
        if len(x) != space.dimension:
            raise DimensionMismatch(f"vector of length {len(x)} in dimension {space.dimension}")
    labels = space.labels
    failures = []

    reconstruction = add(p, n) == v
    if not reconstruction:
        failures.append("v != p + n")

    mp = space.image(p)
    bad = [j for j, x in enumerate(mp) if x < 0]
    if bad:
        j = bad[0]
        failures.append(f"p is not nef: p.{labels[j]} = {mp[j]}")

    neg = [j for j, x in enumerate(n) if x < 0]
    if neg:
        failures.append(f"n is not effective: coefficient of {labels[neg[0]]} is {n[neg[0]]}")

    supp = sorted(support(n))
    nonorth = [j for j in supp if mp[j] != 0]
    if nonorth:
        j = nonorth[0]
        failures.append(f"p.{labels[j]} = {mp[j]} on the support of n")

    nd = is_negative_definite(space.restrict(supp))
    if not nd:
        failures.append("form is not negative definite on the support of n")

    return VerificationReport(
        reconstruction=reconstruction,
        positive_nef=not bad,
        negative_effective=not neg,
        orthogonal_on_support=not nonorth,
        negative_definite_support=nd,
        positive_effective=is_effective(p),
        failures=tuple(failures),
    )


def _require_effective(space: IntersectionSpace, v) -> QVector:
    v = space.vector(v)
    if not is_effective(v):
        raise NotEffective(f"vector {[str(x) for x in v]} has a negative coefficient")
    return v


def _certified(space, v, p, n) -> ZariskiDecomposition:
    report = verify_decomposition(space, v, p, n)
    assert report.passed, f"decomposition failed verification: {report.failures}"
    return ZariskiDecomposition(p, n)


def positive_part_program(space: IntersectionSpace, v: Sequence) -> LinearProgram:
    """maximize ``sum(x)`` over ``0 <= x <= v`` and ``M x >= 0``."""
    n = space.dimension
    return LinearProgram(
        objective=(Fraction(1),) * n,
        a=space.matrix,
        b=(Fraction(0),) * n,
        lower=(Fraction(0),) * n,
        upper=tuple(v),
    )


def decompose_direct(space: IntersectionSpace, v) -> ZariskiDecomposition:
    """Positive part as the maximizer of ``sum(x)`` over the nef candidates below ``v``."""
    v = _require_effective(space, v)
    result = maximize(positive_part_program(space, v))
    # zero is always feasible and the box is bounded
    assert result.status is LpStatus.OPTIMAL
    p = result.point
    return _certified(space, v, p, sub(v, p))


def _solve_on(space: IntersectionSpace, indices: Sequence[int], rhs: Sequence[Fraction]):
    """Solve the Gram system restricted to ``indices``; ``rhs`` is indexed like them."""
    return solve_linear_system(space.matrix.principal(indices), rhs)


def decompose_zariski(space: IntersectionSpace, v) -> tuple[ZariskiDecomposition, AlgorithmTrace]:
    """Zariski's algorithm, returning the decomposition and every step taken.

    At step k the subspace grows by all basis elements pairing negatively with
    the current remainder; the increment is the unique vector in that
    subspace with the same pairings as the remainder there.
    """
    v = _require_effective(space, v)
    steps = []
    current = v
    spanned: frozenset[int] = frozenset()
    bound = len(support(v))
    while True:
        image = space.image(current)
        negative = {j for j, x in enumerate(image) if x < 0}
        if not negative:
            break
        assert len(steps) < bound, "Zariski loop exceeded the support dimension"
        spanned = spanned | negative
        idx = sorted(spanned)
        coeffs = _solve_on(space, idx, [image[j] for j in idx])
        increment = [Fraction(0)] * space.dimension
        for j, x in zip(idx, coeffs):
            increment[j] = x
        increment = tuple(increment)
        current = sub(current, increment)
        steps.append(TraceStep(spanned, increment, current))
    p = current
    return _certified(space, v, p, sub(v, p)), AlgorithmTrace(tuple(steps))


def candidate_positive_part(space: IntersectionSpace, v: Sequence[Fraction], s: SupportSet) -> QVector:
    """Solve ``x_j = v_j`` off ``s`` and ``(M x)_j = 0`` on ``s``."""
    idx = sorted(s)
    if not idx:
        return tuple(v)
    outside = [j for j in range(space.dimension) if j not in s]
    m = space.matrix
    rhs = [-sum((m[i, j] * v[j] for j in outside), Fraction(0)) for i in idx]
    x = list(v)
    for j, val in zip(idx, _solve_on(space, idx, rhs)):
        x[j] = val
    return tuple(x)


@dataclass(frozen=True)
class OracleResult:
    decomposition: ZariskiDecomposition
    support: SupportSet
    accepted: int
    candidates: int


def decompose_oracle_detailed(
    space: IntersectionSpace, v, cap: int = DEFAULT_ORACLE_CAP
) -> OracleResult:
    """Brute force over every negative definite support inside ``support(v)``.

    A candidate support ``S`` is accepted when the solved ``p`` is nef, ``n``
    is effective and ``support(n)`` is exactly ``S``. Exactly one ``S`` may be
    accepted. Supports with ``support(n)`` strictly inside ``S`` repeat an
    accepted decomposition; they are checked to agree with it.
    """
    v = _require_effective(space, v)
    if space.dimension > cap:
        raise DimensionCapExceeded(f"dimension {space.dimension} exceeds oracle cap {cap}")
    accepted = []
    weak = []
    scanned = 0
    for s in all_subsets(support(v)):
        if s and not is_negative_definite(space.restrict(s)):
            continue
        scanned += 1
        p = candidate_positive_part(space, v, s)
        n = sub(v, p)
        if not (is_nef(space, p) and is_effective(n)):
            continue
        supp = support(n)
        if supp == s:
            accepted.append((s, p, n))
        elif supp <= s:
            weak.append((s, p, n))
    if len(accepted) != 1:
        raise UniquenessViolation(
            f"{len(accepted)} supports accepted: {[sorted(a[0]) for a in accepted]}"
        )
    s, p, n = accepted[0]
    for t, p2, n2 in weak:
        if (p2, n2) != (p, n):
            raise UniquenessViolation(f"support {sorted(t)} yields a second decomposition")
    return OracleResult(_certified(space, v, p, n), s, len(accepted), scanned)


def decompose_oracle(space: IntersectionSpace, v, cap: int = DEFAULT_ORACLE_CAP) -> ZariskiDecomposition:
    return decompose_oracle_detailed(space, v, cap).decomposition


def is_numerically_equivalent(space: IntersectionSpace, v, v2) -> bool:
    return space.image(to_vector(v)) == space.image(to_vector(v2))


def effective_representative(space: IntersectionSpace, w) -> QVector | None:
    """An effective ``y`` numerically equivalent to ``w``; ``w`` itself when effective."""
    w = space.vector(w)
    if is_effective(w):
        return w
    return feasible_point(space.matrix, space.image(w))


def is_quasi_effective(space: IntersectionSpace, w) -> bool:
    """Nonnegative pairing with every nef vector.

    Decided as membership of ``M w`` in the cone generated by the columns of
    ``M``, which is the dual of the nef cone ``{x : M x >= 0}``.
    """
    return effective_representative(space, w) is not None


def decompose_quasi_effective(space: IntersectionSpace, w) -> ZariskiDecomposition:
    w = space.vector(w)
    y = effective_representative(space, w)
    if y is None:
        raise NotQuasiEffective(f"{[str(x) for x in w]} is not numerically equivalent to an effective vector")
    n = decompose_direct(space, y).negative
    p = sub(w, n)
    return _certified(space, w, p, n)


def build_m2k_family(k: int) -> tuple[IntersectionSpace, IntersectionSpace]:
    """The ``P_2k`` pattern matrix and the intersection matrix ``M_2k`` derived from it.

    ``P[i][j]`` (1-based) is 1 when ``max(i, j)`` is odd. ``M`` is obtained by
    adding column 1 minus column 2 to column ``2i`` and then doing the same to
    row ``2i``, for ``i = 2..k``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    size = 2 * k
    p = [[Fraction(int(max(i, j) % 2 == 0)) for j in range(size)] for i in range(size)]
    m = [row[:] for row in p]
    for i in range(2, k + 1):
        c = 2 * i - 1
        for r in range(size):
            m[r][c] += m[r][0] - m[r][1]
        m[c] = [a + b - d for a, b, d in zip(m[c], m[0], m[1])]
    return validate_space(RationalMatrix.from_rows(p)), validate_space(RationalMatrix.from_rows(m))
