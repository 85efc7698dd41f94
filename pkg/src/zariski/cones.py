"""Intersection spaces and the effective / nef vocabulary built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    DimensionMismatch,
    DuplicateLabel,
    NegativeOffDiagonal,
    NotSymmetric,
    SupportNotContained,
)
from .exact_linalg import (
    RationalMatrix,
    RationalVector,
    invert,
    is_negative_definite,
    to_vector,
)

QVector = RationalVector
SupportSet = frozenset

DEFAULT_LATTICE_CAP = 20


@dataclass(frozen=True)
class IntersectionSpace:
    """A finite ordered basis together with its intersection matrix.

    Build instances through :func:`validate_space`, which enforces symmetry,
    nonnegative off-diagonal entries and distinct labels.
    """

    labels: tuple[str, ...]
    matrix: RationalMatrix

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def basis_vector(self, i: int) -> QVector:
        return tuple(Fraction(int(j == i)) for j in range(self.dimension))

    def zero(self) -> QVector:
        return (Fraction(0),) * self.dimension

    def vector(self, values: Iterable) -> QVector:
        v = to_vector(values)
        self._check(v)
        return v

    def image(self, v: Sequence[Fraction]) -> QVector:
        """``M v``: the pairings of ``v`` with each basis element."""
        self._check(v)
        return self.matrix.apply(v)

    def restrict(self, indices: Iterable[int]) -> RationalMatrix:
        return self.matrix.principal(sorted(indices))

    def subspace(self, indices: Iterable[int]) -> IntersectionSpace:
        idx = sorted(indices)
        return IntersectionSpace(tuple(self.labels[i] for i in idx), self.matrix.principal(idx))

    def _check(self, v: Sequence) -> None:
        if len(v) != self.dimension:
            raise DimensionMismatch(
                f"vector of length {len(v)} in a space of dimension {self.dimension}"
            )


def validate_space(matrix, labels: Sequence[str] | None = None) -> IntersectionSpace:
    """Check ``matrix`` is an intersection matrix and wrap it in a space.

    Labels default to ``e1, ..., en``.
    """
    m = matrix if isinstance(matrix, RationalMatrix) else RationalMatrix.from_rows(matrix)
    if not m.is_square():
        raise DimensionMismatch(f"intersection matrix must be square, got {m.shape}")
    n = m.nrows
    if not m.is_symmetric():
        raise NotSymmetric("intersection matrix is not symmetric")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i, j] < 0:
                raise NegativeOffDiagonal(i, j, m[i, j])
    if labels is None:
        labels = [f"e{i + 1}" for i in range(n)]
    labels = tuple(str(s) for s in labels)
    if len(labels) != n:
        raise DimensionMismatch(f"{len(labels)} labels for a {n}x{n} matrix")
    if len(set(labels)) != n:
        raise DuplicateLabel(f"basis labels are not distinct: {labels}")
    return IntersectionSpace(labels, m)


def pairing(space: IntersectionSpace, v: Sequence, w: Sequence) -> Fraction:
    v, w = to_vector(v), to_vector(w)
    space._check(v)
    mw = space.image(w)
    return sum((a * b for a, b in zip(v, mw)), Fraction(0))


def support(v: Sequence) -> SupportSet:
    return frozenset(i for i, x in enumerate(v) if x != 0)


def is_effective(v: Sequence) -> bool:
    return all(x >= 0 for x in v)


def is_nef(space: IntersectionSpace, w: Sequence) -> bool:
    return is_effective(space.image(to_vector(w)))


def is_nef_on_subspace(space: IntersectionSpace, subset: Iterable[int], w: Sequence) -> bool:
    """True if ``w`` pairs nonnegatively with every basis element in ``subset``."""
    subset = frozenset(subset)
    w = to_vector(w)
    if not support(w) <= subset:
        raise SupportNotContained(
            f"support {sorted(support(w))} not inside subset {sorted(subset)}"
        )
    mw = space.image(w)
    return all(mw[j] >= 0 for j in subset)


def max_vectors(v: Sequence, v2: Sequence) -> QVector:
    if len(v) != len(v2):
        raise DimensionMismatch(f"lengths {len(v)} and {len(v2)} differ")
    return tuple(max(a, b) for a, b in zip(to_vector(v), to_vector(v2)))


def add(v: Sequence, w: Sequence) -> QVector:
    if len(v) != len(w):
        raise DimensionMismatch(f"lengths {len(v)} and {len(w)} differ")
    return tuple(a + b for a, b in zip(v, w))


def sub(v: Sequence, w: Sequence) -> QVector:
    if len(v) != len(w):
        raise DimensionMismatch(f"lengths {len(v)} and {len(w)} differ")
    return tuple(a - b for a, b in zip(v, w))


def scale(c, v: Sequence) -> QVector:
    return tuple(c * x for x in v)


def find_effective_nef(space: IntersectionSpace, subset: Iterable[int]) -> QVector | None:
    """Nonzero effective ``q`` in ``subset`` pairing nonnegatively with it.

    Returns None when the form restricted to ``subset`` is negative definite,
    in which case no such vector exists. Otherwise, with the subset taken in
    ascending order, grows the largest leading negative definite block ``B``,
    takes the next column ``a`` above the diagonal and returns
    ``(-B^{-1} a, 1, 0, ..., 0)`` embedded back into the full space.
    """
    idx = sorted(subset)
    restricted = space.matrix.principal(idx)
    if is_negative_definite(restricted):
        return None
    m = 0
    while m < len(idx) and is_negative_definite(restricted.leading(m + 1)):
        m += 1
    # the full block is not negative definite, so m < len(idx)
    head = restricted.leading(m)
    column = tuple(restricted[i, m] for i in range(m))
    head_part = tuple(-x for x in invert(head).apply(column)) if m else ()
    q = [Fraction(0)] * space.dimension
    for i, x in zip(idx, head_part):
        q[i] = x
    q[idx[m]] = Fraction(1)
    return tuple(q)


def negative_definite_sublattice(
    space: IntersectionSpace,
    ceiling: Iterable[int] | None = None,
    cap: int = DEFAULT_LATTICE_CAP,
) -> set[SupportSet]:
    """All nonempty subsets of ``ceiling`` spanning a negative definite subspace.

    Subsets are grown level by level and only extended from negative definite
    ones, since every principal block of a negative definite matrix is again
    negative definite.
    """
    ceiling = sorted(range(space.dimension) if ceiling is None else set(ceiling))
    if any(not 0 <= i < space.dimension for i in ceiling):
        raise IndexError(f"ceiling {ceiling} outside the basis")
    if len(ceiling) > cap:
        raise CapExceeded(f"ceiling of size {len(ceiling)} exceeds the cap of {cap}")
    found: set[SupportSet] = set()
    level = {frozenset([i]) for i in ceiling if space.matrix[i, i] < 0}
    while level:
        found |= level
        nxt = set()
        for s in level:
            for i in ceiling:
                if i in s:
                    continue
                t = s | {i}
                if t in nxt or t in found:
                    continue
                if all(t - {j} in found for j in t) and is_negative_definite(space.restrict(t)):
                    nxt.add(t)
        level = nxt
    return found


def sorted_subsets(subsets: Iterable[SupportSet]) -> list[tuple[int, ...]]:
    """Order subsets by size, then lexicographically by basis index."""
    return sorted((tuple(sorted(s)) for s in subsets), key=lambda t: (len(t), t))


def all_subsets(indices: Iterable[int]):
    """Every subset of ``indices`` in size-then-lexicographic order."""
    idx = sorted(indices)
    for k in range(len(idx) + 1):
        for c in combinations(idx, k):
            yield frozenset(c)
