import random
from fractions import Fraction

import pytest
from common import EX31, ex31_space, four_space, random_space, vec
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.cones import (
    all_subsets,
    find_effective_nef,
    is_effective,
    is_nef,
    is_nef_on_subspace,
    max_vectors,
    negative_definite_sublattice,
    pairing,
    sorted_subsets,
    support,
    validate_space,
)
from zariski.errors import (
    CapExceeded,
    DimensionMismatch,
    DuplicateLabel,
    NegativeOffDiagonal,
    NotSymmetric,
    SupportNotContained,
)
from zariski.exact_linalg import is_negative_definite, solve_linear_system
from zariski.exact_lp import LinearProgram, LpStatus, maximize

F = Fraction


def test_validate_space():
    s = validate_space(EX31)
    assert s.labels == ("e1", "e2") and s.dimension == 2
    with pytest.raises(NegativeOffDiagonal) as info:
        validate_space([[-2, -1], [-1, 1]])
    assert (info.value.i, info.value.j) == (0, 1)
    with pytest.raises(NotSymmetric):
        validate_space([[0, 1], [2, 0]])
    with pytest.raises(DuplicateLabel):
        validate_space(EX31, ["a", "a"])
    with pytest.raises(DimensionMismatch):
        validate_space([[1, 2, 3]])


def test_pairing_examples():
    s = ex31_space()
    assert pairing(s, (2, 1), (2, 1)) == -3
    assert pairing(s, (0, 0), (5, 7)) == 0
    cubic = validate_space([[4, 2], [2, 1]])
    assert pairing(cubic, (1, 1), (1, 1)) == 9
    with pytest.raises(DimensionMismatch):
        pairing(s, (1,), (1, 1))


def test_support():
    assert support(vec(2, 1)) == {0, 1}
    assert support(vec("3/2", 0)) == {0}
    assert support(vec(0, 0, 0, 0)) == frozenset()


def test_is_effective():
    assert is_effective(vec(2, 1))
    assert is_effective(vec(0, 0))
    assert not is_effective(vec(-1, 0))


def test_is_nef_examples():
    s = ex31_space()
    assert not is_nef(s, vec(-1, 0))
    assert is_nef(s, vec("1/2", 1))
    assert s.image(vec("1/2", 1)) == vec(0, "3/2")
    assert is_nef(s, vec(0, 0))
    assert is_nef(four_space(), vec(6, 4, 5, 7))
    with pytest.raises(DimensionMismatch):
        is_nef(s, vec(1))


def test_nef_on_subspace_examples():
    s = ex31_space()
    assert is_nef_on_subspace(s, {0}, vec(-1, 0))
    assert not is_nef_on_subspace(s, {0, 1}, vec(-1, 0))
    assert is_nef_on_subspace(s, set(), vec(0, 0))
    with pytest.raises(SupportNotContained):
        is_nef_on_subspace(s, {1}, vec(-1, 0))


def test_max_vectors():
    assert max_vectors(vec(1, 0), vec(0, 1)) == vec(1, 1)
    v = vec("1/2", 1)
    assert max_vectors(v, v) == v
    with pytest.raises(DimensionMismatch):
        max_vectors(vec(1), vec(1, 2))


def test_find_effective_nef_examples():
    s = ex31_space()
    q = find_effective_nef(s, {0, 1})
    assert q == vec("1/2", 1)
    assert s.image(q) == vec(0, "3/2")
    assert find_effective_nef(s, {0}) is None
    assert find_effective_nef(validate_space([[1]]), {0}) == vec(1)


def test_find_effective_nef_respects_subset_order():
    # subset {1, 2} of a 3-space: largest leading ND block is [[-3]], next column [2]
    s = validate_space([[5, 0, 0], [0, -3, 2], [0, 2, 1]])
    assert find_effective_nef(s, {1, 2}) == vec(0, "2/3", 1)


def test_sublattice_four_space():
    found = negative_definite_sublattice(four_space())
    labels = {"".join(str(i + 1) for i in s) for s in sorted_subsets(found)}
    assert labels == {"1", "2", "3", "4", "12", "13", "14", "23", "34", "123", "134"}


def test_sublattice_small_cases():
    assert negative_definite_sublattice(ex31_space()) == {frozenset({0})}
    assert negative_definite_sublattice(ex31_space(), []) == set()
    assert negative_definite_sublattice(validate_space([[1]])) == set()


def test_sublattice_ceiling_and_cap():
    found = negative_definite_sublattice(four_space(), {0, 3})
    assert found == {frozenset({0}), frozenset({3}), frozenset({0, 3})}
    big = validate_space([[-2 if i == j else 0 for j in range(21)] for i in range(21)])
    with pytest.raises(CapExceeded):
        negative_definite_sublattice(big)
    assert len(negative_definite_sublattice(big, range(10), cap=10)) == 2**10 - 1


def test_sublattice_matches_brute_force_and_is_downward_closed():
    rng = random.Random(7)
    for _ in range(60):
        s = random_space(rng, rng.randint(1, 6))
        found = negative_definite_sublattice(s)
        brute = {t for t in all_subsets(range(s.dimension)) if t and is_negative_definite(s.restrict(t))}
        assert found == brute
        for t in found:
            for u in all_subsets(t):
                assert not u or u in found


def _corpus():
    rng = random.Random(2024)
    spaces = [ex31_space(), four_space(), validate_space([[1]]), validate_space([[0]])]
    for n in range(1, 6):
        for _ in range(40):
            spaces.append(random_space(rng, n))
    return spaces


def test_effective_nef_exists_iff_not_negative_definite():
    for s in _corpus():
        for t in all_subsets(range(s.dimension)):
            q = find_effective_nef(s, t)
            nd = is_negative_definite(s.restrict(t))
            assert (q is None) == nd
            if q is not None:
                assert any(q) and is_effective(q) and support(q) <= t
                image = s.image(q)
                assert all(image[j] >= 0 for j in t)
                # effective and nef on its support, hence nef on the whole space
                assert is_nef(s, q)


def _nef_vectors(rng, s, count):
    """Nef vectors via M w = r with r effective, or an LP when M is singular."""
    out = []
    n = s.dimension
    for _ in range(count):
        r = [F(rng.randint(0, 4), rng.choice([1, 2])) for _ in range(n)]
        try:
            out.append(solve_linear_system(s.matrix, r))
            continue
        except ArithmeticError:
            pass
        lp = LinearProgram.build(
            [rng.randint(-3, 3) for _ in range(n)], s.matrix.rows, r, [-10] * n, [10] * n
        )
        res = maximize(lp)
        if res.status is LpStatus.OPTIMAL:
            out.append(res.point)
    return out


def test_max_of_nef_vectors_is_nef():
    rng = random.Random(11)
    checked = 0
    for _ in range(80):
        s = random_space(rng, rng.randint(2, 5))
        nefs = _nef_vectors(rng, s, 6)
        for p in nefs:
            assert is_nef(s, p)
        for p in nefs:
            for q in nefs:
                assert is_nef(s, max_vectors(p, q))
                checked += 1
    assert checked > 500


rationals = st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 2, 3]))


@given(st.lists(rationals, min_size=2, max_size=2), st.lists(rationals, min_size=2, max_size=2))
@settings(max_examples=200, deadline=None)
def test_nef_cone_closure_and_converse_direction(w, u):
    s = ex31_space()
    if is_nef(s, w) and is_nef(s, u):
        assert is_nef(s, [a + b for a, b in zip(w, u)])
        assert is_nef(s, [F(5, 2) * a for a in w])
    if is_nef(s, w):
        assert is_nef_on_subspace(s, {0, 1}, w)
        assert is_nef_on_subspace(s, support(w) | {0}, w)
    if is_effective(w) and is_nef_on_subspace(s, support(w), w):
        assert is_nef(s, w)


@given(st.lists(rationals, min_size=4, max_size=4), st.sets(st.integers(0, 3)))
@settings(max_examples=200, deadline=None)
def test_effective_and_nef_on_support_is_nef_four_space(w, extra):
    s = four_space()
    w = [abs(x) for x in w]
    t = support(w) | frozenset(extra)
    if is_nef_on_subspace(s, t, w):
        assert is_nef(s, w)
