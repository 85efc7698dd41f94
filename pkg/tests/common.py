"""Spaces from the worked examples and random instance generators."""

import random
from fractions import Fraction

from zariski.cones import validate_space

EX31 = [[-2, 1], [1, 1]]
FOUR = [[-2, 0, 1, 1], [0, -2, 1, 2], [1, 1, -2, 0], [1, 2, 0, -2]]
FIVE = [
    [-2, 1, 1, 1, 1],
    [1, -1, 0, 0, 0],
    [1, 0, -1, 0, 0],
    [1, 0, 0, -1, 0],
    [1, 0, 0, 0, 1],
]
M6 = [
    [1, 0, 1, 1, 1, 1],
    [0, 0, 1, 0, 1, 0],
    [1, 1, 1, 0, 1, 0],
    [1, 0, 0, 1, 1, 1],
    [1, 1, 1, 1, 1, 0],
    [1, 0, 0, 1, 0, 1],
]
P6 = [
    [1, 0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1, 0],
    [1, 1, 1, 0, 1, 0],
    [0, 0, 0, 0, 1, 0],
    [1, 1, 1, 1, 1, 0],
    [0, 0, 0, 0, 0, 0],
]


def ex31_space():
    return validate_space(EX31)


def four_space():
    return validate_space(FOUR, ["1", "2", "3", "4"])


def five_space():
    return validate_space(FIVE)


def vec(*xs):
    return tuple(Fraction(x) for x in xs)


def random_rational(rng, lo, hi, dens=(1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def random_space(rng, n, p_zero=0.4):
    """Numerators in [-5, 5] on the diagonal, [0, 5] off it; denominators in {1, 2, 3}."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = random_rational(rng, -5, 5)
        for j in range(i + 1, n):
            x = Fraction(0) if rng.random() < p_zero else random_rational(rng, 0, 5)
            m[i][j] = m[j][i] = x
    return validate_space(m)


def random_effective(rng, n, p_zero=0.2):
    return tuple(Fraction(0) if rng.random() < p_zero else random_rational(rng, 0, 5) for _ in range(n))


def random_instances(seed, count, dims=range(2, 9)):
    rng = random.Random(seed)
    dims = list(dims)
    for _ in range(count):
        n = rng.choice(dims)
        yield random_space(rng, n), random_effective(rng, n)
