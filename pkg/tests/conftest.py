from fractions import Fraction

import pytest

from zdwalk.lattice import FiniteState
from zdwalk.scalar import GaussianRational

# Amplitude vectors a_c transcribed from the worked examples.
# Z^2 table at p = q = 1/2, so sqrt(pq)/q = 1.
EXAMPLE1_A = {
    (0, 0): (2, 2, 2, 2),
    (0, 1): (1, 1, 0, 2),
    (1, 0): (0, 2, 1, 1),
    (0, -1): (1, 1, 2, 0),
    (-1, 0): (2, 0, 1, 1),
    (1, 1): (0, 1, 0, 1),
    (1, -1): (0, 1, 1, 0),
    (-1, -1): (1, 0, 1, 0),
    (-1, 1): (1, 0, 0, 1),
}


def example1_a_general(r):
    """Z^2 table for general p; ``r = sqrt(pq)/q`` multiplies components 3 and 4."""
    return {c: (v[0], v[1], v[2] * r, v[3] * r) for c, v in EXAMPLE1_A.items()}


EXAMPLE2_A = {
    (0, 0, 0): (4, 4, 4, 4, 4, 4),
    (0, 1, 0): (2, 2, 0, 4, 2, 2),
    (1, 0, 0): (0, 4, 2, 2, 2, 2),
    (0, -1, 0): (2, 2, 4, 0, 2, 2),
    (-1, 0, 0): (4, 0, 2, 2, 2, 2),
    (1, 1, 0): (0, 2, 0, 2, 1, 1),
    (1, -1, 0): (0, 2, 2, 0, 1, 1),
    (-1, -1, 0): (2, 0, 2, 0, 1, 1),
    (-1, 1, 0): (2, 0, 0, 2, 1, 1),
    (0, 0, -1): (2, 2, 2, 2, 4, 0),
    (0, 1, -1): (1, 1, 0, 2, 2, 0),
    (1, 0, -1): (0, 2, 1, 1, 2, 0),
    (0, -1, -1): (1, 1, 2, 0, 2, 0),
    (-1, 0, -1): (2, 0, 1, 1, 2, 0),
    (1, 1, -1): (0, 1, 0, 1, 1, 0),
    (1, -1, -1): (0, 1, 1, 0, 1, 0),
    (-1, -1, -1): (1, 0, 1, 0, 1, 0),
    (-1, 1, -1): (1, 0, 0, 1, 1, 0),
    (0, 0, 1): (2, 2, 2, 2, 0, 4),
    (0, 1, 1): (1, 1, 0, 2, 0, 2),
    (1, 0, 1): (0, 2, 1, 1, 0, 2),
    (0, -1, 1): (1, 1, 2, 0, 0, 2),
    (-1, 0, 1): (2, 0, 1, 1, 0, 2),
    (1, 1, 1): (0, 1, 0, 1, 0, 1),
    (1, -1, 1): (0, 1, 1, 0, 0, 1),
    (-1, -1, 1): (1, 0, 1, 0, 0, 1),
    (-1, 1, 1): (1, 0, 0, 1, 0, 1),
}

# normalized stationary measures of the single atom at the origin
EXAMPLE1_MEASURE = {
    (0, 0): Fraction(1, 3),
    **{x: Fraction(1, 8) for x in [(0, 1), (0, -1), (1, 0), (-1, 0)]},
    **{x: Fraction(1, 24) for x in [(1, 1), (1, -1), (-1, 1), (-1, -1)]},
}


def _example2_measure():
    out = {}
    for x in EXAMPLE2_A:
        nz = sum(1 for c in x if c)
        out[x] = {0: Fraction(2, 9), 1: Fraction(2, 27), 2: Fraction(5, 216), 3: Fraction(1, 144)}[nz]
    return out


EXAMPLE2_MEASURE = _example2_measure()


def exact_state(d, table) -> FiniteState:
    return FiniteState(d, {x: [GaussianRational(a) for a in v] for x, v in table.items()})


@pytest.fixture
def z2_fixture() -> FiniteState:
    return exact_state(2, EXAMPLE1_A)


@pytest.fixture
def z3_fixture() -> FiniteState:
    return exact_state(3, EXAMPLE2_A)


def random_gaussian_rational(rng, max_num=5, max_den=4) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)),
        Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)),
    )


def random_exact_state(rng, d, npoints=4, radius=2) -> FiniteState:
    entries = {}
    for _ in range(npoints):
        x = tuple(rng.randint(-radius, radius) for _ in range(d))
        entries[x] = [random_gaussian_rational(rng) for _ in range(2 * d)]
    return FiniteState(d, entries)
