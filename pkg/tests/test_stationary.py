import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import (
    EXAMPLE1_MEASURE,
    EXAMPLE2_MEASURE,
    example1_a_general,
)
from zdwalk.coin import custom, grover, watabe
from zdwalk.evolution import evolve, fixed_point_residual, fixed_point_residual_squared
from zdwalk.laurent import eval_at, grover_eigenfunction, watabe_eigenfunction
from zdwalk.lattice import FiniteState, WeightSequence, measure_of, total_mass
from zdwalk.scalar import FLOAT, BackendError, GaussianRational
from zdwalk.stationary import (
    StationaryAtom,
    atom_to_state,
    ball_support,
    closed_form,
    coin_for,
    grover_atom,
    inverse_fourier,
    stationary_measure,
    superpose,
    watabe_atom,
)


def as_complex_table(atom):
    return {x: tuple(complex(z) for z in v) for x, v in atom.a.items()}


def quadrature_atom(v, d, n=8):
    """Fourier coefficients of ``v`` by an ``n^d`` point rectangle rule.

    The rule integrates trigonometric polynomials of degree below ``n``
    exactly, so for symbols of degree 1 per variable the result is exact up
    to rounding.
    """
    grid = 2 * np.pi * np.arange(n) / n
    ks = np.array(list(itertools.product(grid, repeat=d)))
    vals = np.array([eval_at(v, k) for k in ks])
    out = {}
    for x in itertools.product(range(-2, 3), repeat=d):
        phase = np.exp(1j * (ks @ np.array(x)))
        coeff = (phase[:, None] * vals).sum(axis=0) / len(ks)
        if np.max(np.abs(coeff)) > 1e-12:
            out[x] = coeff
    return out


def test_ball_support_sizes():
    assert ball_support((0,)) == {(-1,), (0,), (1,)}
    for d in range(1, 5):
        u = tuple(range(d))
        b = ball_support(u)
        assert len(b) == 3**d
        assert all(sum((a - c) ** 2 for a, c in zip(x, u)) <= d for x in b)


def euclidean_ball(d):
    return {x for x in itertools.product(range(-2, 3), repeat=d) if sum(c * c for c in x) <= d}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_ball_support_is_euclidean_ball_in_low_dimension(d):
    assert euclidean_ball(d) == ball_support((0,) * d)


def test_euclidean_ball_grows_past_cube_in_d4():
    extra = euclidean_ball(4) - ball_support((0,) * 4)
    assert len(extra) == 8
    assert all(sorted(map(abs, x)) == [0, 0, 0, 2] for x in extra)


def test_ball_support_rejects_empty():
    with pytest.raises(ValueError):
        ball_support(())


def test_grover_atom_z2_matches_table(z2_fixture):
    assert grover_atom(2).as_state() == z2_fixture


def test_grover_atom_z3_matches_table(z3_fixture):
    assert grover_atom(3).as_state() == z3_fixture


@pytest.mark.parametrize("d", [1, 2, 3])
def test_inverse_fourier_agrees_with_quadrature(d):
    v = grover_eigenfunction(d)
    got = as_complex_table(inverse_fourier(v))
    ref = quadrature_atom(v, d)
    assert set(got) == set(ref)
    for x in ref:
        np.testing.assert_allclose(got[x], ref[x], atol=1e-12)


def test_inverse_fourier_watabe_agrees_with_quadrature():
    v = watabe_eigenfunction(0.3)
    got = as_complex_table(inverse_fourier(v))
    ref = quadrature_atom(v, 2)
    assert set(got) == set(ref)
    for x in ref:
        np.testing.assert_allclose(got[x], ref[x], atol=1e-12)


def test_watabe_atom_general_p_matches_table():
    p = Fraction(1, 5)
    r = Fraction(1, 2)  # sqrt(pq)/q with pq = 4/25, q = 4/5
    got = watabe_atom(p)
    table = example1_a_general(r)
    assert got.as_state() == FiniteState(2, {x: [GaussianRational(a) for a in v] for x, v in table.items()})


def test_watabe_atom_float_matches_table():
    p = 0.7
    r = math.sqrt(p * (1 - p)) / (1 - p)
    got = as_complex_table(watabe_atom(p))
    for x, v in example1_a_general(r).items():
        np.testing.assert_allclose(got.get(x, (0,) * 4), v, atol=1e-15)


def test_atom_support_is_ball():
    for d in range(1, 5):
        assert grover_atom(d).as_state().support == ball_support((0,) * d)


def test_atom_rejects_far_keys():
    with pytest.raises(ValueError):
        StationaryAtom(1, {(2,): [1, 0]})


def test_atom_to_state_translation(z2_fixture):
    moved = atom_to_state(grover_atom(2), (3, -1))
    assert moved.support == ball_support((3, -1))
    assert moved.get((3, -1)) == z2_fixture.get((0, 0))
    assert moved.get((4, 0)) == z2_fixture.get((1, 1))


def test_single_atom_measures():
    m1 = stationary_measure(grover_atom(2), WeightSequence(2, {(0, 0): 1}), normalize=True)
    assert dict(m1.items()) == EXAMPLE1_MEASURE
    m2 = stationary_measure(grover_atom(3), WeightSequence(3, {(0, 0, 0): 1}), normalize=True)
    assert dict(m2.items()) == EXAMPLE2_MEASURE


def test_unnormalized_masses():
    assert total_mass(measure_of(grover_atom(2).as_state())) == 48
    assert total_mass(measure_of(grover_atom(3).as_state())) == 432


def test_float_weight_normalizes_origin():
    w = WeightSequence(2, {(0, 0): 1 / math.sqrt(48)}, FLOAT)
    m = stationary_measure(grover_atom(2, FLOAT), w)
    assert m.get((0, 0)) == pytest.approx(1 / 3, abs=1e-15)
    assert total_mass(m) == pytest.approx(1.0, abs=1e-14)


def test_superpose_cancellation_in_d1():
    atom = grover_atom(1)
    s = superpose(atom, WeightSequence(1, {(0,): 1, (2,): -1}))
    # the shared point (1,) loses one component and keeps the other
    assert s.get((1,)) == (GaussianRational(-1), GaussianRational(1))
    assert fixed_point_residual_squared(s, grover(1)) == 0


def test_superpose_telescoping_in_d1():
    atom = grover_atom(1)
    w = WeightSequence(1, {(u,): 1 for u in range(-3, 4)})
    s = superpose(atom, w)
    # interior points carry (2, 2); each cell gets a from three neighbours
    assert s.get((0,)) == (GaussianRational(2), GaussianRational(2))
    assert fixed_point_residual_squared(s, grover(1)) == 0


def test_superpose_random_weights_stationary():
    rng = random.Random(11)
    for d in (1, 2, 3):
        atom = grover_atom(d)
        for _ in range(5):
            w = {
                tuple(rng.randint(-2, 2) for _ in range(d)):
                GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Fraction(rng.randint(-4, 4), 5))
                for _ in range(4)
            }
            if not any(w.values()):
                continue
            s = superpose(atom, WeightSequence(d, w))
            assert fixed_point_residual_squared(s, grover(d)) == 0


def test_superpose_errors():
    with pytest.raises(ValueError):
        superpose(grover_atom(2), WeightSequence(3, {(0, 0, 0): 1}))
    with pytest.raises(BackendError):
        superpose(grover_atom(2), WeightSequence(2, {(0, 0): 1.0}, FLOAT))


def test_normalize_zero_mass_raises():
    s = superpose(grover_atom(1), WeightSequence(1, {(0,): 1}))
    assert len(s)
    # a weight sequence of all zeros is rejected up front
    with pytest.raises(ValueError):
        WeightSequence(1, {(0,): 0})


def test_measure_is_invariant_under_evolution():
    atom = grover_atom(2)
    w = WeightSequence(2, {(0, 0): 1, (2, 1): Fraction(-1, 2)})
    s = superpose(atom, w)
    for n in (1, 4, 9):
        assert measure_of(evolve(s, grover(2), n)) == measure_of(s)


def test_watabe_superposition_float_residual():
    p = 0.35
    s = superpose(watabe_atom(p), WeightSequence(2, {(0, 0): 1.0, (1, 2): -0.5j}, FLOAT))
    assert fixed_point_residual(s, watabe(p)) <= 1e-14


def test_closed_form_and_coin_for():
    assert closed_form(grover(3)) == grover_eigenfunction(3)
    assert closed_form(custom([[0, 1], [1, 0]])) is None
    with pytest.raises(ValueError):
        coin_for("watabe", 3, "exact", Fraction(1, 2))
    with pytest.raises(ValueError):
        coin_for("watabe", 2, "exact")
    with pytest.raises(ValueError):
        coin_for("hadamard", 2, "exact")
