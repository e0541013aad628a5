"""
Acceptance suite. Each test checks one criterion at its stated tolerance and
prints a single ``[PASS]``/``[FAIL]`` line. Run on its own with

    python tests/test_acceptance.py
"""

import io
import json
import random
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import (  # noqa: E402
    EXAMPLE1_A,
    EXAMPLE1_MEASURE,
    EXAMPLE2_A,
    EXAMPLE2_MEASURE,
    exact_state,
)
from zdwalk.cli import main  # noqa: E402
from zdwalk.coin import grover, watabe  # noqa: E402
from zdwalk.evolution import evolve_trace, step  # noqa: E402
from zdwalk.laurent import (  # noqa: E402
    eigen_residuals,
    grover_eigenfunction,
    symbolic_fixed_point_check,
    watabe_eigenfunction,
)
from zdwalk.lattice import FiniteState, WeightSequence  # noqa: E402
from zdwalk.scalar import FLOAT, GaussianRational  # noqa: E402
from zdwalk.stationary import ball_support, grover_atom, inverse_fourier, superpose  # noqa: E402


@pytest.fixture
def report(capsys):
    def _report(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return _report


def cli_json(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, json.loads(buf.getvalue())


def cli_measure(argv):
    t0 = time.perf_counter()
    code, out = cli_json(argv)
    elapsed = time.perf_counter() - t0
    m = {tuple(e["x"]): Fraction(e["value"]) for e in out["measure"]["entries"]}
    return code, m, elapsed


def test_criterion_1_example1_measure(report):
    code, m, elapsed = cli_measure(["stationary", "--dim", "2", "--coin", "grover", "--normalize"])
    ok = code == 0 and m == EXAMPLE1_MEASURE and sum(m.values()) == 1 and elapsed < 1.0
    report("1 Z^2 Grover measure", ok, f"9 points, sum={sum(m.values())}, {elapsed:.3f}s")


def test_criterion_2_example2_measure(report):
    code, m, elapsed = cli_measure(["stationary", "--dim", "3", "--coin", "grover", "--normalize"])
    ok = code == 0 and m == EXAMPLE2_MEASURE and sum(m.values()) == 1 and elapsed < 1.0
    report("2 Z^3 Grover measure", ok, f"27 points, sum={sum(m.values())}, {elapsed:.3f}s")


def test_criterion_3_a_tables(report):
    ok2 = inverse_fourier(grover_eigenfunction(2)).as_state() == exact_state(2, EXAMPLE1_A)
    ok3 = inverse_fourier(grover_eigenfunction(3)).as_state() == exact_state(3, EXAMPLE2_A)
    report("3 a-tables", ok2 and ok3, f"d=2 (9 vectors) {ok2}, d=3 (27 vectors) {ok3}")


def random_weights(rng, d):
    n = rng.randint(1, 5)
    w = {}
    while not any(w.values()):
        w = {
            tuple(rng.randint(-3, 3) for _ in range(d)): GaussianRational(
                Fraction(rng.randint(-6, 6), rng.randint(1, 6)),
                Fraction(rng.randint(-6, 6), rng.randint(1, 6)),
            )
            for _ in range(n)
        }
    return WeightSequence(d, w)


def test_criterion_4_superposition_fixed_point(report):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    failures = 0
    checks = 0
    for d in (1, 2, 3, 4):
        atom, c = grover_atom(d), grover(d)
        for _ in range(50):
            s = superpose(atom, random_weights(rng, d))
            cur = s
            for _n in range(10):
                cur = step(cur, c)
                checks += 1
                failures += cur != s
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 30.0
    report("4 superposition fixed point", ok, f"{checks} exact comparisons, {failures} mismatches, {elapsed:.2f}s")


def test_criterion_5_grover_eigen_residuals(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    worst = {}
    for d in range(1, 7):
        ks = rng.uniform(-np.pi, np.pi, size=(200, d))
        worst[d] = float(eigen_residuals(grover(d), grover_eigenfunction(d), ks).max())
    symbolic = all(symbolic_fixed_point_check(grover(d), grover_eigenfunction(d)) for d in range(1, 5))
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) <= 1e-12 and symbolic and elapsed < 10.0
    report("5 Grover eigenfunction", ok,
           f"max residual {max(worst.values()):.2e} (d=1..6), symbolic d=1..4 {symbolic}, {elapsed:.2f}s")


def test_criterion_6_watabe_family(report):
    rng = np.random.default_rng(6)
    worst = 0.0
    for p in (0.1, 0.3, 0.5, 0.7, 0.9):
        ks = rng.uniform(-np.pi, np.pi, size=(200, 2))
        worst = max(worst, float(eigen_residuals(watabe(p), watabe_eigenfunction(p), ks).max()))
    gap = float(np.max(np.abs(watabe(0.5).to_array() - grover(2, FLOAT).to_array())))
    ok = worst <= 1e-12 and gap <= 1e-15
    report("6 Watabe family", ok, f"max residual {worst:.2e}, |watabe(0.5)-grover(2)| {gap:.1e}")


def random_float_state(rng, d, npoints=6):
    coords = {tuple(int(c) for c in rng.integers(-3, 4, size=d)) for _ in range(npoints)}
    entries = {x: rng.normal(size=2 * d) + 1j * rng.normal(size=2 * d) for x in coords}
    norm = np.sqrt(sum(float(np.sum(np.abs(v) ** 2)) for v in entries.values()))
    return FiniteState(d, {x: v / norm for x, v in entries.items()}, FLOAT)


def random_exact_unit_state(rng, d):
    # a coin-direction basis vector at a random point, plus a Pythagorean pair
    x = tuple(rng.randint(-2, 2) for _ in range(d))
    v = [0] * (2 * d)
    v[0], v[-1] = Fraction(3, 5), GaussianRational(0, Fraction(4, 5))
    return FiniteState(d, {x: v})


# exact step counts are limited by rational growth (denominators double each step)
EXACT_STEPS = {1: 100, 2: 25, 3: 12}


def test_criterion_7_conservation(report):
    rng = np.random.default_rng(7)
    drift = {}
    for d in (2, 3):
        s = random_float_state(rng, d)
        _, masses = evolve_trace(s, grover(d, FLOAT), 100)
        drift[d] = max(abs(m - masses[0]) / masses[0] for m in masses)
    prng = random.Random(7)
    exact_ok = True
    for d, n in EXACT_STEPS.items():
        _, masses = evolve_trace(random_exact_unit_state(prng, d), grover(d), n)
        exact_ok &= all(m == 1 for m in masses)
    ok = max(drift.values()) <= 1e-12 and exact_ok
    detail = ", ".join(f"d={d} drift {v:.1e}" for d, v in drift.items())
    steps = ", ".join(f"d={d} {n} steps" for d, n in EXACT_STEPS.items())
    report("7 mass conservation", ok, f"float 100 steps: {detail}; exact mass == 1 ({steps}) {exact_ok}")


def test_criterion_8_support(report):
    rng = random.Random(8)
    bad = 0
    for d in range(1, 5):
        atom = grover_atom(d)
        for _ in range(10):
            u = tuple(rng.randint(-20, 20) for _ in range(d))
            s = superpose(atom, WeightSequence(d, {u: 1}))
            bad += not (s.support == ball_support(u) and len(s) == 3**d)
    report("8 support is the 3^d ball", bad == 0, f"40 translates (d=1..4), {bad} mismatches")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
