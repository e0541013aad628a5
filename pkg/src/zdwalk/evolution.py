"""
Time evolution of finitely supported states under a coined walk on Z^d.

One step is

    psi'(x) = sum_i  P_{2i-1} A psi(x + e_i)  +  P_{2i} A psi(x - e_i),

i.e. output component ``2i-1`` at ``x`` is component ``2i-1`` of the coin
applied at ``x + e_i``, and output component ``2i`` is component ``2i`` of
the coin applied at ``x - e_i``. Every output component has exactly one
source, so a step is a coin multiplication per support point followed by a
gather.

Two kernels are provided. The exact kernel works on integer numerators over
a common denominator per point (no rounding). The float kernel keeps the
state as coordinate/amplitude arrays for the whole run, which keeps long
evolutions of spreading states tractable.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from zdwalk.coin import Coin
from zdwalk.lattice import FiniteState, squared_norm, state_axpy
from zdwalk.scalar import EXACT, FLOAT, BackendError, GaussianRational

__all__ = [
    "step",
    "evolve",
    "evolve_trace",
    "fixed_point_residual",
    "fixed_point_residual_squared",
]


def _check(s: FiniteState, c: Coin) -> None:
    if s.d != c.d:
        raise ValueError(f"dimension mismatch: state d={s.d}, coin d={c.d}")
    if s.backend != c.backend:
        raise BackendError(f"backend mismatch: state {s.backend}, coin {c.backend}")


# --- exact kernel ----------------------------------------------------------


class _IntegerCoin:
    """Coin as integer Gaussian numerators over one common denominator."""

    def __init__(self, c: Coin):
        dens = [z.re.denominator for r in c.entries for z in r]
        dens += [z.im.denominator for r in c.entries for z in r]
        L = math.lcm(*dens)
        self.den = L
        self.re = [[int(z.re * L) for z in r] for r in c.entries]
        self.im = [[int(z.im * L) for z in r] for r in c.entries]
        self.real = not any(x for r in self.im for x in r)

    def apply(self, v) -> list:
        """Coin times ``v`` as a list of GaussianRational."""
        den = math.lcm(*(z.re.denominator for z in v), *(z.im.denominator for z in v))
        vr = [z.re.numerator * (den // z.re.denominator) for z in v]
        vi = [z.im.numerator * (den // z.im.denominator) for z in v]
        total = den * self.den
        out = []
        if self.real:
            for row in self.re:
                a = sum(x * y for x, y in zip(row, vr))
                b = sum(x * y for x, y in zip(row, vi))
                out.append(GaussianRational._raw(Fraction(a, total), Fraction(b, total)))
        else:
            for row_r, row_i in zip(self.re, self.im):
                a = sum(x * y for x, y in zip(row_r, vr)) - sum(x * y for x, y in zip(row_i, vi))
                b = sum(x * y for x, y in zip(row_r, vi)) + sum(x * y for x, y in zip(row_i, vr))
                out.append(GaussianRational._raw(Fraction(a, total), Fraction(b, total)))
        return out


def _step_exact(s: FiniteState, ic: _IntegerCoin) -> FiniteState:
    d = s.d
    D = 2 * d
    zero = GaussianRational(0)
    out: dict = {}
    for y, v in s._entries.items():
        w = ic.apply(v)
        for i in range(d):
            down, up = w[2 * i], w[2 * i + 1]
            if down:
                x = y[:i] + (y[i] - 1,) + y[i + 1:]
                slot = out.get(x)
                if slot is None:
                    slot = out[x] = [zero] * D
                slot[2 * i] = down
            if up:
                x = y[:i] + (y[i] + 1,) + y[i + 1:]
                slot = out.get(x)
                if slot is None:
                    slot = out[x] = [zero] * D
                slot[2 * i + 1] = up
    # slots are only created for nonzero components, so nothing to prune
    return FiniteState._trusted(d, EXACT, {x: tuple(v) for x, v in out.items()})


# --- float kernel ----------------------------------------------------------

# dense index tables above this many cells fall back to sorting
_DENSE_INDEX_LIMIT = 64_000_000


def _to_arrays(s: FiniteState):
    if not len(s):
        return np.zeros((0, s.d), dtype=np.int64), np.zeros((0, 2 * s.d), dtype=np.complex128)
    items = s.items()
    coords = np.array([p for p, _ in items], dtype=np.int64)
    amps = np.array([v for _, v in items], dtype=np.complex128)
    return coords, amps


def _from_arrays(d: int, coords: np.ndarray, amps: np.ndarray) -> FiniteState:
    store = dict(zip(map(tuple, coords.tolist()), map(tuple, amps.tolist())))
    return FiniteState._trusted(d, FLOAT, store)


def _step_arrays(coords: np.ndarray, amps: np.ndarray, A: np.ndarray):
    n, d = coords.shape
    D = 2 * d
    if n == 0:
        return coords, amps
    moved = amps @ A.T
    lo = coords.min(axis=0) - 1
    span = coords.max(axis=0) + 2 - lo
    strides = np.ones(d, dtype=np.int64)
    for k in range(d - 2, -1, -1):
        strides[k] = strides[k + 1] * span[k + 1]
    base = (coords - lo) @ strides
    keys = np.empty((D, n), dtype=np.int64)
    for i in range(d):
        keys[2 * i] = base - strides[i]
        keys[2 * i + 1] = base + strides[i]
    volume = int(np.prod(span))
    if volume <= _DENSE_INDEX_LIMIT:
        table = np.zeros(volume, dtype=bool)
        table[keys.ravel()] = True
        new_keys = np.flatnonzero(table)
        lookup = np.empty(volume, dtype=np.int32 if new_keys.size < 2**31 else np.int64)
        lookup[new_keys] = np.arange(new_keys.size)
        rows = lookup[keys]
    else:
        new_keys, inv = np.unique(keys.ravel(), return_inverse=True)
        rows = inv.reshape(D, n)
    out = np.zeros((new_keys.size, D), dtype=np.complex128)
    for j in range(D):
        out[rows[j], j] = moved[:, j]
    keep = np.any(out != 0, axis=1)
    new_keys = new_keys[keep]
    out = out[keep]
    new_coords = np.empty((new_keys.size, d), dtype=np.int64)
    rem = new_keys.copy()
    for k in range(d):
        new_coords[:, k], rem = np.divmod(rem, strides[k])
    new_coords += lo
    return new_coords, out


# --- public API ------------------------------------------------------------


def step(s: FiniteState, c: Coin) -> FiniteState:
    """Apply the walk operator once."""
    _check(s, c)
    if s.backend == EXACT:
        return _step_exact(s, _IntegerCoin(c))
    coords, amps = _to_arrays(s)
    coords, amps = _step_arrays(coords, amps, c.to_array())
    return _from_arrays(s.d, coords, amps)


def evolve(s: FiniteState, c: Coin, n: int) -> FiniteState:
    """Apply the walk operator ``n`` times; ``n = 0`` returns ``s`` itself."""
    return evolve_trace(s, c, n, track_mass=False)[0]


def evolve_trace(s: FiniteState, c: Coin, n: int, track_mass: bool = True):
    """Evolve ``n`` steps and record the total mass before each step and after the last.

    Returns
    -------
    (FiniteState, list)
        The final state and the ``n + 1`` masses (empty if ``track_mass`` is
        false). Masses are Fractions in exact mode and floats otherwise.
    """
    _check(s, c)
    if int(n) != n or n < 0:
        raise ValueError(f"number of steps must be a nonnegative integer, got {n!r}")
    masses = [squared_norm(s)] if track_mass else []
    if n == 0:
        return s, masses
    if s.backend == EXACT:
        ic = _IntegerCoin(c)
        for _ in range(int(n)):
            s = _step_exact(s, ic)
            if track_mass:
                masses.append(squared_norm(s))
        return s, masses
    A = c.to_array()
    coords, amps = _to_arrays(s)
    for _ in range(int(n)):
        coords, amps = _step_arrays(coords, amps, A)
        if track_mass:
            # pairwise summation: error grows like log(N) * eps
            masses.append(float(np.sum(amps.real**2 + amps.imag**2)))
    return _from_arrays(s.d, coords, amps), masses


def fixed_point_residual_squared(s: FiniteState, c: Coin):
    """``||step(s) - s||^2``; an exact Fraction in exact mode."""
    diff = state_axpy(step(s, c), -1, s)
    return squared_norm(diff)


def fixed_point_residual(s: FiniteState, c: Coin) -> float:
    """``||step(s) - s||``, zero exactly when ``s`` is a stationary amplitude."""
    return math.sqrt(fixed_point_residual_squared(s, c))
