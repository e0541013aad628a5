"""
Finite-support stationary amplitudes built from an eigenvalue-1 symbol.

The inverse Fourier transform of a Laurent-polynomial symbol is read off
monomial by monomial: ``coeff * X^m`` in component ``j`` becomes ``coeff`` in
component ``j`` at lattice point ``-m``. For the Grover eigenfunction this
gives a family of vectors ``a_c`` on the 3^d cube ``{-1,0,1}^d`` (the
"atom"). Translates of the atom are stationary, and so are finite linear
combinations of translates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from zdwalk.coin import Coin, grover, watabe
from zdwalk.laurent import SymbolVector, grover_eigenfunction, watabe_eigenfunction
from zdwalk.lattice import (
    FiniteState,
    Measure,
    WeightSequence,
    measure_of,
    state_axpy,
    total_mass,
)
from zdwalk.scalar import EXACT, BackendError, zero

__all__ = [
    "StationaryAtom",
    "ball_support",
    "inverse_fourier",
    "atom_to_state",
    "superpose",
    "stationary_measure",
    "grover_atom",
    "watabe_atom",
]


def ball_support(u) -> frozenset:
    """The 3^d lattice points whose coordinates differ from ``u`` by -1, 0 or 1.

    For d <= 3 this is the same set as the closed Euclidean ball of radius
    sqrt(d) around ``u``. From d = 4 on that ball also contains the points
    ``u +- 2 e_i``, which never carry amplitude, so the cube is used.
    """
    u = tuple(int(c) for c in u)
    if not u:
        raise ValueError("point must have dimension >= 1")
    return frozenset(
        tuple(a + b for a, b in zip(u, off))
        for off in itertools.product((-1, 0, 1), repeat=len(u))
    )


def _in_unit_cube(c) -> bool:
    return all(-1 <= x <= 1 for x in c)


class StationaryAtom:
    """The vectors ``a_c`` for ``c`` in the 3^d ball around the origin.

    Attributes
    ----------
    d : int
    backend : str
    a : dict
        Maps lattice points to chiral vectors; zero vectors are omitted.
    """

    __slots__ = ("d", "backend", "a", "_state")

    def __init__(self, d: int, a, backend: str = EXACT):
        state = FiniteState(d, a, backend)
        for c in state.support:
            if not _in_unit_cube(c):
                raise ValueError(f"atom key {c} lies outside the cube {-1,0,1}^d")
        self.d = state.d
        self.backend = backend
        self.a = dict(state.items())
        self._state = state

    def __len__(self) -> int:
        return len(self.a)

    def __getitem__(self, c):
        return self._state.get(c)

    def __eq__(self, other) -> bool:
        if isinstance(other, StationaryAtom):
            return self._state == other._state
        return NotImplemented

    def __repr__(self) -> str:
        return f"StationaryAtom(d={self.d}, backend={self.backend!r}, size={len(self)})"

    def as_state(self) -> FiniteState:
        return self._state


def inverse_fourier(v: SymbolVector) -> StationaryAtom:
    """Lattice amplitudes of a polynomial symbol: ``X^m`` lands on ``-m``."""
    D = len(v)
    z = zero(v.backend)
    acc: dict = {}
    for j, comp in enumerate(v.components):
        for m, coeff in comp.terms.items():
            x = tuple(-e for e in m)
            vec = acc.setdefault(x, [z] * D)
            vec[j] = vec[j] + coeff
    return StationaryAtom(v.d, acc, v.backend)


def atom_to_state(atom: StationaryAtom, u) -> FiniteState:
    """The atom translated so that its centre sits at ``u``."""
    return atom.as_state().translated(u)


def superpose(atom: StationaryAtom, w: WeightSequence) -> FiniteState:
    """``sum_u w_u * atom_to_state(atom, u)`` over the finite support of ``w``."""
    if w.d != atom.d:
        raise ValueError(f"dimension mismatch: atom d={atom.d}, weights d={w.d}")
    if w.backend != atom.backend:
        raise BackendError(f"backend mismatch: atom {atom.backend}, weights {w.backend}")
    acc = FiniteState(atom.d, backend=atom.backend)
    for u, wu in w.items():
        acc = state_axpy(acc, wu, atom_to_state(atom, u))
    return acc


def stationary_measure(atom: StationaryAtom, w: WeightSequence, normalize: bool = False) -> Measure:
    """Measure of the superposed amplitude, optionally scaled to total mass 1."""
    m = measure_of(superpose(atom, w))
    if not normalize:
        return m
    mass = total_mass(m)
    if not mass:
        raise ValueError("cannot normalize a measure with zero total mass")
    if m.backend == EXACT:
        return m.scaled(Fraction(1) / mass)
    return m.scaled(1.0 / mass)


def grover_atom(d: int, backend: str = EXACT) -> StationaryAtom:
    return inverse_fourier(grover_eigenfunction(d, backend))


def watabe_atom(p, backend: str | None = None) -> StationaryAtom:
    v = watabe_eigenfunction(p, backend)
    return inverse_fourier(v)


def closed_form(coin: Coin) -> SymbolVector | None:
    """Known eigenvalue-1 symbol for ``coin``, or None for custom coins."""
    if coin.kind == "grover":
        return grover_eigenfunction(coin.d, coin.backend)
    if coin.kind == "watabe":
        return watabe_eigenfunction(coin.p, coin.backend)
    return None


def coin_for(kind: str, d: int, backend: str, p=None) -> Coin:
    if kind == "grover":
        return grover(d, backend)
    if kind == "watabe":
        if d != 2:
            raise ValueError("the watabe coin is defined on Z^2 only (use --dim 2)")
        if p is None:
            raise ValueError("the watabe coin needs a parameter p")
        return watabe(p, backend)
    raise ValueError(f"no built-in coin named {kind!r}")
