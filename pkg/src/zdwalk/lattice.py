"""
Finitely supported wavefunctions and measures on the integer lattice Z^d.

A wavefunction assigns to each lattice point a chiral vector of length
``2d``. Component ``2i-1`` (1-based) is the amplitude moving toward ``-x_i``
and component ``2i`` the one moving toward ``+x_i``. Only nonzero vectors are
stored, so the key set of a state is exactly its support.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Mapping

from zdwalk.scalar import (
    BACKENDS,
    EXACT,
    FLOAT,
    BackendError,
    abs2,
    as_scalar,
    real_from_json,
    real_to_json,
    scalar_from_json,
    scalar_to_json,
    zero,
)

__all__ = [
    "Point",
    "ChiralVector",
    "FiniteState",
    "Measure",
    "WeightSequence",
    "state_get",
    "measure_of",
    "total_mass",
    "state_axpy",
    "squared_norm",
]

Point = tuple  # tuple[int, ...]
ChiralVector = tuple  # tuple of scalars, length 2d


def _check_backend(backend: str) -> str:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    return backend


def _point(x, d: int) -> Point:
    p = tuple(int(c) for c in x)
    if any(int(c) != c for c in x):
        raise ValueError(f"lattice coordinates must be integers: {x!r}")
    if len(p) != d:
        raise ValueError(f"point {p} has dimension {len(p)}, expected {d}")
    return p


def _vector(v, d: int, backend: str) -> ChiralVector:
    vec = tuple(as_scalar(z, backend) for z in v)
    if len(vec) != 2 * d:
        raise ValueError(f"chiral vector has length {len(vec)}, expected {2 * d}")
    return vec


class FiniteState:
    """Immutable finitely supported map ``Z^d -> C^{2d}``.

    Parameters
    ----------
    d : int
        Lattice dimension, at least 1.
    entries : mapping or iterable of (point, vector) pairs
        All-zero vectors are dropped.
    backend : {"exact", "float"}
        Numeric backend shared by every amplitude.
    """

    __slots__ = ("d", "backend", "_entries")

    def __init__(self, d: int, entries=(), backend: str = EXACT):
        if int(d) != d or d < 1:
            raise ValueError(f"dimension must be a positive integer, got {d!r}")
        self.d = int(d)
        self.backend = _check_backend(backend)
        items = entries.items() if isinstance(entries, Mapping) else entries
        store = {}
        for x, v in items:
            p = _point(x, self.d)
            vec = _vector(v, self.d, backend)
            if p in store:
                raise ValueError(f"duplicate lattice point {p}")
            if any(vec):
                store[p] = vec
        self._entries = store

    @classmethod
    def _trusted(cls, d: int, backend: str, store: dict) -> "FiniteState":
        # caller guarantees canonical keys/vectors and no zero vectors
        obj = object.__new__(cls)
        obj.d = d
        obj.backend = backend
        obj._entries = store
        return obj

    @property
    def dim(self) -> int:
        return 2 * self.d

    @property
    def support(self) -> frozenset:
        return frozenset(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Point]:
        return iter(sorted(self._entries))

    def items(self) -> list:
        """(point, vector) pairs in lexicographic point order."""
        return sorted(self._entries.items())

    def get(self, x) -> ChiralVector:
        p = _point(x, self.d)
        vec = self._entries.get(p)
        if vec is None:
            return (zero(self.backend),) * self.dim
        return vec

    def __getitem__(self, x) -> ChiralVector:
        return self.get(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteState):
            return NotImplemented
        return (
            self.d == other.d
            and self.backend == other.backend
            and self._entries == other._entries
        )

    def __repr__(self) -> str:
        return f"FiniteState(d={self.d}, backend={self.backend!r}, support={len(self)})"

    def scaled(self, c) -> "FiniteState":
        c = as_scalar(c, self.backend)
        if not c:
            return FiniteState(self.d, backend=self.backend)
        store = {p: tuple(c * z for z in v) for p, v in self._entries.items()}
        return FiniteState._trusted(self.d, self.backend, store)

    def translated(self, shift) -> "FiniteState":
        s = _point(shift, self.d)
        store = {
            tuple(a + b for a, b in zip(p, s)): v for p, v in self._entries.items()
        }
        return FiniteState._trusted(self.d, self.backend, store)

    def to_float(self) -> "FiniteState":
        if self.backend == FLOAT:
            return self
        store = {p: tuple(complex(z) for z in v) for p, v in self._entries.items()}
        return FiniteState._trusted(self.d, FLOAT, store)

    def __add__(self, other: "FiniteState") -> "FiniteState":
        return state_axpy(self, 1, other)

    def __sub__(self, other: "FiniteState") -> "FiniteState":
        return state_axpy(self, -1, other)

    # --- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "backend": self.backend,
            "entries": [
                {"x": list(p), "amp": [scalar_to_json(z) for z in v]}
                for p, v in self.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteState":
        try:
            d = obj["d"]
            backend = obj.get("backend", EXACT)
            raw = obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed state JSON: {exc}") from exc
        _check_backend(backend)
        entries = []
        for e in raw:
            amp = [scalar_from_json(z, backend) for z in e["amp"]]
            entries.append((e["x"], amp))
        return cls(d, entries, backend=backend)


class Measure:
    """Finitely supported nonnegative measure on Z^d.

    Values are :class:`~fractions.Fraction` in exact mode and ``float``
    otherwise. Only strictly positive values are stored.
    """

    __slots__ = ("d", "backend", "_values")

    def __init__(self, d: int, values=(), backend: str = EXACT):
        self.d = int(d)
        self.backend = _check_backend(backend)
        items = values.items() if isinstance(values, Mapping) else values
        store = {}
        for x, m in items:
            p = _point(x, self.d)
            if backend == EXACT:
                if isinstance(m, float):
                    raise BackendError("exact measure cannot hold float values")
                m = Fraction(m)
            else:
                m = float(m)
            if m < 0:
                raise ValueError(f"negative measure value {m} at {p}")
            if m:
                store[p] = m
        self._values = store

    @property
    def support(self) -> frozenset:
        return frozenset(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self):
        return iter(sorted(self._values))

    def items(self) -> list:
        return sorted(self._values.items())

    def get(self, x):
        p = _point(x, self.d)
        return self._values.get(p, Fraction(0) if self.backend == EXACT else 0.0)

    __getitem__ = get

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self.d == other.d and self._values == other._values

    def __repr__(self) -> str:
        return f"Measure(d={self.d}, backend={self.backend!r}, support={len(self)})"

    def scaled(self, c) -> "Measure":
        return Measure(self.d, {p: m * c for p, m in self._values.items()}, self.backend)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "entries": [{"x": list(p), "value": real_to_json(m)} for p, m in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict, backend: str | None = None) -> "Measure":
        entries = obj["entries"]
        if backend is None:
            backend = (
                EXACT
                if all(isinstance(e["value"], (str, int)) for e in entries)
                else FLOAT
            )
        return cls(
            obj["d"],
            [(e["x"], real_from_json(e["value"], backend)) for e in entries],
            backend,
        )


class WeightSequence:
    """Finitely supported sequence of complex weights indexed by Z^d.

    At least one weight must be nonzero.
    """

    __slots__ = ("d", "backend", "_weights")

    def __init__(self, d: int, weights, backend: str = EXACT):
        self.d = int(d)
        self.backend = _check_backend(backend)
        items = weights.items() if isinstance(weights, Mapping) else weights
        store = {}
        for u, w in items:
            p = _point(u, self.d)
            w = as_scalar(w, backend)
            store[p] = store.get(p, zero(backend)) + w
        store = {p: w for p, w in store.items() if w}
        if not store:
            raise ValueError("weight sequence must contain at least one nonzero weight")
        self._weights = store

    def __len__(self) -> int:
        return len(self._weights)

    def items(self) -> list:
        return sorted(self._weights.items())

    def __repr__(self) -> str:
        return f"WeightSequence(d={self.d}, backend={self.backend!r}, size={len(self)})"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "weights": [{"u": list(u), "w": scalar_to_json(w)} for u, w in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict, backend: str = EXACT) -> "WeightSequence":
        return cls(
            obj["d"],
            [(e["u"], scalar_from_json(e["w"], backend)) for e in obj["weights"]],
            backend,
        )


def state_get(state: FiniteState, x) -> ChiralVector:
    """Amplitude vector at ``x``; the zero vector off the support."""
    return state.get(x)


def measure_of(state: FiniteState) -> Measure:
    """Pointwise squared norm ``x -> sum_j |psi_j(x)|^2``."""
    values = {p: sum(abs2(z) for z in v) for p, v in state._entries.items()}
    m = Measure.__new__(Measure)
    m.d, m.backend = state.d, state.backend
    m._values = {p: val for p, val in values.items() if val}
    return m


def total_mass(m: Measure):
    if m.backend == EXACT:
        return sum(m._values.values(), Fraction(0))
    return math.fsum(m._values.values())


def squared_norm(state: FiniteState):
    return total_mass(measure_of(state))


def state_axpy(acc: FiniteState, w, s: FiniteState) -> FiniteState:
    """Return ``acc + w*s`` with zero vectors pruned."""
    if acc.d != s.d:
        raise ValueError(f"dimension mismatch: {acc.d} vs {s.d}")
    if acc.backend != s.backend:
        raise BackendError(f"backend mismatch: {acc.backend} vs {s.backend}")
    w = as_scalar(w, acc.backend)
    store = dict(acc._entries)
    if not w:
        return FiniteState._trusted(acc.d, acc.backend, store)
    for p, v in s._entries.items():
        cur = store.get(p)
        if cur is None:
            store[p] = tuple(w * z for z in v)
        else:
            new = tuple(a + w * z for a, z in zip(cur, v))
            if any(new):
                store[p] = new
            else:
                del store[p]
    return FiniteState._trusted(acc.d, acc.backend, store)
