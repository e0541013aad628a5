"""
Coin matrices for 2d-state walks on Z^d.

Coins are 2d x 2d unitary matrices. Rows and columns are indexed by chirality
in the convention of :mod:`zdwalk.lattice`. Every constructor validates
unitarity, exactly for the exact backend and to ``1e-12`` for float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from zdwalk.scalar import (
    BACKENDS,
    EXACT,
    FLOAT,
    BackendError,
    GaussianRational,
    abs2,
    as_scalar,
    scalar_from_json,
    scalar_to_json,
    zero,
)

__all__ = [
    "Coin",
    "CoinError",
    "grover",
    "watabe",
    "custom",
    "is_unitary",
    "row_projection",
    "rational_sqrt",
    "UNITARY_TOL",
    "max_entry_gap",
]

UNITARY_TOL = 1e-12


class CoinError(ValueError):
    """Invalid coin parameters or a non-unitary matrix."""


class Coin:
    """A validated unitary coin.

    Attributes
    ----------
    d : int
        Lattice dimension; the matrix side is ``2*d``.
    entries : tuple of tuple
        Row-major matrix of scalars of one backend.
    backend : str
    kind : {"grover", "watabe", "custom"}
    p : optional parameter of the Watabe family
    """

    __slots__ = ("d", "entries", "backend", "kind", "p")

    def __init__(self, d, entries, backend=EXACT, kind="custom", p=None, check=True):
        if int(d) != d or d < 1:
            raise CoinError(f"dimension must be a positive integer, got {d!r}")
        if backend not in BACKENDS:
            raise CoinError(f"unknown backend {backend!r}")
        D = 2 * int(d)
        rows = tuple(tuple(as_scalar(z, backend) for z in row) for row in entries)
        if len(rows) != D or any(len(r) != D for r in rows):
            raise CoinError(f"coin for d={d} must be {D}x{D}")
        self.d = int(d)
        self.entries = rows
        self.backend = backend
        self.kind = kind
        self.p = p
        if check and not is_unitary(self, UNITARY_TOL):
            raise CoinError(f"{kind} coin is not unitary")

    @property
    def dim(self) -> int:
        return 2 * self.d

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coin):
            return NotImplemented
        return self.d == other.d and self.backend == other.backend and self.entries == other.entries

    def __hash__(self):
        return hash((self.d, self.backend, self.entries))

    def __repr__(self) -> str:
        extra = f", p={self.p}" if self.p is not None else ""
        return f"Coin(kind={self.kind!r}, d={self.d}, backend={self.backend!r}{extra})"

    def to_array(self) -> np.ndarray:
        return np.array([[complex(z) for z in row] for row in self.entries], dtype=np.complex128)

    def to_float(self) -> "Coin":
        if self.backend == FLOAT:
            return self
        return Coin(self.d, [[complex(z) for z in r] for r in self.entries], FLOAT,
                    self.kind, self.p if self.p is None else float(self.p))

    def to_json(self) -> dict:
        out = {"d": self.d, "kind": self.kind}
        if self.p is not None:
            out["p"] = str(self.p) if isinstance(self.p, Fraction) else self.p
        out["entries"] = [[scalar_to_json(z) for z in row] for row in self.entries]
        return out

    @classmethod
    def from_json(cls, obj: dict, backend: str | None = None) -> "Coin":
        """Rebuild a coin; ``grover``/``watabe`` kinds are regenerated from parameters."""
        kind = obj.get("kind", "custom")
        d = obj.get("d")
        if kind == "grover":
            return grover(d, backend or EXACT)
        if kind == "watabe":
            if d not in (None, 2):
                raise CoinError("watabe coin is defined for d=2 only")
            return watabe(_parse_p(obj["p"], backend or FLOAT), backend or FLOAT)
        if kind != "custom":
            raise CoinError(f"unknown coin kind {kind!r}")
        if backend is None:
            backend = EXACT if _all_exact_json(obj["entries"]) else FLOAT
        entries = [[scalar_from_json(z, backend) for z in row] for row in obj["entries"]]
        if d is None:
            d = len(entries) // 2
        return Coin(d, entries, backend, kind="custom")


def _all_exact_json(rows) -> bool:
    def ok(x):
        return isinstance(x, (str, int)) and not isinstance(x, bool)

    for row in rows:
        for z in row:
            parts = z if isinstance(z, (list, tuple)) else [z]
            if not all(ok(x) for x in parts):
                return False
    return True


def _parse_p(p, backend):
    if backend == EXACT:
        if isinstance(p, float):
            # exact only when the decimal is what the user meant
            return Fraction(repr(p))
        return Fraction(p)
    if isinstance(p, str):
        return float(Fraction(p))
    return float(p)


def grover(d: int, backend: str = EXACT) -> Coin:
    """Grover coin with entries ``2/D - delta_ij``, ``D = 2d``."""
    if int(d) != d or d < 1:
        raise CoinError(f"Grover coin requires d >= 1, got {d!r}")
    d = int(d)
    D = 2 * d
    off = Fraction(2, D)
    rows = [[off - (1 if i == j else 0) for j in range(D)] for i in range(D)]
    if backend == FLOAT:
        rows = [[float(x) for x in r] for r in rows]
    return Coin(d, rows, backend, kind="grover")


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, m = q.numerator, q.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


def watabe(p, backend: str | None = None) -> Coin:
    """Two-parameter family of 4x4 coins on Z^2 (q = 1 - p).

    ``p = 1/2`` is the Grover coin. The exact backend is allowed only when
    ``sqrt(p*q)`` is rational; pass ``p`` as a Fraction (or int-ratio string)
    in that case.
    """
    if backend is None:
        backend = EXACT if isinstance(p, Rational) and not isinstance(p, bool) else FLOAT
    if backend == EXACT:
        if isinstance(p, float):
            raise BackendError("exact watabe coin needs a rational p, not a float")
        p = Fraction(p)
        q = 1 - p
        if not 0 < p < 1:
            raise CoinError(f"watabe coin requires 0 < p < 1, got {p}")
        s = rational_sqrt(p * q)
        if s is None:
            raise BackendError(f"sqrt(p*q) is irrational for p={p}; use the float backend")
    elif backend == FLOAT:
        p = float(p)
        q = 1.0 - p
        if not 0.0 < p < 1.0:
            raise CoinError(f"watabe coin requires 0 < p < 1, got {p}")
        s = math.sqrt(p * q)
    else:
        raise CoinError(f"unknown backend {backend!r}")
    rows = [
        [-p, q, s, s],
        [q, -p, s, s],
        [s, s, -q, p],
        [s, s, p, -q],
    ]
    return Coin(2, rows, backend, kind="watabe", p=p)


def custom(entries, backend: str | None = None) -> Coin:
    """Wrap a user-supplied square matrix; rejected unless unitary."""
    rows = [list(r) for r in entries]
    if len(rows) % 2:
        raise CoinError("coin side must be even (2d)")
    if backend is None:
        exact = all(
            isinstance(z, (GaussianRational, Rational)) and not isinstance(z, bool)
            for r in rows
            for z in r
        )
        backend = EXACT if exact else FLOAT
    return Coin(len(rows) // 2, rows, backend, kind="custom")


def is_unitary(c: Coin, tol: float = UNITARY_TOL) -> bool:
    """Whether ``A* A = I``.

    Exact coins must satisfy the identity exactly and ``tol`` is ignored.
    Float coins pass when the largest entry of ``A* A - I`` is at most ``tol``.
    """
    D = c.dim
    A = c.entries
    if c.backend == EXACT:
        for i in range(D):
            for j in range(i, D):
                s = zero(EXACT)
                for k in range(D):
                    s = s + A[k][i].conjugate() * A[k][j]
                if s != (1 if i == j else 0):
                    return False
        return True
    M = c.to_array()
    G = M.conj().T @ M - np.eye(D)
    return bool(np.max(np.abs(G)) <= tol)


def row_projection(c: Coin, i: int):
    """``P_i A``: row ``i`` (1-based) of the coin, every other row zero."""
    D = c.dim
    if int(i) != i or not 1 <= i <= D:
        raise IndexError(f"row index {i!r} outside 1..{D}")
    z = zero(c.backend)
    return tuple(
        c.entries[r] if r == i - 1 else (z,) * D for r in range(D)
    )


def max_entry_gap(a: Coin, b: Coin) -> float:
    """Largest entrywise modulus of ``a - b``, as a float."""
    if a.dim != b.dim:
        raise CoinError("coins of different size")
    return max(
        math.sqrt(float(abs2(complex(x) - complex(y))))
        for ra, rb in zip(a.entries, b.entries)
        for x, y in zip(ra, rb)
    )
