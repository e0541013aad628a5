"""
Sparse multivariate Laurent polynomials and the Fourier symbol of a walk.

A polynomial in ``X_1..X_d`` with integer (possibly negative) exponents stands
for the trigonometric polynomial obtained from ``X_j = exp(i k_j)``. The
symbol of a coin ``A`` is the 2d x 2d matrix

    U(k) = sum_j  X_j P_{2j-1} A  +  conj(X_j) P_{2j} A,

and the Grover eigenfunction for eigenvalue 1 is kept in its
denominator-free product form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from zdwalk.coin import Coin, rational_sqrt
from zdwalk.scalar import (
    EXACT,
    FLOAT,
    BackendError,
    as_scalar,
    scalar_from_json,
    scalar_to_json,
    zero,
)

__all__ = [
    "LaurentPoly",
    "SymbolVector",
    "SymbolMatrix",
    "lp_add",
    "lp_mul",
    "lp_scale",
    "symbol_matrix",
    "grover_eigenfunction",
    "watabe_eigenfunction",
    "eval_at",
    "eigen_residual",
    "eigen_residuals",
    "symbolic_fixed_point_check",
]


class LaurentPoly:
    """Immutable sparse Laurent polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("d", "backend", "terms")

    def __init__(self, d: int, terms=(), backend: str = EXACT):
        if int(d) != d or d < 1:
            raise ValueError(f"dimension must be a positive integer, got {d!r}")
        self.d = int(d)
        self.backend = backend
        items = terms.items() if isinstance(terms, dict) else terms
        store: dict = {}
        for exp, coeff in items:
            e = tuple(int(x) for x in exp)
            if len(e) != self.d:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {self.d}")
            store[e] = store.get(e, zero(backend)) + as_scalar(coeff, backend)
        self.terms = {e: c for e, c in store.items() if c}

    @classmethod
    def _trusted(cls, d, backend, terms) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj.d, obj.backend, obj.terms = d, backend, terms
        return obj

    # constructors

    @classmethod
    def constant(cls, d: int, c, backend: str = EXACT) -> "LaurentPoly":
        return cls(d, [((0,) * d, c)], backend)

    @classmethod
    def variable(cls, d: int, j: int, power: int = 1, backend: str = EXACT) -> "LaurentPoly":
        """``X_j ** power`` with 1-based ``j``; ``power=-1`` gives ``conj(X_j)``."""
        if not 1 <= j <= d:
            raise IndexError(f"variable index {j} outside 1..{d}")
        e = [0] * d
        e[j - 1] = power
        return cls(d, [(tuple(e), 1)], backend)

    # arithmetic

    def _compatible(self, other: "LaurentPoly") -> None:
        if self.d != other.d:
            raise ValueError(f"dimension mismatch: {self.d} vs {other.d}")
        if self.backend != other.backend:
            raise BackendError(f"backend mismatch: {self.backend} vs {other.backend}")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._compatible(other)
            return other
        return LaurentPoly.constant(self.d, other, self.backend)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._trusted(self.d, self.backend, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._trusted(self.d, self.backend, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._compatible(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return LaurentPoly._trusted(self.d, self.backend, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "LaurentPoly":
        c = as_scalar(c, self.backend)
        if not c:
            return LaurentPoly._trusted(self.d, self.backend, {})
        return LaurentPoly._trusted(self.d, self.backend, {e: c * v for e, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.d == other.d and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def to_float(self) -> "LaurentPoly":
        if self.backend == FLOAT:
            return self
        return LaurentPoly._trusted(self.d, FLOAT, {e: complex(c) for e, c in self.terms.items()})

    def __call__(self, k) -> complex:
        return self.evaluate(k)

    def evaluate(self, k) -> complex:
        """Value at ``X_j = exp(i k_j)``."""
        k = np.asarray(k, dtype=float)
        if k.shape != (self.d,):
            raise ValueError(f"k must have length {self.d}")
        if not self.terms:
            return 0j
        exps = np.array(list(self.terms), dtype=float)
        coeffs = np.array([complex(c) for c in self.terms.values()])
        return complex(np.sum(coeffs * np.exp(1j * (exps @ k))))

    # text / JSON

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(
                f"X{j + 1}" if a == 1 else f"X{j + 1}^{a}" for j, a in enumerate(e) if a
            )
            coeff = str(c) if self.backend == EXACT else repr(complex(c))
            parts.append(f"{coeff} * {mono}" if mono else coeff)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly(d={self.d}, {self})"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "terms": [{"exp": list(e), "coeff": scalar_to_json(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict, backend: str = EXACT) -> "LaurentPoly":
        return cls(
            obj["d"],
            [(t["exp"], scalar_from_json(t["coeff"], backend)) for t in obj["terms"]],
            backend,
        )


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def lp_scale(p: LaurentPoly, c) -> LaurentPoly:
    return p.scale(c)


class SymbolVector:
    """Length-2d vector of Laurent polynomials in a common dimension."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if not comps:
            raise ValueError("empty symbol vector")
        d = comps[0].d
        if len(comps) != 2 * d:
            raise ValueError(f"symbol vector for d={d} needs {2 * d} components")
        if any(c.d != d or c.backend != comps[0].backend for c in comps):
            raise ValueError("components disagree on dimension or backend")
        if all(c.is_zero() for c in comps):
            raise ValueError("symbol vector must have a nonzero component")
        self.components = comps

    @property
    def d(self) -> int:
        return self.components[0].d

    @property
    def backend(self) -> str:
        return self.components[0].backend

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i) -> LaurentPoly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolVector):
            return self.components == other.components
        return NotImplemented

    def __repr__(self) -> str:
        return f"SymbolVector(d={self.d}, backend={self.backend!r})"

    def to_json(self) -> dict:
        return {"d": self.d, "components": [c.to_json() for c in self.components]}


class SymbolMatrix:
    """2d x 2d matrix of Laurent polynomials."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def d(self) -> int:
        return self.rows[0][0].d

    @property
    def backend(self) -> str:
        return self.rows[0][0].backend

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolMatrix):
            return self.rows == other.rows
        return NotImplemented

    def apply(self, v: SymbolVector) -> list:
        """Matrix-vector product as a plain list of polynomials (may be all zero)."""
        out = []
        for row in self.rows:
            acc = LaurentPoly(self.d, backend=self.backend)
            for a, b in zip(row, v.components):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out


def symbol_matrix(c: Coin) -> SymbolMatrix:
    """Fourier symbol of the walk with coin ``c``.

    Row ``2j-1`` of the coin picks up the factor ``X_j`` and row ``2j`` the
    factor ``conj(X_j)``.
    """
    d = c.d
    rows = []
    for r in range(c.dim):
        j = r // 2 + 1
        mono = LaurentPoly.variable(d, j, 1 if r % 2 == 0 else -1, c.backend)
        rows.append([mono.scale(a) for a in c.entries[r]])
    return SymbolMatrix(rows)


def _binomials(d: int, backend: str):
    one = LaurentPoly.constant(d, 1, backend)
    plus = [one + LaurentPoly.variable(d, j, 1, backend) for j in range(1, d + 1)]
    minus = [one + LaurentPoly.variable(d, j, -1, backend) for j in range(1, d + 1)]
    return one, plus, minus


def grover_eigenfunction(d: int, backend: str = EXACT) -> SymbolVector:
    """Eigenvalue-1 eigenvector of the Grover symbol.

    Component ``2j-1`` is ``(1+X_j) * prod_{l != j} (1+conj X_l)(1+X_l)`` and
    component ``2j`` swaps the leading factor for ``(1+conj X_j)``.
    """
    if int(d) != d or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    d = int(d)
    one, plus, minus = _binomials(d, backend)
    trinomial = [m * p for m, p in zip(minus, plus)]
    comps = []
    for j in range(d):
        rest = one
        for l in range(d):
            if l != j:
                rest = rest * trinomial[l]
        comps.append(plus[j] * rest)
        comps.append(minus[j] * rest)
    return SymbolVector(comps)


def watabe_eigenfunction(p, backend: str | None = None) -> SymbolVector:
    """Eigenvalue-1 eigenvector for the Watabe coin on Z^2.

    Components 3 and 4 carry the factor ``sqrt(p q) / q``.
    """
    if backend is None:
        backend = EXACT if isinstance(p, Rational) and not isinstance(p, bool) else FLOAT
    if backend == EXACT:
        if isinstance(p, float):
            raise BackendError("exact eigenfunction needs a rational p")
        p = Fraction(p)
        if not 0 < p < 1:
            raise ValueError(f"p must lie in (0, 1), got {p}")
        q = 1 - p
        s = rational_sqrt(p * q)
        if s is None:
            raise BackendError(f"sqrt(p*q) is irrational for p={p}; use the float backend")
        r = s / q
    else:
        p = float(p)
        if not 0.0 < p < 1.0:
            raise ValueError(f"p must lie in (0, 1), got {p}")
        q = 1.0 - p
        r = math.sqrt(p * q) / q
    one, plus, minus = _binomials(2, backend)
    t1 = minus[0] * plus[0]
    t2 = minus[1] * plus[1]
    return SymbolVector([
        plus[0] * t2,
        minus[0] * t2,
        (plus[1] * t1).scale(r),
        (minus[1] * t1).scale(r),
    ])


def eval_at(obj, k) -> np.ndarray:
    """Numerical value of a polynomial, SymbolVector or SymbolMatrix at ``k``."""
    k = np.asarray(k, dtype=float)
    if isinstance(obj, LaurentPoly):
        return np.asarray(obj.evaluate(k))
    if isinstance(obj, SymbolVector):
        if k.shape != (obj.d,):
            raise ValueError(f"k must have length {obj.d}")
        return np.array([c.evaluate(k) for c in obj.components], dtype=np.complex128)
    if isinstance(obj, SymbolMatrix):
        if k.shape != (obj.d,):
            raise ValueError(f"k must have length {obj.d}")
        return np.array([[e.evaluate(k) for e in row] for row in obj.rows], dtype=np.complex128)
    raise TypeError(f"cannot evaluate {type(obj).__name__}")


def eigen_residual(c: Coin, v: SymbolVector, k) -> float:
    """``|| U(k) v(k) - v(k) ||_2`` for the symbol ``U`` of coin ``c``."""
    k = np.asarray(k, dtype=float)
    if k.shape != (c.d,):
        raise ValueError(f"k must have length {c.d}")
    return float(eigen_residuals(c, v, k[None, :])[0])


def eigen_residuals(c: Coin, v: SymbolVector, ks) -> np.ndarray:
    """:func:`eigen_residual` for each row of ``ks`` (shape ``(n, d)``).

    Evaluation runs in ``numpy.longdouble``. In binary64 the rounding floor
    is about ``eps * |v(k)|``, and ``|v(k)|`` grows like ``4^d`` near
    ``k = 0``, which would swamp a 1e-12 threshold for d >= 6. On platforms
    where longdouble is plain double the result is binary64-accurate only.
    """
    if c.d != v.d:
        raise ValueError(f"dimension mismatch: coin d={c.d}, vector d={v.d}")
    ks = np.asarray(ks, dtype=float)
    if ks.ndim != 2 or ks.shape[1] != c.d:
        raise ValueError(f"k samples must have shape (n, {c.d})")
    A = np.array([[_wide(z) for z in row] for row in c.entries], dtype=np.clongdouble)
    X = np.exp(1j * ks.astype(np.longdouble))
    # row 2j-1 of the symbol carries X_j, row 2j carries conj(X_j)
    phases = np.empty((ks.shape[0], c.dim), dtype=np.clongdouble)
    phases[:, 0::2] = X
    phases[:, 1::2] = np.conj(X)
    vals = np.stack([_eval_many(comp, X) for comp in v.components], axis=1)
    image = phases * (vals @ A.T)
    diff = image - vals
    return np.sqrt(np.sum(diff.real**2 + diff.imag**2, axis=1)).astype(float)


def _wide(z):
    if isinstance(z, complex):
        return np.clongdouble(z)
    re = np.longdouble(z.re.numerator) / np.longdouble(z.re.denominator)
    im = np.longdouble(z.im.numerator) / np.longdouble(z.im.denominator)
    return np.clongdouble(re) + np.clongdouble(1j) * im


def _eval_many(p: LaurentPoly, X: np.ndarray) -> np.ndarray:
    """Values of ``p`` at each row of ``X`` (unit-modulus phases ``exp(i k)``)."""
    n = X.shape[0]
    if not p.terms:
        return np.zeros(n, dtype=X.dtype)
    exps = np.array(list(p.terms), dtype=np.int64)
    coeffs = np.array([_wide(c) for c in p.terms.values()], dtype=X.dtype)
    mono = np.ones((n, len(coeffs)), dtype=X.dtype)
    # monomials as products of per-variable powers keep phase errors relative
    for l in range(p.d):
        for e in np.unique(exps[:, l]):
            if e == 0:
                continue
            base = X[:, l] if e > 0 else np.conj(X[:, l])
            mono[:, exps[:, l] == e] *= (base ** abs(int(e)))[:, None]
    return mono @ coeffs


def symbolic_fixed_point_check(c: Coin, v: SymbolVector) -> bool:
    """Exact test that ``U v = v`` as an identity of Laurent polynomials."""
    if c.backend != EXACT or v.backend != EXACT:
        raise BackendError("symbolic check requires the exact backend")
    if c.d != v.d:
        raise ValueError(f"dimension mismatch: coin d={c.d}, vector d={v.d}")
    image = symbol_matrix(c).apply(v)
    return all((a - b).is_zero() for a, b in zip(image, v.components))
