"""Exact coefficient rings (Z and Z/n) and exact linear algebra.

Scalars are plain Python ints, so there is no overflow over Z.  Matrices wrap
numpy arrays of dtype ``object``; rank and kernel computations reduce modulo a
prime and run on ``int64`` arrays, which is exact as long as the prime is
below 2**31.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, MutableMapping, Sequence

import numpy as np

DEFAULT_PRIME = 10007
_MAX_PRIME = 2**31 - 1
_INT64_SAFE = 2**62


class SizeLimitError(ValueError):
    """Raised when a construction would exceed a configured size cap."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Ring:
    """The ring Z (``modulus is None``) or Z/n."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    def __str__(self) -> str:
        return "Z" if self.modulus is None else f"Z/{self.modulus}"

    @property
    def is_field(self) -> bool:
        return self.modulus is not None and is_prime(self.modulus)

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    def reduce(self, a: int) -> int:
        return a if self.modulus is None else a % self.modulus

    def add(self, a: int, b: int) -> int:
        return self.reduce(a + b)

    def mul(self, a: int, b: int) -> int:
        return self.reduce(a * b)

    def neg(self, a: int) -> int:
        return self.reduce(-a)

    def is_unit(self, a: int) -> bool:
        if self.modulus is None:
            return a in (1, -1)
        return math.gcd(a % self.modulus, self.modulus) == 1

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        if self.modulus is None:
            return a
        return pow(a, -1, self.modulus)


Z = Ring()

_RING_RE = re.compile(r"^\s*(?:Z|ZZ)(?:\s*/\s*(\d+))?\s*$")


def make_ring(descriptor: str | Ring) -> Ring:
    """Parse ``"Z"`` or ``"Z/n"`` (n >= 2)."""
    if isinstance(descriptor, Ring):
        return descriptor
    m = _RING_RE.match(str(descriptor))
    if not m:
        raise ValueError(f"malformed ring descriptor {descriptor!r}; expected 'Z' or 'Z/n'")
    if m.group(1) is None:
        return Z
    return Ring(int(m.group(1)))


# ---------------------------------------------------------------------------
# sparse vectors: dict key -> nonzero scalar


def add_into(acc: MutableMapping, key, value: int, ring: Ring) -> None:
    """``acc[key] += value`` keeping ``acc`` free of zero entries."""
    v = ring.reduce(acc.get(key, 0) + value)
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def axpy(acc: MutableMapping, x: Mapping, scale: int, ring: Ring) -> None:
    for k, v in x.items():
        add_into(acc, k, scale * v, ring)


def clean(x: Mapping, ring: Ring) -> dict:
    out = {}
    for k, v in x.items():
        v = ring.reduce(v)
        if v:
            out[k] = v
    return out


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=False)
class Matrix:
    """An exact matrix over a :class:`Ring`.

    ``data`` is a 2-d numpy array of Python ints (dtype object), already
    reduced for the ring.
    """

    ring: Ring
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=object)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-d, got shape {arr.shape}")
        if self.ring.modulus is not None:
            arr = arr % self.ring.modulus
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> Matrix:
        return cls(ring, np.zeros((rows, cols), dtype=object))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> Matrix:
        a = np.zeros((n, n), dtype=object)
        for i in range(n):
            a[i, i] = 1
        return cls(ring, a)

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
        if len(rows) == 0:
            return cls.zeros(ring, 0, cols or 0)
        a = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                a[i, j] = int(v)
        return cls(ring, a)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, idx):
        return self.data[idx]

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.data]

    def is_zero(self) -> bool:
        return not any(v for v in self.data.flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and all(a == b for a, b in zip(self.data.flat, other.data.flat)))

    def __hash__(self):
        return hash((self.ring, self.shape, tuple(self.data.flat)))

    def _check(self, other: Matrix) -> None:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix(self.ring, self.data + other.data)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix(self.ring, self.data - other.data)

    def __neg__(self) -> Matrix:
        return Matrix(self.ring, -self.data)

    def scale(self, c: int) -> Matrix:
        return Matrix(self.ring, self.data * int(c))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.ring, exact_matmul(self.data, other.data))

    def transpose(self) -> Matrix:
        return Matrix(self.ring, self.data.T.copy())

    T = property(transpose)


def _max_abs(a: np.ndarray) -> int:
    return max((abs(int(v)) for v in a.flat), default=0)


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product.

    Uses int64 when the entry bounds prove there is no overflow, object
    arithmetic otherwise.
    """
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    bound = _max_abs(a) * _max_abs(b) * a.shape[1]
    if bound < _INT64_SAFE:
        out = a.astype(np.int64) @ b.astype(np.int64)
        return out.astype(object)
    return a.dot(b)


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of int64 arrays, refusing any product that could overflow."""
    if a.size and b.size:
        bound = int(np.abs(a).max()) * int(np.abs(b).max()) * a.shape[1]
        if bound >= _INT64_SAFE:
            raise OverflowError("int64 matrix product may overflow; reduce modulo a prime first")
    return a @ b


# ---------------------------------------------------------------------------
# linear algebra modulo a prime


def _resolve_prime(ring: Ring | None, prime: int | None) -> int:
    if prime is not None:
        if not is_prime(prime) or prime > _MAX_PRIME:
            raise ValueError(f"reduction modulus {prime} is not a prime below 2**31")
        if ring is not None and ring.modulus is not None and ring.modulus % prime:
            raise ValueError(f"cannot reduce {ring} modulo {prime}")
        return prime
    if ring is None or ring.modulus is None:
        return DEFAULT_PRIME
    if ring.is_field and ring.modulus <= _MAX_PRIME:
        return ring.modulus
    raise ValueError(f"{ring} is not a field and no reduction prime was supplied")


def to_mod_p(a, p: int) -> np.ndarray:
    """Reduce an integer array (any dtype) into an int64 array mod p."""
    arr = np.asarray(a)
    if arr.dtype == object:
        out = np.empty(arr.shape, dtype=np.int64)
        flat = out.reshape(-1)
        for i, v in enumerate(arr.flat):
            flat[i] = int(v) % p
        return out
    return np.mod(arr.astype(np.int64), p)


def rref_mod_p(a: np.ndarray, p: int, *, full: bool = True) -> tuple[np.ndarray, list[int]]:
    """Row-reduce ``a`` over GF(p).

    Returns the nonzero rows and the pivot columns.  With ``full=False``
    only rows below each pivot are cleared (enough for rank).
    """
    a = to_mod_p(a, p).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        if not full:
            col[:r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[np.ix_(rows, np.arange(c, ncols))] = (
                a[np.ix_(rows, np.arange(c, ncols))] - np.outer(col[rows], a[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod_p(a, p: int) -> int:
    arr = np.asarray(a)
    if arr.size == 0:
        return 0
    return len(rref_mod_p(arr, p, full=False)[1])


def nullspace_mod_p(a, p: int) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{x : a x = 0}`` over GF(p)."""
    arr = np.asarray(a)
    ncols = arr.shape[1]
    if arr.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref_mod_p(arr, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-red[i, f]) % p
    return basis


def rank(m: Matrix, prime: int | None = None) -> int:
    """Exact rank of ``m``.

    Over Z/p the rank is computed directly; over Z the matrix is reduced
    modulo ``prime`` (default :data:`DEFAULT_PRIME`), so the result is the
    rank over GF(prime).
    """
    p = _resolve_prime(m.ring, prime)
    return rank_mod_p(m.data, p)


def nullspace(m: Matrix, prime: int | None = None) -> Matrix:
    p = _resolve_prime(m.ring, prime)
    return Matrix(Ring(p), nullspace_mod_p(m.data, p).astype(object))


def span_equal(a: np.ndarray, b: np.ndarray, p: int) -> tuple[int, int, int]:
    """Ranks of the row spaces of ``a``, ``b`` and their sum, over GF(p)."""
    ra = rank_mod_p(a, p)
    rb = rank_mod_p(b, p)
    both = np.vstack([to_mod_p(a, p), to_mod_p(b, p)]) if a.size or b.size else np.zeros((0, 0))
    return ra, rb, rank_mod_p(both, p)


def dense_rows(vectors: Iterable[Mapping], index: Mapping, p: int | None = None) -> np.ndarray:
    """Stack sparse vectors into a dense int64 (or object) row matrix."""
    vectors = list(vectors)
    out = np.zeros((len(vectors), len(index)), dtype=np.int64 if p else object)
    for r, vec in enumerate(vectors):
        for k, v in vec.items():
            out[r, index[k]] = v % p if p else v
    return out
