"""Free supermodules with parity-tagged bases and sign-correct linear maps.

Every :class:`SuperModule` keeps its basis in canonical order: all even
vectors first, then all odd ones.  Constructions that would produce another
order (tensor products, parity change, direct sums) re-sort stably and
expose the resulting index maps, so coordinates round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .coeff import Matrix, Ring, Z, add_into

EVEN, ODD = 0, 1

# A vector is a sparse dict {basis index: nonzero scalar}; tensor-power
# vectors use tuples of basis indices ("words") as keys.
Vector = dict


@dataclass(frozen=True)
class SuperModule:
    ring: Ring
    names: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "parities", tuple(int(p) for p in self.parities))
        if len(self.names) != len(self.parities):
            raise ValueError("names and parities must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 (even) or 1 (odd)")
        if list(self.parities) != sorted(self.parities):
            raise ValueError("basis must list all even vectors before odd ones")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def dim_even(self) -> int:
        return self.parities.count(EVEN)

    @property
    def dim_odd(self) -> int:
        return self.parities.count(ODD)

    @property
    def superdim(self) -> tuple[int, int]:
        return self.dim_even, self.dim_odd

    def parity(self, i: int) -> int:
        return self.parities[i]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no basis vector named {name!r}") from None

    def basis_vector(self, i: int | str) -> Vector:
        if isinstance(i, str):
            i = self.index(i)
        return {i: 1}

    def __repr__(self) -> str:
        return f"SuperModule({self.ring}^{{{self.dim_even}|{self.dim_odd}}})"


def canonical(ring: Ring, names: Sequence[str], parities: Sequence[int]) -> tuple[SuperModule, list[int]]:
    """Stably sort a parity-tagged basis into even-first order.

    Returns the module and ``order`` where ``order[k]`` is the original
    position of canonical basis vector ``k``.
    """
    order = sorted(range(len(names)), key=lambda k: parities[k])
    module = SuperModule(ring, tuple(names[k] for k in order), tuple(parities[k] for k in order))
    return module, order


def free_module(p: int, q: int = 0, ring: Ring = Z, even: str = "v", odd: str = "u") -> SuperModule:
    """The free supermodule k^{p|q} with basis v1..vp, u1..uq."""
    names = [f"{even}{i + 1}" for i in range(p)] + [f"{odd}{i + 1}" for i in range(q)]
    return SuperModule(ring, tuple(names), (EVEN,) * p + (ODD,) * q)


def _same_ring(*mods: SuperModule) -> Ring:
    ring = mods[0].ring
    for m in mods[1:]:
        if m.ring != ring:
            raise ValueError(f"ring mismatch: {ring} vs {m.ring}")
    return ring


@lru_cache(maxsize=None)
def tensor_pairs(M: SuperModule, N: SuperModule) -> tuple[tuple[int, int], ...]:
    """``pairs[k] = (i, j)``: canonical basis vector k of M (x) N is m_i (x) n_j."""
    raw = [(i, j) for i in range(M.dim) for j in range(N.dim)]
    return tuple(sorted(raw, key=lambda ij: (M.parities[ij[0]] + N.parities[ij[1]]) % 2))


@lru_cache(maxsize=None)
def tensor_index(M: SuperModule, N: SuperModule) -> dict[tuple[int, int], int]:
    return {ij: k for k, ij in enumerate(tensor_pairs(M, N))}


@lru_cache(maxsize=None)
def tensor(M: SuperModule, N: SuperModule) -> SuperModule:
    """M (x) N with basis pairs in row-major order, re-sorted even-first."""
    ring = _same_ring(M, N)
    pairs = tensor_pairs(M, N)
    return SuperModule(
        ring,
        tuple(f"{M.names[i]}⊗{N.names[j]}" for i, j in pairs),
        tuple((M.parities[i] + N.parities[j]) % 2 for i, j in pairs),
    )


@lru_cache(maxsize=None)
def direct_sum_embedding(M: SuperModule, N: SuperModule) -> tuple[SuperModule, tuple[int, ...], tuple[int, ...]]:
    """M (+) N together with the canonical positions of M's and N's basis vectors."""
    ring = _same_ring(M, N)
    names = list(M.names) + [n if n not in M.names else f"{n}'" for n in N.names]
    module, order = canonical(ring, names, M.parities + N.parities)
    where = {orig: k for k, orig in enumerate(order)}
    return module, tuple(where[i] for i in range(M.dim)), tuple(where[M.dim + j] for j in range(N.dim))


def direct_sum(M: SuperModule, N: SuperModule) -> SuperModule:
    return direct_sum_embedding(M, N)[0]


def hom_parity(M: SuperModule, N: SuperModule, j: int, i: int) -> int:
    """Parity of the matrix unit e(j,i): v_i -> w_j."""
    return (M.parities[i] + N.parities[j]) % 2


@lru_cache(maxsize=None)
def hom_units(M: SuperModule, N: SuperModule) -> tuple[tuple[int, int], ...]:
    """``units[k] = (j, i)`` for canonical basis vector k of Hom(M, N)."""
    raw = [(j, i) for j in range(N.dim) for i in range(M.dim)]
    return tuple(sorted(raw, key=lambda ji: hom_parity(M, N, *ji)))


@lru_cache(maxsize=None)
def hom_module(M: SuperModule, N: SuperModule) -> SuperModule:
    """Hom(M, N) with basis of matrix units e(j,i), named 1-based."""
    ring = _same_ring(M, N)
    units = hom_units(M, N)
    return SuperModule(
        ring,
        tuple(f"e({j + 1},{i + 1})" for j, i in units),
        tuple(hom_parity(M, N, j, i) for j, i in units),
    )


@lru_cache(maxsize=None)
def _parity_change_order(M: SuperModule) -> tuple[SuperModule, tuple[int, ...]]:
    module, order = canonical(M.ring, M.names, [1 - p for p in M.parities])
    return module, tuple(order)


def parity_change(M: SuperModule) -> SuperModule:
    """Pi M: the same vectors with opposite parity (re-sorted even-first)."""
    return _parity_change_order(M)[0]


# ---------------------------------------------------------------------------
# linear maps


def _block_masks(source: SuperModule, target: SuperModule) -> tuple[np.ndarray, np.ndarray]:
    sp = np.array(source.parities, dtype=np.int64)
    tp = np.array(target.parities, dtype=np.int64)
    odd = (tp[:, None] + sp[None, :]) % 2 == 1
    return ~odd, odd


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A k-linear map stored as its even and odd homogeneous parts.

    Matrices act on column vectors: column ``i`` holds the image of source
    basis vector ``i``.
    """

    source: SuperModule
    target: SuperModule
    even: Matrix
    odd: Matrix

    def __post_init__(self):
        shape = (self.target.dim, self.source.dim)
        if self.even.shape != shape or self.odd.shape != shape:
            raise ValueError(f"parts must have shape {shape}")
        even_mask, odd_mask = _block_masks(self.source, self.target)
        if any(self.even.data[odd_mask]) or any(self.odd.data[even_mask]):
            raise ValueError("homogeneous parts violate the parity block structure")

    @classmethod
    def from_matrix(cls, source: SuperModule, target: SuperModule, m: Matrix | np.ndarray) -> LinearMap:
        ring = _same_ring(source, target)
        data = m.data if isinstance(m, Matrix) else np.asarray(m, dtype=object)
        even_mask, odd_mask = _block_masks(source, target)
        even = np.where(even_mask, data, 0).astype(object)
        odd = np.where(odd_mask, data, 0).astype(object)
        return cls(source, target, Matrix(ring, even), Matrix(ring, odd))

    @classmethod
    def from_columns(cls, source: SuperModule, target: SuperModule, columns: Sequence[Mapping[int, int]]) -> LinearMap:
        data = np.zeros((target.dim, source.dim), dtype=object)
        for i, col in enumerate(columns):
            for j, v in col.items():
                data[j, i] += v
        return cls.from_matrix(source, target, data)

    @classmethod
    def identity(cls, M: SuperModule) -> LinearMap:
        return cls.from_matrix(M, M, Matrix.identity(M.ring, M.dim))

    @property
    def ring(self) -> Ring:
        return self.source.ring

    @property
    def matrix(self) -> Matrix:
        return self.even + self.odd

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous maps, None for mixed (zero map counts as even)."""
        if self.odd.is_zero():
            return EVEN
        if self.even.is_zero():
            return ODD
        return None

    def part(self, parity: int) -> LinearMap:
        zero = Matrix.zeros(self.ring, self.target.dim, self.source.dim)
        if parity == EVEN:
            return LinearMap(self.source, self.target, self.even, zero)
        return LinearMap(self.source, self.target, zero, self.odd)

    def parts(self) -> list[tuple[int, Matrix]]:
        """Nonzero homogeneous parts as ``(parity, matrix)`` pairs."""
        return [(p, m) for p, m in ((EVEN, self.even), (ODD, self.odd)) if not m.is_zero()]

    def column(self, i: int) -> Vector:
        col = self.matrix.data[:, i]
        return {j: int(v) for j, v in enumerate(col) if v}

    def apply(self, x: Mapping[int, int]) -> Vector:
        out: Vector = {}
        data = self.matrix.data
        for i, c in x.items():
            for j in range(self.target.dim):
                if data[j, i]:
                    add_into(out, j, c * data[j, i], self.ring)
        return out

    def compose(self, other: LinearMap) -> LinearMap:
        """``self o other`` (apply ``other`` first)."""
        if other.target != self.source:
            raise ValueError("cannot compose: target/source mismatch")
        return LinearMap(
            other.source,
            self.target,
            self.even @ other.even + self.odd @ other.odd,
            self.even @ other.odd + self.odd @ other.even,
        )

    __matmul__ = compose

    def __add__(self, other: LinearMap) -> LinearMap:
        return LinearMap(self.source, self.target, self.even + other.even, self.odd + other.odd)

    def __neg__(self) -> LinearMap:
        return LinearMap(self.source, self.target, -self.even, -self.odd)

    def scale(self, c: int) -> LinearMap:
        return LinearMap(self.source, self.target, self.even.scale(c), self.odd.scale(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.even == other.even and self.odd == other.odd)

    __hash__ = None


def parity_change_map(phi: LinearMap) -> LinearMap:
    """Pi(phi) = (-1)^{parity} phi on each homogeneous part, as a map Pi M -> Pi N."""
    src, sorder = _parity_change_order(phi.source)
    tgt, torder = _parity_change_order(phi.target)
    data = (phi.even - phi.odd).data
    return LinearMap.from_matrix(src, tgt, data[np.ix_(list(torder), list(sorder))])


def boxtimes(phi: LinearMap, psi: LinearMap) -> LinearMap:
    """phi [x] psi: v (x) w -> (-1)^{|psi||v|} phi(v) (x) psi(w)."""
    ring = _same_ring(phi.source, psi.source, phi.target, psi.target)
    src = tensor(phi.source, psi.source)
    tgt = tensor(phi.target, psi.target)
    tidx = tensor_index(phi.target, psi.target)
    out = np.zeros((tgt.dim, src.dim), dtype=object)
    for col, (i, j) in enumerate(tensor_pairs(phi.source, psi.source)):
        vbar = phi.source.parities[i]
        for pb, pm in psi.parts():
            sign = -1 if (pb and vbar) else 1
            ys = [(l, int(pm.data[l, j])) for l in range(psi.target.dim) if pm.data[l, j]]
            xs = [(k, int(v)) for k, v in enumerate(phi.matrix.data[:, i]) if v]
            for k, a in xs:
                for l, b in ys:
                    out[tidx[k, l], col] += sign * a * b
    return LinearMap.from_matrix(src, tgt, Matrix(ring, out))


def supertwist(M: SuperModule, N: SuperModule) -> LinearMap:
    """tau: M (x) N -> N (x) M, v (x) w -> (-1)^{|v||w|} w (x) v."""
    src = tensor(M, N)
    tgt = tensor(N, M)
    tidx = tensor_index(N, M)
    cols = []
    for i, j in tensor_pairs(M, N):
        sign = -1 if (M.parities[i] and N.parities[j]) else 1
        cols.append({tidx[j, i]: sign})
    return LinearMap.from_columns(src, tgt, cols)
