"""Generalized Schur superalgebras S^A(n,d), S^A(m|n,d) and weight idempotents."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .coeff import Ring, _resolve_prime, add_into, rank_mod_p
from .divpow import DividedPower, DividedPowerAlgebra, divided_power, interleave
from .salg import DEFAULT_MAX_DIM, SuperAlgebra, matrix_superalgebra, matrix_unit_index
from .supermod import SuperModule, Vector, free_module, hom_module, hom_units, tensor, tensor_pairs
from .symact import Word

Weight = tuple[int, ...]


@dataclass
class SchurAlgebra:
    """Gamma^d M_{n|m}(A) together with its construction data."""

    base_algebra: SuperAlgebra
    n: int
    m: int
    d: int
    matrix_algebra: SuperAlgebra
    algebra: DividedPowerAlgebra

    @property
    def divided(self) -> DividedPower:
        return self.algebra.divided

    @property
    def labels(self):
        return self.divided.basis

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def ring(self) -> Ring:
        return self.algebra.ring

    def mul(self, x: Mapping[int, int], y: Mapping[int, int]) -> Vector:
        return self.algebra.mul(x, y)

    def one(self) -> Vector:
        return self.algebra.one()

    def __repr__(self) -> str:
        shape = f"{self.n}" if self.m == 0 else f"{self.n}|{self.m}"
        return f"<S^{self.base_algebra.name}({shape},{self.d}), dim {self.dim}>"


def schur_algebra(A: SuperAlgebra, n: int, d: int, max_dim: int = DEFAULT_MAX_DIM) -> SchurAlgebra:
    """S^A(n,d) = Gamma^d M_n(A)."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    Mn = matrix_superalgebra(A, n, 0, max_dim=max_dim)
    S = DividedPowerAlgebra(Mn, d, max_dim=max_dim)
    S.name = f"S^{A.name}({n},{d})"
    return SchurAlgebra(A, n, 0, d, Mn, S)


def schur_algebra_super(A: SuperAlgebra, m: int, n: int, d: int, max_dim: int = DEFAULT_MAX_DIM) -> SchurAlgebra:
    """S^A(m|n,d) = Gamma^d M_{m|n}(A), first block even."""
    if m < 0 or n < 0 or m + n < 1 or d < 1:
        raise ValueError("need m+n >= 1 and d >= 1")
    Mmn = matrix_superalgebra(A, m, n, max_dim=max_dim)
    S = DividedPowerAlgebra(Mmn, d, max_dim=max_dim)
    S.name = f"S^{A.name}({m}|{n},{d})"
    return SchurAlgebra(A, m, n, d, Mmn, S)


def weights(n: int, d: int) -> Iterator[Weight]:
    """Lambda(n,d): compositions of d into n nonnegative parts, lexicographically descending."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in weights(n - 1, d - first):
            yield (first,) + rest


def omega(n: int, d: int) -> Weight:
    """(1,...,1,0,...,0) in Lambda(n,d); needs n >= d."""
    if n < d:
        raise ValueError(f"omega needs n >= d, got n={n}, d={d}")
    return (1,) * d + (0,) * (n - d)


def diagonal_idempotent(S: SchurAlgebra, i: int) -> Vector:
    """1_A (x) e(i,i) in M_n(A), i 0-based."""
    A = S.base_algebra
    out: Vector = {}
    for r, c in A.unit.items():
        add_into(out, matrix_unit_index(S.matrix_algebra, A, S.n, S.m, r, i, i), c, A.ring)
    return out


def weight_idempotent(S: SchurAlgebra, lam: Weight) -> Vector:
    """xi_lambda: the divided product of the diagonal idempotents f_i^{lambda_i}.

    Computed as the orbit sum of f_1^{(x)lambda_1} (x) ... (x) f_n^{(x)lambda_n}
    in M_n(A)^{(x)d}, then contracted into the divided basis.
    """
    lam = tuple(lam)
    if S.m != 0:
        raise ValueError("weight idempotents are defined for S^A(n,d) only")
    if len(lam) != S.n or any(x < 0 for x in lam) or sum(lam) != S.d:
        raise ValueError(f"{lam} is not a weight in Lambda({S.n},{S.d})")
    ring = S.ring
    f = [diagonal_idempotent(S, i) for i in range(S.n)]
    # positions assigned to each diagonal slot, over all distinct arrangements
    slots = [i for i, k in enumerate(lam) for _ in range(k)]
    tensor_x: dict[Word, int] = {}
    for arrangement in set(itertools.permutations(slots)):
        factors = [f[i].items() for i in arrangement]
        for choice in itertools.product(*factors):
            c = 1
            for _, v in choice:
                c *= v
            add_into(tensor_x, tuple(k for k, _ in choice), c, ring)
    return S.divided.contract(tensor_x)


# ---------------------------------------------------------------------------
# composition surjectivity


@dataclass
class SurjectivityReport:
    d: int
    middle: tuple[int, int]
    source: tuple[int, int]
    target: tuple[int, int]
    prime: int
    rank: int
    dims: dict = field(default_factory=dict)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.dims["target"]

    def summary(self) -> str:
        status = "full rank" if self.full_rank else "rank deficit"
        return (f"d={self.d} middle={self.middle[0]}|{self.middle[1]} source={self.source[0]}|{self.source[1]} "
                f"target={self.target[0]}|{self.target[1]} mod {self.prime}: rank {self.rank} / "
                f"{self.dims['target']} ({status})")


def _hom_A(A: SuperAlgebra, X: SuperModule, Y: SuperModule) -> tuple[SuperModule, dict[int, tuple[int, int, int]]]:
    """Hom_A(A^X, A^Y) ~ A (x) Hom(X, Y): basis e^{(r)}(k,j) and its labels (r, k, j)."""
    H = hom_module(X, Y)
    units = hom_units(X, Y)
    carrier = tensor(A.carrier, H)
    labels = {t: (r, *units[s]) for t, (r, s) in enumerate(tensor_pairs(A.carrier, H))}
    return carrier, labels


def composition_surjectivity_check(
    A: SuperAlgebra,
    d: int,
    m: int,
    n: int,
    source: tuple[int, int],
    target: tuple[int, int],
    prime: int | None = None,
) -> SurjectivityReport:
    """Rank of Gamma^d Hom_A(A^{m|n}, Y) (x) Gamma^d Hom(k^{p|q}, k^{m|n}) -> Gamma^d Hom_A(X, Y).

    X = A^{p|q} and Y = A^{s|t}.  The underlying composition pairs
    e^{(r)}(k,j1) with e(j2,i) to delta_{j1 j2} e^{(r)}(k,i); the divided-power
    map is Gamma^d(composition) o psi^d.
    """
    p = _resolve_prime(A.ring, prime)
    ring = A.ring
    Xk = free_module(*source, ring=ring)
    Pk = free_module(m, n, ring=ring)
    Yk = free_module(*target, ring=ring)
    H1, lab1 = _hom_A(A, Pk, Yk)
    H2 = hom_module(Xk, Pk)
    units2 = hom_units(Xk, Pk)
    H3, lab3 = _hom_A(A, Xk, Yk)
    index3 = {v: k for k, v in lab3.items()}
    G1, G2, G3 = divided_power(H1, d), divided_power(H2, d), divided_power(H3, d)

    # composition on letters of the interleaved word (H1 (x) H2)
    pairs12 = tensor_pairs(H1, H2)
    compose: dict[int, int | None] = {}
    for t, (a, b) in enumerate(pairs12):
        r, k, j1 = lab1[a]
        j2, i = units2[b]
        compose[t] = index3[r, k, i] if j1 == j2 else None

    cols = []
    for x in range(G1.dim):
        for y in range(G2.dim):
            img: dict[Word, int] = {}
            for w1, c1 in G1.expand(x).items():
                for w2, c2 in G2.expand(y).items():
                    sign, w = interleave(w1, w2, H1, H2)
                    letters = [compose[t] for t in w]
                    if None in letters:
                        continue
                    add_into(img, tuple(letters), sign * c1 * c2, ring)
            cols.append(G3.contract(img))
    mat = np.zeros((len(cols), G3.dim), dtype=np.int64)
    for r_, col in enumerate(cols):
        for k, v in col.items():
            mat[r_, k] = v % p
    rk = rank_mod_p(mat, p) if cols and G3.dim else 0
    dims = {"hom_middle_target": G1.dim, "hom_source_middle": G2.dim, "target": G3.dim, "pairs": len(cols)}
    return SurjectivityReport(d, (m, n), tuple(source), tuple(target), p, rk, dims)
