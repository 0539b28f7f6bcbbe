"""Divided powers of free supermodules and superalgebras.

An element of Gamma^d M is stored by its coordinates in the standard basis
of orbit sums: even letters with multiplicities, followed by distinct odd
letters.  :meth:`DividedPower.expand` writes a basis element as a vector of
M^{(x)d}; :meth:`DividedPower.contract` reads coordinates back off the
sorted ("canonical") words of an invariant tensor, whose coefficient in the
orbit sum is always exactly +1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

import numpy as np

from .coeff import Matrix, Ring, SizeLimitError, add_into
from .salg import DEFAULT_MAX_DIM, SuperAlgebra
from .supermod import (
    EVEN,
    LinearMap,
    SuperModule,
    Vector,
    direct_sum_embedding,
    tensor,
    tensor_index,
    tensor_pairs,
)
from .symact import Word, act_word, adjacent_transpositions, coset_reps


class NotInvariantError(ValueError):
    """A tensor handed to :meth:`DividedPower.contract` is not S_d-invariant."""


@dataclass(frozen=True, order=True)
class DividedBasisElement:
    """Basis label: ``even_part`` is ((index, multiplicity), ...), ``odd_part`` distinct indices."""

    even_part: tuple[tuple[int, int], ...]
    odd_part: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.even_part) + len(self.odd_part)

    @property
    def parity(self) -> int:
        return len(self.odd_part) % 2

    @property
    def word(self) -> Word:
        """The canonical sorted word: even letters with repeats, then odd letters."""
        w: list[int] = []
        for i, k in self.even_part:
            w.extend([i] * k)
        w.extend(self.odd_part)
        return tuple(w)

    def name(self, module: SuperModule) -> str:
        if not self.even_part and not self.odd_part:
            return "1"
        parts = [module.names[i] if k == 1 else f"{module.names[i]}^{k}" for i, k in self.even_part]
        parts += [module.names[j] for j in self.odd_part]
        return "{" + ", ".join(parts) + "}"


def _from_word(word: Word) -> DividedBasisElement:
    return DividedBasisElement(tuple((i, len(list(g))) for i, g in itertools.groupby(word)), ())


def divided_basis(M: SuperModule, d: int) -> list[DividedBasisElement]:
    """Standard basis of Gamma^d M.

    Ordered even elements first (to keep Gamma^d M in canonical even-first
    form), then by the sorted even word and ``odd_part`` lexicographically,
    e.g. v1^2, v1 v2, v2^2.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    evens = [i for i in range(M.dim) if M.parities[i] == EVEN]
    odds = [i for i in range(M.dim) if M.parities[i] != EVEN]
    out = []
    for l in range(min(d, len(odds)) + 1):
        for odd in itertools.combinations(odds, l):
            for even in itertools.combinations_with_replacement(evens, d - l):
                e = _from_word(even)
                out.append(DividedBasisElement(e.even_part, odd))
    out.sort(key=lambda e: (e.parity, e.word[: e.degree - len(e.odd_part)], e.odd_part))
    return out


def dim_formula(mu: int, nu: int, d: int) -> int:
    """Rank of Gamma^d k^{mu|nu}: sum over k+l=d of C(mu+k-1, k) C(nu, l)."""
    return sum(dim_breakdown(mu, nu, d).values())


def dim_breakdown(mu: int, nu: int, d: int) -> dict[tuple[int, int], int]:
    """Terms ``{(k, l): C(mu+k-1, k) * C(nu, l)}`` of :func:`dim_formula`."""
    if min(mu, nu, d) < 0:
        raise ValueError("arguments must be nonnegative")
    out = {}
    for l in range(d + 1):
        k = d - l
        sym = 1 if k == 0 else math.comb(mu + k - 1, k)
        out[k, l] = sym * math.comb(nu, l)
    return out


def dim_split(mu: int, nu: int, d: int) -> tuple[int, int]:
    """(even, odd) ranks of Gamma^d k^{mu|nu}."""
    even = odd = 0
    for (k, l), n in dim_breakdown(mu, nu, d).items():
        if l % 2:
            odd += n
        else:
            even += n
    return even, odd


def _arrangements(word: Word, parities: Sequence[int]) -> Iterator[tuple[int, Word]]:
    """Distinct rearrangements of a sorted word, each with its Koszul sign."""
    counts: dict[int, int] = {}
    for a in word:
        counts[a] = counts.get(a, 0) + 1
    letters = sorted(counts)
    d = len(word)
    cur: list[int] = []

    def rec() -> Iterator[Word]:
        if len(cur) == d:
            yield tuple(cur)
            return
        for a in letters:
            if counts[a]:
                counts[a] -= 1
                cur.append(a)
                yield from rec()
                cur.pop()
                counts[a] += 1

    for w in rec():
        odd = [a for a in w if parities[a]]
        inv = sum(1 for x in range(len(odd)) for y in range(x + 1, len(odd)) if odd[x] > odd[y])
        yield (-1 if inv % 2 else 1), w


def interleave(mword: Word, nword: Word, M: SuperModule, N: SuperModule) -> tuple[int, Word]:
    """(m1..md) (x) (n1..nd) -> +-(m1 (x) n1)...(md (x) nd) in (M (x) N)^{(x)d}.

    The sign is (-1)^{sum_{i<j} |n_i||m_j|}: each n_i moves left past the m_j
    with j > i.
    """
    idx = tensor_index(M, N)
    mp, np_ = M.parities, N.parities
    flips = 0
    odd_m_after = sum(mp[a] for a in mword)
    for i in range(len(mword)):
        odd_m_after -= mp[mword[i]]
        if np_[nword[i]]:
            flips += odd_m_after
    return (-1 if flips % 2 else 1), tuple(idx[a, b] for a, b in zip(mword, nword))


class DividedPower:
    """Gamma^d M with its standard basis and coordinate maps."""

    def __init__(self, M: SuperModule, d: int):
        self.base = M
        self.d = d
        self.basis = divided_basis(M, d)
        self.module = SuperModule(
            M.ring,
            tuple(e.name(M) for e in self.basis),
            tuple(e.parity for e in self.basis),
        )
        self._word_index = {e.word: k for k, e in enumerate(self.basis)}
        self._expansions: dict[int, dict[Word, int]] = {}

    def __repr__(self) -> str:
        return f"DividedPower({self.base!r}, d={self.d}, dim={self.dim})"

    @property
    def ring(self) -> Ring:
        return self.base.ring

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index_of(self, e: DividedBasisElement) -> int:
        return self._word_index[e.word]

    def expand(self, i: int | DividedBasisElement) -> dict[Word, int]:
        """Orbit sum of the canonical word of basis element ``i`` in M^{(x)d}."""
        if isinstance(i, DividedBasisElement):
            i = self.index_of(i)
        try:
            return self._expansions[i]
        except KeyError:
            pass
        word = self.basis[i].word
        out = {w: s for s, w in _arrangements(word, self.base.parities)}
        if self.ring.modulus is not None:
            out = {w: s % self.ring.modulus for w, s in out.items()}
        self._expansions[i] = out
        return out

    def expand_vector(self, x: Mapping[int, int]) -> dict[Word, int]:
        out: dict[Word, int] = {}
        for i, c in x.items():
            for w, s in self.expand(i).items():
                add_into(out, w, c * s, self.ring)
        return out

    def is_invariant(self, x: Mapping[Word, int]) -> bool:
        par = self.base.parities
        ring = self.ring
        for s in adjacent_transpositions(self.d):
            for w, c in x.items():
                sign, nw = act_word(w, [par[a] for a in w], s)
                if ring.reduce(x.get(nw, 0) - sign * c):
                    return False
        return True

    def contract(self, x: Mapping[Word, int], check: bool = True) -> Vector:
        """Coordinates of an invariant tensor in the divided basis."""
        if check and not self.is_invariant(x):
            raise NotInvariantError("tensor is not invariant under the symmetric group")
        par = self.base.parities
        out: Vector = {}
        for w, c in x.items():
            k = self._word_index.get(w)
            if k is not None:
                add_into(out, k, c, self.ring)
            elif check and c and list(w) == sorted(w):
                # sorted word with a repeated odd letter: outside the span
                odd = [a for a in w if par[a]]
                if len(set(odd)) < len(odd):
                    raise NotInvariantError(f"coefficient {c} on word {w} with a repeated odd letter")
        return out


@lru_cache(maxsize=None)
def _divided_power(M: SuperModule, d: int) -> DividedPower:
    return DividedPower(M, d)


def divided_power(M: SuperModule, d: int) -> DividedPower:
    """Cached :class:`DividedPower` for (M, d)."""
    return _divided_power(M, d)


def expand(e: DividedBasisElement, M: SuperModule) -> dict[Word, int]:
    return divided_power(M, e.degree).expand(e)


def contract(x: Mapping[Word, int], M: SuperModule, d: int | None = None) -> Vector:
    if d is None:
        d = len(next(iter(x))) if x else 0
    return divided_power(M, d).contract(x)


# ---------------------------------------------------------------------------
# psi^d and functoriality


def psi_image(GM: DividedPower, GN: DividedPower, i: int, j: int) -> dict[Word, int]:
    """Image of (basis i) (x) (basis j) in (M (x) N)^{(x)d}, before contraction."""
    M, N = GM.base, GN.base
    ring = GM.ring
    out: dict[Word, int] = {}
    for mw, a in GM.expand(i).items():
        for nw, b in GN.expand(j).items():
            sign, w = interleave(mw, nw, M, N)
            add_into(out, w, sign * a * b, ring)
    return out


def psi_d(M: SuperModule, N: SuperModule, d: int, check: bool = True) -> LinearMap:
    """psi^d: Gamma^d M (x) Gamma^d N -> Gamma^d (M (x) N)."""
    if M.ring != N.ring:
        raise ValueError(f"ring mismatch: {M.ring} vs {N.ring}")
    GM, GN = divided_power(M, d), divided_power(N, d)
    GMN = divided_power(tensor(M, N), d)
    source = tensor(GM.module, GN.module)
    cols = [GMN.contract(psi_image(GM, GN, i, j), check=check) for i, j in tensor_pairs(GM.module, GN.module)]
    return LinearMap.from_columns(source, GMN.module, cols)


def tensor_power_map(phi: LinearMap, word: Word) -> dict[Word, int]:
    """phi [x] ... [x] phi applied to one basis word (phi must be even)."""
    if phi.parity not in (EVEN,):
        raise ValueError("Gamma^d is only functorial for even maps")
    cols = [phi.column(a) for a in word]
    ring = phi.ring
    out: dict[Word, int] = {}
    for choice in itertools.product(*(c.items() for c in cols)):
        coeff = 1
        for _, v in choice:
            coeff *= v
        add_into(out, tuple(k for k, _ in choice), coeff, ring)
    return out


def gamma_map(phi: LinearMap, d: int) -> LinearMap:
    """Gamma^d(phi): the restriction of phi^{(x)d} to divided powers (phi even)."""
    GM = divided_power(phi.source, d)
    GN = divided_power(phi.target, d)
    cols = []
    for i in range(GM.dim):
        img: dict[Word, int] = {}
        for w, c in GM.expand(i).items():
            for nw, v in tensor_power_map(phi, w).items():
                add_into(img, nw, c * v, phi.ring)
        cols.append(GN.contract(img))
    return LinearMap.from_columns(GM.module, GN.module, cols)


# ---------------------------------------------------------------------------
# divided power algebras


def word_product(A: SuperAlgebra, x: Word, y: Word) -> dict[Word, int]:
    """Product of basis words in the superalgebra A^{(x)d} (rule of signs)."""
    flips = 0
    odd_x_after = sum(A.parity(a) for a in x)
    for i in range(len(x)):
        odd_x_after -= A.parity(x[i])
        if A.parity(y[i]):
            flips += odd_x_after
    sign = -1 if flips % 2 else 1
    factors = [A.basis_product(a, b) for a, b in zip(x, y)]
    out: dict[Word, int] = {}
    if any(not f for f in factors):
        return out
    for choice in itertools.product(*(f.items() for f in factors)):
        c = sign
        for _, v in choice:
            c *= v
        add_into(out, tuple(k for k, _ in choice), c, A.ring)
    return out


def tensor_power_product(A: SuperAlgebra, X: Mapping[Word, int], Y: Mapping[Word, int]) -> dict[Word, int]:
    out: dict[Word, int] = {}
    for x, a in X.items():
        for y, b in Y.items():
            for w, c in word_product(A, x, y).items():
                add_into(out, w, a * b * c, A.ring)
    return out


def unit_power(A: SuperAlgebra, d: int) -> dict[Word, int]:
    """1_A^{(x)d} in A^{(x)d}."""
    out: dict[Word, int] = {}
    items = list(A.unit.items())
    for choice in itertools.product(items, repeat=d):
        c = 1
        for _, v in choice:
            c *= v
        add_into(out, tuple(k for k, _ in choice), c, A.ring)
    return out


class DividedPowerAlgebra(SuperAlgebra):
    """Gamma^d A, a subsuperalgebra of A^{(x)d}; products are computed on demand."""

    def __init__(self, A: SuperAlgebra, d: int, max_dim: int = DEFAULT_MAX_DIM, check: bool = False):
        if d < 0:
            raise ValueError("degree must be nonnegative")
        self.base_algebra = A
        self.d = d
        self.divided = DividedPower(A.carrier, d)
        if self.divided.dim > max_dim:
            raise SizeLimitError(f"Gamma^{d} has dimension {self.divided.dim}, above the cap {max_dim}")
        self._check = check
        unit = self.divided.contract(unit_power(A, d), check=check)
        super().__init__(self.divided.module, unit, product=self._basis_product, name=f"Γ^{d}({A.name})")

    def _basis_product(self, i: int, j: int) -> Vector:
        G = self.divided
        prod = tensor_power_product(self.base_algebra, G.expand(i), G.expand(j))
        return G.contract(prod, check=self._check)

    def expand_element(self, x: Mapping[int, int]) -> dict[Word, int]:
        return self.divided.expand_vector(x)


def divided_power_algebra(A: SuperAlgebra, d: int, max_dim: int = DEFAULT_MAX_DIM, check: bool = False) -> DividedPowerAlgebra:
    """Gamma^d A with multiplication Gamma^d(m_A) o psi^d."""
    return DividedPowerAlgebra(A, d, max_dim=max_dim, check=check)


# ---------------------------------------------------------------------------
# outer products and comultiplication


def outer_product(x: Mapping[int, int], y: Mapping[int, int], GM: DividedPower, GN: DividedPower) -> tuple[Vector, DividedPower]:
    """x . y in Gamma^{d+e}(M (+) N): the shuffle sum of (x (x) y).sigma.

    Returns the coordinates and the target :class:`DividedPower`.
    """
    if GM.ring != GN.ring:
        raise ValueError(f"ring mismatch: {GM.ring} vs {GN.ring}")
    S, emb_m, emb_n = direct_sum_embedding(GM.base, GN.base)
    G = divided_power(S, GM.d + GN.d)
    ring = GM.ring
    par = S.parities
    reps = coset_reps(GM.d, GN.d)
    X = GM.expand_vector(x)
    Y = GN.expand_vector(y)
    total: dict[Word, int] = {}
    for mw, a in X.items():
        for nw, b in Y.items():
            w = tuple(emb_m[k] for k in mw) + tuple(emb_n[k] for k in nw)
            letters = [par[k] for k in w]
            for sigma in reps:
                sign, nw2 = act_word(w, letters, sigma)
                add_into(total, nw2, sign * a * b, ring)
    return G.contract(total), G


def comultiply(x: Mapping[int, int], G: DividedPower, d: int, e: int) -> dict[tuple[int, int], int]:
    """Gamma^{d+e} M -> Gamma^d M (x) Gamma^e M, as {(i, j): coeff}.

    Each word is split into its first d and last e letters; both halves are
    read off in their own divided bases.
    """
    if d + e != G.d or d < 0 or e < 0:
        raise ValueError(f"cannot split degree {G.d} as {d}+{e}")
    G1 = divided_power(G.base, d)
    G2 = divided_power(G.base, e)
    ring = G.ring
    left: dict[Word, dict[Word, int]] = {}
    for w, c in G.expand_vector(x).items():
        left.setdefault(w[:d], {})[w[d:]] = c
    out: dict[tuple[int, int], int] = {}
    for w1, tail in left.items():
        i = G1._word_index.get(w1)
        if i is None:
            continue
        for w2, c in tail.items():
            j = G2._word_index.get(w2)
            if j is not None:
                add_into(out, (i, j), c, ring)
    return out


def coordinate_matrix(vectors: Sequence[Mapping[int, int]], dim: int, ring: Ring) -> Matrix:
    """Rows are the given sparse vectors."""
    data = np.zeros((len(vectors), dim), dtype=object)
    for r, v in enumerate(vectors):
        for k, c in v.items():
            data[r, k] = c
    return Matrix(ring, data)
