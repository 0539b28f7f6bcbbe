"""Symmetric groups acting on tensor powers by signed place permutations.

Conventions: a :class:`Permutation` ``s`` moves the letter in position ``i``
to position ``s(i)``, with the Koszul sign of the resulting reordering of odd
letters.  Products are written left to right (``p * q`` applies ``p``
first), which makes this a right action::

    act(act(x, p), q) == act(x, p * q)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .coeff import SizeLimitError, add_into, nullspace_mod_p
from .supermod import SuperModule

DEFAULT_MAX_WORDS = 10**6

Word = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"{imgs} is not a permutation of 1..{len(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, d: int) -> Permutation:
        imgs = list(range(1, d + 1))
        imgs[i - 1], imgs[j - 1] = j, i
        return cls(tuple(imgs))

    @classmethod
    def from_cycles(cls, d: int, *cycles: Sequence[int]) -> Permutation:
        """Build from cycle notation: ``(1, 2, 3)`` sends 1->2->3->1."""
        imgs = list(range(1, d + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                imgs[a - 1] = b
        return cls(tuple(imgs))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other(self(i)) for i in range(1, self.degree + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def inversions(self) -> int:
        imgs = self.images
        return sum(1 for i in range(len(imgs)) for j in range(i + 1, len(imgs)) if imgs[i] > imgs[j])

    def sign(self) -> int:
        return -1 if self.inversions() % 2 else 1

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def act_word(word: Word, parities: Sequence[int], sigma: Permutation) -> tuple[int, Word]:
    """Signed place permutation of one basis word.

    ``parities[k]`` is the parity of letter ``word[k]``.  The sign counts pairs
    of odd letters whose relative order ``sigma`` reverses.
    """
    d = len(word)
    if sigma.degree != d:
        raise ValueError(f"permutation of degree {sigma.degree} cannot act on a word of length {d}")
    imgs = sigma.images
    new = [0] * d
    for i in range(d):
        new[imgs[i] - 1] = word[i]
    odd_inv = 0
    for i in range(d):
        if parities[i]:
            for j in range(i + 1, d):
                if parities[j] and imgs[i] > imgs[j]:
                    odd_inv += 1
    return (-1 if odd_inv % 2 else 1), tuple(new)


def act(x: Mapping[Word, int], sigma: Permutation, module: SuperModule) -> dict[Word, int]:
    """Right action of ``sigma`` on a vector of ``module``^{(x)d}."""
    out: dict[Word, int] = {}
    par = module.parities
    for w, c in x.items():
        sign, nw = act_word(w, [par[a] for a in w], sigma)
        add_into(out, nw, sign * c, module.ring)
    return out


class TensorPower:
    """M^{(x)d} with basis words in lexicographic order of index tuples."""

    def __init__(self, base: SuperModule, d: int, max_words: int = DEFAULT_MAX_WORDS):
        if d < 0:
            raise ValueError("degree must be nonnegative")
        if base.dim**d > max_words:
            raise SizeLimitError(f"tensor power has {base.dim}^{d} words, above the cap {max_words}")
        self.base = base
        self.d = d

    @property
    def dim(self) -> int:
        return self.base.dim**self.d

    @cached_property
    def words(self) -> list[Word]:
        return list(itertools.product(range(self.base.dim), repeat=self.d))

    @cached_property
    def index(self) -> dict[Word, int]:
        return {w: k for k, w in enumerate(self.words)}

    def parity(self, w: Word) -> int:
        return sum(self.base.parities[a] for a in w) % 2

    def act_matrix(self, sigma: Permutation) -> np.ndarray:
        """Dense matrix of ``act(., sigma)`` on column vectors."""
        n = self.dim
        m = np.zeros((n, n), dtype=np.int64)
        par = self.base.parities
        for col, w in enumerate(self.words):
            sign, nw = act_word(w, [par[a] for a in w], sigma)
            m[self.index[nw], col] = sign
        return m


def adjacent_transpositions(d: int) -> list[Permutation]:
    return [Permutation.transposition(i, i + 1, d) for i in range(1, d)]


def invariants(M: SuperModule, d: int, prime: int, max_words: int = DEFAULT_MAX_WORDS) -> list[dict[Word, int]]:
    """Brute-force basis of (M^{(x)d})^{S_d} over GF(prime).

    Solves the stacked system (s_i - 1) x = 0 for the adjacent
    transpositions s_1..s_{d-1}.
    """
    T = TensorPower(M, d, max_words)
    n = T.dim
    blocks = [T.act_matrix(s) - np.eye(n, dtype=np.int64) for s in adjacent_transpositions(d)]
    system = np.vstack(blocks) if blocks else np.zeros((0, n), dtype=np.int64)
    kernel = nullspace_mod_p(system, prime)
    return [{T.words[k]: int(v) for k, v in enumerate(row) if v} for row in kernel]


def coset_reps(d: int, e: int) -> list[Permutation]:
    """Minimal-length shuffles representing S_{d+e} / (S_d x S_e).

    One per d-subset S of {1..d+e} (colex order): the permutation moving
    positions 1..d onto S and d+1..d+e onto the complement, both in order.
    """
    if d < 0 or e < 0:
        raise ValueError("d and e must be nonnegative")
    n = d + e
    subsets = sorted(itertools.combinations(range(1, n + 1), d), key=lambda s: s[::-1])
    reps = []
    for S in subsets:
        rest = [k for k in range(1, n + 1) if k not in S]
        reps.append(Permutation(tuple(S) + tuple(rest)))
    return reps


def all_permutations(d: int) -> Iterable[Permutation]:
    for p in itertools.permutations(range(1, d + 1)):
        yield Permutation(p)
