"""Wreath product superalgebras and the (S^A(n,d), A wr S_d)-bimodule V^{(x)d}.

Matrices here are dense int64 arrays acting on column vectors indexed by
the words of V^{(x)d} (lexicographic).  A right action is recorded by the
matrices R_w with ``x . w = R_w x``, so the module axiom reads
``R_{ww'} = R_{w'} R_w``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from .coeff import Ring, SizeLimitError, _resolve_prime, add_into, nullspace_mod_p, rank_mod_p, rref_mod_p
from .divpow import unit_power, word_product
from .salg import DEFAULT_MAX_DIM, SuperAlgebra, perm_name
from .schur import SchurAlgebra, omega, schur_algebra, weight_idempotent
from .supermod import EVEN, SuperModule, free_module, hom_module, hom_units, tensor, tensor_pairs
from .symact import DEFAULT_MAX_WORDS, Permutation, TensorPower, Word, act_word, all_permutations


class ActionAxiomError(RuntimeError):
    """A module or bimodule axiom failed during construction."""


class WreathAlgebra(SuperAlgebra):
    """A wr S_d = A^{(x)d} (x) kS_d with (x (x) r)(y (x) s) = x (y.r^{-1}) (x) rs.

    Basis pairs (word, permutation) are ordered word-major, permutations
    lexicographic, then stably sorted even-first.
    """

    def __init__(self, A: SuperAlgebra, d: int, max_dim: int = DEFAULT_MAX_DIM):
        if d < 1:
            raise ValueError("d must be >= 1")
        size = A.dim**d * math.factorial(d)
        if size > max_dim:
            raise SizeLimitError(f"wreath product dimension {size} exceeds the cap {max_dim}")
        self.base = A
        self.d = d
        perms = list(all_permutations(d))
        raw = [(w, s) for w in itertools.product(range(A.dim), repeat=d) for s in perms]
        raw.sort(key=lambda ws: self._word_parity(ws[0]))
        self.pairs: list[tuple[Word, Permutation]] = raw
        self.pair_index = {ws: k for k, ws in enumerate(raw)}
        names = tuple("⊗".join(A.names[a] for a in w) + "·" + perm_name(s.images) for w, s in raw)
        carrier = SuperModule(A.ring, names, tuple(self._word_parity(w) for w, _ in raw))
        ident = Permutation.identity(d)
        unit = {self.pair_index[w, ident]: c for w, c in unit_power(A, d).items()}
        super().__init__(carrier, unit, product=self._pair_product, name=f"{A.name}≀S_{d}")

    def _word_parity(self, w: Word) -> int:
        return sum(self.base.parity(a) for a in w) % 2

    def _pair_product(self, s: int, t: int) -> dict[int, int]:
        A = self.base
        x, rho = self.pairs[s]
        y, sigma = self.pairs[t]
        sign, y2 = act_word(y, [A.parity(a) for a in y], rho.inverse())
        out: dict[int, int] = {}
        rs = rho * sigma
        for w, c in word_product(A, x, y2).items():
            add_into(out, self.pair_index[w, rs], sign * c, A.ring)
        return out

    def element(self, word: Word, sigma: Permutation, coeff: int = 1) -> dict[int, int]:
        return self.elt(self.pair_index[tuple(word), sigma], coeff)


def wreath(A: SuperAlgebra, d: int, max_dim: int = DEFAULT_MAX_DIM) -> WreathAlgebra:
    return WreathAlgebra(A, d, max_dim)


# ---------------------------------------------------------------------------
# the bimodule V^{(x)d}


def _reduce(m: np.ndarray, ring: Ring) -> np.ndarray:
    return m % ring.modulus if ring.modulus else m


def _combine(mats: Mapping[int, np.ndarray] | list, vec: Mapping[int, int], size: int) -> np.ndarray:
    out = np.zeros((size, size), dtype=np.int64)
    for k, c in vec.items():
        out += c * mats[k]
    return out


class Bimodule:
    """V^{(x)d} with V = A (x) k^n, a left S^A(n,d)- and right A wr S_d-supermodule.

    Left: a (x) e(j,i) sends c (x) v_i to ac (x) v_j, and words act letterwise
    with sign prod_k (-1)^{|phi_k| sum_{i<k} |x_i|}.  Right: a word
    (a_1..a_d) multiplies letters on the right with sign
    (-1)^{sum_{i<j} |a_i||x_j|}, then sigma permutes places with signs.
    With ``check=True`` both module axioms and the commuting property are
    verified on all basis pairs, raising :class:`ActionAxiomError`.
    """

    def __init__(self, A: SuperAlgebra, n: int, d: int, max_dim: int = DEFAULT_MAX_DIM,
                 max_words: int = DEFAULT_MAX_WORDS, check: bool = True):
        if n < 1 or d < 1:
            raise ValueError("n and d must be >= 1")
        self.base = A
        self.n = n
        self.d = d
        self.max_dim = max_dim
        self.V = tensor(A.carrier, free_module(n, ring=A.ring))
        self.carrier = TensorPower(self.V, d, max_words)
        self._vpairs = tensor_pairs(A.carrier, free_module(n, ring=A.ring))
        self._vindex = {ri: t for t, ri in enumerate(self._vpairs)}
        self.right_algebra = wreath(A, d, max_dim)
        if check:
            self.verify()

    @property
    def ring(self) -> Ring:
        return self.base.ring

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @cached_property
    def left_algebra(self) -> SchurAlgebra:
        return schur_algebra(self.base, self.n, self.d, max_dim=self.max_dim)

    @cached_property
    def word_parities(self) -> np.ndarray:
        return np.array([self.carrier.parity(w) for w in self.carrier.words], dtype=np.int64)

    # left action ------------------------------------------------------------

    @cached_property
    def _letter_left(self) -> list[np.ndarray]:
        """Matrices of the basis of M_n(A) acting on V."""
        A = self.base
        Vk = free_module(self.n, ring=A.ring)
        E = hom_module(Vk, Vk)
        units = hom_units(Vk, Vk)
        mats = []
        for s, e in tensor_pairs(A.carrier, E):
            j, i = units[e]
            ebar = E.parities[e]
            m = np.zeros((self.V.dim, self.V.dim), dtype=np.int64)
            for t, (r, u) in enumerate(self._vpairs):
                if u != i:
                    continue
                sign = -1 if (ebar and A.parity(r)) else 1
                for k, c in A.basis_product(s, r).items():
                    m[self._vindex[k, j], t] += sign * c
            mats.append(m)
        return mats

    def _word_left(self, phi: Word) -> np.ndarray:
        letters = self._letter_left
        Mpar = self.left_algebra.matrix_algebra.carrier.parities
        Vpar = self.V.parities
        T = self.carrier
        out = np.zeros((T.dim, T.dim), dtype=np.int64)
        for col, x in enumerate(T.words):
            flips = 0
            seen = 0
            for k in range(self.d):
                if Mpar[phi[k]]:
                    flips += seen
                seen += Vpar[x[k]]
            sign = -1 if flips % 2 else 1
            choices = []
            for k in range(self.d):
                nz = np.flatnonzero(letters[phi[k]][:, x[k]])
                if nz.size == 0:
                    break
                choices.append([(int(a), int(letters[phi[k]][a, x[k]])) for a in nz])
            else:
                for combo in itertools.product(*choices):
                    c = sign
                    for _, v in combo:
                        c *= v
                    out[T.index[tuple(a for a, _ in combo)], col] += c
        return out

    @cached_property
    def left_matrices(self) -> list[np.ndarray]:
        """L_s for each basis element s of S^A(n,d)."""
        S = self.left_algebra
        cache: dict[Word, np.ndarray] = {}
        mats = []
        for i in range(S.dim):
            m = np.zeros((self.dim, self.dim), dtype=np.int64)
            for phi, c in S.divided.expand(i).items():
                if phi not in cache:
                    cache[phi] = self._word_left(phi)
                m += c * cache[phi]
            mats.append(_reduce(m, self.ring))
        return mats

    def left(self, s: Mapping[int, int]) -> np.ndarray:
        return _reduce(_combine(self.left_matrices, s, self.dim), self.ring)

    # right action -----------------------------------------------------------

    def _pair_right(self, a: Word, sigma: Permutation) -> np.ndarray:
        A = self.base
        Vpar = self.V.parities
        T = self.carrier
        out = np.zeros((T.dim, T.dim), dtype=np.int64)
        for col, x in enumerate(T.words):
            flips = 0
            odd_a = 0
            for k in range(self.d):
                flips += odd_a * Vpar[x[k]]
                odd_a += A.parity(a[k])
            sign = -1 if flips % 2 else 1
            choices = []
            for k in range(self.d):
                r, u = self._vpairs[x[k]]
                prod = A.basis_product(r, a[k])
                if not prod:
                    break
                choices.append([(self._vindex[q, u], c) for q, c in prod.items()])
            else:
                for combo in itertools.product(*choices):
                    c = sign
                    for _, v in combo:
                        c *= v
                    y = tuple(t for t, _ in combo)
                    s2, y2 = act_word(y, [Vpar[t] for t in y], sigma)
                    out[T.index[y2], col] += s2 * c
        return out

    @cached_property
    def right_matrices(self) -> list[np.ndarray]:
        """R_w for each basis element w of A wr S_d."""
        return [_reduce(self._pair_right(a, s), self.ring) for a, s in self.right_algebra.pairs]

    def right(self, w: Mapping[int, int]) -> np.ndarray:
        return _reduce(_combine(self.right_matrices, w, self.dim), self.ring)

    # axioms -----------------------------------------------------------------

    def verify(self) -> None:
        ring = self.ring
        W = self.right_algebra
        R = self.right_matrices
        if not np.array_equal(self.right(W.one()), np.eye(self.dim, dtype=np.int64)):
            raise ActionAxiomError("right action: unit does not act as identity")
        for i in range(W.dim):
            for j in range(W.dim):
                if not np.array_equal(self.right(W.basis_product(i, j)), _reduce(R[j] @ R[i], ring)):
                    raise ActionAxiomError(f"right action axiom fails on ({W.names[i]}, {W.names[j]})")
        S = self.left_algebra
        L = self.left_matrices
        if not np.array_equal(self.left(S.one()), np.eye(self.dim, dtype=np.int64)):
            raise ActionAxiomError("left action: unit does not act as identity")
        for i in range(S.dim):
            for j in range(S.dim):
                if not np.array_equal(self.left(S.algebra.basis_product(i, j)), _reduce(L[i] @ L[j], ring)):
                    raise ActionAxiomError(f"left action axiom fails on basis pair ({i}, {j})")
        for i, Ls in enumerate(L):
            for j, Rw in enumerate(R):
                if not np.array_equal(_reduce(Ls @ Rw, ring), _reduce(Rw @ Ls, ring)):
                    raise ActionAxiomError(f"left basis {i} and right basis {W.names[j]} do not commute")


def tensor_space(A: SuperAlgebra, n: int, d: int, max_dim: int = DEFAULT_MAX_DIM, check: bool = True) -> Bimodule:
    return Bimodule(A, n, d, max_dim=max_dim, check=check)


# ---------------------------------------------------------------------------
# commutants


class Commutant(SuperAlgebra):
    """A commutant over GF(p), with its basis matrices kept in ``matrices``."""

    def __init__(self, carrier, unit, table, matrices: list[np.ndarray], prime: int, name: str):
        super().__init__(carrier, unit, table=table, name=name)
        self.matrices = matrices
        self.prime = prime


def _solve_commuting(mats: list[np.ndarray], N: int, positions: np.ndarray, p: int, rng) -> np.ndarray:
    """Basis (rows over ``positions``) of {X supported on positions : MX = XM for all M}."""
    K = np.eye(len(positions), dtype=np.int64)
    if not len(positions):
        return K

    def impose(M: np.ndarray, K: np.ndarray) -> np.ndarray:
        if not len(K):
            return K
        X = np.zeros((len(K), N * N), dtype=np.int64)
        X[:, positions] = K
        X = X.reshape(len(K), N, N)
        C = ((M @ X) % p - (X @ M) % p) % p
        coeffs = nullspace_mod_p(C.reshape(len(K), N * N).T, p)
        return (coeffs @ K) % p

    if mats:
        # a random combination cuts the space down cheaply before the exact pass
        weights = rng.integers(1, p, size=len(mats))
        generic = sum(int(w) * m for w, m in zip(weights, mats)) % p
        K = impose(generic, K)
    for M in mats:
        K = impose(M, K)
    return K


def commutant(B: Bimodule, side: str = "left", prime: int | None = None, seed: int = 0) -> Commutant:
    """Endomorphisms of V^{(x)d} commuting with the chosen action, over GF(prime).

    The plain commutant of a graded family of operators is graded and is
    carried to the super commutant by X -> X J^{|X|} (J the parity operator),
    so both have the same dimension.  Diagonal operators are imposed
    directly; the remaining ones by incremental nullspaces.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    p = _resolve_prime(B.ring, prime)
    _check_prime_width(p, B.dim)
    mats = [m % p for m in (B.left_matrices if side == "left" else B.right_matrices)]
    N = B.dim
    allowed = np.ones((N, N), dtype=bool)
    rest = []
    for m in mats:
        diag = np.diagonal(m)
        if np.count_nonzero(m) == np.count_nonzero(diag):
            allowed &= diag[:, None] == diag[None, :]
        else:
            rest.append(m)
    par = B.word_parities
    rng = np.random.default_rng(seed)
    blocks = []
    for parity in (0, 1):
        pos = np.flatnonzero((allowed & (((par[:, None] + par[None, :]) % 2) == parity)).reshape(-1))
        K = _solve_commuting(rest, N, pos, p, rng)
        K, pivots = rref_mod_p(K, p) if len(K) else (K, [])
        blocks.append((pos, K, pivots))
    basis: list[np.ndarray] = []
    parities: list[int] = []
    coords = []  # (flat pivot position, basis index)
    for parity, (pos, K, pivots) in enumerate(blocks):
        for row, pc in zip(K, pivots):
            X = np.zeros(N * N, dtype=np.int64)
            X[pos] = row
            coords.append((int(pos[pc]), len(basis)))
            basis.append(X.reshape(N, N))
            parities.append(parity)

    def expand_in_basis(X: np.ndarray) -> dict[int, int]:
        flat = X.reshape(-1)
        v = {k: int(flat[f]) for f, k in coords if flat[f]}
        recon = sum((c * basis[k] for k, c in v.items()), np.zeros((N, N), dtype=np.int64)) % p
        if not np.array_equal(recon, X % p):
            raise ArithmeticError("commutant is not closed under composition")
        return v

    ring = Ring(p)
    table = {}
    for i, X in enumerate(basis):
        for j, Y in enumerate(basis):
            v = expand_in_basis((X @ Y) % p)
            if v:
                table[i, j] = v
    unit = expand_in_basis(np.eye(N, dtype=np.int64))
    carrier = SuperModule(ring, tuple(f"z{k + 1}" for k in range(len(basis))), tuple(parities))
    name = f"End_{side}(V^{B.d}) A={B.base.name} n={B.n}"
    return Commutant(carrier, unit, table, basis, p, name)


# ---------------------------------------------------------------------------
# Schur-Weyl checks


@dataclass
class WreathMapReport:
    prime: int
    wreath_dim: int
    image_rank: int
    commutant_dim: int | None
    is_homomorphism: bool
    injective: bool
    image_in_commutant: bool | None = None
    surjective_onto_commutant: bool | None = None
    failures: list = field(default_factory=list)

    @property
    def isomorphism(self) -> bool:
        return bool(self.is_homomorphism and self.injective and self.surjective_onto_commutant)

    def summary(self) -> str:
        return (f"mod {self.prime}: homomorphism={self.is_homomorphism} injective={self.injective} "
                f"(rank {self.image_rank} / dim {self.wreath_dim}) "
                f"onto commutant={self.surjective_onto_commutant} (commutant dim {self.commutant_dim})")


def _check_prime_width(p: int, N: int) -> None:
    # int64 products of reduced N x N matrices must not overflow
    if p * p * N >= 2**62:
        raise ValueError(f"prime {p} too large for exact int64 products at size {N}")


def _flat_rank(mats: list[np.ndarray], p: int) -> int:
    if not mats:
        return 0
    return rank_mod_p(np.stack([m.reshape(-1) % p for m in mats]), p)


def wreath_to_end(B: Bimodule, prime: int | None = None, with_commutant: bool = True) -> WreathMapReport:
    """The right action A wr S_d -> End(V^{(x)d})^op: homomorphism, injectivity, image vs. commutant."""
    p = _resolve_prime(B.ring, prime)
    _check_prime_width(p, B.dim)
    W = B.right_algebra
    R = [m % p for m in B.right_matrices]
    failures = []
    ok = np.array_equal(B.right(W.one()) % p, np.eye(B.dim, dtype=np.int64))
    if not ok:
        failures.append("unit")
    for i in range(W.dim):
        for j in range(W.dim):
            if not np.array_equal(B.right(W.basis_product(i, j)) % p, (R[j] @ R[i]) % p):
                ok = False
                failures.append((W.names[i], W.names[j]))
    rk = _flat_rank(R, p)
    rep = WreathMapReport(p, W.dim, rk, None, ok, rk == W.dim, failures=failures)
    if with_commutant:
        C = commutant(B, "left", p)
        joint = _flat_rank(C.matrices + R, p)
        rep.commutant_dim = C.dim
        rep.image_in_commutant = joint == C.dim
        rep.surjective_onto_commutant = rep.image_in_commutant and rk == C.dim
    return rep


@dataclass
class XiOmegaReport:
    prime: int
    idempotent: bool
    even: bool
    left_ideal_rank: int
    tensor_dim: int
    intertwiner_rank: int
    truncation_rank: int
    wreath_dim: int

    @property
    def passed(self) -> bool:
        return (self.idempotent and self.even and self.left_ideal_rank == self.tensor_dim
                and self.intertwiner_rank == self.tensor_dim and self.truncation_rank == self.wreath_dim)

    def summary(self) -> str:
        return (f"mod {self.prime}: xi^2=xi {self.idempotent}, even {self.even}, "
                f"rank S.xi {self.left_ideal_rank} (V^d dim {self.tensor_dim}), "
                f"intertwiner rank {self.intertwiner_rank}, rank xi.S.xi {self.truncation_rank} "
                f"(wreath dim {self.wreath_dim})")


def xi_omega_check(B: Bimodule, prime: int | None = None) -> XiOmegaReport:
    """Projectivity of V^{(x)d} via xi_omega: S xi ~ V^{(x)d} and xi S xi has the wreath dimension.

    The intertwiner is s xi -> (s xi) . v_omega with v_omega = (1 (x) v_1) (x) ... (x) (1 (x) v_d).
    """
    p = _resolve_prime(B.ring, prime)
    S = B.left_algebra
    xi = weight_idempotent(S, omega(B.n, B.d))
    A = B.base
    idem = S.mul(xi, xi) == xi
    even = S.algebra.is_even(xi)
    left_elems = [S.mul({i: 1}, xi) for i in range(S.dim)]
    two_sided = [S.mul(xi, x) for x in left_elems]

    def rows(vecs):
        m = np.zeros((len(vecs), S.dim), dtype=np.int64)
        for r, v in enumerate(vecs):
            for k, c in v.items():
                m[r, k] = c % p
        return m

    one = next(iter(A.unit))
    if A.unit != {one: 1}:
        raise ValueError("xi_omega_check needs the unit of A to be a basis vector")
    v_omega = tuple(B._vindex[one, i] for i in range(B.d))
    col = B.carrier.index[v_omega]
    images = np.stack([B.left(x)[:, col] % p for x in left_elems])
    return XiOmegaReport(
        prime=p,
        idempotent=idem,
        even=even,
        left_ideal_rank=rank_mod_p(rows(left_elems), p),
        tensor_dim=B.dim,
        intertwiner_rank=rank_mod_p(images, p),
        truncation_rank=rank_mod_p(rows(two_sided), p),
        wreath_dim=B.right_algebra.dim,
    )
