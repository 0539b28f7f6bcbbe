"""Superalgebras given by structure constants on a homogeneous basis."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .coeff import Ring, SizeLimitError, Z, add_into, axpy, clean
from .supermod import (
    EVEN,
    ODD,
    SuperModule,
    Vector,
    free_module,
    hom_module,
    hom_units,
    tensor,
    tensor_pairs,
)

DEFAULT_MAX_DIM = 5000

ProductFn = Callable[[int, int], Mapping[int, int]]


class SuperAlgebra:
    """A unital superalgebra on a free supermodule.

    The product of basis vectors is either given as a table
    ``{(i, j): {k: c}}`` or computed on demand by ``product(i, j)``; computed
    products are cached, so each structure constant is evaluated once.
    """

    def __init__(
        self,
        carrier: SuperModule,
        unit: Mapping[int, int],
        table: Mapping[tuple[int, int], Mapping[int, int]] | None = None,
        product: ProductFn | None = None,
        name: str = "",
    ):
        if (table is None) == (product is None):
            raise ValueError("give exactly one of table= or product=")
        self.carrier = carrier
        self.unit: Vector = clean(unit, carrier.ring)
        self.name = name
        self._product = product
        self._table: dict[tuple[int, int], Vector] = {}
        if table is not None:
            for (i, j), v in table.items():
                self._table[i, j] = clean(v, carrier.ring)
            self._complete = True
        else:
            self._complete = False

    def __repr__(self) -> str:
        label = self.name or "SuperAlgebra"
        return f"<{label} over {self.ring}, dim {self.dim_even}|{self.dim_odd}>"

    @property
    def ring(self) -> Ring:
        return self.carrier.ring

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def dim_even(self) -> int:
        return self.carrier.dim_even

    @property
    def dim_odd(self) -> int:
        return self.carrier.dim_odd

    @property
    def names(self) -> tuple[str, ...]:
        return self.carrier.names

    def parity(self, i: int) -> int:
        return self.carrier.parities[i]

    def index(self, name: str) -> int:
        return self.carrier.index(name)

    def elt(self, name: str | int, coeff: int = 1) -> Vector:
        i = self.index(name) if isinstance(name, str) else name
        return clean({i: coeff}, self.ring)

    def one(self) -> Vector:
        return dict(self.unit)

    def basis_product(self, i: int, j: int) -> Vector:
        try:
            return self._table[i, j]
        except KeyError:
            if self._complete:
                return {}
        v = clean(self._product(i, j), self.ring)
        self._table[i, j] = v
        return v

    def mul(self, x: Mapping[int, int], y: Mapping[int, int]) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, self.basis_product(i, j), a * b, self.ring)
        return out

    def add(self, x: Mapping[int, int], y: Mapping[int, int]) -> Vector:
        out = dict(x)
        axpy(out, y, 1, self.ring)
        return out

    def scale(self, x: Mapping[int, int], c: int) -> Vector:
        return clean({k: c * v for k, v in x.items()}, self.ring)

    def is_even(self, x: Mapping[int, int]) -> bool:
        return all(self.parity(k) == EVEN for k in x)

    def structure_constants(self) -> dict[tuple[int, int], Vector]:
        """All nonzero basis products, in row-major order of (i, j)."""
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                v = self.basis_product(i, j)
                if v:
                    out[i, j] = dict(sorted(v.items()))
        if not self._complete:
            self._complete = True
        return out

    def with_table(self, table: Mapping[tuple[int, int], Mapping[int, int]]) -> SuperAlgebra:
        """Same carrier and unit, different structure constants."""
        return SuperAlgebra(self.carrier, self.unit, table=table, name=self.name)


def ground_algebra(ring: Ring = Z) -> SuperAlgebra:
    """k itself, with basis {1}."""
    return SuperAlgebra(SuperModule(ring, ("1",), (EVEN,)), {0: 1}, table={(0, 0): {0: 1}}, name="k")


def clifford1(ring: Ring = Z, sign: int = 1) -> SuperAlgebra:
    """Rank-one Clifford superalgebra: even 1, odd c, c*c = sign."""
    if sign not in (1, -1):
        raise ValueError("clifford sign must be +1 or -1")
    carrier = SuperModule(ring, ("1", "c"), (EVEN, ODD))
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: sign}}
    return SuperAlgebra(carrier, {0: 1}, table=table, name="C(1)")


def _size_guard(dim: int, max_dim: int) -> None:
    if dim > max_dim:
        raise SizeLimitError(f"algebra dimension {dim} exceeds the cap {max_dim}")


def tensor_algebra(A: SuperAlgebra, B: SuperAlgebra, max_dim: int = DEFAULT_MAX_DIM) -> SuperAlgebra:
    """A (x) B with (a1 (x) b1)(a2 (x) b2) = (-1)^{|b1||a2|} a1a2 (x) b1b2."""
    if A.ring != B.ring:
        raise ValueError(f"ring mismatch: {A.ring} vs {B.ring}")
    _size_guard(A.dim * B.dim, max_dim)
    carrier = tensor(A.carrier, B.carrier)
    pairs = tensor_pairs(A.carrier, B.carrier)
    index = {ij: k for k, ij in enumerate(pairs)}
    ring = A.ring

    def product(s: int, t: int) -> Vector:
        a1, b1 = pairs[s]
        a2, b2 = pairs[t]
        sign = -1 if (B.parity(b1) and A.parity(a2)) else 1
        out: Vector = {}
        for k, x in A.basis_product(a1, a2).items():
            for l, y in B.basis_product(b1, b2).items():
                add_into(out, index[k, l], sign * x * y, ring)
        return out

    unit: Vector = {}
    for i, x in A.unit.items():
        for j, y in B.unit.items():
            add_into(unit, index[i, j], x * y, ring)
    return SuperAlgebra(carrier, unit, product=product, name=f"({A.name}⊗{B.name})")


def endomorphism_algebra(n: int, m: int = 0, ring: Ring = Z) -> SuperAlgebra:
    """End(k^{n|m}) with matrix units e(i,j)e(k,l) = delta_jk e(i,l)."""
    V = free_module(n, m, ring)
    carrier = hom_module(V, V)
    units = hom_units(V, V)
    index = {ji: k for k, ji in enumerate(units)}
    table = {}
    for s, (a, b) in enumerate(units):
        for t, (c, d) in enumerate(units):
            if b == c:
                table[s, t] = {index[a, d]: 1}
    unit = {index[i, i]: 1 for i in range(n + m)}
    return SuperAlgebra(carrier, unit, table=table, name=f"End(k^{n}|{m})")


def matrix_superalgebra(A: SuperAlgebra, n: int, m: int = 0, max_dim: int = DEFAULT_MAX_DIM) -> SuperAlgebra:
    """M_{n|m}(A), realised as the superalgebra A (x) End(k^{n|m}).

    Basis vector a_r (x) e(j,i) is named ``e(j,i)`` when A is the ground
    ring and ``a_r·e(j,i)`` otherwise; its parity is |a_r| + |e(j,i)|.
    """
    if n < 0 or m < 0:
        raise ValueError("matrix sizes must be nonnegative")
    _size_guard(A.dim * (n + m) ** 2, max_dim)
    E = endomorphism_algebra(n, m, A.ring)
    T = tensor_algebra(A, E, max_dim=max_dim)
    plain = A.dim == 1 and A.names == ("1",)
    names = []
    for r, s in tensor_pairs(A.carrier, E.carrier):
        unit_name = E.names[s]
        names.append(unit_name if plain else f"{A.names[r]}·{unit_name}")
    carrier = SuperModule(A.ring, tuple(names), T.carrier.parities)
    label = f"M_{n}({A.name})" if m == 0 else f"M_{n}|{m}({A.name})"
    return SuperAlgebra(carrier, T.unit, table=T.structure_constants(), name=label)


def matrix_unit_index(M: SuperAlgebra, A: SuperAlgebra, n: int, m: int, r: int, j: int, i: int) -> int:
    """Basis position of a_r (x) e(j,i) (0-based j, i) inside ``matrix_superalgebra(A, n, m)``."""
    V = free_module(n, m, A.ring)
    units = hom_units(V, V)
    E_carrier = hom_module(V, V)
    s = units.index((j, i))
    return tensor_pairs(A.carrier, E_carrier).index((r, s))


def perm_name(images: tuple[int, ...]) -> str:
    return "[" + ",".join(str(x) for x in images) + "]"


def group_algebra_sym(d: int, ring: Ring = Z, max_dim: int = DEFAULT_MAX_DIM) -> SuperAlgebra:
    """The group algebra k S_d, concentrated in even degree.

    Basis is all permutations in lexicographic order of their image lists;
    the product is :meth:`Permutation.__mul__` (left factor applied first).
    """
    from .symact import Permutation

    if d < 1:
        raise ValueError("d must be >= 1")
    _size_guard(math.factorial(d), max_dim)
    perms = [Permutation(p) for p in itertools.permutations(range(1, d + 1))]
    index = {p: k for k, p in enumerate(perms)}
    carrier = SuperModule(ring, tuple(perm_name(p.images) for p in perms), (EVEN,) * len(perms))
    table = {(s, t): {index[p * q]: 1} for s, p in enumerate(perms) for t, q in enumerate(perms)}
    return SuperAlgebra(carrier, {index[Permutation.identity(d)]: 1}, table=table, name=f"kS_{d}")


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class AxiomReport:
    algebra: str
    dim: int
    checked_triples: int = 0
    unit_violations: list = field(default_factory=list)
    grading_violations: list = field(default_factory=list)
    associativity_violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.unit_violations or self.grading_violations or self.associativity_violations)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (f"{self.algebra}: {status} (dim {self.dim}, {self.checked_triples} triples; "
                f"unit {len(self.unit_violations)}, grading {len(self.grading_violations)}, "
                f"associativity {len(self.associativity_violations)} violations)")


def check_superalgebra(A: SuperAlgebra, max_violations: int = 50) -> AxiomReport:
    """Exhaustively verify unit laws, grading and associativity on the basis."""
    rep = AxiomReport(A.name or repr(A), A.dim)
    if any(A.parity(k) != EVEN for k in A.unit):
        rep.unit_violations.append(("unit is not even", dict(A.unit)))
    for i in range(A.dim):
        e = {i: 1}
        if A.mul(A.unit, e) != e:
            rep.unit_violations.append(("left", i))
        if A.mul(e, A.unit) != e:
            rep.unit_violations.append(("right", i))
    for i in range(A.dim):
        for j in range(A.dim):
            want = (A.parity(i) + A.parity(j)) % 2
            for k in A.basis_product(i, j):
                if A.parity(k) != want:
                    rep.grading_violations.append((i, j, k))
    for i in range(A.dim):
        for j in range(A.dim):
            xy = A.basis_product(i, j)
            for k in range(A.dim):
                rep.checked_triples += 1
                left = A.mul(xy, {k: 1})
                right = A.mul({i: 1}, A.basis_product(j, k))
                if left != right:
                    if len(rep.associativity_violations) < max_violations:
                        rep.associativity_violations.append((i, j, k))
                    else:
                        return rep
    return rep

