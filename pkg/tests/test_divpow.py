import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superschur.coeff import Ring, Z, rank_mod_p
from superschur.divpow import (
    DividedBasisElement,
    NotInvariantError,
    comultiply,
    contract,
    dim_formula,
    dim_split,
    divided_basis,
    divided_power,
    divided_power_algebra,
    expand,
    gamma_map,
    interleave,
    outer_product,
    psi_d,
    psi_image,
)
from superschur.salg import check_superalgebra, clifford1, ground_algebra, matrix_superalgebra
from superschur.supermod import LinearMap, SuperModule, boxtimes, direct_sum, free_module, tensor, tensor_pairs
from superschur.symact import act, adjacent_transpositions, invariants


def names(M, d):
    return [e.name(M) for e in divided_basis(M, d)]


def test_basis_examples():
    assert names(free_module(2), 2) == ["{v1^2}", "{v1, v2}", "{v2^2}"]
    assert names(free_module(1, 1), 2) == ["{v1^2}", "{v1, u1}"]
    assert len(divided_basis(free_module(2, 1), 2)) == 5


def test_zero_module_and_degree_zero():
    zero = SuperModule(Z, (), ())
    assert divided_basis(zero, 2) == []
    assert names(free_module(1, 1), 0) == ["1"]


def test_dim_formula_examples():
    assert dim_formula(1, 1, 2) == 2
    assert dim_formula(4, 0, 2) == 10
    assert dim_formula(0, 1, 2) == 0
    assert dim_split(2, 2, 2) == (4, 4)


def test_expand_examples():
    M = free_module(2)
    G = divided_power(M, 2)
    assert expand(DividedBasisElement(((0, 2),), ()), M) == {(0, 0): 1}
    assert expand(DividedBasisElement(((0, 1), (1, 1)), ()), M) == {(0, 1): 1, (1, 0): 1}
    U = free_module(0, 2)
    assert expand(DividedBasisElement((), (0, 1)), U) == {(0, 1): 1, (1, 0): -1}
    assert G.dim == 3


def test_contract_examples():
    U = free_module(0, 2)
    G = divided_power(U, 2)
    x = G.expand(0)
    assert contract(x, U) == {0: 1}
    assert contract({}, U, 2) == {}
    assert contract({w: 3 * c for w, c in x.items()}, U) == {0: 3}
    with pytest.raises(NotInvariantError):
        contract({(0, 1): 1}, U)


grid = [(mu, nu, d) for mu in range(3) for nu in range(3) for d in range(1, 4) if mu + nu >= 1]


@pytest.mark.parametrize("mu,nu,d", grid)
def test_basis_spans_invariants(mu, nu, d):
    M = free_module(mu, nu)
    G = divided_power(M, d)
    words = {w: k for k, w in enumerate(itertools.product(range(M.dim), repeat=d))}
    p = 7
    ours = np.zeros((G.dim, len(words)), dtype=np.int64)
    for i in range(G.dim):
        for w, c in G.expand(i).items():
            ours[i, words[w]] = c % p
    oracle = invariants(M, d, p)
    theirs = np.zeros((len(oracle), len(words)), dtype=np.int64)
    for r, x in enumerate(oracle):
        for w, c in x.items():
            theirs[r, words[w]] = c % p
    assert G.dim == dim_formula(mu, nu, d) == len(oracle)
    assert rank_mod_p(ours, p) == G.dim
    assert rank_mod_p(np.vstack([ours, theirs]), p) == G.dim


@pytest.mark.parametrize("mu,nu,d", grid)
def test_expansions_fixed_and_contract_inverse(mu, nu, d):
    M = free_module(mu, nu)
    G = divided_power(M, d)
    for i in range(G.dim):
        x = G.expand(i)
        for s in adjacent_transpositions(d):
            assert act(x, s, M) == x
        assert G.contract(x) == {i: 1}


def test_psi_degree_one_is_identity():
    M, N = free_module(1, 1), free_module(2, 1)
    psi = psi_d(M, N, 1)
    assert psi.matrix.tolist() == np.eye(psi.source.dim, dtype=int).tolist()


def test_psi_even_lines():
    X, Y = free_module(1, even="x"), free_module(1, even="y")
    psi = psi_d(X, Y, 2)
    assert psi.matrix.tolist() == [[1]]


def test_psi_odd_planes():
    M, N = free_module(0, 2), free_module(0, 2, odd="w")
    GM, GN = divided_power(M, 2), divided_power(N, 2)
    img = psi_image(GM, GN, 0, 0)
    assert set(img.values()) <= {1, -1}
    G = divided_power(tensor(M, N), 2)
    assert G.is_invariant(img)


small_modules = [free_module(*pq) for pq in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]]


@pytest.mark.parametrize("M,N", list(itertools.product(small_modules, repeat=2)), ids=str)
def test_psi_square_commutes(M, N):
    d = 2
    GM, GN = divided_power(M, d), divided_power(N, d)
    G = divided_power(tensor(M, N), d)
    psi = psi_d(M, N, d)
    for col, (i, j) in enumerate(tensor_pairs(GM.module, GN.module)):
        # bottom route: embed both factors, interleave letterwise
        bottom = {}
        for mw, a in GM.expand(i).items():
            for nw, b in GN.expand(j).items():
                sign, w = interleave(mw, nw, M, N)
                bottom[w] = bottom.get(w, 0) + sign * a * b
        bottom = {w: c for w, c in bottom.items() if c}
        assert G.expand_vector(psi.column(col)) == bottom


def even_maps(draw, M, N):
    data = np.zeros((N.dim, M.dim), dtype=object)
    for j in range(N.dim):
        for i in range(M.dim):
            if M.parities[i] == N.parities[j]:
                data[j, i] = draw(st.integers(-2, 2))
    return LinearMap.from_matrix(M, N, data)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_psi_naturality(data):
    M, M2, N, N2 = (data.draw(st.sampled_from(small_modules)) for _ in range(4))
    phi = even_maps(data.draw, M, M2)
    chi = even_maps(data.draw, N, N2)
    d = 2
    lhs = psi_d(M2, N2, d) @ boxtimes(gamma_map(phi, d), gamma_map(chi, d))
    rhs = gamma_map(boxtimes(phi, chi), d) @ psi_d(M, N, d)
    assert lhs == rhs


def test_gamma_map_rejects_odd():
    M = free_module(1, 1)
    odd = LinearMap.from_matrix(M, M, np.array([[0, 1], [1, 0]], dtype=object))
    with pytest.raises(ValueError):
        gamma_map(odd, 2)


k = ground_algebra()
C = clifford1()


def test_divided_power_algebra_small_cases():
    G = divided_power_algebra(k, 3)
    assert G.dim == 1 and G.structure_constants() == {(0, 0): {0: 1}}
    M = matrix_superalgebra(C, 1)
    G1 = divided_power_algebra(M, 1)
    assert G1.structure_constants() == M.structure_constants()
    G2 = divided_power_algebra(matrix_superalgebra(k, 2), 2)
    assert G2.dim == 10 and check_superalgebra(G2).passed


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("A", [k, C, matrix_superalgebra(k, 2), matrix_superalgebra(C, 1), matrix_superalgebra(k, 1, 1)],
                         ids=["k", "C1", "M2", "M1C1", "M11"])
def test_divided_power_algebra_axioms(A, d):
    G = divided_power_algebra(A, d)
    assert G.dim == dim_formula(A.dim_even, A.dim_odd, d)
    assert check_superalgebra(G).passed


def test_outer_product_examples():
    M = free_module(1)
    N = free_module(1, even="w")
    G2, G1 = divided_power(M, 2), divided_power(N, 1)
    coords, G = outer_product({0: 1}, {0: 1}, G2, G1)
    assert G.d == 3 and coords == {G._word_index[(0, 0, 1)]: 1}
    G0 = divided_power(N, 0)
    coords, G = outer_product({0: 5}, {0: 1}, G2, G0)
    assert G.expand_vector(coords) == {(0, 0): 5}


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("mpq,npq", list(itertools.product([(1, 0), (0, 1), (1, 1)], repeat=2)))
def test_outer_products_decompose(mpq, npq, d):
    M, N = free_module(*mpq), free_module(*npq, even="w", odd="z")
    p = 5
    rows = []
    G = divided_power(direct_sum(M, N), d)
    for c in range(d + 1):
        GM, GN = divided_power(M, c), divided_power(N, d - c)
        for i in range(GM.dim):
            for j in range(GN.dim):
                coords, target = outer_product({i: 1}, {j: 1}, GM, GN)
                assert target is G
                rows.append(coords)
    mat = np.zeros((len(rows), G.dim), dtype=np.int64)
    for r, v in enumerate(rows):
        for kk, c in v.items():
            mat[r, kk] = c % p
    assert len(rows) == G.dim == rank_mod_p(mat, p)


def test_comultiply_examples():
    M = free_module(2)
    G = divided_power(M, 2)
    G1 = divided_power(M, 1)
    assert comultiply({0: 1}, G, 2, 0) == {(0, 0): 1}
    assert comultiply({0: 1}, G, 1, 1) == {(0, 0): 1}
    v1v2 = G._word_index[(0, 1)]
    assert comultiply({v1v2: 1}, G, 1, 1) == {(0, 1): 1, (1, 0): 1}
    with pytest.raises(ValueError):
        comultiply({0: 1}, G, 2, 1)
    assert G1.dim == 2
