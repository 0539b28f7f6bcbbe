import itertools

import pytest

from superschur.coeff import Ring, SizeLimitError, Z
from superschur.salg import (
    check_superalgebra,
    clifford1,
    endomorphism_algebra,
    ground_algebra,
    group_algebra_sym,
    matrix_superalgebra,
    tensor_algebra,
)

k = ground_algebra()
C = clifford1()


def product(A, x, y):
    return {A.names[i]: c for i, c in A.mul(A.elt(x), A.elt(y)).items()}


def test_clifford_relations():
    assert product(C, "1", "c") == {"c": 1}
    assert product(C, "c", "c") == {"1": 1}
    assert (C.dim_even, C.dim_odd) == (1, 1)
    assert product(clifford1(sign=-1), "c", "c") == {"1": -1}
    with pytest.raises(ValueError):
        clifford1(sign=2)


def test_tensor_with_ground_is_identity():
    T = tensor_algebra(k, C)
    assert T.names == ("1⊗1", "1⊗c")
    assert product(T, "1⊗c", "1⊗c") == {"1⊗1": 1}


def test_clifford_generators_anticommute():
    T = tensor_algebra(C, C)
    assert product(T, "c⊗1", "1⊗c") == {"c⊗c": 1}
    assert product(T, "1⊗c", "c⊗1") == {"c⊗c": -1}
    assert T.unit == {T.index("1⊗1"): 1}


def test_tensor_algebra_associative_up_to_flattening():
    for A, B, D in itertools.product([C, matrix_superalgebra(k, 1, 1)], repeat=3):
        left = tensor_algebra(tensor_algebra(A, B), D)
        right = tensor_algebra(A, tensor_algebra(B, D))
        assert sorted(left.names) == sorted(right.names)
        to_right = {i: right.index(name) for i, name in enumerate(left.names)}
        for (i, j), v in left.structure_constants().items():
            want = {to_right[a]: c for a, c in v.items()}
            assert right.basis_product(to_right[i], to_right[j]) == want


def test_matrix_superalgebra_examples():
    M2 = matrix_superalgebra(k, 2)
    assert (M2.dim_even, M2.dim_odd) == (4, 0)
    M11 = matrix_superalgebra(k, 1, 1)
    parity = {name: M11.parity(i) for i, name in enumerate(M11.names)}
    assert parity == {"e(1,1)": 0, "e(1,2)": 1, "e(2,1)": 1, "e(2,2)": 0}
    MC = matrix_superalgebra(C, 2)
    assert (MC.dim, MC.dim_even, MC.dim_odd) == (8, 4, 4)


def test_matrix_units_multiply():
    n = 3
    M = matrix_superalgebra(k, n)
    for i, j, a, b in itertools.product(range(1, n + 1), repeat=4):
        want = {f"e({i},{b})": 1} if j == a else {}
        assert product(M, f"e({i},{j})", f"e({a},{b})") == want


@pytest.mark.parametrize("n,m", [(1, 0), (2, 0), (1, 1), (2, 1), (0, 2)])
@pytest.mark.parametrize("A", [k, C], ids=["k", "C1"])
def test_matrix_superalgebra_dimensions(A, n, m):
    M = matrix_superalgebra(A, n, m)
    assert M.dim == (n + m) ** 2 * A.dim
    even_units, odd_units = n * n + m * m, 2 * n * m
    assert M.dim_even == A.dim_even * even_units + A.dim_odd * odd_units


def test_group_algebra_sym():
    assert group_algebra_sym(1).dim == 1
    S2 = group_algebra_sym(2)
    assert product(S2, "[2,1]", "[2,1]") == {"[1,2]": 1}
    S3 = group_algebra_sym(3)
    rep = check_superalgebra(S3)
    assert rep.passed and rep.checked_triples == 216
    with pytest.raises(SizeLimitError):
        group_algebra_sym(8, max_dim=100)


@pytest.mark.parametrize("ring", [Z, Ring(5)], ids=str)
def test_axioms_pass(ring):
    for A in (clifford1(ring), matrix_superalgebra(clifford1(ring), 2), endomorphism_algebra(1, 2, ring)):
        assert check_superalgebra(A).passed


def test_fault_injection_is_reported():
    table = C.structure_constants()
    table[1, 0] = {1: -1}  # c*1 = -c
    bad = C.with_table(table)
    rep = check_superalgebra(bad)
    assert not rep.passed
    assert ("right", 1) in rep.unit_violations


def test_fault_injection_associativity_triple():
    M = matrix_superalgebra(k, 2)
    table = M.structure_constants()
    i, j = M.index("e(1,2)"), M.index("e(2,1)")
    table[i, j] = {M.index("e(2,2)"): 1}
    rep = check_superalgebra(M.with_table(table))
    assert rep.associativity_violations
    assert all(len(t) == 3 for t in rep.associativity_violations)


def test_grading_violation_is_reported():
    table = C.structure_constants()
    table[1, 1] = {1: 1}
    rep = check_superalgebra(C.with_table(table))
    assert (1, 1, 1) in rep.grading_violations
