import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superschur.coeff import Z
from superschur.supermod import free_module
from superschur.symact import (
    Permutation,
    TensorPower,
    act,
    act_word,
    all_permutations,
    coset_reps,
    invariants,
)

M11 = free_module(1, 1)  # v1 = 0 even, u1 = 1 odd
V, U = 0, 1


def test_permutation_basics():
    s = Permutation.from_cycles(3, (1, 2, 3))
    assert s.images == (2, 3, 1)
    assert s * s.inverse() == Permutation.identity(3)
    assert Permutation.transposition(1, 2, 3).sign() == -1
    with pytest.raises(ValueError):
        Permutation((1, 1))


def test_swap_even_letter():
    M = free_module(2)
    assert act({(0, 1): 1}, Permutation((2, 1)), M) == {(1, 0): 1}


def test_swap_two_odd_letters():
    M = free_module(0, 2)
    assert act({(0, 1): 1}, Permutation((2, 1)), M) == {(1, 0): -1}


def test_three_cycle_on_odd_letters():
    M = free_module(0, 3)
    a, b, c = 0, 1, 2
    out = act({(a, b, c): 1}, Permutation.from_cycles(3, (1, 2, 3)), M)
    assert out == {(c, a, b): 1}


def test_degree_mismatch():
    with pytest.raises(ValueError):
        act_word((0, 1), (0, 0), Permutation.identity(3))


words3 = list(itertools.product(range(2), repeat=3))
perms3 = list(all_permutations(3))


def test_right_action_axiom_exhaustive():
    for w in words3:
        x = {w: 1}
        for rho, sigma in itertools.product(perms3, repeat=2):
            assert act(act(x, rho, M11), sigma, M11) == act(x, rho * sigma, M11)


@given(st.sampled_from(perms3))
def test_action_even_and_invertible(sigma):
    T = TensorPower(M11, 3)
    m = T.act_matrix(sigma)
    mi = T.act_matrix(sigma.inverse())
    assert np.array_equal(m @ mi, np.eye(T.dim, dtype=np.int64))
    for col, w in enumerate(T.words):
        for row in np.flatnonzero(m[:, col]):
            assert T.parity(T.words[row]) == T.parity(w)


def test_invariant_ranks():
    assert len(invariants(free_module(1), 3, 5)) == 1
    assert len(invariants(M11, 2, 5)) == 2
    assert len(invariants(free_module(0, 1), 2, 5)) == 0


def test_invariants_are_invariant():
    for x in invariants(free_module(1, 2), 3, 7):
        for s in all_permutations(3):
            y = act(x, s, free_module(1, 2))
            assert {w: c % 7 for w, c in y.items() if c % 7} == {w: c % 7 for w, c in x.items()}


def test_coset_reps():
    assert coset_reps(1, 1) == [Permutation((1, 2)), Permutation((2, 1))]
    assert len(coset_reps(2, 1)) == 3
    reps = coset_reps(2, 2)
    assert len(reps) == 6
    for r in reps:
        assert r(1) < r(2) and r(3) < r(4)
    assert len(coset_reps(0, 3)) == 1


def test_coset_reps_are_a_transversal():
    d, e = 2, 2
    reps = coset_reps(d, e)
    young = [p for p in all_permutations(d + e) if set(p.images[:d]) == set(range(1, d + 1))]
    products = {y * r for y in young for r in reps}
    assert len(products) == 24
