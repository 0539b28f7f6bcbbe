"""Exact computations with divided powers of supermodules, generalized Schur
superalgebras S^A(n,d) and wreath products A wr S_d."""

from .coeff import DEFAULT_PRIME, Matrix, Ring, SizeLimitError, Z, make_ring, rank
from .divpow import (
    DividedBasisElement,
    DividedPower,
    NotInvariantError,
    comultiply,
    contract,
    dim_formula,
    divided_basis,
    divided_power,
    divided_power_algebra,
    expand,
    gamma_map,
    outer_product,
    psi_d,
)
from .salg import (
    SuperAlgebra,
    check_superalgebra,
    clifford1,
    ground_algebra,
    group_algebra_sym,
    matrix_superalgebra,
    tensor_algebra,
)
from .schur import (
    SchurAlgebra,
    composition_surjectivity_check,
    schur_algebra,
    schur_algebra_super,
    weight_idempotent,
    weights,
)
from .schurweyl import Bimodule, WreathAlgebra, commutant, tensor_space, wreath, wreath_to_end, xi_omega_check
from .supermod import (
    LinearMap,
    SuperModule,
    boxtimes,
    free_module,
    hom_module,
    parity_change,
    parity_change_map,
    supertwist,
    tensor,
)
from .symact import Permutation, TensorPower, act, coset_reps, invariants

__version__ = "0.1.0"
