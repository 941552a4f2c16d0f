"""Square-weighted zero-sum constants over Z_n.

Library layout:

* modcore     exact arithmetic over Z_n, CRT, unit/square sets and sizes
* engine      weighted zero-sum decisions with witnesses (general/consecutive)
* kernels     JIT (numba) and numpy backends for the hot search loops
* search      exact constants D_A(n), C_A(n) by pruned depth-first search
* predictions the case table for S(n)*, extremal constructions, verification
* cli         the `zswc` command
"""

from .engine import (
    Sequence,
    SumSet,
    WeightSet,
    Witness,
    brute_force_has_zero_sum,
    extend_reachable,
    has_zero_sum_consecutive,
    has_zero_sum_subsequence,
    verify_witness,
    weight_multiples,
    witness_error,
)
from .modcore import (
    Factorization,
    Modulus,
    Residue,
    ResidueSet,
    component,
    crt_combine,
    crt_split,
    factorize,
    is_prime,
    natural_map,
    nonzero_squares,
    q_p,
    radical,
    residue,
    size_nonzero_squares_prime_power,
    size_squares,
    size_unit_squares_prime_power,
    squares,
    unit_power_decomposition,
    unit_squares,
    units,
    v_p,
)
from .predictions import (
    Prediction,
    VerificationReport,
    construct_consecutive_witness,
    construct_even_square_witness,
    construct_nonsquare_odd_witness,
    construct_odd_square_d_witness,
    crt_weight_lift,
    find_non_qp_pair,
    predicted_constants,
    predicted_table,
    verify_coverage_lemma,
    verify_predictions,
)
from .search import (
    BudgetExceeded,
    ConstantQuery,
    ConstantResult,
    SearchStats,
    TableEntry,
    consecutive_constant,
    constant_table,
    davenport_constant,
    exists_blocking_sequence,
)

__version__ = "0.1.0"
