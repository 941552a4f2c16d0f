"""Tests for the exact constant search: values, witnesses, canonicalization,
determinism, caps and budgets."""

import pytest

from zswc.engine import Sequence, WeightSet, brute_force_has_zero_sum
from zswc.modcore import q_p
from zswc.search import (
    BudgetExceeded,
    canonical_first_values,
    consecutive_constant,
    constant_table,
    davenport_constant,
    exists_blocking_sequence,
)


def test_canonical_first_values():
    assert canonical_first_values(9) == (1, 3)
    assert canonical_first_values(12) == (1, 2, 3, 4, 6)
    assert canonical_first_values(7) == (1,)


@pytest.mark.parametrize("n,expected", [(9, 5), (8, 2), (4, 4), (2, 2), (12, 3)])
def test_davenport_examples(n, expected):
    res = davenport_constant(n)
    assert res.value == expected
    if expected > 1:
        assert len(res.extremal) == expected - 1


@pytest.mark.parametrize("n,expected", [(9, 9), (2, 2), (4, 4), (8, 2), (18, 2), (12, 3)])
def test_consecutive_examples(n, expected):
    assert consecutive_constant(n).value == expected


def test_consecutive_qp_examples():
    assert consecutive_constant(3, WeightSet.from_values(3, [1])).value == 3
    for p in (3, 5, 7):
        ws = WeightSet(q_p(p).modulus, q_p(p))
        assert consecutive_constant(p, ws).value == 3


def test_exists_blocking_sequence():
    found = exists_blocking_sequence(9, length=4)
    assert found is not None and len(found) == 4
    assert not brute_force_has_zero_sum(
        found, WeightSet.from_family(9, "nonzero-squares"))
    assert exists_blocking_sequence(9, length=5) is None
    assert exists_blocking_sequence(8, length=2, kind="consecutive") is None
    assert exists_blocking_sequence(9, length=10) is None  # L > n: absent
    assert exists_blocking_sequence(9, length=0).values == ()


def test_extremal_passes_engine_check():
    res = consecutive_constant(9)
    ws = WeightSet.from_family(9, "nonzero-squares")
    assert not brute_force_has_zero_sum(
        Sequence.from_values(9, res.extremal.values[:4]), ws, consecutive=True)
    from zswc.engine import has_zero_sum_consecutive

    assert not has_zero_sum_consecutive(res.extremal, ws)[0]


def test_definition_consistency_d_le_c_le_n():
    for n in range(2, 13):
        d = davenport_constant(n).value
        c = consecutive_constant(n).value
        assert d <= c <= n, n


def test_canonicalization_soundness():
    for n in range(2, 13):
        for fn in (davenport_constant, consecutive_constant):
            on = fn(n, canonicalize=True)
            off = fn(n, canonicalize=False)
            assert on.value == off.value, (n, fn.__name__)


def test_determinism():
    a = consecutive_constant(9)
    b = consecutive_constant(9)
    assert a.value == b.value
    assert a.extremal == b.extremal
    assert a.stats.nodes == b.stats.nodes


def test_threads_do_not_change_answers():
    for n in (9, 12, 16):
        seq_res = davenport_constant(n)
        par_res = davenport_constant(n, threads=4)
        assert seq_res.value == par_res.value
        assert seq_res.extremal == par_res.extremal
    seq_res = consecutive_constant(9)
    par_res = consecutive_constant(9, threads=4)
    assert seq_res.value == par_res.value
    assert seq_res.extremal == par_res.extremal


def test_threads_randomized_cross_check():
    import random

    from zswc.modcore import nonzero_squares, units

    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(2, 16)
        if rng.random() < 0.5:
            weights = nonzero_squares(n).values()
        else:
            pool = [v for v in range(1, n)]
            weights = tuple(rng.sample(pool, rng.randint(1, min(4, len(pool)))))
        kind = rng.choice(["davenport", "consecutive"])
        fn = davenport_constant if kind == "davenport" else consecutive_constant
        ws_ = WeightSet.from_values(n, weights)
        seq_res = fn(n, ws_)
        par_res = fn(n, ws_, threads=3)
        assert seq_res.value == par_res.value, (n, weights, kind)
        assert seq_res.extremal == par_res.extremal, (n, weights, kind)


def test_threads_cap_hit_is_consistent():
    seq_res = davenport_constant(9, cap=3)
    par_res = davenport_constant(9, cap=3, threads=4)
    assert seq_res.value is None and par_res.value is None
    assert seq_res.lower_bound == par_res.lower_bound == 4
    assert par_res.extremal is not None and len(par_res.extremal) == 3


def test_exists_blocking_with_threads():
    found = exists_blocking_sequence(9, length=4, threads=4)
    assert found is not None and len(found) == 4
    assert not brute_force_has_zero_sum(
        found, WeightSet.from_family(9, "nonzero-squares"))
    assert exists_blocking_sequence(9, length=5, threads=4) is None


def test_cap_undetermined():
    res = davenport_constant(9, cap=3)
    assert res.value is None
    assert res.reason == "cap"
    assert res.lower_bound == 4
    assert len(res.extremal) == 3


def test_budget_undetermined():
    res = consecutive_constant(9, node_budget=50)
    assert res.value is None
    assert res.reason == "budget"
    assert res.lower_bound >= 2
    with pytest.raises(BudgetExceeded):
        exists_blocking_sequence(9, length=8, kind="consecutive", node_budget=50)


def test_zero_in_weights_gives_constant_one():
    res = davenport_constant(6, WeightSet.from_values(6, [0, 1]))
    assert res.value == 1
    assert res.extremal is None
    res = consecutive_constant(6, WeightSet.from_values(6, [0]))
    assert res.value == 1


def test_weights_as_plain_list():
    assert davenport_constant(5, [1, 4]).value == 3


def test_constant_table():
    entries = constant_table([2, 4, 8], kind="davenport")
    assert [e.result.value for e in entries] == [2, 4, 2]
    entries = constant_table([3, 5, 7], family="q_p", kind="consecutive")
    assert [e.result.value for e in entries] == [3, 3, 3]
    assert constant_table([]) == []


def test_constant_table_reports_per_entry_errors():
    entries = constant_table([4, 5], family="q_p", kind="consecutive")
    assert entries[0].result is None
    assert "odd prime" in entries[0].error
    assert entries[1].result is not None and entries[1].error is None


def _definitional_constant(n, weights, consecutive):
    # straight from the definition: least k such that every length-k sequence
    # has a zero-sum of the given kind, decided by the brute-force oracle
    import itertools

    ws = WeightSet.from_values(n, weights)
    for k in range(1, n + 1):
        if all(
            brute_force_has_zero_sum(Sequence.from_values(n, vals), ws, consecutive)
            for vals in itertools.product(range(n), repeat=k)
        ):
            return k
    return None


def test_search_matches_definition_small():
    from zswc.modcore import nonzero_squares

    for n in range(2, 9):
        w = nonzero_squares(n).values()
        assert davenport_constant(n).value == _definitional_constant(n, w, False), n
        assert consecutive_constant(n).value == _definitional_constant(n, w, True), n


def test_search_matches_definition_custom_weights():
    for n in range(2, 7):
        for w in ((1,), (1, n - 1) if n > 2 else (1,)):
            ws = WeightSet.from_values(n, w)
            assert davenport_constant(n, ws).value == _definitional_constant(n, w, False)
            assert consecutive_constant(n, ws).value == _definitional_constant(n, w, True)


def test_query_validation():
    with pytest.raises(ValueError):
        davenport_constant(9, cap=0)
    with pytest.raises(ValueError):
        davenport_constant(9, cap=10)
    with pytest.raises(ValueError):
        exists_blocking_sequence(9, length=-1)
