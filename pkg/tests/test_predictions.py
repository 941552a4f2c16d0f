"""Tests for the prediction table, certifying constructions, coverage checks,
lift mechanisms, and the per-n verification reports."""

import pytest

from zswc.engine import (
    Sequence,
    WeightSet,
    Witness,
    brute_force_has_zero_sum,
    has_zero_sum_consecutive,
    has_zero_sum_subsequence,
    verify_witness,
)
from zswc.modcore import nonzero_squares, radical, v_p
from zswc.predictions import (
    ALL_UNITS,
    WITH_ZERO_AUGMENT,
    check_u25_window_property,
    check_unit_square_lift,
    construct_consecutive_witness,
    construct_even_square_witness,
    construct_nonsquare_odd_witness,
    construct_odd_square_d_witness,
    crt_weight_lift,
    find_non_qp_pair,
    is_square,
    predicted_constants,
    predicted_table,
    verify_coverage_lemma,
    verify_predictions,
)


def sstar(n):
    return WeightSet.from_family(n, "nonzero-squares")


@pytest.mark.parametrize(
    "n,case,d,c_lo,c_hi",
    [
        (2, "V2Odd", 2, 2, 2),
        (18, "V2Odd", 2, 2, 2),
        (50, "V2Odd", 2, 2, 2),
        (3, "NonSquareV2Even", 3, 3, 3),
        (12, "NonSquareV2Even", 3, 3, 3),
        (45, "NonSquareV2Even", 3, 3, 3),
        (4, "EvenSquare", 4, 4, 4),
        (16, "EvenSquare", 4, 4, 4),
        (100, "EvenSquare", 4, 4, 4),
        (9, "OddSquareSquarefreeRadicalSquared", 5, 9, 9),
        (225, "OddSquareSquarefreeRadicalSquared", 5, 9, 9),
        (2401, "OddSquareP4Big", 5, 5, 5),
        (625, "OddSquare5to4", 5, 5, 7),
        (81, "OddSquareOther", 5, 5, 9),
        (3969, "OddSquareOther", 5, 5, 9),  # 63^2 = 3^4 * 7^2: no exact case fits
    ],
)
def test_predicted_constants(n, case, d, c_lo, c_hi):
    pred = predicted_constants(n)
    assert (pred.case_tag, pred.d, pred.c_lo, pred.c_hi) == (case, d, c_lo, c_hi)
    assert pred.d <= pred.c_lo <= pred.c_hi
    assert pred.c_exact == (c_lo == c_hi)


def test_predicted_case_precedence():
    # divisible by 7^4 but with a non-squarefree radical square: exact 5 wins
    n = 7**4 * 3**4
    assert predicted_constants(n).case_tag == "OddSquareP4Big"
    # divisible by both 5^4 and 7^4: the p >= 7 case takes precedence
    n = 5**4 * 7**4
    assert predicted_constants(n).case_tag == "OddSquareP4Big"
    assert predicted_constants(n).c_hi == 5


def test_predicted_table_every_case_is_covered():
    for pred in predicted_table(range(2, 400)):
        assert pred.d in (2, 3, 4, 5)
        assert 2 <= pred.c_lo <= pred.c_hi <= 9


def test_find_non_qp_pair_examples():
    u, v = find_non_qp_pair(3, 2)
    assert (u.value, v.value) == (1, 1) and u.modulus.n == 9
    u, v = find_non_qp_pair(5)
    assert (u.value, v.value) == (1, 2)
    u, v = find_non_qp_pair(7, 2)
    ws = WeightSet.from_family(7, "q_p")
    image = Sequence.from_values(7, (u.value % 7, v.value % 7))
    assert not has_zero_sum_subsequence(image, ws)[0]
    with pytest.raises(ValueError):
        find_non_qp_pair(2)
    with pytest.raises(ValueError):
        find_non_qp_pair(9)


def test_construct_nonsquare_odd_witness():
    assert construct_nonsquare_odd_witness(9).values == (1, 1)
    assert construct_nonsquare_odd_witness(3).values == (1, 1)
    w15 = construct_nonsquare_odd_witness(15)
    assert not brute_force_has_zero_sum(w15, sstar(15))
    for n in range(3, 51, 2):
        seq = construct_nonsquare_odd_witness(n)
        assert not has_zero_sum_subsequence(seq, sstar(n))[0], n
    with pytest.raises(ValueError):
        construct_nonsquare_odd_witness(8)


def test_construct_even_square_witness():
    assert construct_even_square_witness(4).values == (1, 1, 1)
    w16 = construct_even_square_witness(16)
    assert tuple(x % 4 for x in w16.values) == (1, 1, 1)
    w36 = construct_even_square_witness(36)
    assert tuple(x % 4 for x in w36.values) == (1, 1, 1)
    assert w36.values[2] % 9 == 3
    for n in (4, 16, 36, 100):
        assert not has_zero_sum_subsequence(construct_even_square_witness(n), sstar(n))[0]
    with pytest.raises(ValueError):
        construct_even_square_witness(9)
    with pytest.raises(ValueError):
        construct_even_square_witness(8)


def test_construct_odd_square_d_witness():
    assert construct_odd_square_d_witness(9).values == (1, 1, 3, 3)
    assert construct_odd_square_d_witness(25).values == (1, 2, 5, 10)
    for n in (9, 25, 49, 225):
        seq = construct_odd_square_d_witness(n)
        m = radical(n)
        assert seq.values[2] == m * seq.values[0] % n
        assert not has_zero_sum_subsequence(seq, sstar(n))[0], n
    with pytest.raises(ValueError):
        construct_odd_square_d_witness(15)


def test_construct_consecutive_witness():
    assert construct_consecutive_witness(9).values == (3, 3, 1, 3, 3, 1, 3, 3)
    assert construct_consecutive_witness(25).values == (5, 10, 1, 5, 10, 2, 5, 10)
    for n in (9, 25, 225):
        seq = construct_consecutive_witness(n)
        assert len(seq) == 8
        assert not has_zero_sum_consecutive(seq, sstar(n))[0], n
    with pytest.raises(ValueError):
        construct_consecutive_witness(81)  # radical(81)^2 = 9 != 81
    with pytest.raises(ValueError):
        construct_consecutive_witness(16)


def test_constructions_at_scale():
    # constructors run their own engine blocking check and raise on failure;
    # exercise higher prime powers and multi-prime moduli
    construct_even_square_witness(324)    # 18^2 = 2^2 * 3^4
    construct_even_square_witness(900)    # 30^2, three primes
    construct_odd_square_d_witness(2025)  # 45^2 = 3^4 * 5^2
    construct_consecutive_witness(441)    # 21^2
    construct_consecutive_witness(11025)  # 105^2, three primes
    construct_nonsquare_odd_witness(1001)  # 7 * 11 * 13


def test_crt_weight_lift_examples():
    lifted = crt_weight_lift(Sequence.from_values(12, (3,)), 3, [1])
    assert [a.value for a in lifted] == [4]
    assert 4 in nonzero_squares(12)

    lifted = crt_weight_lift(Sequence.from_values(45, (5,)), 5, [4])
    assert [a.value for a in lifted] == [9]
    assert 9 in nonzero_squares(45)

    # single prime power: the lift is the identity
    lifted = crt_weight_lift(Sequence.from_values(9, (1, 8)), 3, [1, 1])
    assert [a.value for a in lifted] == [1, 1]


def test_crt_weight_lift_certifies():
    seq = Sequence.from_values(45, (4, 23, 9))
    # mod-9 image is (4, 5, 0); 4*4 + 4*5 + 1*0 = 36 = 0 mod 9, with 4, 1 in S(9)*
    lifted = crt_weight_lift(seq, 3, [4, 4, 1])
    wit = Witness((0, 1, 2), tuple(a.value for a in lifted))
    assert verify_witness(seq, sstar(45), wit)
    for a in lifted:
        assert a.value in nonzero_squares(45)
        assert v_p(a.value, 5) >= 1  # other components vanish


def test_crt_weight_lift_rejects():
    with pytest.raises(ValueError):
        crt_weight_lift(Sequence.from_values(12, (3,)), 5, [1])
    with pytest.raises(ValueError):
        crt_weight_lift(Sequence.from_values(12, (3,)), 3, [2])  # 2 not in S(3)*
    with pytest.raises(ValueError):
        crt_weight_lift(Sequence.from_values(12, (5,)), 3, [1])  # not a zero-sum
    with pytest.raises(ValueError):
        crt_weight_lift(Sequence.from_values(12, (3,)), 3, [1, 1])  # length mismatch


@pytest.mark.parametrize(
    "p,r,arity,variant",
    [(7, 1, 3, ALL_UNITS), (3, 1, 3, WITH_ZERO_AUGMENT), (5, 1, 3, WITH_ZERO_AUGMENT),
     (5, 1, 4, ALL_UNITS), (5, 2, 4, ALL_UNITS), (11, 1, 3, ALL_UNITS)],
)
def test_verify_coverage_lemma_passes(p, r, arity, variant):
    assert verify_coverage_lemma(p, r, arity, variant)


def test_verify_coverage_lemma_hypothesis_errors():
    with pytest.raises(ValueError, match="p >= 7"):
        verify_coverage_lemma(5, 1, 3, ALL_UNITS)
    with pytest.raises(ValueError, match="p = 5"):
        verify_coverage_lemma(7, 1, 4, ALL_UNITS)
    with pytest.raises(ValueError, match="3-fold"):
        verify_coverage_lemma(3, 1, 4, WITH_ZERO_AUGMENT)
    with pytest.raises(ValueError, match="odd prime"):
        verify_coverage_lemma(2, 1, 3, ALL_UNITS)
    with pytest.raises(ValueError, match="arity"):
        verify_coverage_lemma(7, 1, 5, ALL_UNITS)
    with pytest.raises(ValueError, match="variant"):
        verify_coverage_lemma(7, 1, 3, "everything")


def test_unit_square_lift_mechanism():
    # odd exponent lifts through the mod-p image, even through mod-p^2; sweep
    # every odd prime power <= 1000 where the lift multiplier is nontrivial
    from zswc.modcore import is_prime

    cases = [(3, 1), (13, 1)]  # r = 1 sanity: the lift is the identity
    for p in range(3, 32, 2):
        if not is_prime(p):
            continue
        r = 2
        while p**r <= 1000:
            cases.append((p, r))
            r += 1
    assert (31, 2) in cases and (3, 6) in cases
    for p, r in cases:
        base = p if r % 2 else p * p
        samples = 40 if base <= 100 else max(4, 2000 // base)
        assert check_unit_square_lift(p, r, samples=samples, seed=3), (p, r)


def test_u25_window_property_sampled():
    violations, total = check_u25_window_property(samples=3000, seed=11)
    assert violations == 0
    assert total > 4000  # adversarial families included on top of the samples


def test_u25_window_property_full_scale():
    from zswc import kernels

    if kernels.backend_name() != "numba":
        pytest.skip("full 10^5-sample run needs the JIT backend")
    violations, total = check_u25_window_property(samples=100_000, seed=7)
    assert violations == 0
    assert total >= 100_000


def test_verify_predictions_full_small():
    report = verify_predictions(9, "full")
    assert report.status == "ok"
    assert report.d_search == 5 and report.c_search == 9
    assert all(c.passed for c in report.constructions)
    assert {c.name for c in report.constructions} == {
        "odd_square_d_witness", "consecutive_witness"}
    assert all(l.passed for l in report.lemmas)

    report = verify_predictions(8, "full")
    assert report.status == "ok"
    assert (report.d_search, report.c_search) == (2, 2)

    report = verify_predictions(12, "full")
    assert report.status == "ok"
    assert (report.d_search, report.c_search) == (3, 3)


def test_verify_predictions_fast_has_no_searches():
    report = verify_predictions(2401, "fast")
    assert report.status == "ok"
    assert report.d_search is None and report.c_search is None
    assert any(c.name == "odd_square_d_witness" and c.passed
               for c in report.constructions)


def test_verify_predictions_skips_infeasible_consecutive_search():
    report = verify_predictions(25, "full")
    assert report.status == "skip"
    assert report.d_search == 5
    assert report.c_search is None and report.c_search_skipped


def test_verify_predictions_report_schema():
    d = verify_predictions(9, "fast").to_json_dict()
    assert set(d) == {"n", "case", "d_pred", "c_pred", "d_search", "c_search",
                      "constructions", "lemmas", "status"}
    assert d["n"] == 9 and d["case"] == "OddSquareSquarefreeRadicalSquared"
    assert d["c_pred"] == [9, 9]
    for c in d["constructions"]:
        assert set(c) == {"name", "pass", "sequence"}
    for l in d["lemmas"]:
        assert set(l) == {"name", "params", "pass"}
    assert d["status"] in ("ok", "skip", "fail")


def test_verify_predictions_consistency_range():
    # searched values stay inside predicted intervals wherever search completes;
    # the fallback backend gets a reduced sweep (same code, ~1000x slower search)
    from zswc import kernels

    limit = 201 if kernels.backend_name() == "numba" else 41
    for n in range(2, limit):
        report = verify_predictions(n, "full")
        assert report.status in ("ok", "skip"), (n, report.to_json_dict())
        if report.d_search is not None:
            assert report.d_search == report.prediction.d
        if report.c_search is not None:
            assert report.prediction.c_lo <= report.c_search <= report.prediction.c_hi


def test_is_square():
    squares = {x * x for x in range(40)}
    for n in range(2, 1200):
        assert is_square(n) == (n in squares)
