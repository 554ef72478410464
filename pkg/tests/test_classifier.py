"""Case dispatch, failure conditions, and the full decision pipeline."""

import pytest

from conftest import assert_valid_witness, corpus_tuples, valid_covered_params
from pentaform.classifier import (
    CrossCheckMismatch,
    Reason,
    TheoremCase,
    Verdict,
    VerdictKind,
    classify,
    classify_case,
    condition_i,
    condition_ii,
    condition_iii,
    condition_iv,
    tau,
)
from pentaform.lattice import FormParams, ParamViolation, make_params
from pentaform.numth import padic_valuation
from pentaform.oracle import solve_admissible
from pentaform.spinor import SpinorOutcome


class TestCaseDispatch:
    @pytest.mark.parametrize(
        "tup,case",
        [
            ((1, 1, 1, 2, 4), TheoremCase.EQUAL_EXPONENT_GAP),
            ((1, 1, 1, 1, 2), TheoremCase.ODD_GAP_EVEN_TRIADIC),
            ((1, 3, 9, 3, 4), TheoremCase.ODD_GAP_ODD_TRIADIC),
            ((3, 1, 1, 1, 1), TheoremCase.BALANCED_ODD_TRIADIC),
            ((5, 9, 9, 2, 2), TheoremCase.BALANCED_EVEN_TRIADIC),
            ((1, 1, 5, 0, 0), TheoremCase.UNSCALED),
            ((1, 1, 1, 0, 2), TheoremCase.UNCOVERED),
        ],
    )
    def test_examples(self, tup, case):
        assert classify_case(FormParams(*tup)) is case

    def test_partition_over_corpus(self):
        for params in valid_covered_params():
            case = classify_case(params)
            gap = params.s - params.r
            odd_triadic = padic_valuation(3, params.abc) % 2 == 1
            if params.r == params.s == 0:
                expected = TheoremCase.UNSCALED
            elif params.r == params.s:
                expected = (
                    TheoremCase.BALANCED_ODD_TRIADIC
                    if odd_triadic
                    else TheoremCase.BALANCED_EVEN_TRIADIC
                )
            elif gap % 2 == 0:
                expected = TheoremCase.EQUAL_EXPONENT_GAP
            elif odd_triadic:
                expected = TheoremCase.ODD_GAP_ODD_TRIADIC
            else:
                expected = TheoremCase.ODD_GAP_EVEN_TRIADIC
            assert case is expected


class TestTau:
    def test_even_triadic_keeps_squarefree_part(self):
        p = make_params(5, 9, 9, 2, 2)
        assert tau(p) == 5
        assert tau(p, literal=True) == 5

    def test_odd_triadic_strips_three(self):
        p = make_params(3, 1, 1, 1, 1)
        assert tau(p) == 1
        assert tau(p, literal=True) == 3
        q = make_params(1, 27, 13, 2, 2)
        assert tau(q) == 13
        assert tau(q, literal=True) == 39

    def test_tau_coprime_to_six_in_default_mode(self):
        for params in valid_covered_params():
            t = tau(params)
            assert t % 2 == 1 and t % 3 != 0


class TestConditionI:
    def test_balanced_even_triadic(self):
        assert condition_i(make_params(5, 9, 9, 2, 2), TheoremCase.BALANCED_EVEN_TRIADIC)

    def test_odd_gap_needs_large_s(self):
        assert not condition_i(
            make_params(1, 1, 1, 1, 2), TheoremCase.ODD_GAP_EVEN_TRIADIC
        )

    def test_equal_gap_congruence(self):
        # eps is divisible by 3 here, so the table is evaluated on the raw
        # dataclass: the congruences themselves do not involve eps
        assert condition_i(FormParams(1, 1, 1, 2, 4), TheoremCase.EQUAL_EXPONENT_GAP)

    def test_balanced_odd_triadic_parity(self):
        assert not condition_i(
            make_params(3, 1, 1, 1, 1), TheoremCase.BALANCED_ODD_TRIADIC
        )
        assert condition_i(make_params(1, 1, 3, 2, 2), TheoremCase.BALANCED_ODD_TRIADIC)

    def test_odd_gap_odd_triadic_unit_parity_tracks_r(self):
        # the admissible unit part of a*b flips with the parity of r
        assert condition_i(make_params(1, 3, 9, 3, 4), TheoremCase.ODD_GAP_ODD_TRIADIC)
        assert not condition_i(
            make_params(1, 3, 9, 4, 5), TheoremCase.ODD_GAP_ODD_TRIADIC
        )

    def test_rejects_caseless_dispatch(self):
        with pytest.raises(ValueError):
            condition_i(make_params(1, 1, 5, 0, 0), TheoremCase.UNSCALED)


class TestConditionII:
    def test_examples(self):
        assert condition_ii(make_params(5, 9, 9, 2, 2), TheoremCase.BALANCED_EVEN_TRIADIC)
        assert condition_ii(make_params(1, 27, 13, 2, 2), TheoremCase.BALANCED_ODD_TRIADIC)
        assert not condition_ii(
            make_params(7, 1, 1, 1, 2), TheoremCase.ODD_GAP_EVEN_TRIADIC
        )


class TestConditionIII:
    def test_examples(self):
        assert condition_iii(make_params(5, 9, 9, 2, 2), TheoremCase.BALANCED_EVEN_TRIADIC)
        assert condition_iii(make_params(3, 1, 1, 1, 1), TheoremCase.BALANCED_ODD_TRIADIC)
        assert not condition_iii(
            make_params(1, 1, 3, 2, 2), TheoremCase.BALANCED_ODD_TRIADIC
        )
        assert not condition_iii(
            make_params(1, 27, 13, 2, 2), TheoremCase.BALANCED_ODD_TRIADIC
        )


class TestConditionIV:
    def test_examples(self):
        assert condition_iv(make_params(5, 9, 9, 2, 2))
        assert condition_iv(make_params(1, 9, 9, 2, 2))
        assert not condition_iv(make_params(1, 1, 5, 0, 0))

    def test_mode_changes_the_congruence(self):
        p = make_params(3, 1, 1, 1, 1)
        assert tau(p) != tau(p, literal=True)


class TestClassify:
    def test_flagship_not_almost_universal(self):
        v = classify(5, 9, 9, 2, 2)
        assert v.kind is VerdictKind.NOT_ALMOST_UNIVERSAL
        assert v.reason is Reason.THEOREM_APPLIED
        assert v.case is TheoremCase.BALANCED_EVEN_TRIADIC
        assert v.exceptional_class == 5
        assert v.conditions == {"i": True, "ii": True, "iii": True, "iv": True}
        assert v.spinor is SpinorOutcome.IS_EXCEPTION

    def test_unscaled_almost_universal(self):
        v = classify(1, 1, 5, 0, 0)
        assert v.kind is VerdictKind.ALMOST_UNIVERSAL
        assert v.case is TheoremCase.UNSCALED
        assert v.exceptional_class is None

    def test_star_violation(self):
        v = classify(1, 1, 1, 0, 0)
        assert v.kind is VerdictKind.INVALID_PARAMS
        assert v.reason is Reason.STAR_VIOLATION
        assert v.violation is ParamViolation.EPSILON_DIVISIBLE_BY_2_OR_3

    def test_local_obstruction(self):
        v = classify(1, 5, 13, 0, 0)
        assert v.kind is VerdictKind.NOT_ALMOST_UNIVERSAL
        assert v.reason is Reason.LOCAL_OBSTRUCTION
        assert v.obstructed_primes == (5, 13)
        assert v.exceptional_class is None

    def test_uncovered_regime(self):
        v = classify(1, 1, 1, 0, 2)
        assert v.kind is VerdictKind.NOT_COVERED
        assert v.reason is Reason.UNCOVERED_REGIME

    def test_odd_gap_odd_triadic_exception(self):
        v = classify(1, 3, 9, 3, 4)
        assert v.kind is VerdictKind.NOT_ALMOST_UNIVERSAL
        assert v.case is TheoremCase.ODD_GAP_ODD_TRIADIC
        assert v.exceptional_class == 1
        assert v.conditions == {"i": True, "ii": True, "iii": True, "iv": True}

    def test_deterministic(self):
        assert classify(5, 9, 9, 2, 2) == classify(5, 9, 9, 2, 2)
        assert classify(1, 3, 9, 3, 4) == classify(1, 3, 9, 3, 4)

    def test_exceptional_class_present_iff_theorem_failure(self):
        for tup in ((5, 9, 9, 2, 2), (1, 1, 5, 0, 0), (1, 5, 13, 0, 0), (3, 1, 1, 1, 1)):
            v = classify(*tup)
            should_have = (
                v.kind is VerdictKind.NOT_ALMOST_UNIVERSAL
                and v.reason is Reason.THEOREM_APPLIED
            )
            assert (v.exceptional_class is not None) == should_have


class TestSerialization:
    def test_to_dict_round_trip_fields(self):
        doc = classify(5, 9, 9, 2, 2).to_dict()
        assert doc["params"] == {"a": 5, "b": 9, "c": 9, "r": 2, "s": 2}
        assert doc["verdict"] == "not_almost_universal"
        assert doc["reason"] == "theorem_applied"
        assert doc["case"] == "C"
        assert doc["tau"] == 5
        assert doc["conditions"] == {"i": True, "ii": True, "iii": True, "iv": True}
        assert doc["spinor"] == "is_exception"

    def test_obstruction_and_violation_extras(self):
        doc = classify(1, 5, 13, 0, 0).to_dict()
        assert doc["obstructed_primes"] == [5, 13]
        doc2 = classify(1, 1, 1, 0, 0).to_dict()
        assert doc2["violation"] == "epsilon_divisible_by_2_or_3"
        assert doc2["verdict"] == "invalid_params"

    def test_literal_mode_flag(self):
        doc = classify(3, 1, 1, 1, 1, literal_sf=True).to_dict()
        assert doc["literal_sf"] is True
        assert doc["verdict"] == "almost_universal"
        assert doc["tau"] is None
        assert "literal_sf" not in classify(3, 1, 1, 1, 1).to_dict()
        flag = classify(5, 9, 9, 2, 2, literal_sf=True).to_dict()
        assert flag["literal_sf"] is True
        assert flag["tau"] == 5


class TestScalingInvariance:
    def test_represented_tau_scales_componentwise(self):
        # if tau is hit by an admissible triple, multiplying the triple by
        # k = +-1 mod 6 hits tau * k^2; spot-check a handful of solvable cases
        seen = 0
        for params in valid_covered_params():
            t = tau(params)
            witness = solve_admissible(params, t)
            if witness is None:
                continue
            seen += 1
            u, v, w = witness.units()
            for k in (5, 7):
                total = (
                    params.a * (k * u) ** 2
                    + (params.b << params.r) * (k * v) ** 2
                    + (params.c << params.s) * (k * w) ** 2
                )
                assert total == t * k * k
                assert all(abs(x * k) % 6 in (1, 5) for x in (u, v, w))
            if seen >= 10:
                break
        assert seen == 10
