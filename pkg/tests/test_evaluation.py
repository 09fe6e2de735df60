"""Metric definitions against independent oracles and spec'd examples."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ap_threshold_enumeration, tau_b_pair_counting
from xaibench.evaluation import (
    EvaluationScore,
    HumanRationale,
    Rationale,
    aopc_comprehensiveness,
    aopc_sufficiency,
    auprc,
    discretize_topk,
    kendall_tau_b,
    positive_topk_fraction,
    taucorr_loo,
    token_f1,
    token_iou,
)
from xaibench.explainers import Explanation, explain_loo
from xaibench.models import sigmoid, tokenize


def make_expl(scores, method="loo", target=1):
    return Explanation(
        method=method,
        target=target,
        token_strings=tuple(f"t{i}" for i in range(len(scores))),
        scores=tuple(float(s) for s in scores),
    )


finite_scores = st.lists(
    st.floats(min_value=-100, max_value=100, allow_nan=False), min_size=1, max_size=12
)


class TestTopKFraction:
    def test_half_of_two_positives(self):
        r = positive_topk_fraction(make_expl([0.5, -0.1, 0.3]), 50)
        assert r.indices == {0}

    def test_full_sweep_takes_all_positives(self):
        r = positive_topk_fraction(make_expl([0.5, -0.1, 0.3]), 100)
        assert r.indices == {0, 2}

    def test_all_negative_is_empty(self):
        assert positive_topk_fraction(make_expl([-1.0, -0.5]), 50).indices == frozenset()

    def test_zero_scores_excluded(self):
        assert positive_topk_fraction(make_expl([0.0, 1.0]), 100).indices == {1}

    def test_ceil_keeps_single_positive_at_k10(self):
        assert positive_topk_fraction(make_expl([0.9, -1.0]), 10).indices == {0}

    def test_k_validation(self):
        with pytest.raises(ValueError):
            positive_topk_fraction(make_expl([1.0]), 5)
        with pytest.raises(ValueError):
            positive_topk_fraction(make_expl([1.0]), 101)

    @given(finite_scores, st.integers(min_value=1, max_value=10))
    def test_never_contains_non_positive(self, scores, tens):
        r = positive_topk_fraction(make_expl(scores), tens * 10)
        assert all(scores[i] > 0 for i in r.indices)


class TestTopK:
    def test_plain_topk(self):
        assert discretize_topk(make_expl([0.9, 0.8, -0.2]), 2).indices == {0, 1}

    def test_capped_by_positive_count(self):
        assert discretize_topk(make_expl([-0.1, 0.7, -0.5]), 5).indices == {1}

    def test_tie_break_prefers_lower_index(self):
        assert discretize_topk(make_expl([0.4, 0.4]), 1).indices == {0}

    @given(finite_scores, st.integers(min_value=1, max_value=15))
    def test_never_contains_non_positive(self, scores, k):
        r = discretize_topk(make_expl(scores), k)
        assert all(scores[i] > 0 for i in r.indices)
        assert len(r.indices) == min(k, sum(1 for s in scores if s > 0))


class TestAopc:
    def test_single_positive_token_constant_sweep(self, lexicon, great_movie):
        expl = explain_loo(lexicon, great_movie, 1)
        score = aopc_comprehensiveness(lexicon, great_movie, expl, 1)
        assert score.value == pytest.approx(sigmoid(2.0) - 0.5, abs=1e-6)
        assert score.direction == "higher_better"

    def test_all_negative_comprehensiveness_zero(self, lexicon, great_movie):
        expl = make_expl([-1.0, -2.0])
        score = aopc_comprehensiveness(lexicon, great_movie, expl, 1)
        assert score.value == 0.0

    def test_sufficiency_perfect_rationale(self, lexicon, great_movie):
        expl = explain_loo(lexicon, great_movie, 1)
        score = aopc_sufficiency(lexicon, great_movie, expl, 1)
        assert score.value == pytest.approx(0.0, abs=1e-12)
        assert score.direction == "lower_better"

    def test_sufficiency_all_negative_keeps_nothing(self, lexicon, great_movie):
        expl = make_expl([-1.0, -2.0])
        score = aopc_sufficiency(lexicon, great_movie, expl, 1)
        assert score.value == pytest.approx(sigmoid(2.0) - 0.5, abs=1e-12)

    def test_length_mismatch_rejected(self, lexicon, great_movie):
        with pytest.raises(ValueError):
            aopc_comprehensiveness(lexicon, great_movie, make_expl([1.0]), 1)


class TestTauCorrLoo:
    def test_self_correlation(self, lexicon):
        [x] = tokenize(lexicon, ["great terrible movie"])
        expl = explain_loo(lexicon, x, 1)
        assert taucorr_loo(lexicon, x, expl, 1).value == pytest.approx(1.0)

    def test_negated(self, lexicon):
        [x] = tokenize(lexicon, ["great terrible movie"])
        loo = explain_loo(lexicon, x, 1)
        negated = make_expl([-s for s in loo.scores])
        assert taucorr_loo(lexicon, x, negated, 1).value == pytest.approx(-1.0)

    def test_undefined_on_constant_explanation(self, lexicon):
        [x] = tokenize(lexicon, ["great terrible movie"])
        expl = make_expl([0.5, 0.5, 0.5])
        assert taucorr_loo(lexicon, x, expl, 1).value is None

    def test_requires_two_tokens(self, lexicon):
        [x] = tokenize(lexicon, ["great"])
        with pytest.raises(ValueError):
            taucorr_loo(lexicon, x, make_expl([1.0]), 1)


class TestKendall:
    def test_one_swap(self):
        assert kendall_tau_b([1, 2, 3], [1, 3, 2]) == pytest.approx(1 / 3)

    def test_matches_pair_counting_with_ties(self):
        rng = np.random.default_rng(31)
        for _ in range(300):
            n = int(rng.integers(2, 12))
            x = rng.integers(-3, 4, size=n).astype(float)
            y = rng.integers(-3, 4, size=n).astype(float)
            assert kendall_tau_b(x, y) == tau_b_pair_counting(list(x), list(y))

    def test_matches_scipy(self):
        from scipy.stats import kendalltau

        rng = np.random.default_rng(37)
        for _ in range(200):
            n = int(rng.integers(2, 15))
            x = rng.integers(-3, 4, size=n).astype(float)
            y = rng.integers(-3, 4, size=n).astype(float)
            ours = kendall_tau_b(x, y)
            reference = kendalltau(x, y).statistic
            if ours is None:
                assert np.isnan(reference)
            else:
                assert ours == pytest.approx(reference, abs=1e-12)

    def test_constant_vector_undefined(self):
        assert kendall_tau_b([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) is None

    @given(
        st.lists(st.integers(-50, 50), min_size=2, max_size=10),
        st.floats(min_value=0.1, max_value=5),
        st.floats(min_value=-10, max_value=10),
    )
    def test_invariant_under_increasing_affine_transform(self, xs, a, b):
        # integer-spaced inputs keep the float transform injective
        ys = list(range(len(xs)))
        transformed = [a * v + b for v in xs]
        assert kendall_tau_b(xs, ys) == kendall_tau_b(transformed, ys)


class TestIouF1:
    def test_iou_examples(self):
        human = HumanRationale(mask=(0, 1, 1, 0))
        assert token_iou(Rationale(frozenset({1, 2})), human).value == pytest.approx(1.0)
        human = HumanRationale(mask=(0, 0, 1, 1))
        assert token_iou(Rationale(frozenset({1, 2})), human).value == pytest.approx(1 / 3)
        assert token_iou(Rationale(frozenset()), human).value == 0.0

    def test_f1_examples(self):
        human = HumanRationale(mask=(0, 0, 1, 1))
        assert token_f1(Rationale(frozenset({1, 2})), human).value == pytest.approx(0.5)
        assert token_f1(Rationale(frozenset({2, 3})), human).value == pytest.approx(1.0)
        assert token_f1(Rationale(frozenset({0})), human).value == 0.0

    def test_empty_human_not_applicable(self):
        empty = HumanRationale(mask=(0, 0, 0))
        assert token_iou(Rationale(frozenset({1})), empty).value is None
        assert token_f1(Rationale(frozenset({1})), empty).value is None

    @given(
        st.sets(st.integers(0, 9)),
        st.lists(st.integers(0, 1), min_size=10, max_size=10),
    )
    def test_iou_never_exceeds_f1(self, pred, mask):
        human = HumanRationale(mask=tuple(mask))
        pred_rationale = Rationale(frozenset(pred))
        iou = token_iou(pred_rationale, human).value
        f1 = token_f1(pred_rationale, human).value
        if iou is not None:
            assert iou <= f1 + 1e-12


class TestAuprc:
    def test_both_relevant_ranked_first(self):
        expl = make_expl([0.9, 0.1, 0.8])
        assert auprc(expl, HumanRationale(mask=(1, 0, 1))).value == pytest.approx(1.0)

    def test_single_relevant_ranked_last(self):
        expl = make_expl([0.9, 0.8, 0.7, 0.1])
        assert auprc(expl, HumanRationale(mask=(0, 0, 0, 1))).value == pytest.approx(0.25)

    def test_all_tokens_relevant(self):
        expl = make_expl([0.2, -0.9, 0.5])
        assert auprc(expl, HumanRationale(mask=(1, 1, 1))).value == pytest.approx(1.0)

    def test_empty_human_not_applicable(self):
        assert auprc(make_expl([1.0, 2.0]), HumanRationale(mask=(0, 0))).value is None

    def test_matches_threshold_enumeration(self):
        rng = np.random.default_rng(41)
        for _ in range(300):
            n = int(rng.integers(1, 12))
            scores = rng.normal(size=n)
            mask = rng.integers(0, 2, size=n)
            if mask.sum() == 0:
                mask[int(rng.integers(0, n))] = 1
            ours = auprc(make_expl(scores), HumanRationale(mask=tuple(int(b) for b in mask)))
            oracle = ap_threshold_enumeration(list(scores), list(mask))
            assert ours.value == pytest.approx(oracle, abs=1e-12)

    @given(
        st.lists(st.floats(-20, 20), min_size=2, max_size=10, unique=True),
        st.data(),
    )
    @settings(max_examples=50)
    def test_invariant_under_monotone_transform(self, scores, data):
        mask = data.draw(
            st.lists(st.integers(0, 1), min_size=len(scores), max_size=len(scores))
        )
        if sum(mask) == 0:
            mask[0] = 1
        human = HumanRationale(mask=tuple(mask))
        base = auprc(make_expl(scores), human).value
        squashed = auprc(make_expl([np.tanh(s / 25.0) for s in scores]), human).value
        assert squashed == pytest.approx(base, abs=1e-12)


def test_score_serialization_round_trip():
    score = EvaluationScore(metric="auprc", value=0.5, direction="higher_better")
    assert EvaluationScore.from_json(score.to_json()) == score
    missing = EvaluationScore(metric="taucorr_loo", value=None, direction="higher_better")
    assert EvaluationScore.from_json(missing.to_json()) == missing
    assert missing.to_json()["value"] is None
