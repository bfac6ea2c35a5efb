import numpy as np
import pytest

from keyness.candidates import CandidateTerm, TermGroup
from keyness.errors import KeynessError
from keyness.evalx import (RankedGroups, correct_group_flags, first_correct_rank,
                           identification_recall, mrr, mrr_literal,
                           pattern_coverage, pattern_coverage_curve,
                           spearman_rho, topk_scores)


def group_of(*keys):
    members = [CandidateTerm(key=k, length=len(k.split()), occurrences=[(0, 0)],
                             surface_forms=[k]) for k in keys]
    return TermGroup(members=members, representative=members[0])


def ranked(*key_groups):
    groups = [group_of(*keys) if isinstance(keys, tuple) else group_of(keys)
              for keys in key_groups]
    scores = [float(len(key_groups) - i) for i in range(len(key_groups))]
    return RankedGroups(groups=groups, scores=scores)


class TestTopKScores:
    def test_worked_case_four_of_ten_eight_gold(self):
        gold = [f"g{i}" for i in range(8)]
        lists = ["g0", "x1", "g1", "x2", "g2", "x3", "x4", "g3", "x5", "x6"]
        result = topk_scores(ranked(*lists), gold, k=10)
        assert result[0] == pytest.approx(0.4, abs=1e-12)
        assert result[1] == pytest.approx(0.5, abs=1e-12)
        assert result[2] == pytest.approx(2 * 0.4 * 0.5 / 0.9, abs=1e-12)
        assert result[2] == pytest.approx(0.4444, abs=1e-4)

    def test_perfect_ten_of_ten(self):
        gold = [f"g{i}" for i in range(10)]
        result = topk_scores(ranked(*gold), gold, k=10)
        assert result == (1.0, 1.0, 1.0)

    def test_zero_correct_gives_zero_f(self):
        result = topk_scores(ranked("a", "b"), ["gold"], k=10)
        assert result == (0.0, 0.0, 0.0)

    def test_gold_credits_at_most_one_group(self):
        # both groups contain the same gold keyword; only one is correct
        result = topk_scores(ranked("g0", "g0"), ["g0"], k=2)
        assert result[0] == pytest.approx(0.5)
        assert result[1] == pytest.approx(1.0)

    def test_group_correct_if_any_member_matches(self):
        lists = [("junk", "g0"), "other"]
        flags = correct_group_flags(ranked(*lists), ["g0"])
        assert flags == [True, False]

    def test_no_gold_returns_none(self):
        assert topk_scores(ranked("a"), [], k=10) is None

    def test_precision_divides_by_k_literally(self):
        # three correct groups, only three groups returned, k=10: P = 3/10
        gold = ["g0", "g1", "g2"]
        result = topk_scores(ranked(*gold), gold, k=10)
        assert result[0] == pytest.approx(0.3, abs=1e-12)
        assert result[1] == pytest.approx(1.0, abs=1e-12)

    def test_unbounded_k_consistency(self):
        gold = ["g0", "g1"]
        lists = ["x", "g0", "y", "g1", "z"]
        big_k = len(lists)
        precision, recall, _f = topk_scores(ranked(*lists), gold, k=big_k)
        assert precision * big_k == pytest.approx(recall * len(gold), abs=1e-12)


class TestMRR:
    def test_all_rank_one(self):
        lists = [ranked("g0", "x"), ranked("g1", "y")]
        assert mrr(lists, [["g0"], ["g1"]]) == 1.0

    def test_single_document_rank_three(self):
        assert mrr([ranked("a", "b", "g0")], [["g0"]]) == pytest.approx(1 / 3, abs=1e-12)

    def test_two_documents_375(self):
        lists = [ranked("a", "g0"), ranked("b", "c", "d", "g1")]
        assert mrr(lists, [["g0"], ["g1"]]) == pytest.approx(0.375, abs=1e-12)

    def test_document_without_correct_contributes_zero(self):
        lists = [ranked("g0"), ranked("x")]
        assert mrr(lists, [["g0"], ["g1"]]) == pytest.approx(0.5, abs=1e-12)

    def test_invariant_under_document_permutation(self):
        lists = [ranked("a", "g0"), ranked("g1"), ranked("x", "y", "g2")]
        golds = [["g0"], ["g1"], ["g2"]]
        forward = mrr(lists, golds)
        backward = mrr(list(reversed(lists)), list(reversed(golds)))
        assert forward == backward

    def test_empty_corpus_is_error(self):
        with pytest.raises(KeynessError):
            mrr([], [])
        with pytest.raises(KeynessError):
            mrr([ranked("a")], [[]])

    def test_literal_variant_divides_by_prediction_count(self):
        lists = [ranked("g0", "x", "g1", "y")]
        # correct at ranks 1 and 3, four predictions
        expected = (1.0 + 1 / 3) / 4
        assert mrr_literal(lists, [["g0", "g1"]]) == pytest.approx(expected, abs=1e-12)

    def test_first_correct_rank(self):
        assert first_correct_rank(ranked("x", "g0"), ["g0"]) == 2
        assert first_correct_rank(ranked("x"), ["g0"]) is None


class TestIdentificationRecall:
    def test_values(self):
        assert identification_recall({"a", "b"}, ["a", "b"]) == 1.0
        assert identification_recall(set(), ["a"]) == 0.0
        assert identification_recall({"a", "b", "c"}, ["a", "b", "c", "d"]) == 0.75
        assert identification_recall({"a"}, []) is None


class TestSpearman:
    def test_perfect_and_reversed(self):
        assert spearman_rho([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)
        assert spearman_rho([1, 2, 3, 4], [9, 7, 5, 1]) == pytest.approx(-1.0)

    def test_ties_average(self):
        rho = spearman_rho([1, 2, 3, 4], [5, 5, 6, 7])
        assert 0 < rho < 1


class TestPatternCoverage:
    def test_identical_patterns_single_cluster(self):
        vectors = [np.array([1.0, 2.0, 0.5])] * 6
        curve, clusters = pattern_coverage(vectors, 0.1)
        assert clusters == 1
        assert curve[0] == (1, 1.0)
        assert curve[-1] == (6, 1.0)

    def test_orthogonal_patterns_diagonal(self):
        vectors = [np.eye(5)[i] for i in range(5)]
        curve, clusters = pattern_coverage(vectors, 0.1)
        assert clusters == 5
        assert [c for _i, c in curve] == pytest.approx([0.2, 0.4, 0.6, 0.8, 1.0])

    def test_monotone_and_terminates_at_one(self, rng):
        vectors = [rng.normal(size=8) for _ in range(40)]
        curve = pattern_coverage_curve(vectors, 0.3)
        values = [c for _i, c in curve]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_inputs(self):
        assert pattern_coverage([], 0.1) == ([], 0)
        curve, clusters = pattern_coverage([np.ones(3)], 0.1)
        assert curve == [(1, 1.0)] and clusters == 1
