import math

import numpy as np
import pytest

import graywyner as gw
from graywyner.errors import (
    EmptySelectionError,
    MissingAuxAxisError,
    OverlappingSelectionsError,
)

from conftest import (
    binary_entropy,
    copy_pair,
    dsbs,
    example2,
    example2_w_x0,
    fair_bit,
    random_joint,
)


class TestEntropy:
    def test_fair_bit(self):
        assert gw.entropy(fair_bit()) == 1.0

    def test_point_mass(self):
        pmf = gw.JointPmf(("A",), (3,), [0.0, 1.0, 0.0])
        assert gw.entropy(pmf) == 0.0

    def test_bernoulli_quarter(self):
        pmf = gw.JointPmf(("A",), (2,), [0.75, 0.25])
        expected = -(0.25 * math.log2(0.25) + 0.75 * math.log2(0.75))
        assert gw.entropy(pmf) == pytest.approx(expected, abs=1e-12)
        assert gw.entropy(pmf) == pytest.approx(0.811278, abs=1e-6)

    def test_subset_entropy_is_marginal_entropy(self):
        pmf = example2()
        assert gw.entropy(pmf, [0]) == pytest.approx(2.0, abs=1e-12)

    def test_empty_selection(self):
        with pytest.raises(EmptySelectionError):
            gw.entropy(fair_bit(), [])


class TestConditionalEntropy:
    def test_perfect_correlation(self):
        assert gw.conditional_entropy(copy_pair(), [1], [0]) == 0.0

    def test_independent_fair_bits(self):
        pmf = gw.product(fair_bit("A"), fair_bit("B"))
        assert gw.conditional_entropy(pmf, [1], [0]) == pytest.approx(1.0, abs=1e-12)

    def test_dsbs_binary_entropy(self):
        value = gw.conditional_entropy(dsbs(0.11), [1], [0])
        assert value == pytest.approx(binary_entropy(0.11), abs=1e-12)
        assert value == pytest.approx(0.4999, abs=1e-4)

    def test_overlap_rejected(self):
        with pytest.raises(OverlappingSelectionsError):
            gw.conditional_entropy(copy_pair(), [0], [0])


class TestMutualInformation:
    def test_independent(self):
        pmf = gw.product(fair_bit("A"), fair_bit("B"))
        assert gw.mutual_information(pmf, [0], [1]) == pytest.approx(0.0, abs=1e-12)

    def test_copy_pair(self):
        assert gw.mutual_information(copy_pair(), [0], [1]) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_dsbs(self):
        assert gw.mutual_information(dsbs(0.11), [0], [1]) == pytest.approx(
            1.0 - binary_entropy(0.11), abs=1e-12
        )

    def test_symmetry_same_code_path(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            pmf = random_joint(rng, k=2)
            assert gw.mutual_information(pmf, [0], [1]) == gw.mutual_information(
                pmf, [1], [0]
            )

    def test_both_expansions_agree(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            pmf = random_joint(rng, k=2)
            direct = gw.mutual_information(pmf, [0], [1])
            via_a = gw.entropy(pmf, [0]) - gw.conditional_entropy(pmf, [0], [1])
            via_b = gw.entropy(pmf, [1]) - gw.conditional_entropy(pmf, [1], [0])
            assert direct == pytest.approx(via_a, abs=1e-9)
            assert direct == pytest.approx(via_b, abs=1e-9)


class TestConditionalMutualInformation:
    def test_conditioning_on_determiner_kills_mi(self):
        # (X1, X2, C) with C a copy of X1: I(X2; C | X1) = 0.
        base = dsbs(0.3)
        tensor = np.zeros((2, 2, 2))
        for x1 in range(2):
            for x2 in range(2):
                tensor[x1, x2, x1] = base.probabilities[x1, x2]
        pmf = gw.JointPmf(("X1", "X2", "C"), (2, 2, 2), tensor)
        assert gw.conditional_mutual_information(pmf, [1], [2], [0]) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_independent_triple(self):
        pmf = gw.product(gw.product(fair_bit("A"), fair_bit("B")), fair_bit("C"))
        for a, b, g in ([0], [1], [2]), ([0], [2], [1]), ([1], [2], [0]):
            assert gw.conditional_mutual_information(pmf, a, b, g) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_copy_of_x1_given_x2(self):
        # I(X1; C | X2) = H(X1 | X2) = h(delta) for the DSBS pair.
        base = dsbs(0.11)
        tensor = np.zeros((2, 2, 2))
        for x1 in range(2):
            for x2 in range(2):
                tensor[x1, x2, x1] = base.probabilities[x1, x2]
        pmf = gw.JointPmf(("X1", "X2", "C"), (2, 2, 2), tensor)
        assert gw.conditional_mutual_information(pmf, [0], [2], [1]) == pytest.approx(
            binary_entropy(0.11), abs=1e-12
        )


class TestMarkovSlack:
    def test_constant_w_zero_slack(self):
        pmf = example2()
        joint = gw.join_with_aux(pmf, gw.constant_channel(pmf))
        for k in range(3):
            assert gw.markov_slack(joint, k) == pytest.approx(0.0, abs=1e-12)

    def test_example2_w_x0_zero_slack(self):
        joint = gw.join_with_aux(example2(), example2_w_x0())
        for k in range(3):
            assert gw.markov_slack(joint, k) <= 1e-9

    def test_dsbs_w_x1_slack_is_h_delta(self):
        pmf = dsbs(0.11)
        joint = gw.join_with_aux(pmf, gw.variable_channel(pmf, 0))
        assert gw.markov_slack(joint, 1) == pytest.approx(
            binary_entropy(0.11), abs=1e-12
        )

    def test_missing_aux_axis(self):
        with pytest.raises(MissingAuxAxisError):
            gw.markov_slack(dsbs(0.2), 0)


class TestProperties:
    def test_chain_rule(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            pmf = random_joint(rng, k=2)
            joint = gw.entropy(pmf)
            split = gw.entropy(pmf, [0]) + gw.conditional_entropy(pmf, [1], [0])
            assert joint == pytest.approx(split, abs=1e-9)

    def test_non_negativity(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            pmf = random_joint(rng, k=3)
            assert gw.entropy(pmf) >= 0.0
            assert gw.mutual_information(pmf, [0], [1, 2]) >= 0.0
            assert gw.conditional_mutual_information(pmf, [0], [1], [2]) >= 0.0

    def test_markov_zero_implies_shared_mi(self):
        # Under the component witness all chains hold, so I(X-bar; W)
        # equals I(X_k; W) for every k.
        rng = np.random.default_rng(31)
        for _ in range(15):
            pmf = random_joint(rng, k=3)
            witness = gw.gk_common_information(pmf).witness
            joint = gw.join_with_aux(pmf, witness)
            full = gw.mutual_information(joint, [0, 1, 2], [3])
            for k in range(3):
                assert gw.markov_slack(joint, k) <= 1e-9
                assert gw.mutual_information(joint, [k], [3]) == pytest.approx(
                    full, abs=1e-9
                )

    def test_delta_identity_coordinate_of_joint(self):
        # H(X-bar | W, X_k) = H(X-bar | W) - H(X_k | W).
        rng = np.random.default_rng(37)
        for _ in range(10):
            pmf = random_joint(rng, k=3)
            chan = gw.AuxChannel(
                3, rng.dirichlet(np.ones(3), size=pmf.num_outcomes)
            )
            joint = gw.join_with_aux(pmf, chan)
            w_axis = 3
            h_all_w = gw.conditional_entropy(joint, [0, 1, 2], [w_axis])
            for k in range(3):
                others = [i for i in range(3) if i != k]
                lhs = gw.conditional_entropy(joint, others, [k, w_axis])
                rhs = h_all_w - gw.conditional_entropy(joint, [k], [w_axis])
                assert lhs == pytest.approx(rhs, abs=1e-9)


def test_binary_entropy_helper():
    assert gw.binary_entropy(0.5) == 1.0
    assert gw.binary_entropy(0.0) == 0.0
    assert gw.binary_entropy(0.11) == pytest.approx(binary_entropy(0.11), abs=1e-15)
