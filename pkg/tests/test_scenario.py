"""Witness functionals and the outcome distribution."""

import itertools

import numpy as np
import pytest

from seqrac import (
    Strategy,
    WitnessPair,
    canonical_strategy,
    charlie_best_response,
    conjugate_strategy,
    effective_ensemble,
    joint_prob,
    witness_ab,
    witness_ac,
    witness_pair,
)
from seqrac.linalg import maximally_mixed
from seqrac.sampling import random_strategy, random_su2
from seqrac.scenario import INPUT_PAIRS, PreparationEnsemble

SQRT2 = np.sqrt(2.0)


def all_mixed(strategy: Strategy) -> Strategy:
    mixed = PreparationEnsemble(tuple(maximally_mixed() for _ in range(4)))
    return Strategy(mixed, strategy.instruments, strategy.measurements)


class TestJointProb:
    def test_sharp_canonical_marginal(self, canonical_sharp):
        total = sum(joint_prob(canonical_sharp, (0, 0), 0, 0, 0, c) for c in (0, 1))
        assert total == pytest.approx((1 + 1 / SQRT2) / 2, abs=1e-12)

    def test_mixed_preparations_make_outcomes_flat(self, rng):
        strategy = all_mixed(random_strategy(rng, luders=True))
        for y in (0, 1):
            marginal = sum(
                joint_prob(strategy, (0, 1), y, 0, 0, c) for c in (0, 1)
            )
            expected = (1 + strategy.instruments[y].povm.c0) / 2
            assert marginal == pytest.approx(expected, abs=1e-12)

    def test_noninteracting_instrument_has_flat_outcome(self):
        strategy = canonical_strategy(0.0)
        for x in INPUT_PAIRS:
            for (y, z, c) in itertools.product((0, 1), repeat=3):
                p0 = joint_prob(strategy, x, y, z, 0, c)
                p1 = joint_prob(strategy, x, y, z, 1, c)
                assert p0 == pytest.approx(p1, abs=1e-12)

    def test_normalization_on_random_strategies(self, rng):
        for _ in range(1000):
            strategy = random_strategy(rng)
            for x in INPUT_PAIRS:
                for y, z in itertools.product((0, 1), repeat=2):
                    total = sum(
                        joint_prob(strategy, x, y, z, b, c)
                        for b in (0, 1)
                        for c in (0, 1)
                    )
                    assert abs(total - 1.0) <= 1e-9


class TestWitnessAB:
    def test_optimal_value(self, canonical_sharp):
        assert witness_ab(canonical_sharp) == pytest.approx((2 + SQRT2) / 4, abs=1e-12)

    def test_unsharp_value(self):
        assert witness_ab(canonical_strategy(0.8)) == pytest.approx(
            (2 + 0.8 * SQRT2) / 4, abs=1e-12
        )

    def test_mixed_preparations_score_half(self, rng):
        assert witness_ab(all_mixed(random_strategy(rng))) == pytest.approx(
            0.5, abs=1e-12
        )


class TestWitnessAC:
    def test_sharp_value(self, canonical_sharp):
        assert witness_ac(canonical_sharp) == pytest.approx((4 + SQRT2) / 8, abs=1e-12)

    def test_half_sharp_value(self, canonical_half):
        assert witness_ac(canonical_half) == pytest.approx((5 + SQRT2) / 8, abs=1e-12)

    def test_noninteracting_value(self):
        assert witness_ac(canonical_strategy(0.0)) == pytest.approx(
            (2 + SQRT2) / 4, abs=1e-12
        )

    def test_equals_full_distribution_sum(self, rng):
        for _ in range(25):
            strategy = random_strategy(rng)
            total = 0.0
            for x in INPUT_PAIRS:
                for y, b, z in itertools.product((0, 1), repeat=3):
                    total += joint_prob(strategy, x, y, z, b, x[z])
            assert witness_ac(strategy) == pytest.approx(total / 16.0, abs=1e-12)

    def test_equals_effective_ensemble_route(self, rng):
        for _ in range(50):
            strategy = random_strategy(rng)
            reached = effective_ensemble(strategy)
            total = 0.0
            for x, st in zip(INPUT_PAIRS, reached.states):
                for z in (0, 1):
                    effect = strategy.measurements[z].effects[x[z]]
                    total += float(np.trace(st.matrix @ effect).real)
            assert witness_ac(strategy) == pytest.approx(total / 8.0, abs=1e-12)


class TestWitnessPair:
    def test_half_sharp_pair(self, canonical_half):
        pair = witness_pair(canonical_half)
        assert pair.w_ab == pytest.approx(0.75, abs=1e-12)
        assert pair.w_ac == pytest.approx((5 + SQRT2) / 8, abs=1e-12)

    def test_equal_witness_sharpness(self):
        pair = witness_pair(canonical_strategy(0.8))
        expected = (5 + 2 * SQRT2) / 10
        assert pair.w_ab == pytest.approx(expected, abs=1e-12)
        assert pair.w_ac == pytest.approx(expected, abs=1e-12)

    def test_all_mixed_pair(self, rng):
        pair = witness_pair(all_mixed(random_strategy(rng)))
        assert pair == pytest.approx(WitnessPair(0.5, 0.5), abs=1e-12)


class TestEffectiveEnsemble:
    def test_sharp_instruments_halve_bloch_vectors(self, canonical_sharp):
        reached = effective_ensemble(canonical_sharp)
        for before, after in zip(canonical_sharp.preparations.states, reached.states):
            np.testing.assert_allclose(after.bloch, 0.5 * before.bloch, atol=1e-12)

    def test_noninteracting_instruments_do_nothing(self):
        strategy = canonical_strategy(0.0)
        reached = effective_ensemble(strategy)
        for before, after in zip(strategy.preparations.states, reached.states):
            np.testing.assert_allclose(after.bloch, before.bloch, atol=1e-12)

    def test_generic_shrink_factor(self):
        for eta in (0.3, 0.6, 0.95):
            strategy = canonical_strategy(eta)
            factor = (1 + np.sqrt(1 - eta**2)) / 2
            reached = effective_ensemble(strategy)
            for before, after in zip(strategy.preparations.states, reached.states):
                np.testing.assert_allclose(after.bloch, factor * before.bloch, atol=1e-12)

    def test_outputs_are_valid_states(self, rng):
        for _ in range(100):
            for st in effective_ensemble(random_strategy(rng)).states:
                assert abs(np.trace(st.matrix).real - 1.0) < 1e-9
                assert np.linalg.eigvalsh(st.matrix)[0] > -1e-9


class TestFrameInvariance:
    def test_witnesses_unchanged_by_global_conjugation(self, rng):
        for _ in range(50):
            strategy = random_strategy(rng)
            rotated = conjugate_strategy(strategy, random_su2(rng))
            before = witness_pair(strategy)
            after = witness_pair(rotated)
            assert after.w_ab == pytest.approx(before.w_ab, abs=1e-12)
            assert after.w_ac == pytest.approx(before.w_ac, abs=1e-12)


class TestDataProcessing:
    def test_best_response_never_decreases_witness(self, rng):
        for _ in range(200):
            strategy = random_strategy(rng)
            _, best = charlie_best_response(
                strategy.preparations, strategy.instruments
            )
            assert best >= witness_ac(strategy) - 1e-12


class TestDifferenceVectors:
    def test_definition(self, rng):
        from seqrac.scenario import difference_vectors
        from seqrac.sampling import random_preparations

        preparations = random_preparations(rng)
        n = preparations.bloch_vectors()
        m0, m1 = difference_vectors(preparations)
        np.testing.assert_allclose(m0, (n[0] - n[3]) + (n[1] - n[2]), atol=1e-15)
        np.testing.assert_allclose(m1, (n[0] - n[3]) - (n[1] - n[2]), atol=1e-15)

    def test_orthogonal_for_square_ensembles(self):
        from seqrac.scenario import difference_vectors
        from seqrac.strategies import square_preparations

        m0, m1 = difference_vectors(square_preparations())
        assert abs(np.dot(m0, m1)) <= 1e-12
        assert np.linalg.norm(m0) == pytest.approx(2 * np.sqrt(2.0), abs=1e-12)


class TestValidation:
    def test_validate_accepts_random_strategies(self, rng):
        for _ in range(20):
            random_strategy(rng).validate()

    def test_validate_names_bad_component(self, rng):
        from seqrac.errors import InvalidStrategy
        from seqrac.linalg import ID2, BinaryPovm

        strategy = random_strategy(rng)
        broken = Strategy(
            strategy.preparations,
            strategy.instruments,
            (BinaryPovm((ID2, ID2), 0.0, np.zeros(3)), strategy.measurements[1]),
        )
        with pytest.raises(InvalidStrategy, match=r"measurements\[0\]"):
            broken.validate()
