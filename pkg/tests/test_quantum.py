import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hardy_chsh import quantum as qm
from hardy_chsh.construct import build_frame
from hardy_chsh.errors import ConditioningOnNullEvent, ContractViolation
from hardy_chsh.optimize import q_opt

from conftest import concurrences, random_unit, unit_vectors

Z = qm.Z_HAT


class TestState:
    def test_separable(self):
        np.testing.assert_allclose(qm.build_state(0.0), [1, 0, 0, 0], atol=1e-15)

    def test_maximally_entangled(self):
        h = 1 / math.sqrt(2)
        np.testing.assert_allclose(qm.build_state(1.0), [h, 0, 0, -h], atol=1e-15)

    def test_intermediate(self):
        # mpmath at 40 digits
        psi = qm.build_state(0.6)
        assert psi[0].real == pytest.approx(0.9486832980505138, abs=1e-15)
        assert psi[3].real == pytest.approx(-0.31622776601683794, abs=1e-15)

    @given(concurrences)
    def test_invariants(self, C):
        psi = qm.build_state(C)
        assert abs(np.vdot(psi, psi).real - 1) < 1e-12
        assert psi[1] == 0 and psi[2] == 0
        assert psi[0].real >= 0 and psi[3].real <= 0

    @pytest.mark.parametrize("C", [-0.1, 1.0001, float("nan")])
    def test_rejects_bad_concurrence(self, C):
        with pytest.raises(ContractViolation):
            qm.build_state(C)


class TestBlochAndCorrelation:
    @pytest.mark.parametrize("C,expected", [(0.0, [0, 0, 1]), (1.0, [0, 0, 0]), (0.8, [0, 0, 0.6])])
    def test_bloch_examples(self, C, expected):
        np.testing.assert_allclose(qm.bloch_vector(C), expected, atol=1e-15)
        np.testing.assert_allclose(qm.bloch_vector_oracle(qm.build_state(C)), expected, atol=1e-12)

    @pytest.mark.parametrize("C", [0.0, 1.0, 0.6])
    def test_correlation_examples(self, C):
        np.testing.assert_allclose(np.diag(qm.correlation_matrix(C)), [-C, C, 1.0])
        np.testing.assert_allclose(qm.correlation_matrix_oracle(qm.build_state(C)), qm.correlation_matrix(C), atol=1e-12)

    def test_grid_of_101(self):
        for C in np.linspace(0, 1, 101):
            psi = qm.build_state(C)
            for side in "AB":
                np.testing.assert_allclose(qm.bloch_vector_oracle(psi, side), qm.bloch_vector(C), atol=1e-12)
            np.testing.assert_allclose(qm.correlation_matrix_oracle(psi), qm.correlation_matrix(C), atol=1e-12)

    @given(concurrences)
    def test_K_fixes_a(self, C):
        a = qm.bloch_vector(C)
        np.testing.assert_allclose(qm.correlation_matrix(C) @ a, a, atol=1e-15)


class TestProbabilities:
    @given(concurrences)
    def test_zz_joint(self, C):
        p = qm.joint_probability(qm.build_state(C), Z, Z, (1, 1))
        assert p == pytest.approx((1 + math.sqrt(1 - C * C)) / 2, abs=1e-12)

    def test_hardy_optimum_probabilities(self):
        C = 0.6
        f = build_frame(q_opt(C), C)
        psi = qm.build_state(C)
        assert abs(qm.joint_probability(psi, f.q, f.t, (1, 1))) < 1e-10
        assert qm.joint_probability(psi, f.r, f.s, (1, 1)) == pytest.approx(0.07346938775510204, abs=1e-12)
        assert qm.conditional_probability(psi, "B", f.s, f.q) == pytest.approx(1.0, abs=1e-10)
        assert qm.conditional_probability(psi, "A", f.r, f.t) == pytest.approx(1.0, abs=1e-10)

    @given(concurrences, unit_vectors(), unit_vectors())
    def test_normalization(self, C, vA, vB):
        psi = qm.build_state(C)
        total = sum(qm.joint_probability(psi, vA, vB, (a, b)) for a in (1, -1) for b in (1, -1))
        assert total == pytest.approx(1.0, abs=1e-12)

    @given(concurrences, unit_vectors(), unit_vectors(), st.sampled_from([1, -1]), st.sampled_from([1, -1]))
    def test_probability_range(self, C, vA, vB, oA, oB):
        p = qm.joint_probability(qm.build_state(C), vA, vB, (oA, oB))
        assert -1e-12 <= p <= 1 + 1e-12

    @pytest.mark.parametrize("side", ["A", "B"])
    @given(C=concurrences)
    def test_self_conditioning(self, side, C):
        assert qm.conditional_probability(qm.build_state(C), side, Z, Z) == pytest.approx(1.0, abs=1e-12)

    def test_null_event(self):
        # C = 0: |00>, outcome -1 along z has zero probability
        with pytest.raises(ConditioningOnNullEvent):
            qm.conditional_probability(qm.build_state(0.0), "A", Z, Z, (-1, 1))

    def test_non_unit_rejected(self):
        with pytest.raises(ContractViolation):
            qm.joint_probability(qm.build_state(0.5), [1, 1, 0], Z)

    def test_bad_outcome_rejected(self):
        with pytest.raises(ContractViolation):
            qm.joint_probability(qm.build_state(0.5), Z, Z, (1, 0))


class TestChsh:
    @given(concurrences)
    def test_all_z(self, C):
        assert qm.chsh_operator(qm.build_state(C), Z, Z, Z, Z) == pytest.approx(2.0, abs=1e-12)
        assert qm.chsh_vector(Z, Z, Z, Z, qm.correlation_matrix(C)) == pytest.approx(2.0, abs=1e-12)

    def test_tsirelson_settings(self):
        h = 1 / math.sqrt(2)
        q, r = np.array([-1.0, 0, 0]), Z
        s, t = np.array([h, 0, h]), np.array([-h, 0, h])
        psi = qm.build_state(1.0)
        assert qm.chsh_operator(psi, q, r, s, t) == pytest.approx(2 * math.sqrt(2), abs=1e-12)

    def test_hardy_optimum(self):
        f = build_frame(q_opt(0.6), 0.6)
        assert qm.chsh_operator(qm.build_state(0.6), *f.vectors()) == pytest.approx(2.2938775510204083, abs=1e-12)

    def test_oracle_equivalence(self, rng):
        worst = 0.0
        for C in rng.uniform(0, 1, 20):
            psi, K = qm.build_state(C), qm.correlation_matrix(C)
            for _ in range(50):
                v = random_unit(rng, 4)
                worst = max(worst, abs(qm.chsh_operator(psi, *v) - qm.chsh_vector(*v, K)))
        assert worst < 1e-12

    def test_equivalence_at_037(self, rng):
        v = random_unit(rng, 4)
        assert qm.chsh_vector(*v, qm.correlation_matrix(0.37)) == pytest.approx(
            qm.chsh_operator(qm.build_state(0.37), *v), abs=1e-12
        )

    @given(concurrences, unit_vectors(), unit_vectors(), unit_vectors(), unit_vectors())
    def test_bound(self, C, q, r, s, t):
        assert qm.chsh_operator(qm.build_state(C), q, r, s, t) <= qm.chsh_bound(C) + 1e-9

    @given(unit_vectors(), unit_vectors(), unit_vectors(), unit_vectors())
    def test_separable_never_violates(self, q, r, s, t):
        assert qm.chsh_vector(q, r, s, t, qm.correlation_matrix(0.0)) <= 2 + 1e-12
