import math

import numpy as np
import pytest

from hardy_chsh import quantum as qm
from hardy_chsh.constrained import Parametrization, frame_vectors, maximize_over_concurrence, objective, optimize_constrained
from hardy_chsh.construct import MeasurementFrame, hardy_residuals
from hardy_chsh.optimize import ConstraintSubset, optimize_hardy_numeric, two_constraint_closed, w_opt_closed

P = ConstraintSubset.parse
SINGLES = [P("qt"), P("qs"), P("rt")]
C_GRID = [0.2, 0.45, 0.7, 0.9]


def _frame_from(vectors, C):
    K = qm.correlation_matrix(C)
    v = {k: np.asarray(x) for k, x in vectors.items()}
    return MeasurementFrame(v["q"], v["r"], v["s"], v["t"], K @ v["s"], K @ v["t"], C)


class TestParametrization:
    @pytest.mark.parametrize("subset", ConstraintSubset.all_subsets(), ids=lambda s: s.label)
    def test_every_vector_accounted_for(self, subset):
        p = Parametrization.for_subset(subset)
        names = set(p.numeric) | set(p.eliminated) | set(p.derived)
        assert names == {"q", "r", "s", "t"}
        assert len(p.numeric) + len(p.eliminated) + len(p.derived) == 4

    def test_hardy_is_one_dimensional(self):
        p = Parametrization.for_subset(P("all"))
        assert p.numeric == ("q",) and p.dim == 1

    @pytest.mark.parametrize("subset", ConstraintSubset.all_subsets(), ids=lambda s: s.label)
    def test_vectors_are_unit(self, subset, rng):
        f, p = objective(0.6, subset)
        for _ in range(20):
            x = rng.uniform(0, math.pi, p.dim)
            vec = frame_vectors(x, 0.6, p)
            for v in vec.values():
                assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("subset", ConstraintSubset.all_subsets(), ids=lambda s: s.label)
    def test_objective_matches_oracle(self, subset, rng):
        C = 0.55
        f, p = objective(C, subset)
        psi = qm.build_state(C)
        for _ in range(10):
            x = rng.uniform(0, math.pi, p.dim)
            vec = frame_vectors(x, C, p)
            assert f(x) == pytest.approx(qm.chsh_operator(psi, vec["q"], vec["r"], vec["s"], vec["t"]), abs=1e-12)


class TestLandmarksPerC:
    @pytest.mark.parametrize("C", [0.0, 0.3, 0.6, 1.0])
    def test_unconstrained(self, C):
        res = optimize_constrained(C, P("none"))
        assert res.best_value == pytest.approx(2 * math.sqrt(1 + C * C), abs=1e-8)
        assert res.converged

    def test_tsirelson(self):
        assert optimize_constrained(1.0, P("none")).best_value == pytest.approx(2 * math.sqrt(2), abs=1e-8)

    @pytest.mark.parametrize("C", [0.3, 0.6, math.sqrt(3) / 2, 0.95])
    def test_two_constraints(self, C):
        for label in ("qt,qs", "qt,rt"):
            res = optimize_constrained(C, P(label))
            assert res.best_value == pytest.approx(two_constraint_closed(C), abs=1e-7)

    @pytest.mark.parametrize("C", [0.3, 0.6, 0.9])
    def test_hardy(self, C):
        res = optimize_constrained(C, P("all"))
        assert res.best_value == pytest.approx(2 + 4 * w_opt_closed(C), abs=1e-8)
        assert res.best_value == pytest.approx(2 + 4 * optimize_hardy_numeric(C).best_value, abs=1e-8)
        frame = _frame_from(res.vectors, C)
        assert hardy_residuals(frame).max() < 1e-10

    def test_single_at_one(self):
        assert optimize_constrained(1.0, P("qs")).best_value == pytest.approx(2.5, abs=0.01)

    def test_bounded_by_tsirelson(self):
        for subset in ConstraintSubset.all_subsets():
            assert optimize_constrained(0.8, subset).best_value <= 2 * math.sqrt(2) + 1e-9


class TestProperties:
    def test_single_constraints_agree(self):
        for C in C_GRID + [1.0]:
            vals = [optimize_constrained(C, s).best_value for s in SINGLES]
            assert max(vals) - min(vals) < 2e-7

    def test_monotone_in_subsets(self):
        subsets = ConstraintSubset.all_subsets()
        for C in (0.5, 0.85):
            best = {s: optimize_constrained(C, s).best_value for s in subsets}
            for s1 in subsets:
                for s2 in subsets:
                    if s1.issubset(s2):
                        assert best[s1] >= best[s2] - 1e-7

    def test_phi_invariance(self, rng):
        C = 0.7
        for subset in (P("qs"), P("qs,rt"), P("all")):
            res = optimize_constrained(C, subset)
            v = res.vectors
            for phi in rng.uniform(0, 2 * math.pi, 3):
                Ra = np.array([[math.cos(phi), -math.sin(phi), 0], [math.sin(phi), math.cos(phi), 0], [0, 0, 1]])
                Rb = Ra.T
                S = qm.chsh_vector(Ra @ v["q"], Ra @ v["r"], Rb @ v["s"], Rb @ v["t"], qm.correlation_matrix(C))
                assert S == pytest.approx(res.best_value, abs=1e-9)

    def test_deterministic(self):
        a = optimize_constrained(0.77, P("qs,rt"), seed=3)
        b = optimize_constrained(0.77, P("qs,rt"), seed=3)
        assert a.best_value == b.best_value
        np.testing.assert_array_equal(a.argmax, b.argmax)

    def test_seed_insensitive(self):
        vals = [optimize_constrained(0.77, P("qs,rt"), seed=k).best_value for k in range(3)]
        assert max(vals) - min(vals) < 1e-8

    def test_rejects_zero_starts(self):
        with pytest.raises(ValueError):
            optimize_constrained(0.5, P("qs"), seeds=0)

    def test_constraints_hold_at_optimum(self):
        C = 0.8
        psi = qm.build_state(C)
        res = optimize_constrained(C, P("qs,rt"))
        v = res.vectors
        assert qm.conditional_probability(psi, "B", v["s"], v["q"], (1, 1)) == pytest.approx(1.0, abs=1e-10)
        assert qm.conditional_probability(psi, "A", v["r"], v["t"], (1, 1)) == pytest.approx(1.0, abs=1e-10)


class TestConcurrenceMaxima:
    def test_single_constraint_peak(self):
        c, s = maximize_over_concurrence(P("qs"), 0.8, 1.0)
        assert s == pytest.approx(2.64, abs=0.02)
        assert c == pytest.approx(0.95, abs=0.03)

    def test_two_constraint_peak(self):
        c, s = maximize_over_concurrence(P("qt,qs"), 0.7, 1.0)
        assert s == pytest.approx(2.5, abs=1e-7)
        assert c == pytest.approx(math.sqrt(3) / 2, abs=1e-4)

    def test_qs_rt_peak(self):
        c, s = maximize_over_concurrence(P("qs,rt"), 0.6, 1.0)
        assert s == pytest.approx(2.43, abs=0.02)
        assert c == pytest.approx(0.84, abs=0.03)
