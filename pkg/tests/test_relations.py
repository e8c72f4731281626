import math

import numpy as np
import pytest

from mzpovm import interferometer, linalg, oracle, povm, relations
from mzpovm.errors import NotNormalized, NotSharp, NotTwoOutcome

from conftest import random_bloch_in_ball, random_pure

I2 = np.eye(2, dtype=complex)
SX, SY, SZ = linalg.pauli_triple()
PLUS = np.array([1.0, 1.0]) / math.sqrt(2)


class TestVarianceUr:
    def test_eigenstate_saturates_at_zero(self):
        report = relations.variance_ur(linalg.pure_density([1, 0]))
        assert report.lhs == pytest.approx(0.0, abs=1e-14)
        assert report.rhs == pytest.approx(0.0, abs=1e-14)
        assert report.satisfied

    def test_maximally_mixed(self):
        report = relations.variance_ur(np.eye(2) / 2)
        assert report.lhs == pytest.approx(1.0, abs=1e-14)
        assert report.rhs == pytest.approx(0.0, abs=1e-14)

    def test_equatorial_pure_state_saturates(self):
        report = relations.variance_ur(linalg.density_from_bloch([0.6, 0.0, 0.8]))
        assert report.lhs == pytest.approx(0.2304, abs=1e-12)
        assert report.rhs == pytest.approx(0.2304, abs=1e-12)

    def test_rhs_equals_commutator_covariance_identity(self, rng):
        # The bound always evaluates to <sy>^2 + <sx>^2 <sz>^2, and the gap
        # to the left side is exactly 1 - |r|^2.
        for _ in range(500):
            r = random_bloch_in_ball(rng)
            report = relations.variance_ur(linalg.density_from_bloch(r))
            assert report.rhs == pytest.approx(r[1] ** 2 + r[0] ** 2 * r[2] ** 2, abs=1e-12)
            assert report.slack == pytest.approx(1.0 - float(r @ r), abs=1e-12)
            assert report.slack >= -1e-12

    def test_equality_exactly_on_pure_states(self, rng):
        for _ in range(200):
            direction = rng.standard_normal(3)
            direction /= np.linalg.norm(direction)
            report = relations.variance_ur(linalg.density_from_bloch(direction))
            assert abs(report.slack) <= 1e-10

    def test_holds_on_ten_thousand_random_states(self):
        rng = np.random.default_rng(2718)
        directions = rng.standard_normal((10000, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = np.ones(10000)
        radii[:5000] = rng.random(5000) ** (1.0 / 3.0)
        for r in directions * radii[:, None]:
            report = relations.variance_ur(linalg.density_from_bloch(r))
            assert report.slack >= -1e-12
            assert report.slack == pytest.approx(1.0 - float(r @ r), abs=1e-10)


class TestShannonEntropy:
    def test_eigenstate_has_zero_entropy(self):
        assert relations.shannon_entropy(
            relations.pauli_pvm("z"), linalg.pure_density([1, 0])
        ) == pytest.approx(0.0, abs=1e-14)

    def test_maximally_mixed_has_one_bit(self):
        assert relations.shannon_entropy(relations.pauli_pvm("z"), np.eye(2) / 2) == pytest.approx(
            1.0, abs=1e-14
        )

    def test_binary_entropy_of_tilted_state(self):
        rho = linalg.density_from_bloch([0, 0, 0.5])
        h = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))
        assert relations.shannon_entropy(relations.pauli_pvm("z"), rho) == pytest.approx(
            h, abs=1e-14
        )


class TestEntropicBound:
    def test_eigenstate_saturates_one_bit(self):
        report = relations.entropic_bound(
            relations.pauli_pvm("z"), relations.pauli_pvm("x"), [1, 0]
        )
        assert report.lhs == pytest.approx(1.0, abs=1e-12)
        assert report.rhs == pytest.approx(1.0, abs=1e-12)

    def test_diagonal_direction_exceeds_bound(self):
        psi = linalg.state_from_bloch(np.array([1.0, 1.0, 1.0]) / math.sqrt(3))
        report = relations.entropic_bound(
            relations.pauli_pvm("z"), relations.pauli_pvm("x"), psi
        )
        assert report.rhs == pytest.approx(1.0, abs=1e-12)
        assert report.lhs > 1.0

    def test_identical_observables_have_zero_bound(self):
        report = relations.entropic_bound(
            relations.pauli_pvm("z"), relations.pauli_pvm("z"), [1, 0]
        )
        assert report.lhs == pytest.approx(0.0, abs=1e-12)
        assert report.rhs == pytest.approx(0.0, abs=1e-12)

    def test_bound_state_independent_for_unbiased_pair(self, rng):
        for _ in range(200):
            psi = random_pure(rng)
            report = relations.entropic_bound(
                relations.pauli_pvm("z"), relations.pauli_pvm("x"), psi
            )
            assert report.rhs == pytest.approx(1.0, abs=1e-9)
            assert report.slack >= -1e-9

    def test_unsharp_observable_rejected(self):
        blurred = povm.DiscretePovm.from_pairs(
            [("1", 0.5 * (I2 + 0.5 * SX)), ("2", 0.5 * (I2 - 0.5 * SX))]
        )
        with pytest.raises(NotSharp):
            relations.entropic_bound(blurred, relations.pauli_pvm("z"), [1, 0])

    def test_holds_on_ten_thousand_random_pure_states(self):
        rng = np.random.default_rng(3141)
        z = rng.standard_normal((10000, 4))
        states = z[:, 0::2] + 1j * z[:, 1::2]
        states /= np.linalg.norm(states, axis=1, keepdims=True)
        z_pvm, x_pvm = relations.pauli_pvm("z"), relations.pauli_pvm("x")
        lowest = math.inf
        for psi in states:
            report = relations.entropic_bound(z_pvm, x_pvm, psi)
            assert report.slack >= -1e-9
            lowest = min(lowest, report.lhs)
        for eigenstate in ([1, 0], [0, 1], [1, 1] / np.sqrt(2), [1, -1] / np.sqrt(2)):
            report = relations.entropic_bound(z_pvm, x_pvm, np.asarray(eigenstate))
            assert report.slack >= -1e-9
            lowest = min(lowest, report.lhs)
        assert lowest == pytest.approx(1.0, abs=1e-3)


class TestTripleRelations:
    def test_pure_state_saturations(self, rng):
        direction = rng.standard_normal(3)
        direction /= np.linalg.norm(direction)
        entropic, variances, squares = relations.triple_relations(
            linalg.density_from_bloch(direction)
        )
        assert variances.lhs == pytest.approx(2.0, abs=1e-12)
        assert squares.lhs == pytest.approx(1.0, abs=1e-12)
        assert entropic.lhs >= 2.0 - 1e-9

    def test_maximally_mixed_values(self):
        entropic, variances, squares = relations.triple_relations(np.eye(2) / 2)
        assert entropic.lhs == pytest.approx(3.0, abs=1e-12)
        assert variances.lhs == pytest.approx(3.0, abs=1e-12)
        assert squares.lhs == pytest.approx(0.0, abs=1e-12)

    def test_eigenstate_entropy_triple_saturates(self):
        entropic, _, _ = relations.triple_relations(linalg.pure_density([1, 0]))
        assert entropic.lhs == pytest.approx(2.0, abs=1e-12)

    def test_identities_on_mixed_states(self, rng):
        for _ in range(300):
            r = random_bloch_in_ball(rng)
            _, variances, squares = relations.triple_relations(linalg.density_from_bloch(r))
            assert variances.lhs == pytest.approx(3.0 - float(r @ r), abs=1e-12)
            assert squares.lhs == pytest.approx(float(r @ r), abs=1e-12)


class TestContrasts:
    def test_path_eigenstate(self):
        c = relations.contrasts(linalg.pure_density([1, 0]))
        assert (c.path, c.interference_x, c.interference_y, c.visibility) == (1.0, 0.0, 0.0, 0.0)

    def test_interference_eigenstate(self):
        c = relations.contrasts(linalg.pure_density(PLUS))
        assert c.path == pytest.approx(0.0, abs=1e-14)
        assert c.interference_x == pytest.approx(1.0, abs=1e-14)
        assert c.visibility == pytest.approx(1.0, abs=1e-14)

    def test_partially_coherent_state_saturates_duality(self):
        rho = np.array([[0.75, math.sqrt(3) / 4], [math.sqrt(3) / 4, 0.25]], dtype=complex)
        c = relations.contrasts(rho)
        assert c.path == pytest.approx(0.5, abs=1e-14)
        assert c.interference_x == pytest.approx(math.sqrt(3) / 2, abs=1e-14)
        assert c.path**2 + c.interference_x**2 == pytest.approx(1.0, abs=1e-14)


class TestDistinguishability:
    def test_orthogonal_markers_fully_distinguishable(self, rng):
        for _ in range(10):
            psi = random_pure(rng)
            result = relations.distinguishability(psi[0], psi[1], [1, 0], [0, 1])
            assert result.distinguishability == pytest.approx(1.0, abs=1e-12)

    def test_balanced_input_tilted_markers(self):
        p1, p2 = interferometer.marker_states(math.pi / 3)
        result = relations.distinguishability(1 / math.sqrt(2), 1 / math.sqrt(2), p1, p2)
        assert result.distinguishability == pytest.approx(0.5, abs=1e-12)

    def test_path_eigenstate_always_distinguishable(self):
        p1, p2 = interferometer.marker_states(1.1)
        result = relations.distinguishability(1.0, 0.0, p1, p2)
        assert result.distinguishability == pytest.approx(1.0, abs=1e-12)

    def test_closed_form_identity(self, rng):
        for _ in range(200):
            psi = random_pure(rng)
            theta = float(rng.uniform(0, math.pi / 2))
            p1, p2 = interferometer.marker_states(theta)
            result = relations.distinguishability(psi[0], psi[1], p1, p2)
            overlap = abs(np.vdot(p1, p2))
            want = math.sqrt(1 - 4 * abs(psi[0]) ** 2 * abs(psi[1]) ** 2 * overlap**2)
            assert result.distinguishability == pytest.approx(want, abs=1e-12)
            assert result.distinguishability == pytest.approx(
                2 * result.max_correct_probability - 1, abs=1e-12
            )

    def test_degenerate_direction_flagged(self):
        p1, p2 = interferometer.marker_states(math.pi / 2)
        result = relations.distinguishability(1 / math.sqrt(2), 1 / math.sqrt(2), p1, p2)
        assert result.pointer_direction is None
        assert result.distinguishability == 0.0

    def test_unnormalized_amplitudes_rejected(self):
        with pytest.raises(NotNormalized):
            relations.distinguishability(1.0, 1.0, [1, 0], [0, 1])


class TestCoincidencePovm:
    def test_orthogonal_markers_aligned_pointer_gives_certainty(self):
        h = relations.coincidence_povm([1, 0], [0, 1], [0, 0, 1])
        np.testing.assert_allclose(h.operator("correct"), I2, atol=1e-14)
        np.testing.assert_allclose(h.operator("error"), np.zeros((2, 2)), atol=1e-14)
        # Direct route: |alpha|^2 |<r1|p1>|^2 + |beta|^2 |<r2|p2>|^2 = 1.
        for alpha, beta in ((1.0, 0.0), (0.6, 0.8)):
            rho = linalg.pure_density([alpha, beta])
            assert linalg.expectation(h.operator("correct"), rho) == pytest.approx(1.0, abs=1e-12)

    def test_identical_markers_at_transverse_pointer_is_chance(self):
        p1, p2 = interferometer.marker_states(math.pi / 2)
        h = relations.coincidence_povm(p1, p2, [0, 0, 1])
        # Markers along +x, pointer along z: coincidence at chance level.
        np.testing.assert_allclose(h.operator("correct"), 0.5 * I2, atol=1e-14)

    def test_identical_markers_general_form(self):
        p1, p2 = interferometer.marker_states(math.pi / 2)
        r = np.array([1.0, 0.0, 0.0])
        h = relations.coincidence_povm(p1, p2, r)
        b1 = linalg.bloch_from_state(p1)
        np.testing.assert_allclose(
            h.operator("correct"), 0.5 * (I2 + float(r @ b1) * SZ), atol=1e-14
        )

    def test_variance_matches_distinguishability(self, rng):
        for _ in range(100):
            theta = float(rng.uniform(0, math.pi / 2))
            weight = float(rng.random())
            alpha, beta = math.sqrt(weight), math.sqrt(1 - weight)
            p1, p2 = interferometer.marker_states(theta)
            result = relations.distinguishability(alpha, beta, p1, p2)
            direction = result.pointer_direction
            if direction is None:
                direction = np.array([0.0, 0.0, 1.0])
            h = relations.coincidence_povm(p1, p2, direction)
            var = relations.outcome_variance(h, linalg.pure_density([alpha, beta]))
            assert var == pytest.approx(1.0 - result.distinguishability**2, abs=1e-12)

    def test_non_unit_pointer_rejected(self):
        with pytest.raises(NotNormalized):
            relations.coincidence_povm([1, 0], [0, 1], [0, 0, 2])

    def test_outcome_variance_needs_two_outcomes(self):
        joint = povm.joint_xz(povm.UnsharpPair(0.5, 0.5))
        with pytest.raises(NotTwoOutcome):
            relations.outcome_variance(joint, np.eye(2) / 2)


class TestVisibility:
    def test_orthogonal_markers_kill_visibility(self):
        rho_e = linalg.partial_trace_probe(relations.marked_state(PLUS[0], PLUS[1], [1, 0], [0, 1]))
        assert relations.visibility_reduced(rho_e).value == pytest.approx(0.0, abs=1e-14)

    def test_balanced_input_visibility_is_overlap(self):
        for theta in (0.3, 1.0, math.pi / 2):
            p1, p2 = interferometer.marker_states(theta)
            rho_e = linalg.partial_trace_probe(relations.marked_state(PLUS[0], PLUS[1], p1, p2))
            assert relations.visibility_reduced(rho_e).value == pytest.approx(
                math.sin(theta), abs=1e-12
            )

    def test_unmarked_coherent_state_has_unit_visibility(self):
        rho = linalg.pure_density(PLUS)
        result = relations.visibility_reduced(rho)
        assert result.value == pytest.approx(1.0, abs=1e-14)
        np.testing.assert_allclose(result.direction, [1.0, 0.0, 0.0], atol=1e-12)

    def test_optimal_direction_attains_the_maximum(self, rng):
        cfg = oracle.OracleConfig(seed=11, samples=1)
        for _ in range(10):
            psi = random_pure(rng)
            theta = float(rng.uniform(0.1, math.pi / 2))
            p1, p2 = interferometer.marker_states(theta)
            rho_e = linalg.partial_trace_probe(relations.marked_state(psi[0], psi[1], p1, p2))
            result = relations.visibility_reduced(rho_e)
            s_n = result.direction[0] * SX + result.direction[1] * SY
            assert abs(linalg.expectation(s_n, rho_e)) == pytest.approx(result.value, abs=1e-12)

            def equatorial(r, rho_e=rho_e):
                planar = math.hypot(r[0], r[1])
                if planar < 1e-12:
                    return 0.0
                return abs(
                    float(np.trace(rho_e @ ((r[0] * SX + r[1] * SY) / planar)).real)
                )

            best, _ = oracle.grid_maximize(equatorial, cfg)
            assert best <= result.value + 1e-9


class TestErasureDuality:
    def test_worked_point(self):
        p1, p2 = interferometer.marker_states(math.pi / 3)
        audit = relations.erasure_duality(1 / math.sqrt(2), 1 / math.sqrt(2), p1, p2)
        assert audit.inference.distinguishability == pytest.approx(0.5, abs=1e-12)
        assert audit.visibility.value == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
        assert audit.duality.satisfied and abs(audit.duality.slack) <= 1e-12

    def test_orthogonal_markers(self):
        audit = relations.erasure_duality(PLUS[0], PLUS[1], [1, 0], [0, 1])
        assert audit.inference.distinguishability == pytest.approx(1.0, abs=1e-12)
        assert audit.visibility.value == pytest.approx(0.0, abs=1e-12)
        assert audit.duality.satisfied

    def test_lopsided_amplitudes(self):
        alpha = 0.9
        beta = math.sqrt(1 - alpha**2)
        p1, p2 = interferometer.marker_states(0.8)
        audit = relations.erasure_duality(alpha, beta, p1, p2)
        assert abs(audit.duality.slack) <= 1e-9
        assert abs(audit.variance_tradeoff.slack) <= 1e-9

    def test_random_sweep(self, rng):
        for _ in range(300):
            theta = float(rng.uniform(0, math.pi / 2))
            weight = float(rng.random())
            phase = float(rng.uniform(0, 2 * math.pi))
            alpha = math.sqrt(weight)
            beta = math.sqrt(1 - weight) * np.exp(1j * phase)
            p1, p2 = interferometer.marker_states(theta)
            audit = relations.erasure_duality(alpha, beta, p1, p2)
            assert abs(audit.duality.slack) <= 1e-9
            assert abs(audit.variance_tradeoff.slack) <= 1e-9

    def test_mixed_marker_preparations_fall_below_equality(self):
        # Classically mixing two marker choices gives D^2 + V_e^2 < 1:
        # the evidence vectors average while the coherences average too,
        # and both are strictly shorter than their pure-case values.
        alpha = beta = 1 / math.sqrt(2)
        pairs = [interferometer.marker_states(0.2), interferometer.marker_states(1.3)]
        weights = (0.5, 0.5)
        evidence = sum(
            w * (abs(alpha) ** 2 * linalg.bloch_from_state(p1) - abs(beta) ** 2 * linalg.bloch_from_state(p2))
            for w, (p1, p2) in zip(weights, pairs)
        )
        mixed_rho = sum(
            w * linalg.partial_trace_probe(relations.marked_state(alpha, beta, p1, p2))
            for w, (p1, p2) in zip(weights, pairs)
        )
        d_mixed = float(np.linalg.norm(evidence))
        v_mixed = relations.visibility_reduced(mixed_rho).value
        assert d_mixed**2 + v_mixed**2 < 1.0 - 1e-3

    def test_off_optimum_sum_reported_not_asserted(self):
        # Away from the optimal pointer/interference directions the
        # variance sum exceeds 1; report one value for the record.
        p1, p2 = interferometer.marker_states(0.9)
        h = relations.coincidence_povm(p1, p2, [1.0, 0.0, 0.0])
        rho_e = linalg.partial_trace_probe(relations.marked_state(PLUS[0], PLUS[1], p1, p2))
        off_sum = relations.outcome_variance(h, linalg.pure_density(PLUS)) + linalg.variance(
            SY, rho_e
        )
        print(f"off-optimum variance sum: {off_sum!r}")


class TestReportMechanics:
    def test_geq_slack_sign(self):
        report = relations.make_report("demo", 2.0, 1.0, "geq")
        assert report.satisfied and report.slack == 1.0

    def test_leq_slack_sign(self):
        report = relations.make_report("demo", 2.0, 1.0, "leq")
        assert not report.satisfied and report.slack == -1.0

    def test_eq_tolerance(self):
        assert relations.make_report("demo", 1.0 + 5e-10, 1.0, "eq").satisfied
        assert not relations.make_report("demo", 1.0 + 5e-9, 1.0, "eq").satisfied

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            relations.make_report("demo", 1.0, 1.0, "approx")
