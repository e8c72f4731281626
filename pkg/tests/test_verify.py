import numpy as np

from mzpovm import extraction, verify


class TestCheckResults:
    def test_representative_checks_pass(self):
        assert verify.check_pauli_algebra().passed
        assert verify.check_mz_unitarity(1).passed
        assert verify.check_limit_complementarity().passed
        results = verify.extraction_grid_checks(1e-10)
        assert all(r.passed for r in results)

    def test_injected_perturbation_detected(self, monkeypatch):
        # Corrupt one extracted effect by the smallest shift the contract
        # promises to flag; the oracle cross-check must catch it.
        original = extraction.extract_povm

        def corrupted(scheme):
            measured = original(scheme)
            pairs = [(e.label, e.operator) for e in measured.effects]
            label, op = pairs[0]
            pairs[0] = (label, op + 1e-6 * np.eye(2))
            return extraction.DiscretePovm.from_pairs(pairs)

        monkeypatch.setattr(extraction, "extract_povm", corrupted)
        result = verify.check_probability_reproduction(seed=3, samples=5, tol=1e-10)
        assert not result.passed
        assert result.deviation >= 1e-7

    def test_noise_floor_tolerance_fails(self):
        results = verify.extraction_grid_checks(1e-16)
        by_name = {r.name: r for r in results}
        assert not by_name["closed-form-agreement"].passed

    def test_distinct_grid_configs_cover_all_experiments(self):
        configs = verify.distinct_grid_configs()
        experiments = {c.experiment for c in configs}
        assert experiments == {"path", "interference", "marking", "erasure", "quantitative"}
        # 1 + 1 + 8 deltas + 64 (delta, gamma) + 64 (delta, theta)
        assert len(configs) == 138


class TestTableFormat:
    def test_format_is_deterministic(self):
        results = [
            verify.CheckResult("alpha-check", True, 1.25e-13),
            verify.CheckResult("beta-check", False, 2.0, "note"),
        ]
        first = verify.format_table(results, seed=42, samples=10, tol=1e-10)
        second = verify.format_table(results, seed=42, samples=10, tol=1e-10)
        assert first == second
        assert "alpha-check" in first and "PASS" in first and "FAIL" in first
        assert first.endswith("2 checks: 1 passed, 1 failed")
