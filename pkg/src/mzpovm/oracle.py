"""Brute-force verification: direct probabilities, sampling, grid search.

Nothing here trusts a closed form. Output probabilities are evaluated
directly in the evolved compound state; random inputs replay exactly from
a seed; optima over the Bloch sphere come from a lattice sweep plus step
halving. Probabilities are always computed exactly, never estimated from
simulated counts.

Reproducibility contract: random pure states are two standard complex
Gaussians normalized (Haar-uniform on the qubit), drawn from numpy's
PCG64 generator seeded with the entropy pair (seed, sample_index). The
per-sample seeding is counter-based, so parallel and serial evaluation
orders agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import extraction, interferometer, linalg
from .errors import InvalidScheme


@dataclass(frozen=True)
class OracleConfig:
    seed: int = 42
    samples: int = 100
    grid_resolution: float = math.pi / 16.0
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if not 0.0 < self.grid_resolution <= math.pi / 8.0:
            raise ValueError(f"grid_resolution must lie in (0, pi/8], got {self.grid_resolution}")
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")


def haar_state(seed: int, index: int) -> np.ndarray:
    """The ``index``-th reproducible Haar-random pure qubit state for ``seed``."""
    rng = np.random.default_rng([seed, index])
    while True:
        z = rng.standard_normal(4)
        v = np.array([z[0] + 1j * z[1], z[2] + 1j * z[3]])
        n = float(np.linalg.norm(v))
        if n > 1e-6:
            return linalg.state_vector(v / n)


def random_states(config: OracleConfig, count: int | None = None) -> list[np.ndarray]:
    n = config.samples if count is None else count
    return [haar_state(config.seed, i) for i in range(n)]


def direct_probabilities(scheme: extraction.MeasurementScheme, psi) -> dict[str, float]:
    """Output probabilities <Psi_f| M |Psi_f> with Psi_f = U (psi (x) p0).

    Computed with no reference to any extracted POVM; this is the
    independent route against which extraction is checked.
    """
    v = linalg.state_vector(psi)
    if v.shape != (2,):
        raise InvalidScheme("the input must be a two-component photon state")
    final = scheme.unitary @ np.kron(v, scheme.probe_init)
    probs = {}
    total = 0.0
    for label, m in scheme.outputs:
        p = float(np.vdot(final, m @ final).real)
        if not -1e-12 <= p <= 1.0 + 1e-12:
            raise InvalidScheme(f"probability {p!r} for output {label!r} is out of range")
        probs[label] = p
        total += p
    if abs(total - 1.0) > 1e-12:
        raise InvalidScheme(f"probabilities sum to {total!r}, expected 1")
    return probs


def cross_check(config: interferometer.MzConfig, oracle: OracleConfig) -> float:
    """Max deviation |direct - <psi|E|psi>| over random inputs and outcomes.

    The caller asserts against ``oracle.tolerance``; this only reports.
    """
    scheme = extraction.scheme_for(config)
    measured = extraction.extract_povm(scheme)
    worst = 0.0
    for index in range(oracle.samples):
        psi = haar_state(oracle.seed, index)
        direct = direct_probabilities(scheme, psi)
        for label, p in direct.items():
            predicted = float(np.vdot(psi, measured.operator(label) @ psi).real)
            worst = max(worst, abs(p - predicted))
    return worst


def _bloch(theta: float, phi: float) -> np.ndarray:
    return np.array(
        [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
    )


def _tangent_frame(r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    axis = np.array([0.0, 0.0, 1.0]) if abs(r[2]) <= 0.9 else np.array([1.0, 0.0, 0.0])
    t1 = np.cross(r, axis)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(r, t1)


def grid_maximize(objective, oracle: OracleConfig) -> tuple[float, np.ndarray]:
    """Maximize a function of a unit Bloch vector over the sphere.

    Coarse latitude/longitude sweep at ``grid_resolution``, then twenty
    halving rounds of local pattern search. The refinement steps in a
    tangent frame of the current point (renormalizing), which has no pole
    pathology. For the linear and quadratic objectives used here the
    result is within 1e-6 of the true maximum.
    """
    step = oracle.grid_resolution
    best_value = -math.inf
    best = _bloch(0.0, 0.0)
    theta = 0.0
    while theta <= math.pi + 1e-12:
        phi = 0.0
        while phi < 2.0 * math.pi - 1e-12:
            candidate = _bloch(theta, phi)
            value = float(objective(candidate))
            if value > best_value:
                best_value = value
                best = candidate
            # Poles are a single point; one longitude suffices there.
            if theta <= 1e-12 or theta >= math.pi - 1e-12:
                break
            phi += step
        theta += step
    for _ in range(20):
        step *= 0.5
        improved = True
        while improved:
            improved = False
            t1, t2 = _tangent_frame(best)
            for a in (-1.0, 0.0, 1.0):
                for b in (-1.0, 0.0, 1.0):
                    if a == 0.0 and b == 0.0:
                        continue
                    candidate = best + step * (a * t1 + b * t2)
                    candidate = candidate / np.linalg.norm(candidate)
                    value = float(objective(candidate))
                    if value > best_value:
                        best_value = value
                        best = candidate
                        improved = True
    return best_value, best
