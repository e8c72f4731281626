"""Uncertainty, duality and erasure trade-off relations as audit records.

Every relation is evaluated into a :class:`RelationReport` carrying both
sides, the demanded comparison, and the slack, so callers (tests, the CLI,
the verification suite) can audit rather than recompute. Quantities:

* variance product:  Var(sx) Var(sz) >= |<[sx,sz]>|^2/4 + cov^2, whose
  right side equals <sy>^2 + <sx>^2 <sz>^2; the gap is 1 - |r|^2, i.e. the
  relation expresses positivity of the state.
* Shannon entropies of POVM outcome distributions (base 2).
* contrasts C_P = |<sz>|, C_I = |<sx>| (or |<sy>|) and visibility 2r.
* distinguishability D = 2L - 1 from the optimal probe pointer, the
  coincidence POVM behind it, and the reduced-state visibility V_e, with
  the pure-state identities D^2 + V_e^2 = 1 and Var(H, psi) + Var(s_n,
  rho_e) = 1 at the respective optima.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg, povm
from .errors import NotNormalized, NotSharp, NotTwoOutcome

EQ_TOL = 1e-9
DEGENERATE_DIRECTION_TOL = 1e-12


@dataclass(frozen=True)
class RelationReport:
    """One audited relation: name, both sides, sense, verdict and slack.

    ``slack`` is lhs - rhs for 'geq' and 'eq', rhs - lhs for 'leq';
    inequalities are satisfied when slack >= -tol, equalities when
    |slack| <= tol (tol = 1e-9).
    """

    name: str
    lhs: float
    rhs: float
    kind: str
    satisfied: bool
    slack: float


def make_report(name: str, lhs: float, rhs: float, kind: str, tol: float = EQ_TOL) -> RelationReport:
    lhs = float(lhs)
    rhs = float(rhs)
    if kind == "geq":
        slack = lhs - rhs
        ok = slack >= -tol
    elif kind == "leq":
        slack = rhs - lhs
        ok = slack >= -tol
    elif kind == "eq":
        slack = lhs - rhs
        ok = abs(slack) <= tol
    else:
        raise ValueError(f"kind must be geq, leq or eq, got {kind!r}")
    return RelationReport(name=name, lhs=lhs, rhs=rhs, kind=kind, satisfied=bool(ok), slack=slack)


def variance_ur(rho) -> RelationReport:
    """Variance product relation for the sigma_x / sigma_z pair.

    lhs = Var(sx) Var(sz); rhs carries the commutator and covariance
    terms. lhs - rhs reduces to 1 - |r|^2, so equality holds exactly on
    pure states.
    """
    rho = np.asarray(rho, dtype=complex)
    sx, _, sz = linalg.pauli_triple()
    lhs = linalg.variance(sx, rho) * linalg.variance(sz, rho)
    comm = complex(np.trace((sx @ sz - sz @ sx) @ rho))
    anti = float(np.trace((sx @ sz + sz @ sx) @ rho).real)
    mx = linalg.expectation(sx, rho)
    mz = linalg.expectation(sz, rho)
    rhs = 0.25 * abs(comm) ** 2 + 0.25 * (anti - 2.0 * mx * mz) ** 2
    return make_report("variance-product-xz", lhs, rhs, "geq", tol=1e-12)


def shannon_entropy(p: povm.DiscretePovm, rho) -> float:
    """Shannon entropy (bits) of a POVM's outcome distribution in a state."""
    rho = np.asarray(rho, dtype=complex)
    total = 0.0
    for e in p.effects:
        prob = float(np.trace(e.operator @ rho).real)
        prob = min(1.0, max(0.0, prob))
        if prob > 0.0:
            total -= prob * math.log2(prob)
    return total


@functools.lru_cache(maxsize=None)
def pauli_pvm(axis: str) -> povm.DiscretePovm:
    """The spectral measure {(I + s)/2, (I - s)/2} of a Pauli operator."""
    s = linalg.pauli(axis)
    ident = np.eye(2, dtype=complex)
    return povm.DiscretePovm.from_pairs([("1", 0.5 * (ident + s)), ("2", 0.5 * (ident - s))])


def entropic_bound(a: povm.DiscretePovm, b: povm.DiscretePovm, psi) -> RelationReport:
    """Additive entropic trade-off for two sharp observables in a pure state.

    H(A, psi) + H(B, psi) >= -2 log2 max_{i,k} |<psi|P_i Q_k|psi>| /
    (|P_i psi| |Q_k psi|); terms whose norms fall below 1e-12 are excluded
    from the maximum. For rank-1 mutually unbiased pairs the bound is one
    bit for every state.
    """
    for candidate in (a, b):
        cls = povm.validate(candidate)
        if not (cls.valid and cls.sharp):
            raise NotSharp("the entropic bound applies to projection-valued observables")
    v = linalg.state_vector(psi)
    rho = np.outer(v, v.conj())
    lhs = shannon_entropy(a, rho) + shannon_entropy(b, rho)
    best = 0.0
    for ea in a.effects:
        pa = ea.operator @ v
        na = float(np.linalg.norm(pa))
        if na < 1e-12:
            continue
        for eb in b.effects:
            qb = eb.operator @ v
            nb = float(np.linalg.norm(qb))
            if nb < 1e-12:
                continue
            ratio = abs(complex(np.vdot(v, ea.operator @ qb))) / (na * nb)
            best = max(best, ratio)
    rhs = -2.0 * math.log2(best) if best > 0.0 else float("inf")
    return make_report("entropy-pair", lhs, rhs, "geq")


@dataclass(frozen=True)
class StateContrasts:
    """Path/interference contrasts and visibility of a qubit state."""

    path: float
    interference_x: float
    interference_y: float
    visibility: float


def contrasts(rho) -> StateContrasts:
    """C_P = |<sz>|, C_Ix = |<sx>|, C_Iy = |<sy>|, V = sqrt(<sx>^2 + <sy>^2)."""
    r = linalg.bloch_from_density(rho)
    return StateContrasts(
        path=min(1.0, abs(float(r[2]))),
        interference_x=min(1.0, abs(float(r[0]))),
        interference_y=min(1.0, abs(float(r[1]))),
        visibility=min(1.0, float(math.hypot(r[0], r[1]))),
    )


def triple_relations(rho) -> list[RelationReport]:
    """The three-observable trade-offs for sigma_x, sigma_y, sigma_z.

    Entropy sum >= 2 bits, variance sum >= 2 (equal to 3 - |r|^2), and
    squared-contrast sum <= 1 (equal to |r|^2).
    """
    rho = np.asarray(rho, dtype=complex)
    entropy_sum = sum(shannon_entropy(pauli_pvm(ax), rho) for ax in "xyz")
    variance_sum = sum(linalg.variance(linalg.pauli(ax), rho) for ax in "xyz")
    c = contrasts(rho)
    contrast_sum = c.path**2 + c.interference_x**2 + c.interference_y**2
    return [
        make_report("entropy-triple", entropy_sum, 2.0, "geq"),
        make_report("variance-triple", variance_sum, 2.0, "geq", tol=1e-12),
        make_report("contrast-triple", contrast_sum, 1.0, "leq", tol=1e-12),
    ]


@dataclass(frozen=True)
class DistinguishabilityResult:
    """Optimal path inference from the probe.

    ``pointer_direction`` is the Bloch direction of the optimal probe
    readout (None when every direction performs equally, i.e. the marker
    evidence vanishes), ``max_correct_probability`` the success
    probability L it achieves, and ``distinguishability`` D = 2L - 1.
    """

    pointer_direction: np.ndarray | None
    max_correct_probability: float
    distinguishability: float


def _amplitude_pair(alpha: complex, beta: complex) -> tuple[complex, complex]:
    norm2 = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm2 - 1.0) > linalg.NORM_TOL:
        raise NotNormalized(f"|alpha|^2 + |beta|^2 = {norm2!r}, expected 1")
    return complex(alpha), complex(beta)


def distinguishability(alpha, beta, p1, p2) -> DistinguishabilityResult:
    """Best correct-path-inference probability from the marker states.

    The evidence vector is |alpha|^2 P1 - |beta|^2 P2 (full-length Bloch
    vectors of the markers); reading the probe along its direction gives
    L = (1 + |evidence|) / 2 and D = 2L - 1, which coincides with
    sqrt(1 - 4 |alpha|^2 |beta|^2 |<p1|p2>|^2).
    """
    alpha, beta = _amplitude_pair(alpha, beta)
    b1 = linalg.bloch_from_state(p1)
    b2 = linalg.bloch_from_state(p2)
    evidence = abs(alpha) ** 2 * b1 - abs(beta) ** 2 * b2
    strength = float(np.linalg.norm(evidence))
    if strength < DEGENERATE_DIRECTION_TOL:
        return DistinguishabilityResult(None, 0.5, 0.0)
    direction = evidence / strength
    strength = min(1.0, strength)  # rounding can push |evidence| past 1
    return DistinguishabilityResult(
        pointer_direction=direction,
        max_correct_probability=0.5 * (1.0 + strength),
        distinguishability=strength,
    )


def coincidence_povm(p1, p2, pointer_direction) -> povm.DiscretePovm:
    """The two-outcome input POVM of path-inference coincidence counting.

    Reading the probe along the Bloch direction r and checking it against
    a sharp path detection measures

        H_corr = ((1 + r.(P1 - P2)/2) I + (r.(P1 + P2)/2) sz) / 2

    on the input, with H_err its complement.
    """
    r = np.asarray(pointer_direction, dtype=float).reshape(3)
    if abs(float(np.linalg.norm(r)) - 1.0) > 1e-9:
        raise NotNormalized(f"pointer direction must be unit length, got |r| = {np.linalg.norm(r)!r}")
    b1 = linalg.bloch_from_state(p1)
    b2 = linalg.bloch_from_state(p2)
    sz = linalg.pauli("z")
    ident = np.eye(2, dtype=complex)
    bias = 0.5 * float(r @ (b1 - b2))
    axis = 0.5 * float(r @ (b1 + b2))
    correct = 0.5 * ((1.0 + bias) * ident + axis * sz)
    return povm.DiscretePovm.from_pairs([("correct", correct), ("error", ident - correct)])


def outcome_variance(p: povm.DiscretePovm, rho) -> float:
    """Variance of the +/-1-valued outcome of a two-outcome POVM."""
    if len(p.effects) != 2:
        raise NotTwoOutcome(f"need two outcomes, got {len(p.effects)}")
    rho = np.asarray(rho, dtype=complex)
    diff = float(np.trace((p.effects[0].operator - p.effects[1].operator) @ rho).real)
    return 1.0 - diff * diff


@dataclass(frozen=True)
class VisibilityResult:
    """Maximal interference contrast of a state over equatorial directions."""

    value: float
    direction: np.ndarray


def visibility_reduced(rho_e) -> VisibilityResult:
    """Best interference contrast available in a (reduced) photon state.

    Maximizes |tr(rho s_n)| over equatorial n = (cos d, sin d, 0); the
    maximum is twice the off-diagonal magnitude, attained where the phase
    of n cancels the off-diagonal phase.
    """
    rho = np.asarray(rho_e, dtype=complex)
    off = complex(rho[0, 1])
    if abs(off) < 1e-15:
        return VisibilityResult(0.0, np.array([1.0, 0.0, 0.0]))
    angle = -np.angle(off)
    return VisibilityResult(
        min(1.0, 2.0 * abs(off)), np.array([math.cos(angle), math.sin(angle), 0.0])
    )


def marked_state(alpha, beta, p1, p2) -> np.ndarray:
    """The photon-probe vector alpha |1>|p1> + beta |2>|p2>."""
    alpha, beta = _amplitude_pair(alpha, beta)
    v1 = linalg.state_vector(p1)
    v2 = linalg.state_vector(p2)
    e1 = np.array([1.0, 0.0], dtype=complex)
    e2 = np.array([0.0, 1.0], dtype=complex)
    return linalg.state_vector(alpha * np.kron(e1, v1) + beta * np.kron(e2, v2))


@dataclass(frozen=True)
class ErasureAudit:
    """Distinguishability/visibility trade-off audited at the optima."""

    inference: DistinguishabilityResult
    visibility: VisibilityResult
    duality: RelationReport
    variance_tradeoff: RelationReport


def erasure_duality(alpha, beta, p1, p2) -> ErasureAudit:
    """Audit D^2 + V_e^2 = 1 and the variance form of the same trade-off.

    Both equalities are evaluated at the optima: the coincidence POVM at
    the optimal pointer direction, the interference variance at the
    optimal equatorial direction. Totals mixed across marker choices break
    the equality down to an inequality, which callers can probe by mixing
    reports.
    """
    alpha, beta = _amplitude_pair(alpha, beta)
    inference = distinguishability(alpha, beta, p1, p2)
    rho_e = linalg.partial_trace_probe(marked_state(alpha, beta, p1, p2))
    vis = visibility_reduced(rho_e)
    direction = inference.pointer_direction
    if direction is None:
        direction = np.array([0.0, 0.0, 1.0])
    coincidence = coincidence_povm(p1, p2, direction)
    psi_in = linalg.state_vector([alpha, beta])
    var_coincidence = outcome_variance(coincidence, np.outer(psi_in, psi_in.conj()))
    sx, sy, _ = linalg.pauli_triple()
    s_n = vis.direction[0] * sx + vis.direction[1] * sy
    var_interference = linalg.variance(s_n, rho_e)
    d = inference.distinguishability
    duality = make_report("erasure-duality", d * d + vis.value**2, 1.0, "eq")
    tradeoff = make_report(
        "coincidence-visibility-variance", var_coincidence + var_interference, 1.0, "eq"
    )
    return ErasureAudit(inference, vis, duality, tradeoff)
