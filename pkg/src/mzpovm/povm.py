"""Discrete POVMs: validation, smearing, marginals, and joint observables.

Label and sign conventions for the unsharp sigma_x / sigma_z joint
observable follow the display order 11, 21, 12, 22, so that grouping by
the first index yields the sigma_x marginal F = {(I +/- f sigma_x)/2} and
grouping by the second index yields the sigma_z marginal
G = {(I +/- g sigma_z)/2}. Keeping one fixed order removes a silent
transposition bug class.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    InvalidStochasticMatrix,
    NotAPartition,
    NotJointlyMeasurable,
    NotSharp,
    NotTwoOutcome,
)

EFFECT_TOL = 1e-10
STOCHASTIC_TOL = 1e-12
JOINT_BOUNDARY_TOL = 1e-10


@dataclass(frozen=True)
class Effect:
    """A labeled Hermitian operator with spectrum in [0, 1]."""

    label: str
    operator: np.ndarray


@dataclass(frozen=True)
class DiscretePovm:
    """An ordered family of effects; a valid POVM sums to the identity.

    Construction does not validate (classification of broken candidates is
    itself an operation); library constructors only ever produce valid
    instances, and :func:`validate` reports exactly what is wrong with
    anything else.
    """

    effects: tuple[Effect, ...]

    @staticmethod
    def from_pairs(pairs) -> "DiscretePovm":
        return DiscretePovm(tuple(Effect(label, np.asarray(op, dtype=complex)) for label, op in pairs))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.effects)

    def operator(self, label: str) -> np.ndarray:
        for e in self.effects:
            if e.label == label:
                return e.operator
        raise KeyError(label)

    def dimension(self) -> int:
        return self.effects[0].operator.shape[0]


@dataclass(frozen=True)
class UnsharpPair:
    """Sharpness parameters of the smeared sigma_x / sigma_z pair."""

    f: float
    g: float

    def __post_init__(self):
        if not (abs(self.f) <= 1.0 and abs(self.g) <= 1.0):
            raise ValueError(f"|f| and |g| must not exceed 1, got {self.f}, {self.g}")


@dataclass(frozen=True)
class PovmClassification:
    valid: bool
    sharp: bool
    trivial: bool
    failures: tuple[str, ...] = field(default=())


def validate(p: DiscretePovm, tol: float = EFFECT_TOL) -> PovmClassification:
    """Classify a candidate POVM as valid / sharp (PVM) / trivial.

    Valid means every effect is Hermitian with spectrum in [0, 1] and the
    effects sum to the identity. Sharp means every effect is a projection;
    trivial means every effect is a multiple of the identity (its
    statistics carry no information about the state). Failures are
    reported with their magnitudes instead of raising.
    """
    failures = []
    dim = p.dimension()
    total = np.zeros((dim, dim), dtype=complex)
    for e in p.effects:
        op = e.operator
        if op.shape != (dim, dim):
            failures.append(f"effect {e.label!r} has shape {op.shape}, expected {(dim, dim)}")
            continue
        herm_dev = float(np.max(np.abs(op - op.conj().T)))
        if herm_dev > tol:
            failures.append(f"effect {e.label!r} deviates from Hermitian by {herm_dev:.3e}")
            continue
        evs = [ev for ev, _ in linalg.eig_hermitian(op)]
        if evs[-1] < -tol:
            failures.append(f"effect {e.label!r} has eigenvalue {evs[-1]:.6g} below 0")
        if evs[0] > 1.0 + tol:
            failures.append(f"effect {e.label!r} has eigenvalue {evs[0]:.6g} above 1")
        total = total + op
    sum_dev = float(np.max(np.abs(total - np.eye(dim))))
    if sum_dev > tol:
        failures.append(f"effects sum deviates from identity by {sum_dev:.3e}")
    if failures:
        return PovmClassification(valid=False, sharp=False, trivial=False, failures=tuple(failures))
    sharp = all(
        float(np.max(np.abs(e.operator @ e.operator - e.operator))) <= tol for e in p.effects
    )
    trivial = all(
        float(np.max(np.abs(e.operator - (np.trace(e.operator) / dim) * np.eye(dim)))) <= tol
        for e in p.effects
    )
    return PovmClassification(valid=True, sharp=sharp, trivial=trivial)


def smear(sharp: DiscretePovm, w) -> DiscretePovm:
    """Coarse-grain a PVM through a stochastic matrix: E_l = sum_k w[l, k] P_k.

    The result is always a valid, commutative POVM representing an
    approximate measurement of the sharp input.
    """
    w = np.asarray(w, dtype=float)
    if w.ndim != 2:
        raise InvalidStochasticMatrix(f"expected a matrix, got shape {w.shape}")
    cls = validate(sharp)
    if not (cls.valid and cls.sharp):
        raise NotSharp("smearing requires a valid projection-valued input")
    if w.shape[1] != len(sharp.effects):
        raise DimensionMismatch(
            f"stochastic matrix has {w.shape[1]} columns for {len(sharp.effects)} outcomes"
        )
    if np.min(w) < -STOCHASTIC_TOL:
        raise InvalidStochasticMatrix(f"negative entry {np.min(w)!r}")
    col_dev = float(np.max(np.abs(w.sum(axis=0) - 1.0)))
    if col_dev > STOCHASTIC_TOL:
        raise InvalidStochasticMatrix(f"column sums deviate from 1 by {col_dev:.3e}")
    projections = [e.operator for e in sharp.effects]
    effects = []
    for row in range(w.shape[0]):
        op = sum(w[row, k] * projections[k] for k in range(len(projections)))
        effects.append((str(row + 1), op))
    return DiscretePovm.from_pairs(effects)


def marginal(p: DiscretePovm, grouping) -> DiscretePovm:
    """Sum grouped effects into a new POVM.

    ``grouping`` maps each output label to the member labels it absorbs
    and must partition the input label set exactly.
    """
    items = list(grouping.items()) if isinstance(grouping, dict) else list(grouping)
    seen: list[str] = []
    for _, members in items:
        seen.extend(members)
    if sorted(seen) != sorted(p.labels):
        raise NotAPartition(
            f"grouping covers {sorted(seen)} but the POVM has outcomes {sorted(p.labels)}"
        )
    dim = p.dimension()
    out = []
    for label, members in items:
        op = np.zeros((dim, dim), dtype=complex)
        for m in members:
            op = op + p.operator(m)
        out.append((label, op))
    return DiscretePovm.from_pairs(out)


def jointly_measurable(pair: UnsharpPair) -> bool:
    """Whether the unsharp sigma_x / sigma_z pair admits a joint observable.

    The criterion is f^2 + g^2 <= 1, with 1e-12 of tolerance at the
    boundary so exactly-saturating pairs like (sin t, cos t) pass under
    floating-point noise.
    """
    return pair.f * pair.f + pair.g * pair.g <= 1.0 + 1e-12


def joint_xz(pair: UnsharpPair) -> DiscretePovm:
    """The four-outcome joint observable of the unsharp sigma_x / sigma_z pair.

    Effects are (I +/- f sigma_x +/- g sigma_z) / 4 labeled 11, 21, 12, 22;
    the minimum eigenvalue is (1 - sqrt(f^2 + g^2)) / 4, so the
    construction exists exactly on the admissible disk.
    """
    f, g = pair.f, pair.g
    if f * f + g * g > 1.0 + JOINT_BOUNDARY_TOL:
        raise NotJointlyMeasurable(
            f"f^2 + g^2 = {f * f + g * g!r} > 1: minimum eigenvalue would be negative"
        )
    sx, _, sz = linalg.pauli_triple()
    ident = np.eye(2, dtype=complex)
    return DiscretePovm.from_pairs(
        [
            ("11", 0.25 * (ident + f * sx + g * sz)),
            ("21", 0.25 * (ident - f * sx + g * sz)),
            ("12", 0.25 * (ident + f * sx - g * sz)),
            ("22", 0.25 * (ident - f * sx - g * sz)),
        ]
    )


JOINT_FIRST_INDEX_GROUPING = {"1": ("11", "12"), "2": ("21", "22")}
JOINT_SECOND_INDEX_GROUPING = {"1": ("11", "21"), "2": ("12", "22")}


def bias_and_direction(effect: np.ndarray) -> tuple[float, np.ndarray]:
    """Decompose a qubit effect as ((1 + b) I + u . sigma) / 2."""
    b = float(np.trace(effect).real) - 1.0
    u = np.array([float(np.trace(effect @ s).real) for s in linalg.pauli_triple()])
    return b, u


def contrast(p: DiscretePovm) -> float:
    """Maximal statistical contrast of a two-outcome POVM over all states.

    Writing the first effect as ((1 + b) I + u . sigma) / 2, the maximum of
    |tr[rho E1] - tr[rho E2]| over the Bloch ball is |b| + |u|, clamped to
    [0, 1]. Biased effects (b != 0) are covered because erasure produces
    biased coincidence marginals.
    """
    if len(p.effects) != 2:
        raise NotTwoOutcome(f"contrast needs exactly two outcomes, got {len(p.effects)}")
    b, u = bias_and_direction(p.effects[0].operator)
    return min(1.0, max(0.0, abs(b) + float(np.linalg.norm(u))))


def unsharpness(p: DiscretePovm) -> float:
    """1 - contrast^2; equals the minimum outcome variance over all states."""
    c = contrast(p)
    return 1.0 - c * c
