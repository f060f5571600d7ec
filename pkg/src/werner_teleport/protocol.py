"""End-to-end teleportation protocol on density matrices.

Alice holds the information qubit (qubit 0) and half of the resource pair
(qubit 1); Bob holds qubit 2. Alice projects qubits (0, 1) onto the Bell
basis; every outcome occurs with probability 1/4 for a Werner-like
resource. Bob then applies U_r = U0 sigma_r, where sigma_r runs over
I, sigma_z, sigma_x, i*sigma_y for r = 0..3 and U0 is a base unitary he is
free to choose. With that factorization all four branches reconstruct the
same teleported state, so the protocol fidelity Tr[rho_T rho_in] is a
single number per parameter set rather than a per-outcome one.

The measurement is evaluated on all four branches deterministically; there
is no sampling anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .density import (
    DensityMatrixError,
    identity,
    kron,
    ladder_operators,
    partial_trace,
    sigma_x,
    sigma_y,
    sigma_z,
    validate_density,
)
from .states import (
    BELL_INDICES,
    InformationState,
    WernerResource,
    _require_range,
    bell_projector,
    information_state,
    werner_state,
)

__all__ = [
    "DEGENERATE_PROBABILITY",
    "UnitaryAngles",
    "BsmOutcome",
    "OutcomeRecord",
    "FidelityReport",
    "correction_branch_operators",
    "base_unitary",
    "correction_unitary",
    "composite",
    "bsm_project",
    "conditional_state_formula",
    "run_protocol",
]

# Outcome probabilities are exactly 1/4 for any in-range parameters; the
# guard below only fires for hand-built composites that annihilate one
# Bell branch, and exists so that branch fails loudly instead of dividing
# by ~0.
DEGENERATE_PROBABILITY = 1e-15

_SIGMA_R = (identity, sigma_z, sigma_x, 1j * sigma_y)

_PROJ_IDENTITY = [kron(bell_projector(r), identity) for r in BELL_INDICES]


@dataclass(frozen=True)
class UnitaryAngles:
    """Angles of Bob's base correction unitary.

    U0 = e^{i chi} [[cos(theta/2) e^{i phi},  sin(theta/2) e^{i psi}],
                    [-sin(theta/2) e^{-i psi}, cos(theta/2) e^{-i phi}]]

    chi in [0, 2 pi) is a global phase and cancels from every conjugation;
    theta, phi, psi lie in [0, pi].
    """

    chi: float = 0.0
    theta: float = 0.0
    phi: float = 0.0
    psi: float = 0.0

    def __post_init__(self):
        _require_range(self.chi, 0.0, 2.0 * math.pi, "chi", open_upper=True)
        _require_range(self.theta, 0.0, math.pi, "theta")
        _require_range(self.phi, 0.0, math.pi, "phi")
        _require_range(self.psi, 0.0, math.pi, "psi")


@dataclass(frozen=True)
class BsmOutcome:
    """One Bell-measurement branch: index, probability, Bob's state."""

    r: int
    probability: float
    bob_state: np.ndarray


@dataclass(frozen=True)
class OutcomeRecord:
    r: int
    probability: float
    fidelity: float


@dataclass(frozen=True)
class FidelityReport:
    """Per-outcome probabilities and fidelities plus their common value."""

    outcomes: tuple[OutcomeRecord, ...]
    fidelity: float


def correction_branch_operators() -> tuple[np.ndarray, ...]:
    """The four branch operators (I, sigma_z, sigma_x, i*sigma_y)."""
    return _SIGMA_R


def base_unitary(angles: UnitaryAngles) -> np.ndarray:
    """Bob's base correction unitary U0."""
    half = 0.5 * angles.theta
    c, s = math.cos(half), math.sin(half)
    return np.exp(1j * angles.chi) * np.array(
        [[c * np.exp(1j * angles.phi), s * np.exp(1j * angles.psi)],
         [-s * np.exp(-1j * angles.psi), c * np.exp(-1j * angles.phi)]])


def correction_unitary(r: int, angles: UnitaryAngles) -> np.ndarray:
    """Bob's outcome-r correction U_r = U0 sigma_r."""
    if r not in BELL_INDICES:
        raise ValueError(f"Bell index must be one of {BELL_INDICES}, got {r}")
    return base_unitary(angles) @ _SIGMA_R[r]


def composite(info: np.ndarray, resource: np.ndarray) -> np.ndarray:
    """Assemble the three-qubit state info (x) resource, qubit 0 = input."""
    info = validate_density(np.asarray(info, dtype=complex))
    resource = validate_density(np.asarray(resource, dtype=complex))
    if info.shape != (2, 2) or resource.shape != (4, 4):
        raise DensityMatrixError(
            f"expected 2x2 info and 4x4 resource, got {info.shape} and {resource.shape}")
    return kron(info, resource)


def bsm_project(composite_state: np.ndarray, r: int) -> BsmOutcome:
    """Project qubits (0, 1) onto Bell state ``r`` and reduce to Bob's qubit.

    Returns the outcome probability Tr[rho_c (P_r x I)] and the normalized
    conditional state of qubit 2. Raises if the branch probability is
    degenerate (below 1e-15), which cannot happen for composites built
    from a Werner-like resource.
    """
    composite_state = validate_density(np.asarray(composite_state, dtype=complex))
    if composite_state.shape != (8, 8):
        raise DensityMatrixError(
            f"expected a three-qubit (8x8) composite, got {composite_state.shape}")
    if r not in BELL_INDICES:
        raise ValueError(f"Bell index must be one of {BELL_INDICES}, got {r}")
    projected = composite_state @ _PROJ_IDENTITY[r]
    probability = float(np.trace(projected).real)
    if probability < DEGENERATE_PROBABILITY:
        raise DensityMatrixError(
            f"degenerate Bell outcome r={r}: probability {probability:.3e}")
    bob = partial_trace(projected, keep={2}) / probability
    return BsmOutcome(r=r, probability=probability, bob_state=bob)


def conditional_state_formula(info: np.ndarray, epsilon: float, r: int) -> np.ndarray:
    """Bob's conditional state written directly in the ladder basis.

    Independent of the projection route in :func:`bsm_project`: the state
    is assembled from the input-matrix entries,

        r = 0:  [ {p00(1+e) + p11(1-e)} |0><0| + {p00(1-e) + p11(1+e)} |1><1|
                  + 2 e p01 |0><1| + 2 e p10 |1><0| ] / 2

    with the diagonal pair swapped for r in (2, 3), the off-diagonal pair
    swapped for r in (2, 3), and the off-diagonal sign flipped for r in
    (1, 3). The two routes must agree entry for entry.
    """
    if r not in BELL_INDICES:
        raise ValueError(f"Bell index must be one of {BELL_INDICES}, got {r}")
    epsilon = _require_range(epsilon, 0.0, 1.0, "epsilon")
    info = np.asarray(info, dtype=complex)
    i_plus, i_minus, r_plus, r_minus = ladder_operators()
    p00, p01 = info[0, 0], info[0, 1]
    p10, p11 = info[1, 0], info[1, 1]
    heavy = p00 * (1 + epsilon) + p11 * (1 - epsilon)
    light = p00 * (1 - epsilon) + p11 * (1 + epsilon)
    if r in (2, 3):
        heavy, light = light, heavy
        p01, p10 = p10, p01
    sign = 1.0 if r in (0, 2) else -1.0
    return 0.5 * (heavy * i_plus + light * i_minus
                  + sign * 2.0 * epsilon * (p01 * r_plus + p10 * r_minus))


def run_protocol(info: InformationState, resource: WernerResource,
                 angles: UnitaryAngles) -> FidelityReport:
    """Run all four Bell branches and report probabilities and fidelities.

    For each outcome r the teleported state is U_r rho_Bob_r U_r^dagger and
    its fidelity is the trace overlap Tr[rho_T rho_in]. With the shared-U0
    corrections the four fidelities coincide; the report's ``fidelity`` is
    their probability-weighted mean.
    """
    rho_in = information_state(info)
    rho_c = composite(rho_in, werner_state(resource))
    u0 = base_unitary(angles)
    records = []
    total_p = 0.0
    common = 0.0
    for r in BELL_INDICES:
        outcome = bsm_project(rho_c, r)
        u_r = u0 @ _SIGMA_R[r]
        teleported = u_r @ outcome.bob_state @ u_r.conj().T
        fid = float(np.trace(teleported @ rho_in).real)
        records.append(OutcomeRecord(r=r, probability=outcome.probability, fidelity=fid))
        total_p += outcome.probability
        common += outcome.probability * fid
    if abs(total_p - 1.0) > 1e-12:
        raise DensityMatrixError(f"branch probabilities sum to {total_p:.15g}")
    return FidelityReport(outcomes=tuple(records), fidelity=common / total_p)
