import math

import numpy as np
import pytest

from werner_teleport.density import DensityMatrixError, kron, sigma_x, sigma_y, sigma_z
from werner_teleport.protocol import (
    UnitaryAngles,
    base_unitary,
    bsm_project,
    composite,
    conditional_state_formula,
    correction_branch_operators,
    correction_unitary,
    run_protocol,
)
from werner_teleport.states import (
    InformationState,
    WernerResource,
    bell_projector,
    information_state,
    purity,
    werner_state,
)

from helpers import fidelity_reference


def _random_params(rng):
    return (rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi),
            rng.uniform(0, 1), rng.uniform(0, 1))


# ------------------------------------------------------------ composite

def test_composite_pure_times_pure_is_pure():
    rho_c = composite(information_state(InformationState(0.3, 1.0, 1.0)),
                      werner_state(WernerResource(1.0)))
    assert abs(purity(rho_c) - 1.0) < 1e-12


def test_composite_trace_and_marginal():
    rng = np.random.default_rng(3)
    info = information_state(InformationState(*_random_params(rng)[:3]))
    rho_c = composite(info, werner_state(WernerResource(0.7)))
    assert abs(np.trace(rho_c) - 1) < 1e-12
    from werner_teleport.density import partial_trace
    np.testing.assert_allclose(partial_trace(rho_c, {0}), info, atol=1e-13)


def test_composite_rejects_swapped_arguments():
    info = information_state(InformationState(0.0, 0.0, 1.0))
    resource = werner_state(WernerResource(0.5))
    with pytest.raises(DensityMatrixError):
        composite(resource, info)


# ----------------------------------------------------------- bsm_project

def test_bsm_ideal_channel_reproduces_input():
    info = information_state(InformationState(1.1, 2.2, 1.0))
    rho_c = composite(info, werner_state(WernerResource(1.0)))
    outcome = bsm_project(rho_c, 0)
    assert abs(outcome.probability - 0.25) < 1e-12
    np.testing.assert_allclose(outcome.bob_state, info, atol=1e-12)


def test_bsm_mixed_resource_carries_nothing():
    info = information_state(InformationState(0.4, 5.0, 0.8))
    rho_c = composite(info, werner_state(WernerResource(0.0)))
    for r in range(4):
        outcome = bsm_project(rho_c, r)
        np.testing.assert_allclose(outcome.bob_state, np.eye(2) / 2, atol=1e-12)


def test_bsm_pole_state_half_mixing():
    # alpha = 0 input over an epsilon = 0.5 resource: diag((1+e)/2, (1-e)/2)
    info = information_state(InformationState(0.0, 0.0, 0.3))
    rho_c = composite(info, werner_state(WernerResource(0.5)))
    outcome = bsm_project(rho_c, 0)
    np.testing.assert_allclose(outcome.bob_state, np.diag([0.75, 0.25]), atol=1e-12)


def test_bsm_probabilities_quarter():
    rng = np.random.default_rng(19)
    for _ in range(20):
        alpha, beta, gamma, epsilon = _random_params(rng)
        rho_c = composite(information_state(InformationState(alpha, beta, gamma)),
                          werner_state(WernerResource(epsilon)))
        probs = [bsm_project(rho_c, r).probability for r in range(4)]
        assert max(abs(p - 0.25) for p in probs) < 1e-12
        assert abs(sum(probs) - 1.0) < 1e-12


def test_bsm_matches_ladder_formula():
    rng = np.random.default_rng(43)
    for _ in range(50):
        alpha, beta, gamma, epsilon = _random_params(rng)
        info = information_state(InformationState(alpha, beta, gamma))
        rho_c = composite(info, werner_state(WernerResource(epsilon)))
        for r in range(4):
            got = bsm_project(rho_c, r).bob_state
            expected = conditional_state_formula(info, epsilon, r)
            assert np.abs(got - expected).max() < 1e-12


def test_bsm_branch_conjugation_relation():
    sigma_r = correction_branch_operators()
    rng = np.random.default_rng(47)
    for _ in range(20):
        alpha, beta, gamma, epsilon = _random_params(rng)
        rho_c = composite(information_state(InformationState(alpha, beta, gamma)),
                          werner_state(WernerResource(epsilon)))
        bob0 = bsm_project(rho_c, 0).bob_state
        for r in (1, 2, 3):
            rotated = sigma_r[r] @ bob0 @ sigma_r[r].conj().T
            assert np.abs(bsm_project(rho_c, r).bob_state - rotated).max() < 1e-12


def test_bsm_degenerate_outcome_fails_loudly():
    # hand-built composite orthogonal to the r=0 Bell branch
    rho_c = kron(bell_projector(1), np.eye(2, dtype=complex) / 2)
    with pytest.raises(DensityMatrixError, match="degenerate"):
        bsm_project(rho_c, 0)
    assert abs(bsm_project(rho_c, 1).probability - 1.0) < 1e-12


def test_bsm_rejects_bad_index_and_shape():
    rho_c = composite(information_state(InformationState(0, 0, 1)),
                      werner_state(WernerResource(0.5)))
    with pytest.raises(ValueError):
        bsm_project(rho_c, 5)
    with pytest.raises(DensityMatrixError):
        bsm_project(werner_state(WernerResource(0.5)), 0)


# ----------------------------------------------------- correction unitary

def test_correction_unitary_identity():
    np.testing.assert_allclose(correction_unitary(0, UnitaryAngles()), np.eye(2),
                               atol=1e-15)


def test_correction_unitary_branches_at_zero_angles():
    angles = UnitaryAngles()
    np.testing.assert_allclose(correction_unitary(1, angles), sigma_z, atol=1e-15)
    np.testing.assert_allclose(correction_unitary(2, angles), sigma_x, atol=1e-15)
    np.testing.assert_allclose(correction_unitary(3, angles), 1j * sigma_y, atol=1e-15)


def test_correction_unitary_is_unitary():
    rng = np.random.default_rng(53)
    for _ in range(50):
        angles = UnitaryAngles(rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi),
                               rng.uniform(0, math.pi), rng.uniform(0, math.pi))
        for r in range(4):
            u = correction_unitary(r, angles)
            assert np.abs(u @ u.conj().T - np.eye(2)).max() < 1e-12


def test_base_unitary_angles_rejected_out_of_range():
    with pytest.raises(ValueError):
        UnitaryAngles(theta=-0.1)
    with pytest.raises(ValueError):
        UnitaryAngles(chi=2 * math.pi)
    with pytest.raises(ValueError):
        UnitaryAngles(psi=math.pi + 0.2)


# --------------------------------------------------------- run_protocol

def test_run_protocol_ideal():
    report = run_protocol(InformationState(2.0, 0.7, 1.0), WernerResource(1.0),
                          UnitaryAngles())
    assert abs(report.fidelity - 1.0) < 1e-12
    for outcome in report.outcomes:
        assert abs(outcome.fidelity - 1.0) < 1e-12
        assert abs(outcome.probability - 0.25) < 1e-12


def test_run_protocol_useless_resource():
    report = run_protocol(InformationState(1.0, 1.0, 0.6), WernerResource(0.0),
                          UnitaryAngles(0.0, 1.0, 1.0, 1.0))
    assert abs(report.fidelity - 0.5) < 1e-12


def test_run_protocol_outcomes_coincide():
    rng = np.random.default_rng(59)
    for _ in range(20):
        alpha, beta, gamma, epsilon = _random_params(rng)
        angles = UnitaryAngles(rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi),
                               rng.uniform(0, math.pi), rng.uniform(0, math.pi))
        report = run_protocol(InformationState(alpha, beta, gamma),
                              WernerResource(epsilon), angles)
        fids = [o.fidelity for o in report.outcomes]
        assert max(fids) - min(fids) < 1e-12


def test_run_protocol_chi_invariance():
    fixed = (1.3, 4.0, 0.7, 0.8)
    values = []
    for chi in (0.0, 0.9, math.pi, 5.5):
        report = run_protocol(InformationState(fixed[0], fixed[1], fixed[2]),
                              WernerResource(fixed[3]),
                              UnitaryAngles(chi, 0.8, 1.1, 0.2))
        values.append(report.fidelity)
    assert max(values) - min(values) < 1e-14


def test_run_protocol_matches_closed_form():
    rng = np.random.default_rng(61)
    for _ in range(200):
        alpha, beta, gamma, epsilon = _random_params(rng)
        chi = rng.uniform(0, 2 * math.pi)
        theta, phi, psi = rng.uniform(0, math.pi, 3)
        report = run_protocol(InformationState(alpha, beta, gamma),
                              WernerResource(epsilon),
                              UnitaryAngles(chi, theta, phi, psi))
        expected = fidelity_reference(alpha, beta, gamma, epsilon, theta, phi, psi)
        assert abs(report.fidelity - expected) < 1e-10


def test_conditional_state_formula_rejects_bad_index():
    info = information_state(InformationState(0.5, 0.5, 0.5))
    with pytest.raises(ValueError):
        conditional_state_formula(info, 0.5, -1)
