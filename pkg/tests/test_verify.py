import pytest

from werner_teleport.verify import (
    CheckResult,
    run_verification,
    worst_closed_form_deviation,
)


def test_all_checks_pass_on_small_sample():
    results = run_verification(seed=7, samples=40, grid_points=3,
                               run_minimax=False)
    assert len(results) == 6
    for result in results:
        assert result.passed, result.line()


def test_results_are_reproducible():
    first = run_verification(seed=11, samples=25, run_quadrature=False,
                             run_minimax=False)
    second = run_verification(seed=11, samples=25, run_quadrature=False,
                              run_minimax=False)
    assert [(r.name, r.worst) for r in first] == [(r.name, r.worst) for r in second]


def test_corrupted_closed_form_is_caught():
    # negative control: a 1e-3 bias in the closed form must trip exactly
    # the simulation-vs-closed-form check, with the offending tuple named
    def biased(alpha, beta, gamma, epsilon, theta, phi, psi):
        from werner_teleport.analytics import fidelity_closed_form
        return fidelity_closed_form(alpha, beta, gamma, epsilon, theta, phi, psi) + 1e-3

    results = run_verification(seed=3, samples=20, closed_form=biased,
                               run_quadrature=False, run_minimax=False)
    by_name = {r.name: r for r in results}
    oracle = by_name["closed-form fidelity vs density-matrix simulation"]
    assert not oracle.passed
    assert "alpha=" in oracle.detail
    assert "FAIL" in oracle.line()
    others = [r for r in results if r is not oracle]
    assert all(r.passed for r in others)


def test_worst_deviation_extraction():
    results = run_verification(seed=5, samples=10, run_quadrature=False,
                               run_minimax=False)
    assert worst_closed_form_deviation(results) < 1e-10
    with pytest.raises(ValueError):
        worst_closed_form_deviation([])


def test_rejects_nonpositive_samples():
    with pytest.raises(ValueError):
        run_verification(seed=1, samples=0)


def test_check_result_line_format():
    good = CheckResult(name="demo", tolerance=1e-6, worst=1e-9)
    assert good.passed
    assert good.line().startswith("[PASS] demo")
    bad = CheckResult(name="demo", tolerance=1e-6, worst=1e-3, detail="(x=1): a=2 b=3")
    assert not bad.passed
    assert "first failure at (x=1)" in bad.line()
