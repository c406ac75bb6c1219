"""Session-scoped Monte Carlo fixtures shared by statistics-heavy tests.

These runs take seconds to tens of seconds, so each study is computed once
per session and reused by every test that inspects it.
"""

import pytest

from pinchsec import ExperimentConfig, Scenario, run_power_sweep, run_antenna_sweep, run_convergence_study


@pytest.fixture(scope="session")
def default_scenario():
    return Scenario()


@pytest.fixture(scope="session")
def power_sweep_rows(default_scenario):
    config = ExperimentConfig(
        scenario=default_scenario,
        trials=500,
        n_antennas=20,
        master_seed=20260819,
        methods=("initial-single-antenna", "shapley", "coalition-value"),
    )
    return run_power_sweep(config).rows


@pytest.fixture(scope="session")
def ula_sweep_rows(default_scenario):
    # the ULA mean sits near zero with a spread of several bits, so the
    # +/-0.2 acceptance band needs a few thousand trials to resolve
    config = ExperimentConfig(
        scenario=default_scenario,
        trials=8000,
        n_antennas=20,
        master_seed=918273,
        methods=("fixed-ula",),
    )
    return run_power_sweep(config).rows


@pytest.fixture(scope="session")
def antenna_sweep_rows(default_scenario):
    config = ExperimentConfig(
        scenario=default_scenario,
        trials=500,
        power_dbm=10.0,
        master_seed=551234,
        methods=("initial-single-antenna", "shapley"),
    )
    return run_antenna_sweep(config).rows


@pytest.fixture(scope="session")
def convergence_result(default_scenario):
    config = ExperimentConfig(
        scenario=default_scenario,
        trials=200,
        n_antennas=20,
        convergence_power_dbm=20.0,
        master_seed=424242,
    )
    return run_convergence_study(config)
