import math

import numpy as np
import pytest

from rsma_parga import (
    RateProblem,
    ScenarioParams,
    build_precoders,
    effective_gains,
    generate_three_user_channels,
)


@pytest.fixture
def scenario_params():
    # the paper's three-user setup at theta1=pi/9, theta2=2pi/9, unit gains
    return ScenarioParams(
        theta1=math.pi / 9, theta2=2 * math.pi / 9, noise_power=1.0, total_power=100.0
    )


@pytest.fixture
def three_user_setup(scenario_params):
    channels = generate_three_user_channels(scenario_params)
    precoders = build_precoders(channels, scenario_params, "seeded_random", seed=7)
    gains = effective_gains(channels, precoders, scenario_params)
    return scenario_params, channels, precoders, gains


@pytest.fixture
def three_user_problem(three_user_setup):
    params, _, _, gains = three_user_setup
    return RateProblem(gains, params.noise_power, params.total_power, params.user_sets)


def random_problem(rng, n_users=3, n_channels=1, n0=1.0, total_power=10.0):
    """Synthetic RateProblem with random positive gains; no channel model."""
    from rsma_parga.rates import EffectiveGains

    users = tuple(tuple(range(n_users)) for _ in range(n_channels))
    gc = tuple(rng.uniform(0.1, 4.0, size=n_users) for _ in range(n_channels))
    gp = []
    for _ in range(n_channels):
        m = rng.uniform(0.0, 0.05, size=(n_users, n_users))
        np.fill_diagonal(m, rng.uniform(0.5, 4.0, size=n_users))
        gp.append(m)
    gains = EffectiveGains(users=users, g_common=gc, g_private=tuple(gp))
    return RateProblem(gains, n0, total_power, users)
