import numpy as np
import pytest

from petzlab import random_channel, random_density


@pytest.fixture
def rng():
    return np.random.default_rng(20240615)


def random_dpi_instance(seed, dim_lo=2, dim_hi=5, env_max=4, max_condition=1e8):
    """Seeded (rho, sigma, channel) triple with a well-conditioned sigma."""
    gen = np.random.default_rng(seed)
    dim_in = int(gen.integers(dim_lo, dim_hi + 1))
    dim_out = int(gen.integers(dim_lo, dim_hi + 1))
    env_lo = max(1, -(-dim_in // dim_out))
    env = int(gen.integers(env_lo, max(env_lo, env_max) + 1))
    while True:
        sigma = random_density(dim_in, gen)
        vals = np.linalg.eigvalsh(sigma)
        if vals[0] > 0 and vals[-1] / vals[0] <= max_condition:
            break
    rho = random_density(dim_in, gen)
    channel = random_channel(dim_in, dim_out, env, gen)
    return rho, sigma, channel
