import pytest

from oscusec import config


@pytest.fixture(autouse=True)
def default_config():
    """Every test starts from the default modulus and seed."""
    config.set_prime(config.DEFAULT_PRIME)
    config.set_seed(config.DEFAULT_SEED)
    yield
    config.set_prime(config.DEFAULT_PRIME)
    config.set_seed(config.DEFAULT_SEED)
