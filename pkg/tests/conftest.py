import pytest

from gboehm import GridSpec, sample
from gboehm.presets import AnalyticPreset


@pytest.fixture(scope="session")
def grid_mid():
    """[-16, 16], h = 1/64: fast, kernel indices up to 32."""
    return GridSpec(-16.0, 16.0, 2049)


@pytest.fixture(scope="session")
def grid_fine():
    """[-16, 16], h = 1/128: kernel indices up to 64."""
    return GridSpec(-16.0, 16.0, 4097)


@pytest.fixture(scope="session")
def grid_default():
    """The desk-scale default window."""
    return GridSpec(-30.0, 30.0, 6001)


def battery_functions(grid, names=None, tail_cutoff=1e-12):
    names = names or ("exp_right", "exp_left", "gaussian:1", "box:0:1",
                      "box:-1:1", "triangle:1")
    from gboehm import parse_preset

    return {n: sample(parse_preset(n), grid, tail_cutoff) for n in names}


@pytest.fixture(scope="session")
def battery_mid(grid_mid):
    return battery_functions(grid_mid)


@pytest.fixture(scope="session")
def battery_default(grid_default):
    return battery_functions(grid_default)


@pytest.fixture(scope="session")
def gaussian_mid(grid_mid):
    return sample(AnalyticPreset("gaussian", (1.0,)), grid_mid)
