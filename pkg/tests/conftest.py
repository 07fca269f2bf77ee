import textwrap

import numpy as np
import pytest
from hypothesis import settings

from travelwave.domain.entity.model import BodyConfig, WaveParams

settings.register_profile("deterministic", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("deterministic")


@pytest.fixture
def unit_body():
    return BodyConfig(G=1.0, m1=1.0, m2=1.0)


@pytest.fixture
def moving_params():
    """mu = 2, v = (1, 0, 0), lambda_12^2 = 1: speed factor 3"""
    return WaveParams.block_constant(mu=2.0, v=(1.0, 0.0, 0.0), block_lambda_sq=(1.0,))


@pytest.fixture
def pair_params():
    """mu = 1, |v| = 1, lambda^2 = (0.5, 0.25): speed factors 0.5 and 0.75"""
    return WaveParams.block_constant(mu=1.0, v=(0.6, 0.8, 0.0), block_lambda_sq=(0.5, 0.25))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def write_config(tmp_path):
    def write(text: str, name: str = "run.ini"):
        path = tmp_path / name
        path.write_text(textwrap.dedent(text), encoding="utf-8")
        return path

    return write
