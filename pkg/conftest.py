import logging
import math

import pytest
from hypothesis import HealthCheck, settings

from src.dynamics.germs import validate
from src.potentials.kcone import psi_members

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@pytest.fixture
def enoki_germ():
    return validate({"family": "enoki", "alpha": 0.5, "s": 1, "Q": [1.0]})


@pytest.fixture
def intermediate_germ():
    return validate({"family": "intermediate", "p": 2, "s": 1, "lambda": 1.0, "low": [1.0]})


@pytest.fixture
def golden_germ():
    return validate({"family": "ih", "word": "S"})


@pytest.fixture
def small_psi():
    """Quarter of the critical scale of the fundamental sine, period log 2."""
    return psi_members(math.log(2.0))[1]


@pytest.fixture(autouse=True)
def restore_logging():
    """The CLI reconfigures the root logger; undo that after each test."""
    root = logging.getLogger()
    before, level = list(root.handlers), root.level
    yield
    for handler in [h for h in root.handlers if h not in before]:
        root.removeHandler(handler)
    root.setLevel(level)
