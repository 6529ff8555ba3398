"""
Shared fixtures.
"""

import pytest

from chaoskit.models.base import ChaosKitSettings
from chaoskit.services.sft import Sft
from chaoskit.utils.config import reset_settings
from tests.strategies import zoo


@pytest.fixture(autouse=True)
def test_settings():
    """Small default checkpoints and a fixed worker count for every test."""
    settings = ChaosKitSettings(checkpoint_exponents=[10, 12, 14], workers=2)
    reset_settings(settings)
    yield settings
    reset_settings(None)


@pytest.fixture
def full2() -> Sft:
    return zoo("full_shift_2")


@pytest.fixture
def full3() -> Sft:
    return zoo("full_shift_3")


@pytest.fixture
def golden() -> Sft:
    return zoo("golden_mean")


@pytest.fixture
def bipartite() -> Sft:
    return zoo("bipartite_3")


@pytest.fixture
def cycle2() -> Sft:
    return zoo("even_period_cycle")


@pytest.fixture
def two_loops() -> Sft:
    return zoo("two_loops")
