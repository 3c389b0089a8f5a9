# tests/conftest.py

import pytest
from adoptlab.model import ModelParams, TrustParams
from adoptlab.dynamics import IntegrationConfig


@pytest.fixture
def ref() -> ModelParams:
    """Reference parameter set (bistable: G and P stable, R a saddle)."""
    return ModelParams()


@pytest.fixture
def tp() -> TrustParams:
    return TrustParams()


@pytest.fixture
def fast() -> IntegrationConfig:
    """Coarser steps and a shorter horizon for tests that only need the attractor."""
    return IntegrationConfig(stepSize=0.02, tMax=150.0)


@pytest.fixture
def tech() -> ModelParams:
    """Technology-type configuration whose P corner loses stability near rho = 6/7."""
    return ModelParams(gamma=0.05, k=200.0, B1=0.2)
