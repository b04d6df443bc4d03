"""Shared pytest fixtures for the toolkit tests."""

import logging

import numpy as np
import pytest

from pucci_liouville.config import ToolkitConfig
from pucci_liouville.logs import PACKAGE_LOGGER
from pucci_liouville.pucci import Ellipticity


@pytest.fixture
def default_config():
    """Provide a default ToolkitConfig instance for testing."""
    return ToolkitConfig()


@pytest.fixture
def small_config():
    """Coarser grid for tests that build many witnesses."""
    return ToolkitConfig(grid_points=128)


@pytest.fixture
def laplace():
    """lambda = Lambda = 1, where M+ is minus the Laplacian."""
    return Ellipticity(1.0, 1.0)


@pytest.fixture
def anisotropic():
    """lambda = 1, Lambda = 2."""
    return Ellipticity(1.0, 2.0)


@pytest.fixture
def rng():
    """Seeded generator for random draws."""
    return np.random.default_rng(20240101)


@pytest.fixture(autouse=True)
def reset_package_logger():
    """configure_logging mutates the package logger; restore it after every test."""
    yield
    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True
