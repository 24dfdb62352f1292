# tests/conftest.py
"""
Shared test fixtures and configuration for pytest.
"""

import logging
import os
from pathlib import Path
from unittest.mock import patch

import pytest
from mpmath import mp


# Set test config file for all tests
@pytest.fixture(autouse=True)
def setup_test_config():
    """Automatically use tests/test.yml and clear POLYFIB_PREC for every test."""
    from polyfib.config import set_config_file

    test_config = Path(__file__).parent / 'test.yml'
    set_config_file(str(test_config))

    env = {k: v for k, v in os.environ.items() if k != 'POLYFIB_PREC'}
    with patch.dict(os.environ, env, clear=True):
        yield


@pytest.fixture
def clean_logging():
    """Release root handlers installed by setup_logging() (file handles on Windows)."""
    yield
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        handler.close()
        root_logger.removeHandler(handler)


@pytest.fixture
def hp():
    """Reference precision for expected values: 256 bits."""
    with mp.workprec(256):
        yield


def close_to(value, expected, bits: int) -> bool:
    """|value - expected| <= 2^-bits * max(1, |expected|)."""
    from polyfib.utils import to_mp

    with mp.workprec(max(mp.prec, bits + 64)):
        value, expected = to_mp(value), to_mp(expected)
        scale = max(mp.mpf(1), abs(expected))
        return abs(value - expected) <= mp.ldexp(scale, -bits)


@pytest.fixture
def golden(hp):
    """alpha, beta, sqrt5, log(alpha) and pi at 256 bits; the test body runs at 256 bits."""
    sqrt5 = mp.sqrt(5)
    alpha = (1 + sqrt5) / 2
    return {'alpha': alpha, 'beta': (1 - sqrt5) / 2, 'sqrt5': sqrt5, 'la': mp.log(alpha), 'pi': +mp.pi}
