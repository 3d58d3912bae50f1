"""
Test Configuration
==================
Sets up sys.path and environment defaults so that test imports resolve
without a local .env file changing the limits under test.
"""
import os
import sys

import pytest

# ===========================================================================
# 1. Ensure Sandwich_backend is on the import path
# ===========================================================================
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

# ===========================================================================
# 2. Pin the tunables BEFORE any project code reads them.
# ===========================================================================
os.environ["FGS_NODE_BUDGET"] = "100000"
os.environ["FGS_MAX_RANK"] = "5"
os.environ["FGS_ORACLE_MAX_RANK"] = "3"
os.environ["FGS_ORACLE_MAX_DEPTH"] = "4"

from Graph.config import get_settings  # noqa: E402
from Graph.free_words import Alphabet  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_settings():
    """Every test sees the environment as it is now, not a cached Settings."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def xy():
    return Alphabet.from_string("xy")


@pytest.fixture
def xyz():
    return Alphabet.from_string("xyz")


@pytest.fixture
def words(xy):
    """words("xxyy", "y") -> tuple of Words over {x, y}."""
    return lambda *texts: tuple(xy.parse_word(t) for t in texts)
