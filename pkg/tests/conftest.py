"""Shared test helpers.

The library caches root systems, group tables, and graphs aggressively, so
fixtures hand out the cached objects rather than managing lifecycles.

Heavy optional checks (anything needing the 51840-element rank-6
exceptional group) run only when ADLV_HEAVY is set in the environment.
"""

import os

import pytest

from adlv.rootsys import build_root_system

HEAVY = bool(os.environ.get("ADLV_HEAVY"))

heavy_only = pytest.mark.skipif(
    not HEAVY, reason="set ADLV_HEAVY=1 to run large-group checks"
)


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def b2():
    return build_root_system("B", 2)


@pytest.fixture(scope="session")
def g2():
    return build_root_system("G", 2)


@pytest.fixture(scope="session")
def a3():
    return build_root_system("A", 3)


@pytest.fixture(scope="session")
def b3():
    return build_root_system("B", 3)


@pytest.fixture(scope="session")
def c3():
    return build_root_system("C", 3)


@pytest.fixture(scope="session")
def d4():
    return build_root_system("D", 4)
