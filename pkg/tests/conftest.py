"""Pytest configuration and fixtures."""

import pytest

from infinitary.optimization import clear_all_caches
from infinitary.processes import (
    bc_machine,
    even_machine,
    hpm_machine,
    iid_machine,
    nonunifilar_machine,
)

BC_HORIZON = 9
HPM_HORIZON = 12


@pytest.fixture
def even():
    """Even Process with p = 1/2."""
    return even_machine(0.5)


@pytest.fixture(params=[0.3, 0.5, 0.8])
def even_p(request):
    """Even Process over several parameters."""
    return even_machine(request.param)


@pytest.fixture
def iid():
    return iid_machine((0.25, 0.75))


@pytest.fixture
def nonunifilar():
    return nonunifilar_machine()


@pytest.fixture
def hpm_exact():
    return hpm_machine()


@pytest.fixture
def hpm_pooled():
    """HPM presentation exact for words up to length 12."""
    return hpm_machine(horizon=HPM_HORIZON)


@pytest.fixture
def bc_exact():
    return bc_machine(1e-4)


@pytest.fixture
def bc_lumped():
    """BC presentation exact for words up to length 9."""
    return bc_machine(1e-4, horizon=BC_HORIZON)


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    """Keep EM_* settings of the calling shell out of the tests."""
    import os

    for name in list(os.environ):
        if name.startswith("EM_"):
            monkeypatch.delenv(name)
    yield


@pytest.fixture(scope="session", autouse=True)
def _clear_caches():
    yield
    clear_all_caches()
