import functools

import pytest

from skewcoh.specio import load_group


@functools.lru_cache(maxsize=None)
def bundled(name):
    return load_group(name)[0]


@pytest.fixture(scope="session")
def grp():
    return bundled
