"""Shared fixtures for the fmdlab test suite."""

from dataclasses import asdict

import pytest

from fmdlab.constructions import build_integers
from fmdlab.limits import configure, limits
from fmdlab.ring_core import make_gf, make_zmod


@pytest.fixture(autouse=True)
def restore_limits():
    saved = asdict(limits)
    yield
    configure(**saved)


@pytest.fixture
def z144():
    return make_zmod(144)


@pytest.fixture
def integers12():
    return build_integers(12)


@pytest.fixture
def f2():
    return make_gf(2, 1)


@pytest.fixture
def f4():
    return make_gf(2, 2)

