import pytest

from helpers import ABSTRACT_KENMOTSU5
from kenmotsu.dsl import load_builtin, parse_manifold_dsl
from kenmotsu.geometry import analyze


@pytest.fixture(scope="session")
def doc():
    return load_builtin("kenmotsu5")


@pytest.fixture(scope="session")
def m(doc):
    return doc.to_manifold()


@pytest.fixture(scope="session")
def geo(m):
    return analyze(m)


@pytest.fixture(scope="session")
def abstract_geo():
    return analyze(parse_manifold_dsl(ABSTRACT_KENMOTSU5).to_manifold())

