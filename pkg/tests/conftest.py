from pathlib import Path as FsPath

import pytest

from findim.algebra import MonomialPresentation, build_algebra
from findim.formats import parse_algebra

DATA = FsPath(__file__).resolve().parent.parent / "data"

TILED5 = ((0, 0, 0, 0, 0), (1, 0, 0, 0, 0), (2, 1, 0, 0, 0), (2, 2, 1, 0, 1), (3, 2, 1, 1, 0))

TWO_LOOP_ARROWS = [("alpha", "1", "2"), ("beta", "1", "2"), ("gamma", "2", "2"),
                   ("delta", "2", "2"), ("eps", "2", "3"), ("mu", "3", "4")]
TWO_LOOP_RELATIONS = ["alpha*delta", "alpha*eps", "beta*gamma", "beta*eps", "gamma*gamma", "gamma*delta",
                      "gamma*eps", "delta*gamma", "delta*delta", "delta*eps", "eps*mu"]


def make(vertices, arrows, relations=()):
    return build_algebra(MonomialPresentation.from_strings(vertices, arrows, relations))


@pytest.fixture(scope="session")
def two_loops():
    return make("1234", TWO_LOOP_ARROWS, TWO_LOOP_RELATIONS)


@pytest.fixture(scope="session")
def dual_numbers():
    return make("1", [("a", "1", "1")], ["a*a"])


@pytest.fixture(scope="session")
def a2():
    return make("12", [("a", "1", "2")])


@pytest.fixture(scope="session")
def semisimple():
    return make("12", [])


@pytest.fixture(scope="session")
def two_loops_text():
    return (DATA / "two_loops.qalg").read_text()


@pytest.fixture(scope="session")
def two_loops_doc(two_loops_text):
    return parse_algebra(two_loops_text)


@pytest.fixture
def data_dir():
    return DATA
