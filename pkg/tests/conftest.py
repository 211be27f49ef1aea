import time
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from scoremetric import make_space, make_weights
from scoremetric.base_space import DyadicScalar, DyadicVector

ABC = {"kind": "finite", "points": ["a", "b", "c"],
       "distances": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]}


@pytest.fixture(scope="session")
def interval():
    return make_space("interval")


@pytest.fixture(scope="session")
def euclid2():
    return make_space({"kind": "euclid", "dim": 2})


@pytest.fixture(scope="session")
def abc():
    return make_space(ABC)


@pytest.fixture(scope="session")
def geo():
    return make_weights()


@pytest.fixture(scope="session")
def pser():
    return make_weights({"kind": "p_series", "p": 2, "c": "1"})


def dyadics(max_level=12):
    return st.integers(0, max_level).flatmap(
        lambda k: st.integers(0, 1 << k).map(lambda n: DyadicScalar.of(n, k)))


def vectors(dim=2, max_level=10):
    return st.tuples(*[dyadics(max_level)] * dim).map(DyadicVector)


def q(text):
    return Fraction(text)


# acceptance bookkeeping: the acceptance tests run last so the wall-clock
# criterion sees the whole suite, and each criterion leaves one summary line

def pytest_sessionstart(session):
    session.config._started = time.perf_counter()
    session.config._criteria = {}


def pytest_collection_modifyitems(config, items):
    items.sort(key=lambda it: it.get_closest_marker("acceptance") is not None)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    crit = getattr(config, "_criteria", {})
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(crit):
        ok, detail = crit[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def record(request):
    def _record(k, ok, detail=""):
        request.config._criteria[k] = (bool(ok), detail)
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return _record
