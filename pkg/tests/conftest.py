import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from nqd import corpus  # noqa: E402
from nqd.cdg import dualize  # noqa: E402


@functools.lru_cache(maxsize=None)
def presentation(name):
    return corpus.presentation(name)


@functools.lru_cache(maxsize=None)
def dual(name):
    return dualize(presentation(name))


@functools.lru_cache(maxsize=None)
def connection(name):
    return corpus.connection(name)


@pytest.fixture
def heis():
    return presentation("u_heis3")


@pytest.fixture
def weyl_dual():
    return dual("weyl")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
