import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from forge.enumeration import enumerate_semigroups  # noqa: E402


@pytest.fixture(scope="session")
def catalog_iso():
    return enumerate_semigroups(4, "iso")


@pytest.fixture(scope="session")
def catalog_anti():
    return enumerate_semigroups(4, "anti")


@pytest.fixture(scope="session")
def small_semigroups(catalog_iso):
    return list(catalog_iso)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
