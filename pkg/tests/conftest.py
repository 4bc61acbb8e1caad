import sys

import pytest

from gammamon.corpus import corpus_instances


@pytest.fixture(scope="session")
def corpus():
    """Every monoid of order <= 5 with its cyclic automorphism actions."""
    return corpus_instances(5)


@pytest.fixture(scope="session")
def small_corpus():
    return corpus_instances(4)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
