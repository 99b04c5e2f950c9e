from __future__ import annotations

import random

import pytest

from graevkit.fixtures import comb_space
from graevkit.space import star, yamada
from graevkit.words import parse_word, reduce


@pytest.fixture(scope="session")
def comb():
    return comb_space()


@pytest.fixture(scope="session")
def rho(comb):
    return yamada(comb)


@pytest.fixture(scope="session")
def rho_star(rho):
    return star(rho, "k")


@pytest.fixture
def W(comb):
    def parse(text):
        return reduce(parse_word(text, comb.points))

    return parse


@pytest.fixture
def rng():
    return random.Random(20240601)



ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
