from __future__ import annotations

import pytest

from qcalg.quiverlab import compile_truncation, parse_spec
from qcalg.quiverlab.registry import EX1, EX2


@pytest.fixture(scope="session")
def ex1_spec():
    return parse_spec(EX1)


@pytest.fixture(scope="session")
def ex2_spec():
    return parse_spec(EX2)


@pytest.fixture(scope="session")
def ex1_n1(ex1_spec):
    return compile_truncation(ex1_spec, 1)


@pytest.fixture(scope="session")
def ex1_n2(ex1_spec):
    return compile_truncation(ex1_spec, 2)


@pytest.fixture(scope="session")
def ex1_n3(ex1_spec):
    return compile_truncation(ex1_spec, 3)


@pytest.fixture(scope="session")
def ex2_n3(ex2_spec):
    return compile_truncation(ex2_spec, 3)
