from pathlib import Path

import pytest

from toricmdp.catalog import hirzebruch, projective_space
from toricmdp.cli import parse_fan_file

FANS = Path(__file__).resolve().parent.parent / "demos" / "fans"


def load(name):
    return parse_fan_file((FANS / name).read_text()).to_fan()


@pytest.fixture
def p1():
    return load("p1.fan")


@pytest.fixture
def f1():
    return load("f1.fan")


@pytest.fixture
def p4():
    return load("p4.fan")


@pytest.fixture
def f3():
    return load("f3.fan")


# fans that satisfy every hypothesis of the certificate
GOOD_FANS = {
    "P1": lambda: projective_space(1),
    "P2": lambda: projective_space(2),
    "P3": lambda: projective_space(3),
    "P4": lambda: projective_space(4),
    "F0": lambda: hirzebruch(0),
    "F1": lambda: hirzebruch(1),
}
