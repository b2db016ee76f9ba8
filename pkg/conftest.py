# conftest.py — shared fronts and handlebodies for the test suite
import pytest

from src.front.diagram import front_from_text
from src.handlebody.model import from_front

UNKNOT = "Lc0 Rc0"
TREFOIL = "Lc0 Lc2 X1 X1 X1 Rc0 Rc0"
HOPF = "Lc0 Lc1 X2 X0 Rc1 Rc0"


@pytest.fixture
def unknot():
    return front_from_text(UNKNOT)


@pytest.fixture
def trefoil():
    return front_from_text(TREFOIL)


@pytest.fixture
def hopf():
    return front_from_text(HOPF, ["a", "b"])


@pytest.fixture
def hopf_body(hopf):
    return from_front(hopf, {"a": -2, "b": -2})


def unknot_body(framing: int, label: str = "u"):
    return from_front(front_from_text(UNKNOT, [label]), {label: framing})
