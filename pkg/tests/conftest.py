# Ensure project root is on sys.path so tests can import top-level modules
import os
import sys

import pytest

PROJECT_ROOT = os.path.dirname(os.path.dirname(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from graded_ring import CurveRing  # noqa: E402


@pytest.fixture
def conic_f3():
    """X^2 + Y^2 = Z^2 over F_3."""
    return CurveRing(3, 2)


@pytest.fixture
def cubic_f5():
    return CurveRing(5, 3)


@pytest.fixture
def cubic_f2():
    return CurveRing(2, 3)


@pytest.fixture
def quartic_f3():
    return CurveRing(3, 4)
