import functools
import random
import sys
from pathlib import Path

import pytest

from homleib.catalog import SUITE, suite_representations
from homleib.cochains import coboundary_matrix, cochain_space
from homleib.fields import QQ

sys.path.insert(0, str(Path(__file__).parent))

SUITE_NAMES = [e.name for e in SUITE]
BINARY = [e.name for e in SUITE if e.build(QQ).arity == 2]
TERNARY = [e.name for e in SUITE if e.build(QQ).arity == 3]


@functools.lru_cache(maxsize=None)
def suite_pair(name: str, rep_index: int):
    """``(A, R)`` for the suite algebra and its adjoint (0) or extra (1) representation."""
    A, reps = suite_representations(name)
    return A, reps[rep_index][1]


@functools.lru_cache(maxsize=None)
def complex_data(name: str, rep_index: int, top: int = 4):
    """Spaces and coboundary matrices ``δ^1..δ^top``, shared between test modules."""
    A, R = suite_pair(name, rep_index)
    spaces: dict = {}
    mats = {p: coboundary_matrix(A, R, p, spaces) for p in range(1, top + 1)}
    for p in range(1, top + 2):
        cochain_space(A, R, p, spaces)
    return spaces, mats


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(params=SUITE_NAMES)
def suite_name(request):
    return request.param
