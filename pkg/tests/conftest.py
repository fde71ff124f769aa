from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from fanmoduli import Calibration, cycle_type, simplex_type
from fanmoduli.moduli import cycle_reference, simplex_reference

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def cal(*extra, d=2):
    """Standard calibration with identity prefix and the given extra columns."""
    return Calibration.standard([list(c) for c in extra], d=d)


def rand_q(rng: random.Random, bound: int = 4, maxden: int = 5) -> Fraction:
    q = rng.randint(1, maxden)
    return Fraction(rng.randint(-bound * q, bound * q), q)


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def matrices(rows, cols):
    return st.lists(st.lists(rationals, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@pytest.fixture
def c4():
    return cycle_type(4)


@pytest.fixture
def s2():
    return simplex_type(2)


@pytest.fixture
def h_f0():
    return cycle_reference(4)


@pytest.fixture
def h_p2():
    return simplex_reference(2)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(results):
        ok, detail = results[i]
        terminalreporter.write_line(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
