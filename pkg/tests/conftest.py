from fractions import Fraction

import pytest

from qmcurrents.algebra import ConjPolynomial
from qmcurrents.exact import ExactValue, GaussianRational
from qmcurrents.model import assemble


def pi_i(c) -> ExactValue:
    """``c * pi * i`` for rational ``c``."""
    return ExactValue.scalar(GaussianRational(0, Fraction(c)), 1)


@pytest.fixture
def golden():
    omega, section = assemble(1, (1,), (1,), ConjPolynomial.constant(1), (2,), None, (1,))
    return omega, section


ACCEPTANCE_LINES = []


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
