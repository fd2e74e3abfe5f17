from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from agdist.cab import elliptic_curve, hermitian_curve  # noqa: E402
from agdist.ff import FieldCtx  # noqa: E402


@pytest.fixture(scope="session")
def f9():
    """F_9 / F_3 with alpha^2 = alpha + 1."""
    return FieldCtx(3, 1, 2, modulus_qm=(2, 2, 1))


@pytest.fixture(scope="session")
def f729():
    return FieldCtx(3, 1, 6)


@pytest.fixture(scope="session")
def ell3():
    return elliptic_curve(FieldCtx(3, 1, 1))


@pytest.fixture(scope="session")
def ell9():
    return elliptic_curve(FieldCtx(3, 1, 2))


@pytest.fixture(scope="session")
def ell729(f729):
    E = elliptic_curve(f729)
    E.validate()
    return E


@pytest.fixture(scope="session")
def herm4():
    return hermitian_curve(FieldCtx(2, 1, 2))


@pytest.fixture(scope="session")
def herm16():
    return hermitian_curve(FieldCtx(2, 1, 4))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record a one-line verdict for an acceptance criterion."""

    def record(num: int, ok: bool, detail: str) -> bool:
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
