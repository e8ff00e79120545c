"""Shared oracles: independent (slow, obvious) reimplementations used to check the library."""
import random
from fractions import Fraction

import pytest


def cofactor_det(rows):
    """Laplace expansion along the first row."""
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def bracket_oracle(columns, labels):
    """Minor on the given 1-based column labels, in the given order."""
    cols = [columns[i - 1] for i in labels]
    return cofactor_det([[c[i] for c in cols] for i in range(len(cols))])


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def proportional(u, v):
    """Projective equality of two nonzero vectors."""
    if not any(u) or not any(v):
        return False
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


def random_columns(rng, r, n, lo=-9, hi=9):
    return [tuple(Fraction(rng.randint(lo, hi)) for _ in range(r)) for _ in range(n)]


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    rows = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
                rows.append((rep.nodeid.split("::")[-1], "PASS" if key == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(rows, key=lambda r: int(r[0].split("_")[2])):
            terminalreporter.write_line(f"{verdict}  {name}")
