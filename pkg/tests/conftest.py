"""Shared test helpers and the acceptance-criteria summary hook.

The acceptance tests in ``test_acceptance.py`` record one verdict per
criterion through :func:`record_criterion`; after the run, the terminal
summary prints one ``CRITERION n: PASS/FAIL`` line per recorded verdict so
the acceptance status is readable at a glance regardless of how the
individual tests fared.
"""

from __future__ import annotations

from qsylv import QMatrix, Quaternion

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[number] = (passed, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"CRITERION {number}: {verdict} - {detail}")


# -- assertion helpers shared across test modules --------------------------------


def q(w: float = 0.0, x: float = 0.0, y: float = 0.0, z: float = 0.0) -> Quaternion:
    return Quaternion(w, x, y, z)


def qm(rows) -> QMatrix:
    return QMatrix.from_rows([list(r) for r in rows])


def max_entry_diff(a: QMatrix, b: QMatrix) -> float:
    delta = a - b
    return max(abs(entry) for row in delta.entries for entry in row)


def assert_matrix_close(a: QMatrix, b: QMatrix, tol: float = 1e-12) -> None:
    assert a.shape == b.shape, f"shape {a.shape} != {b.shape}"
    diff = max_entry_diff(a, b)
    assert diff <= tol, f"max entry deviation {diff:.3e} > {tol:.1e}"
