"""The bundled worked examples must reproduce their pinned values end to end."""

from __future__ import annotations

import pytest

from qsylv import PairSolution, check_consistency, fro_norm, residual
from qsylv.golden import (
    GOLDEN_TOL,
    example_pair,
    example_star,
    max_abs_diff,
    selftest,
)


def test_selftest_battery_is_all_green():
    rows = selftest()
    failures = [(name, detail) for name, ok, detail in rows if not ok]
    assert not failures, failures
    assert len(rows) >= 20  # both examples exercise solver + intermediate checks


def test_pair_expected_values_satisfy_the_equation():
    ex = example_pair()
    sol = PairSolution(ex.expected_x1, ex.expected_x2)
    assert residual(ex.problem, sol) <= 1e-12
    assert ex.expected_consistent
    assert check_consistency(ex.problem).consistent


def test_star_instance_is_inconsistent_by_exact_margin():
    ex = example_star()
    assert not ex.expected_consistent
    report = check_consistency(ex.problem)
    assert not report.consistent
    gate = report.check("r_a_rhs_r_a")
    assert gate is not None and not gate.passed
    # the kernel-side projection of the right-hand side has norm exactly 3/2
    assert gate.residual == pytest.approx(1.5, abs=1e-12)
    # and the pinned representative misses the equation by exactly that much
    sol = PairSolution(ex.expected_x1)
    assert residual(ex.problem, sol) == pytest.approx(1.5, abs=1e-12)


def test_examples_have_distinct_small_rational_grids():
    # expected entries sit on coarse binary-rational grids: quadruple each
    # component and it must be within float-exact distance of an integer
    for example in (example_pair(), example_star()):
        mats = [example.expected_x1]
        if example.expected_x2 is not None:
            mats.append(example.expected_x2)
        for mat in mats:
            for row in mat.entries:
                for entry in row:
                    for comp in (entry.w, entry.x, entry.y, entry.z):
                        assert abs(comp * 8 - round(comp * 8)) <= 1e-12
