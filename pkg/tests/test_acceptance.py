"""Exit-criteria suite: every criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail line
per criterion; the same checks back the ``paper`` CLI subcommand.
"""

import pytest

from higherar import acceptance


@pytest.fixture(scope="module")
def ctx():
    return acceptance.Context()


def _report(result):
    budget = "-" if result.budget is None else f"{result.budget:.0f}s"
    print(f"\n[{result.key}] {'PASS' if result.passed else 'FAIL'} "
          f"({result.elapsed:.2f}s, budget {budget}): {result.name}")
    assert result.passed, result.details
    if result.budget is not None:
        assert result.elapsed < result.budget, (
            f"{result.key} exceeded its budget: {result.elapsed:.1f}s")


def test_criterion_1_golden_layers(ctx):
    _report(acceptance.criterion_1(ctx))


def test_criterion_2_completeness_verdicts(ctx):
    _report(acceptance.criterion_2(ctx))


def test_criterion_3_cones_complete_one_level_up(ctx):
    _report(acceptance.criterion_3(ctx))


def test_criterion_4_tower_cross_validation(ctx):
    _report(acceptance.criterion_4(ctx))


def test_criterion_5_dimension_ladder(ctx):
    _report(acceptance.criterion_5(ctx))


def test_criterion_6_oracle_equivalences(ctx):
    _report(acceptance.criterion_6(ctx))


def test_criterion_7_quasi_inverse_bijection(ctx):
    _report(acceptance.criterion_7(ctx))


def test_criterion_8_derived_window(ctx):
    _report(acceptance.criterion_8(ctx))


def test_criterion_9_determinism(ctx):
    _report(acceptance.criterion_9(ctx))
