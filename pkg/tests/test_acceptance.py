"""Acceptance gate: ten criteria, one printed pass/fail line each.

Criteria 1-9 delegate to the verification module so the test suite and
`verify all` agree by construction; criterion 10 checks that two full
report renders are byte-identical.
"""

import pytest

from gammacm import verification


def _report(number: int, result):
    line = f"criterion {number:2d} {result.line()}"
    print(line)
    assert result.passed, line


def test_criterion_01_representation_agreement():
    _report(1, verification.check_representation_agreement())


def test_criterion_02_proposition_suite():
    _report(2, verification.check_proposition_suite())


def test_criterion_03_binet_consistency():
    _report(3, verification.check_binet_consistency())


def test_criterion_04_loggamma_brackets():
    _report(4, verification.check_loggamma_brackets())


def test_criterion_05_enveloping():
    _report(5, verification.check_enveloping())


def test_criterion_06_p_agreement():
    _report(6, verification.check_p_agreement())


def test_criterion_07_cm_theorems():
    _report(7, verification.check_cm_theorems())


def test_criterion_08_kernel_positivity():
    _report(8, verification.check_kernel_positivity())


def test_criterion_09_gamma2_stability():
    _report(9, verification.check_gamma2_stability())


def test_criterion_10_determinism():
    first = verification.render_report(verification.verify_all())
    second = verification.render_report(verification.verify_all())
    passed = first == second
    result = verification.CheckResult(
        "determinism", passed,
        "two full report renders are byte-identical" if passed
        else "renders differ")
    _report(10, result)
