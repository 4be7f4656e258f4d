"""Acceptance criteria, one test per criterion, all at tolerance zero.

Every check is an exact algebraic identity, verified symbolically and/or
against the independent tensor-power oracle.  Run with ``pytest -v -s
tests/test_acceptance.py`` to see one line per criterion.
"""

from contextlib import contextmanager

import pytest

from qschur.algebra import (
    EKF,
    FKE,
    Context,
    Element,
)
from qschur.laurent import LaurentPoly, gauss_binomial, quantum_int
from qschur.oracle import (
    CoproductCheckFailed,
    build_rep,
    matrix_of_element,
    span_rank,
)
from qschur.suites import run_suite, schur_dimension

ONE = LaurentPoly.one()
V = LaurentPoly.v


@contextmanager
def criterion(number: int, name: str):
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({name}): FAIL")
        raise
    print(f"criterion {number} ({name}): PASS")


def _failures(report: dict) -> list:
    return [c for c in report["checks"] if not c["pass"]]


def test_criterion_1_dimension_reproduction():
    expected = {0: 1, 1: 4, 2: 10, 3: 20, 4: 35, 5: 56, 6: 84}
    with criterion(1, "dimension reproduction"):
        for d in range(7):
            ctx = Context(d)
            rep = build_rep(d)
            basis = ctx.monomials(EKF)
            assert len(basis) == expected[d] == schur_dimension(d)
            mats = [
                matrix_of_element(rep, Element(ctx, EKF, {m: ONE})) for m in basis
            ]
            assert span_rank(mats) == expected[d], f"d={d}"


def test_criterion_2_presentation_relations():
    with criterion(2, "presentation relations and minimal polynomials"):
        for d in range(7):
            report = run_suite("relations", d)
            assert report["pass"], (d, _failures(report)[:3])


def test_criterion_3_idempotent_decomposition():
    with criterion(3, "orthogonal idempotent decomposition"):
        for d in range(11):
            report = run_suite("idempotents", d)
            assert report["pass"], (d, _failures(report)[:3])


def test_criterion_4_reduction_formulas():
    with criterion(4, "reduction formulas in both orientations"):
        for d in range(6):
            report = run_suite("reduction", d)
            assert report["pass"], (d, _failures(report)[:3])


def test_criterion_5_multiplication_soundness():
    with criterion(5, "multiplication soundness and integrality"):
        for d in range(5):
            report = run_suite("oracle", d)
            assert report["pass"], (d, _failures(report)[:3])


def test_criterion_6_basis_change():
    with criterion(6, "K1-binomial basis change"):
        for d in range(9):
            report = run_suite("basis", d)
            assert report["pass"], (d, _failures(report)[:3])


def test_criterion_7_lusztig_identity_suite():
    with criterion(7, "divided-power and K-binomial identity suite"):
        for d in range(5):
            report = run_suite("lusztig", d)
            assert report["pass"], (d, _failures(report)[:3])


def test_criterion_8_quantum_combinatorics_kernel():
    with criterion(8, "quantum combinatorics kernel"):
        # [r+s] = v^-s [r] + v^r [s]
        for r in range(-10, 11):
            for s in range(-10, 11):
                assert quantum_int(r + s) == V(-s) * quantum_int(r) + V(r) * quantum_int(s)
        # [r+1; s] = v^-s [r; s] + v^(r-s+1) [r; s-1]
        for r in range(-10, 11):
            for s in range(0, 11):
                assert gauss_binomial(r + 1, s) == V(-s) * gauss_binomial(r, s) + V(
                    r - s + 1
                ) * gauss_binomial(r, s - 1)
        # classical limit against an integer Pascal triangle
        triangle = [[1]]
        for n in range(1, 13):
            prev = triangle[-1]
            triangle.append(
                [1] + [prev[i] + prev[i + 1] for i in range(n - 1)] + [1]
            )
        for r in range(13):
            for s in range(r + 1):
                assert gauss_binomial(r, s).evaluate(1) == triangle[r][s]


def test_criterion_9_negative_controls():
    with criterion(9, "negative controls catch injected faults"):
        # Disabling the straightening step must break the dimension and
        # reduction suites.
        for d in (2, 3):
            assert not run_suite("basis", d, fault="skip-reduction")["pass"]
            assert not run_suite("reduction", d, fault="skip-reduction")["pass"]
        # A mutated comultiplication must break the presentation relations.
        for d in (2, 3):
            assert not run_suite("relations", d, fault="broken-coproduct")["pass"]
        # The mutated convention cannot even pass the build-time self-check.
        with pytest.raises(CoproductCheckFailed):
            build_rep(3, convention="broken")
        # The healthy build passes the same suites (the controls are not
        # vacuous).
        for name in ("basis", "reduction", "relations"):
            assert run_suite(name, 3)["pass"]
