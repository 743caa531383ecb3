"""Certificate machinery against degree-one graded modules."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlike.errors import PreconditionError
from vlike.intermediate import (StepCandidate, check_difference_identities,
                                falsify, stencil_step, trace_sequence)

nonzero = st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(lambda x: x != 0)


def test_stencil_step_examples():
    x = Fraction(7, 2)
    assert stencil_step(1, 1, 1, x) == 3 * x - 1
    assert stencil_step(1, 1, 0, 0) == 0
    # Formal k = 0 boundary: the stencil degenerates to a second difference.
    assert stencil_step(1, 0, Fraction(5), Fraction(3)) == 2 * 3 - 5
    with pytest.raises(PreconditionError):
        stencil_step(0, 1, 1, 1)


def _consistent_table(a, eps, k, width=8, depth=3):
    row = {-1: Fraction(1), 0: Fraction(1, 2)}
    for i in range(0, width):
        row[i + 1] = stencil_step(a, k, row[i - 1], row[i])
    table = {(0, i): v for i, v in row.items()}
    for l in range(1, depth + 1):
        prev = {i: table[(l - 1, i)] for i in range(-1, width + 2)
                if (l - 1, i) in table}
        for i in sorted(prev):
            if i + 1 in prev:
                table[(l, i)] = (a / (eps * k)) * (prev[i + 1] - prev[i])
    return table


def test_difference_identities_on_consistent_table():
    a, eps, k = Fraction(3), 1, 2
    table = _consistent_table(a, eps, k)
    assert check_difference_identities(a, eps, k, table)


def test_difference_identities_zero_table():
    zero = {(l, i): Fraction(0) for l in range(3) for i in range(5)}
    assert check_difference_identities(Fraction(1), -1, 3, zero)


def test_difference_identities_detect_perturbation():
    a, eps, k = Fraction(3), 1, 2
    table = _consistent_table(a, eps, k)
    bad = dict(table)
    bad[(1, 2)] += 1
    assert not check_difference_identities(a, eps, k, bad)


def test_difference_identities_reject_k_zero():
    with pytest.raises(PreconditionError):
        check_difference_identities(Fraction(1), 1, 0, {})


def test_trace_sequence_examples():
    assert trace_sequence(1, 1, 4).values == (2, 3, 7, 18, 47)
    assert trace_sequence(2, 2, 2).values[1] == 3
    for a in (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-3)):
        for k in (1, 2, 3):
            t = trace_sequence(a, k, 3)
            assert t[1] - 2 == Fraction(k * k) / (a * a)
            assert list(t.values) == sorted(t.values)


@given(nonzero, st.integers(1, 4))
@settings(max_examples=25)
def test_trace_product_identity(a, k):
    t = trace_sequence(a, k, 8)
    for l in range(0, 5):
        for m in range(0, 4):
            assert t[l] * t[m] == t[l + m] + t[abs(l - m)]


def test_falsify_examples():
    cert = falsify(1, 1, 4)
    assert cert.constant == 1
    assert cert.failure_l == 2
    assert cert.residue == 1
    cert2 = falsify(2, 1, 4)
    assert cert2.constant == 4
    assert cert2.failure_l == 2
    assert cert2.residue == Fraction(1, 4)


@given(nonzero, st.integers(1, 5))
@settings(max_examples=25)
def test_falsify_residue_closed_form(a, k):
    cert = falsify(a, k, 4)
    assert cert.failure_l == 2
    assert cert.residue == Fraction(k ** 4) / (Fraction(a) ** 2)
    assert cert.residue != 0


def test_falsify_json_shape():
    payload = falsify(1, 1, 4).to_json()
    assert payload == {"a": "1/1", "k": 1, "C": "1/1", "failure_l": 2,
                       "residue": "1/1"}


def test_candidate_validation():
    StepCandidate(Fraction(2, 3), -1, 4)
    with pytest.raises(PreconditionError):
        StepCandidate(Fraction(0), 1, 1)
    with pytest.raises(PreconditionError):
        StepCandidate(Fraction(1), 2, 1)
    with pytest.raises(PreconditionError):
        StepCandidate(Fraction(1), 1, 0)


def test_trace_sequence_preconditions():
    with pytest.raises(PreconditionError):
        trace_sequence(0, 1, 4)
    with pytest.raises(PreconditionError):
        trace_sequence(1, 0, 4)
    with pytest.raises(PreconditionError):
        trace_sequence(1, 1, 1)
