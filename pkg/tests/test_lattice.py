"""Lattice, bracket, and grading tests: all equalities exact."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlike.lattice import (STANDARD_BASIS, ZBasis, bracket, bracket_in_basis,
                           d_gen, det2, element, h_of, is_z_basis, render,
                           vec, z_degree)

coords = st.integers(min_value=-6, max_value=6)
vectors = st.builds(vec, coords, coords)
scalars = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def elements(draw):
    terms = draw(st.dictionaries(vectors, scalars, max_size=3))
    c1 = draw(scalars)
    c2 = draw(scalars)
    return element(terms, c1, c2)


def test_det2_examples():
    assert det2(vec(1, 0), vec(0, 1)) == 1
    assert det2(vec(1, 2), vec(-1, -2)) == 0
    assert det2(vec(3, 1), vec(2, 1)) == 1


def test_is_z_basis_examples():
    assert is_z_basis(vec(1, 0), vec(0, 1))
    assert not is_z_basis(vec(2, 0), vec(0, 1))
    assert is_z_basis(vec(3, 1), vec(2, 1))


def test_basis_coordinates_roundtrip():
    basis = ZBasis(vec(3, 1), vec(2, 1))
    for m in (vec(0, 0), vec(1, 0), vec(-4, 7), vec(5, 5)):
        c1, c2 = basis.coordinates(m)
        assert basis.combine(c1, c2) == m


def test_zbasis_rejects_non_unimodular():
    with pytest.raises(ValueError):
        ZBasis(vec(2, 0), vec(0, 1))


def test_h_of_examples():
    assert h_of(vec(1, 0)) == element({}, c1=1)
    assert h_of(vec(0, 0)).is_zero()
    assert h_of(vec(2, -3)) == element({}, c1=2, c2=-3)


def test_bracket_examples():
    assert bracket(d_gen(vec(1, 0)), d_gen(vec(0, 1))) == -1 * d_gen(vec(1, 1))
    assert bracket(d_gen(vec(2, 3)), d_gen(vec(-2, -3))) == element({}, c1=2, c2=3)
    x = d_gen(vec(4, -5))
    assert bracket(x, x).is_zero()


def test_d_of_zero_vector_is_zero():
    assert d_gen(vec(0, 0)).is_zero()


def test_central_generators_are_central():
    c = element({}, c1=1, c2=-2)
    x = d_gen(vec(3, 1)) + element({}, c1=5)
    assert bracket(c, x).is_zero()
    assert bracket(x, c).is_zero()


@given(elements(), elements())
def test_bracket_antisymmetry(x, y):
    assert (bracket(x, y) + bracket(y, x)).is_zero()


@given(elements(), elements(), elements())
@settings(max_examples=40)
def test_bracket_jacobi(x, y, z):
    total = (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x))
             + bracket(z, bracket(x, y)))
    assert total.is_zero()


@given(vectors, vectors)
def test_bracket_grading(m, n):
    x, y = d_gen(m), d_gen(n)
    if x.is_zero() or y.is_zero():
        return
    result = bracket(x, y)
    if result.is_zero():
        return
    assert z_degree(result) == z_degree(x) + z_degree(y)


ALL_SMALL_BASES = [
    ZBasis(vec(a, b), vec(c, d))
    for a in range(-3, 4) for b in range(-3, 4)
    for c in range(-3, 4) for d in range(-3, 4)
    if a * d - b * c in (1, -1)
]


def unimodular_bases():
    return st.sampled_from(ALL_SMALL_BASES)


@given(unimodular_bases(), st.integers(-4, 4), st.integers(-4, 4),
       st.integers(-4, 4), st.integers(-4, 4))
def test_bracket_in_basis_matches_direct(basis, m1, m2, n1, n2):
    via_coords = bracket_in_basis((m1, m2), (n1, n2), basis)
    direct = bracket(d_gen(basis.combine(m1, m2)), d_gen(basis.combine(n1, n2)))
    assert via_coords == direct


def test_bracket_in_basis_examples():
    basis = ZBasis(vec(1, 1), vec(0, 1))
    assert bracket_in_basis((1, 0), (0, 1), basis) == -1 * d_gen(vec(1, 2))
    std = STANDARD_BASIS
    assert bracket_in_basis((1, 0), (-1, 0), std) == h_of(std.b1)
    assert bracket_in_basis((1, 1), (2, 2), std).is_zero()


def test_z_degree_examples():
    assert z_degree(d_gen(vec(2, 5))) == 2
    assert z_degree(element({}, c1=1)) == 0
    assert z_degree(d_gen(vec(1, 0)) + d_gen(vec(2, 0))) is None
    with pytest.raises(ValueError):
        z_degree(element({}))


def test_generation_from_three_elements():
    # The three seed directions reach every generator in the box through
    # iterated brackets with nonzero structure constants.
    seeds = {vec(1, 0), vec(0, 1), vec(-1, -1)}
    reached = set(seeds)
    for _ in range(8):
        new = set()
        for m in reached:
            for n in reached:
                s = m + n
                if det2(m, n) != 0 and not s.is_zero() and s not in reached:
                    if abs(s.x1) <= 6 and abs(s.x2) <= 6:
                        new.add(s)
        if not new:
            break
        reached |= new
    box = {vec(a, b) for a in range(-4, 5) for b in range(-4, 5)} - {vec(0, 0)}
    assert box <= reached


def test_render_examples():
    assert render(bracket(d_gen(vec(1, 0)), d_gen(vec(0, 1)))) == "-1*D(1,1)"
    assert render(element({}, c1=2, c2=3)) == "2*c1 + 3*c2"
    assert render(element({})) == "0"
    assert render(element({vec(1, 2): Fraction(5, 3)})) == "5/3*D(1,2)"
