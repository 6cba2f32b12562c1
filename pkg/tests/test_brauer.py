from __future__ import annotations

import itertools
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint

import oracles
from strongiso.brauer import (
    GenericBrauerClass,
    TypeATorsorData,
    exponent,
    index,
    index_reduction,
    primary_decomposition,
    reduction_term,
    torsor_a_is_anisotropic,
    torsor_a_lifts,
)
from strongiso.errors import UsageError
from strongiso.lattice import CentralSubgroupSpec, character_lattice_of, residue_image

classes = st.lists(st.integers(1, 12), min_size=1, max_size=4).flatmap(
    lambda mods: st.builds(
        GenericBrauerClass,
        st.just(tuple(mods)),
        st.tuples(*[st.integers(-50, 50) for _ in mods]),
    )
)


def order_by_repeated_addition(c: GenericBrauerClass) -> int:
    acc, t = c, 1
    while not acc.is_zero():
        acc, t = acc + c, t + 1
    return t


def test_index_examples():
    assert index(GenericBrauerClass((4,), (1,))) == 4
    assert index(GenericBrauerClass((4,), (2,))) == 2
    assert index(GenericBrauerClass((2, 4), (1, 3))) == 8
    assert exponent(GenericBrauerClass((2, 4), (1, 3))) == 4
    assert index(GenericBrauerClass.zero((3, 5))) == 1


def test_class_arithmetic():
    a = GenericBrauerClass((4, 6), (1, 5))
    b = GenericBrauerClass((4, 6), (3, 2))
    assert (a + b).coefficients == (0, 1)
    assert (a - a).is_zero()
    assert (-a).coefficients == (3, 1)
    assert (3 * a).coefficients == (3, 3)
    with pytest.raises(UsageError):
        a + GenericBrauerClass((4, 5), (1, 1))
    with pytest.raises(UsageError):
        GenericBrauerClass((4, 6), (1,))
    with pytest.raises(UsageError):
        GenericBrauerClass((0,), (1,))


@settings(max_examples=300, deadline=None)
@given(classes)
def test_exponent_divides_index(c):
    assert index(c) % exponent(c) == 0
    assert exponent(c) == order_by_repeated_addition(c)
    assert (index(c) == 1) == c.is_zero()
    assert index(-c) == index(c)


@settings(max_examples=300, deadline=None)
@given(classes)
def test_index_divides_degree_product(c):
    assert prod(c.moduli) % index(c) == 0


def test_reduction_term_formula():
    moduli = (4, 6, 9)
    for k in itertools.product(range(4), range(6), range(9)):
        for j in (1, 2, 3):
            assert reduction_term(moduli, k, j) == oracles.index_term(moduli, k, j)


def test_index_reduction_trivial_residues():
    # splitting nothing leaves ind(A_j) = n_j
    moduli = (3, 4)
    res = residue_image(
        character_lattice_of(CentralSubgroupSpec(2, torsion_generators=((3, (1, 0)), (4, (0, 1))))),
        moduli,
    )
    assert set(res) == {(0, 0)}
    assert index_reduction(moduli, res, 1) == 3
    assert index_reduction(moduli, res, 2) == 4


def test_index_reduction_everything_split():
    moduli = (4, 6)
    res = residue_image(character_lattice_of(CentralSubgroupSpec(2)), moduli)
    assert len(res) == 24
    assert index_reduction(moduli, res, 1) == 1
    assert index_reduction(moduli, res, 2) == 1


def test_index_reduction_bad_input():
    moduli = (2, 4)
    res = residue_image(character_lattice_of(CentralSubgroupSpec(2)), moduli)
    with pytest.raises(UsageError):
        index_reduction(moduli, res, 0)
    with pytest.raises(UsageError):
        index_reduction(moduli, res, 3)
    with pytest.raises(UsageError):
        index_reduction((2, 8), res, 1)


def test_index_reduction_matches_raw_gcd():
    for moduli in [(4,), (2, 4), (6, 4)]:
        for rows in oracles.subgroup_lattices(moduli):
            res = residue_image(
                character_lattice_of(oracles.spec_with_character_lattice(rows)), moduli
            )
            for j in range(1, len(moduli) + 1):
                raw = 0
                for k in oracles.subgroup_elements(rows, moduli):
                    raw = gcd(raw, oracles.index_term(moduli, k, j))
                assert index_reduction(moduli, res, j) == raw


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**6))
def test_primary_decomposition_matches_sympy(n):
    assert primary_decomposition(n) == sorted(factorint(n).items())
    assert prod(p**e for p, e in primary_decomposition(n)) == n


def test_primary_decomposition_rejects_nonpositive():
    with pytest.raises(ValueError):
        primary_decomposition(0)


# -- type A torsors ----------------------------------------------------------


def test_torsor_anisotropy():
    # A of degree 4 over split D: anisotropic iff A is a division algebra
    assert torsor_a_is_anisotropic(TypeATorsorData(n=4, ind_d=1, ind_a=4))
    assert not torsor_a_is_anisotropic(TypeATorsorData(n=4, ind_d=1, ind_a=2))
    # n = 1 torsors are always anisotropic
    assert torsor_a_is_anisotropic(TypeATorsorData(n=1, ind_d=3, ind_a=3))
    assert torsor_a_is_anisotropic(TypeATorsorData(n=2, ind_d=2, ind_a=4))
    assert not torsor_a_is_anisotropic(TypeATorsorData(n=2, ind_d=2, ind_a=2))


def test_torsor_data_validation():
    with pytest.raises(UsageError):
        TypeATorsorData(n=2, ind_d=1, ind_a=3)
    with pytest.raises(UsageError):
        TypeATorsorData(n=2, ind_d=1, ind_a=2, d=3)
    with pytest.raises(UsageError):
        TypeATorsorData(n=0, ind_d=1, ind_a=1)


def test_torsor_lifting():
    moduli = (4, 4)
    a = GenericBrauerClass(moduli, (1, 0))
    d = GenericBrauerClass(moduli, (0, 0))
    assert torsor_a_lifts(TypeATorsorData(n=4, ind_d=1, ind_a=4, d=4), a, d)
    assert not torsor_a_lifts(TypeATorsorData(n=4, ind_d=1, ind_a=4, d=2), a, d)
    with pytest.raises(UsageError):
        torsor_a_lifts(TypeATorsorData(n=4, ind_d=1, ind_a=2, d=2), a, d)

