import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cohnloc.errors import GroupMismatch, NotAUnit, NotPGroup, ParseError, RingMismatch
from cohnloc.groupring import (
    GroupRingElement,
    GroupRingMatrix,
    augmentation,
    format_element,
    multiply,
    omega_element,
    parse_element,
    pgroup_local_invert,
    regular_representation,
)
from cohnloc.groups import cyclic_group, group_from_permutations
from cohnloc.rings import ZZ, LocalRing
from cohnloc.rings.linalg import matmul
from cohnloc.suites import PGROUP_BATTERY, builtin_group, random_local_element

Z2 = builtin_group("Z2")
S3 = builtin_group("S3")


def elem(G, coeffs, ring=ZZ):
    return GroupRingElement(G, coeffs, ring)


def test_augmentation_examples():
    assert augmentation(GroupRingElement.basis(S3, 4)) == 1
    assert augmentation(elem(S3, {0: 2, 1: -1})) == 1
    for name, p in PGROUP_BATTERY:
        assert augmentation(omega_element(builtin_group(name))) == 0


def test_multiply_examples():
    e = elem(S3, {0: 3, 2: -1, 5: 7})
    assert multiply(GroupRingElement.one(S3), e) == e
    x = elem(Z2, {0: 1, 1: -1})
    assert x * x == elem(Z2, {0: 2, 1: -2})
    t, c = GroupRingElement.basis(S3, 1), GroupRingElement.basis(S3, 2)
    assert t * c != c * t


def test_mixed_groups_and_rings_are_errors():
    with pytest.raises(GroupMismatch):
        GroupRingElement.one(S3) + GroupRingElement.one(Z2)
    with pytest.raises(RingMismatch):
        GroupRingElement.one(Z2) + GroupRingElement.one(Z2, LocalRing(2))


def test_omega_examples():
    assert omega_element(Z2) == elem(Z2, {0: 1, 1: -1})
    Z3 = builtin_group("Z3")
    assert omega_element(Z3) == elem(Z3, {0: 2, 1: -1, 2: -1})
    T = group_from_permutations(1, [])
    assert omega_element(T) == GroupRingElement.zero(T)
    with pytest.raises(NotPGroup):
        omega_element(S3)


@pytest.mark.parametrize("name,p", PGROUP_BATTERY)
def test_omega_square(name, p):
    P = builtin_group(name)
    w = omega_element(P)
    assert w * w == w * P.order


def test_regular_representation_examples():
    assert regular_representation(GroupRingElement.one(S3)) == [
        [int(i == j) for j in range(6)] for i in range(6)]
    assert regular_representation(GroupRingElement.basis(Z2, 1)) == [[0, 1], [1, 0]]
    R = LocalRing(2)
    M = regular_representation(elem(Z2, {0: R(2), 1: R(-1)}, R))
    assert [[x.value for x in row] for row in M] == [[2, -1], [-1, 2]]


def random_elements(G, rng, count, lo=-3, hi=3):
    return [elem(G, {g: rng.randint(lo, hi) for g in range(G.order)}) for _ in range(count)]


@pytest.mark.parametrize("name", ["S3", "A4", "Q8", "D5", "Z6"])
def test_augmentation_and_regular_rep_are_homomorphisms(name):
    G = builtin_group(name)
    rng = random.Random(7)
    for _ in range(10):
        a, b, c = random_elements(G, rng, 3)
        assert augmentation(a * b) == augmentation(a) * augmentation(b)
        assert augmentation(a + b) == augmentation(a) + augmentation(b)
        assert regular_representation(a * b) == matmul(regular_representation(a),
                                                       regular_representation(b))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        # faithful: the first column of L(a) is a itself
        col = [row[0] for row in regular_representation(a)]
        assert col == [a.coeffs.get(g, 0) for g in range(G.order)]


def test_local_invert_examples():
    R = LocalRing(2)
    inv = pgroup_local_invert(elem(Z2, {0: R(2), 1: R(-1)}, R))
    assert {g: c.value for g, c in inv.terms} == {0: Fraction(2, 3), 1: Fraction(1, 3)}
    one = GroupRingElement.one(Z2, R)
    assert pgroup_local_invert(one) == one
    with pytest.raises(NotAUnit):
        pgroup_local_invert(elem(Z2, {0: R(1), 1: R(1)}, R))


def test_local_invert_requires_p_group():
    with pytest.raises(NotPGroup):
        pgroup_local_invert(GroupRingElement.one(S3, LocalRing(2)))


@pytest.mark.parametrize("name,p", PGROUP_BATTERY)
def test_local_invert_battery(name, p):
    P = builtin_group(name)
    rng = random.Random(p * 1000 + P.order)
    one = GroupRingElement.one(P, LocalRing(p))
    for _ in range(10):
        e = random_local_element(P, p, rng, unit=True)
        inv = pgroup_local_invert(e)
        assert e * inv == one and inv * e == one
        assert all(c.value.denominator % p for _, c in inv.terms)
        with pytest.raises(NotAUnit):
            pgroup_local_invert(random_local_element(P, p, rng, unit=False))


@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6))
def test_format_round_trip(cs):
    e = elem(S3, dict(enumerate(cs)))
    assert parse_element(format_element(e), S3) == e
    R = LocalRing(5)
    f = elem(S3, {g: R(Fraction(c, 3)) for g, c in enumerate(cs)}, R)
    assert parse_element(format_element(f), S3, R) == f


def test_format_examples():
    assert format_element(elem(S3, {0: 2, 1: -1})) == "(2)*g0 + (-1)*g1"
    assert format_element(GroupRingElement.zero(S3)) == "0"
    with pytest.raises(ParseError):
        parse_element("2*g0", S3)
    with pytest.raises(ParseError):
        parse_element("(1)*g9", S3)


def test_matrix_arithmetic():
    A = GroupRingMatrix(S3, [[elem(S3, {0: 2, 1: -1}), 0], [0, 1]])
    assert A @ GroupRingMatrix.identity(S3, 2) == A
    assert A.augmentation() == [[1, 0], [0, 1]]
    Z = cyclic_group(2)
    assert GroupRingMatrix.zeros(Z, 2, 3).is_zero()
