from fractions import Fraction

import pytest

from multipoint.graded import (
    GradedAlgebraError,
    GradedRing,
    NonUnitalClassError,
    TensorClass,
    cross,
    diagonal_pullback,
    signature_class,
)
from multipoint.models import truncated_polynomial_ring
from multipoint.partitions import SetPartition, all_partitions


@pytest.fixture
def cp2():
    return truncated_polynomial_ring("h", 2, name="CP2")


@pytest.fixture
def cp4():
    return truncated_polynomial_ring("h", 4, name="CP4")


def test_ring_axioms_hold(cp2, cp4):
    assert cp2.check_axioms() == []
    assert cp4.check_axioms() == []


def test_ring_axioms_catch_bad_degree():
    ring = GradedRing(["1", "x"], [0, 2], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 1): {1: 1}},
                      {1: 1})
    issues = ring.check_axioms()
    assert any("degree" in msg for msg in issues)


def test_ring_rejects_odd_degree():
    with pytest.raises(GradedAlgebraError):
        GradedRing(["1", "x"], [0, 3], {(0, 0): {0: 1}}, {})


def test_truncation(cp2):
    h = cp2.basis_class(1)
    assert (h * h * h).is_zero()
    assert h ** 2 == cp2.basis_class(2)


def test_unit_and_scalars(cp2):
    h = cp2.basis_class(1)
    assert cp2.unit() * h == h
    assert 2 * h == h + h
    assert (h - h).is_zero()
    assert Fraction(1, 2) * (h + h) == h


def test_degree_parts(cp2):
    x = cp2.unit() + 3 * cp2.basis_class(1) + 5 * cp2.basis_class(2)
    assert x.degree_part(2) == 3 * cp2.basis_class(1)
    assert sorted(x.homogeneous_parts()) == [0, 2, 4]
    assert x.select_degrees([2, 2]) == 9 * cp2.basis_class(2)


def test_invert_unital(cp4):
    h = cp4.basis_class(1)
    x = cp4.unit() + h
    inv = x.invert_unital()
    assert x * inv == cp4.unit()
    # geometric series with alternating signs
    assert inv == cp4.unit() - h + h ** 2 - h ** 3 + h ** 4


def test_invert_requires_unital(cp2):
    with pytest.raises(NonUnitalClassError):
        (2 * cp2.unit()).invert_unital()
    with pytest.raises(NonUnitalClassError):
        cp2.basis_class(1).invert_unital()


def test_eval_series_requires_nilpotent(cp2):
    with pytest.raises(GradedAlgebraError):
        cp2.unit().eval_series([Fraction(1), Fraction(1)])


def test_integration(cp2):
    x = cp2.unit() + 7 * cp2.basis_class(2)
    assert x.integrate() == 7
    assert cp2.basis_class(1).integrate() == 0


def test_signature_class_projective_plane(cp2):
    # P = 1 + 3h^2 gives L = 1 + h^2 and signature 1
    P = cp2.element({0: 1, 2: 3})
    L = signature_class(P)
    assert L == cp2.unit() + cp2.basis_class(2)
    assert L.integrate() == 1


def test_signature_class_degree_eight():
    ring = truncated_polynomial_ring("t", 4)
    t2 = ring.basis_class(2)
    t4 = ring.basis_class(4)
    p1, p2 = 3, 5
    P = ring.unit() + p1 * t2 + p2 * t4
    L = signature_class(P)
    # multiplicative sequence values in low degrees
    assert L.degree_part(4) == Fraction(p1, 3) * t2
    assert L.degree_part(8) == Fraction(7 * p2 - p1 * p1, 45) * t4


def test_signature_class_multiplicative():
    ring = truncated_polynomial_ring("t", 4)
    t2 = ring.basis_class(2)
    A = ring.unit() + 2 * t2
    B = ring.unit() + 5 * t2
    assert signature_class(A * B) == signature_class(A) * signature_class(B)


def test_signature_class_rejects_bad_input(cp2):
    with pytest.raises(NonUnitalClassError):
        signature_class(cp2.basis_class(1))
    with pytest.raises(GradedAlgebraError):
        signature_class(cp2.unit() + cp2.basis_class(1))  # degree-2 part


def test_cross_and_tensor_product(cp2):
    h = cp2.basis_class(1)
    x = cross([cp2.unit() + h, h])
    assert x.terms == {(0, 1): Fraction(1), (1, 1): Fraction(1)}
    y = cross([h, cp2.unit()])
    assert (x * y).terms == {(1, 1): Fraction(1), (2, 1): Fraction(1)}


def test_tensor_degree_part(cp2):
    h = cp2.basis_class(1)
    x = cross([cp2.unit() + h, cp2.unit() + h])
    assert x.degree_part(2).terms == {(0, 1): Fraction(1), (1, 0): Fraction(1)}
    assert x.select_degrees([2, 2]).terms == {
        (2, 0): Fraction(1), (1, 1): Fraction(2), (0, 2): Fraction(1)}


def test_scale_slot(cp2):
    h = cp2.basis_class(1)
    x = cross([h, cp2.unit()])
    assert x.scale_slot(0, h).terms == {(2, 0): Fraction(1)}
    assert x.scale_slot(1, h).terms == {(1, 1): Fraction(1)}


def test_diagonal_pullback_multiplies_blocks(cp2):
    h = cp2.basis_class(1)
    x = cross([h, h, cp2.unit()])
    alpha = SetPartition(3, ((1, 2), (3,)))
    y = diagonal_pullback(alpha, x)
    assert y.terms == {(2, 0): Fraction(1)}
    # collapsing everything multiplies all slots
    full = diagonal_pullback(SetPartition(3, ((1, 2, 3),)), x)
    assert full.terms == {(2,): Fraction(1)}


def test_diagonal_pullback_of_trivial_partition_is_identity(cp2):
    h = cp2.basis_class(1)
    x = cross([h, cp2.unit() + h])
    from multipoint.partitions import trivial_partition
    assert diagonal_pullback(trivial_partition(2), x) == x


def test_tensor_arity_mismatch(cp2):
    x = cross([cp2.unit(), cp2.unit()])
    with pytest.raises(GradedAlgebraError):
        diagonal_pullback(SetPartition(3, ((1, 2, 3),)), x)


def test_product_ring_components():
    from multipoint.model import product_ring
    a = truncated_polynomial_ring("s", 1)
    b = truncated_polynomial_ring("t", 2)
    prod = product_ring([a, b])
    assert prod.check_axioms() == []
    # cross-factor products vanish
    assert (prod.basis_class(1) * prod.basis_class(3)).is_zero()
    # integral adds up
    top = prod.element({1: 1, 4: 1})
    assert top.integrate() == 2
    assert prod.unit().coords == {0: Fraction(1), 2: Fraction(1)}
