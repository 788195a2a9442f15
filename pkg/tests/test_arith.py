from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from troplith.arith import (
    INFINITE,
    Lattice,
    Subspace,
    as_fraction,
    hermite_form,
    integer_kernel,
    lattice_index,
    matmul,
    quotient_primitive,
    rank,
    smith_diagonal,
    subspace_intersect,
)
from troplith.errors import DomainError

small = st.integers(min_value=-6, max_value=6)


def mat(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_as_fraction_rejects_floats():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(-2) == Fraction(-2)
    with pytest.raises(TypeError):
        as_fraction(0.5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: mat(m, n))))
def test_smith_matches_sympy(M):
    ours = [d for d in smith_diagonal(M) if d]
    S = smith_normal_form(Matrix(M))
    ref = [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]
    assert ours == sorted(ref, key=lambda x: (x == 0, x)) or ours == ref
    for a, b in zip(ours, ours[1:]):
        assert b % a == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: mat(m, n))))
def test_hermite_transform(M):
    H, U = hermite_form(M)
    assert matmul(U, M) == H
    assert abs(Matrix(U).det()) == 1
    assert rank(H) == Matrix(M).rank()


def test_integer_kernel():
    K = integer_kernel([[2, 4, 6]], 3)
    assert len(K) == 2
    for v in K:
        assert 2 * v[0] + 4 * v[1] + 6 * v[2] == 0
    # saturated: index 1 in its span
    assert lattice_index(Lattice.generated_by(K, 3), Subspace.span(K, 3).lattice()) == 1


def test_lattice_index_examples():
    Z2 = Subspace.full(2).lattice()
    assert lattice_index(Lattice.generated_by([[2, 0], [0, 1]], 2), Z2) == 2
    assert lattice_index(Lattice.generated_by([[1, 1], [1, -1]], 2), Z2) == 2
    assert lattice_index(Lattice.generated_by([[1, 0]], 2), Z2) == INFINITE


def test_quotient_primitive():
    V = Subspace.span([[1, 0]], 2)
    u = quotient_primitive([3, 6], V)
    assert u == (0, 1)
    line = Subspace.span([[1, 1]], 2)
    u = quotient_primitive([0, -5], line)
    # class of (0,-1) modulo the diagonal, reduced against (1,1)
    assert Subspace.span([[1, 1], [0, 1]], 2).dim == 2
    assert u[1] - u[0] == -1
    with pytest.raises(DomainError):
        quotient_primitive([2, 2], line)


def test_subspace_ops():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    c = subspace_intersect(a, b)
    assert c.dim == 1 and c.contains_vector([0, 5, 0])
