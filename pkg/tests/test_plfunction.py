import random
from fractions import Fraction

import pytest

from troplith.cycle import TropicalCycle
from troplith.errors import DomainError
from troplith.plfunction import (
    PLFunction,
    RationalFunctionExpr,
    TropicalPolynomial,
    as_quotient,
    clamp_function,
    is_bounded,
    max_function,
    pl_from_ray_values,
)
from troplith.polyhedron import Polyhedron
from troplith.recession import arrangement_fan


def sample_points(n, k=20, seed=0):
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(n))
            for _ in range(k)]


def test_polynomial_evaluation_and_regions():
    f = TropicalPolynomial.make([((1, 0), 0), ((0, 1), 0), ((0, 0), 0)])
    assert f((2, 1)) == 2
    assert f((-1, -1)) == 0
    assert len(f.regions()) == 3
    phi = f.to_pl()
    for x in sample_points(2):
        assert phi(x) == f(x)


def test_duplicate_exponents_keep_max():
    f = TropicalPolynomial.make([((1,), 0), ((1,), 3), ((0,), 0)])
    assert f((0,)) == 3


def test_rational_expression_difference():
    f = TropicalPolynomial.make([((1, 0), 0), ((0, 0), 1)])
    g = TropicalPolynomial.make([((0, 1), 0), ((0, 0), 0)])
    q = RationalFunctionExpr(f, g)
    phi = q.to_pl()
    for x in sample_points(2, seed=1):
        assert phi(x) == f(x) - g(x)


def test_clamp_is_bounded_for_both_signs():
    for mu in (3, Fraction(-5, 2)):
        phi = clamp_function(2, 1, mu)
        assert is_bounded(phi)
        assert phi((7, -100)) == 0
        assert phi((7, 100)) == mu
    assert not is_bounded(max_function(1, 0, 0))


def test_pullback_evaluates_through_map():
    f = TropicalPolynomial.make([((1, 0), 0), ((0, 1), 0), ((0, 0), 0)]).to_pl()
    A = [[1, 2], [-1, 1]]
    shift = (Fraction(1, 2), 3)
    g = f.pullback(A, shift)
    for x in sample_points(2, seed=2):
        y = tuple(sum(a * b for a, b in zip(row, x)) + s for row, s in zip(A, shift))
        assert g(x) == f(y)


def test_as_quotient_reproduces_function():
    fan = arrangement_fan([(1, 0), (0, 1), (1, -1)], 2)
    vals = {r: Fraction((i * 7) % 5 - 2) for i, r in enumerate(fan.rays())}
    phi = pl_from_ray_values(fan.maximal_cones, vals)
    q = as_quotient(phi)
    for x in sample_points(2, seed=3):
        assert q(x) == phi(x)


def test_restrict_outside_domain():
    half = Polyhedron.from_inequalities([((1,), 0)], n=1)
    phi = PLFunction(1, [(half, (1,), 0)])
    with pytest.raises(DomainError):
        phi.restrict(TropicalCycle.whole_space(1))
