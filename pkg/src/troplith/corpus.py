"""Named example cycles and deterministic random generators."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .cycle import TropicalCycle, add_all, product
from .divisor import divisor
from .plfunction import TropicalPolynomial
from .polyhedron import Polyhedron

_G = Polyhedron.from_generators


def tropical_line(n: int = 2) -> TropicalCycle:
    """Fan with rays -e_1, ..., -e_n and e_1 + ... + e_n, weight 1.

    This is the divisor of max{x_1, ..., x_n, 0} on Q^n when n = 2.
    """
    zero = (0,) * n
    rays = [tuple(-int(i == j) for j in range(n)) for i in range(n)] + [(1,) * n]
    return TropicalCycle(n, 1, [(_G([zero], [r]), 1) for r in rays])


def marked_curve():
    """Line x = 1 crossed by a trivalent curve with vertex (3, 0).

    Returns (cycle, [p1, p2, p3]) with p1 a 4-valent crossing, p2 an edge
    point and p3 the trivalent vertex.
    """
    cells = [
        (_G([(1, 0)], [], [(0, 1)]), 1),
        (_G([(3, 0)], [(-1, 0)]), 1),
        (_G([(3, 0)], [(1, 1)]), 1),
        (_G([(3, 0)], [(0, -1)]), 1),
    ]
    X = TropicalCycle.from_cells(2, cells, dim=1)
    pts = [(Fraction(1), Fraction(0)), (Fraction(2), Fraction(0)), (Fraction(3), Fraction(0))]
    return X, pts


def staircase_curve() -> TropicalCycle:
    """Curve with vertices (0,0), (0,-1), (1,-2), (2,-2) and six unbounded legs."""
    cells = [
        (_G([(0, 0), (0, -1)]), 1),
        (_G([(0, -1), (1, -2)]), 1),
        (_G([(1, -2), (2, -2)]), 1),
        (_G([(0, 0)], [(-1, 0)]), 1),
        (_G([(0, 0)], [(1, 1)]), 1),
        (_G([(0, -1)], [(-1, 0)]), 1),
        (_G([(1, -2)], [(0, -1)]), 1),
        (_G([(2, -2)], [(0, -1)]), 1),
        (_G([(2, -2)], [(1, 1)]), 1),
    ]
    return TropicalCycle.from_cells(2, cells, dim=1)


# -- random generators ------------------------------------------------------

def _rng(seed) -> random.Random:
    return random.Random(seed)


def _rat(rng: random.Random, lo=-3, hi=3) -> Fraction:
    return Fraction(rng.randint(lo * 2, hi * 2), rng.choice((1, 2)))


def random_vector(rng, n, lo=-3, hi=3):
    return tuple(_rat(rng, lo, hi) for _ in range(n))


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v)


def random_fan_curve(rng, n: int, nrays: int = 3, maxc: int = 2) -> TropicalCycle:
    """Balanced 1-dimensional fan: random integer rays plus their negated sum."""
    while True:
        vecs = []
        for _ in range(nrays - 1):
            v = tuple(rng.randint(-maxc, maxc) for _ in range(n))
            if any(v):
                vecs.append(v)
        last = tuple(-sum(v[i] for v in vecs) for i in range(n))
        if any(last) and vecs:
            vecs.append(last)
            break
    zero = (0,) * n
    cells = []
    for v in vecs:
        g = 0
        for x in v:
            g = gcd(g, x)
        # a non-primitive vector becomes a primitive ray with weight g
        cells.append((_G([zero], [_primitive(v)]), g))
    return TropicalCycle.from_cells(n, cells, dim=1)


def random_polynomial(rng, n: int, nterms: int = 3, maxdeg: int = 1) -> TropicalPolynomial:
    nterms = min(nterms, (maxdeg + 1) ** n)
    terms = {}
    while len(terms) < nterms:
        e = tuple(rng.randint(0, maxdeg) for _ in range(n))
        terms[e] = Fraction(rng.randint(-3, 3))
    return TropicalPolynomial.make(terms.items())


def random_plane_curve(rng, nterms: int = 3, maxdeg: int = 1) -> TropicalCycle:
    """Tropical hypersurface of a random polynomial in Q^2 (nonzero)."""
    while True:
        f = random_polynomial(rng, 2, nterms, maxdeg)
        D = divisor(f, TropicalCycle.whole_space(2))
        if not D.is_zero():
            return D


def random_curve(rng, n: int) -> TropicalCycle:
    """Small curve in Q^n: a sum of one or two translated fan curves, or a plane curve."""
    kind = rng.randint(0, 2) if n == 2 else rng.randint(0, 1)
    if kind == 2:
        return random_plane_curve(rng, 3 + rng.randint(0, 1))
    k = 1 + kind
    parts = [random_fan_curve(rng, n, 3).translate(random_vector(rng, n)) for _ in range(k)]
    return add_all(parts, n, 1)


def random_surface(rng, n: int) -> TropicalCycle:
    """Small surface in Q^3 or Q^4."""
    if n == 3:
        if rng.randint(0, 1):
            f = random_polynomial(rng, 3, 3, 1)
            D = divisor(f, TropicalCycle.whole_space(3))
            if not D.is_zero():
                return D
        return product(random_curve(rng, 2), TropicalCycle.whole_space(1))
    if n == 4:
        return product(random_fan_curve(rng, 2).translate(random_vector(rng, 2)),
                       random_fan_curve(rng, 2).translate(random_vector(rng, 2)))
    raise ValueError("surfaces are generated in Q^3 and Q^4 only")


def corpus(seed: int = 0, size: int = 50):
    """Deterministic list of named cycles: curves in Q^2..Q^4 and surfaces in Q^3, Q^4."""
    rng = _rng(seed)
    out = [("tropical_line", tropical_line(2)), ("marked_curve", marked_curve()[0]),
           ("staircase_curve", staircase_curve())]
    specs = [("curve", 2), ("curve", 3), ("curve", 4), ("surface", 3), ("surface", 4)]
    i = 0
    while len(out) < size:
        kind, n = specs[i % len(specs)]
        X = random_curve(rng, n) if kind == "curve" else random_surface(rng, n)
        out.append((f"{kind}{n}_{i}", X))
        i += 1
    return out


__all__ = ["tropical_line", "marked_curve", "staircase_curve", "random_fan_curve",
           "random_polynomial", "random_plane_curve", "random_curve", "random_surface",
           "random_vector", "corpus"]
