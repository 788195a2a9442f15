"""Integer affine maps and push-forward of cycles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import INFINITE, Lattice, dot, lattice_index, qvec
from .cycle import TropicalCycle, covered_by, cycle_equal
from .errors import DimensionMismatch, DomainError


@dataclass(frozen=True)
class IntegerAffineMap:
    """x -> A x + shift with A an integer matrix and a rational shift.

    ``domain`` and ``codomain`` are optional cycles; when both are given the
    image of the domain's support is checked to lie in the codomain's.
    """

    matrix: tuple[tuple[int, ...], ...]
    shift: tuple[Fraction, ...]
    domain: TropicalCycle | None = None
    codomain: TropicalCycle | None = None

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.matrix)
        for row, orig in zip(A, self.matrix):
            if any(Fraction(x) != y for x, y in zip(orig, row)):
                raise DomainError("map matrix must be integral")
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "shift", qvec(self.shift))
        if len(self.shift) != len(A):
            raise DimensionMismatch("shift length must equal the number of matrix rows")
        if len({len(r) for r in A}) > 1:
            raise DimensionMismatch("ragged matrix")
        if self.domain is not None and self.codomain is not None:
            image = pushforward(IntegerAffineMap(A, self.shift), self.domain)
            cod = self.codomain.cells
            for P, _ in image.facets:
                if not covered_by(P, cod):
                    raise DomainError("map does not send the domain into the codomain")

    @classmethod
    def linear(cls, A, **kw) -> "IntegerAffineMap":
        return cls(A, (0,) * len(A), **kw)

    @classmethod
    def identity(cls, n: int) -> "IntegerAffineMap":
        return cls.linear([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def translation(cls, v) -> "IntegerAffineMap":
        n = len(v)
        return cls([[int(i == j) for j in range(n)] for i in range(n)], v)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x):
        x = qvec(x)
        return tuple(dot(row, x) + s for row, s in zip(self.matrix, self.shift))

    def restrict(self, Z: TropicalCycle) -> "IntegerAffineMap":
        return IntegerAffineMap(self.matrix, self.shift, Z, self.codomain)


def compose(f: IntegerAffineMap, g: IntegerAffineMap) -> IntegerAffineMap:
    """g ∘ f."""
    if f.target_dim != g.source_dim:
        raise DimensionMismatch("maps cannot be composed")
    cols = list(zip(*f.matrix)) if f.matrix else []
    A = [[sum(g.matrix[i][k] * cols[j][k] for k in range(f.target_dim))
          for j in range(f.source_dim)] for i in range(g.target_dim)]
    shift = [dot(row, f.shift) + s for row, s in zip(g.matrix, g.shift)]
    return IntegerAffineMap(A, shift)


def image_weight(f: IntegerAffineMap, P) -> tuple:
    """Image cell of P and the lattice index |Λ_{f(P)} / f(Λ_P)| (INFINITE if dimension drops)."""
    Q = P.linear_image(f.matrix, f.shift)
    if Q.dim < P.dim:
        return Q, INFINITE
    basis = P.direction_space().integer_basis()
    img = [tuple(dot(row, b) for row in f.matrix) for b in basis]
    idx = lattice_index(Lattice.generated_by(img, f.target_dim), Q.direction_space().lattice())
    return Q, idx


def pushforward_cells(f: IntegerAffineMap, cells) -> list:
    out = []
    for P, w in cells:
        Q, idx = image_weight(f, P)
        if idx is INFINITE:
            continue
        out.append((Q, w * idx))
    return out


def pushforward(f: IntegerAffineMap, Z: TropicalCycle) -> TropicalCycle:
    """f_* Z with lattice-index weights; contracted cells are dropped."""
    if Z.ambient_dim != f.source_dim:
        raise DimensionMismatch("cycle does not live in the map's source")
    cells = pushforward_cells(f, Z.facets)
    return TropicalCycle.from_cells(f.target_dim, cells, dim=Z.dim)


def projection_formula_check(f: IntegerAffineMap, phi, Z: TropicalCycle) -> bool:
    """f_*(f^*φ · Z) = φ · f_*Z."""
    from .divisor import divisor
    pulled = phi.pullback(f.matrix, f.shift)
    lhs = pushforward(f, divisor(pulled, Z))
    rhs = divisor(phi, pushforward(f, Z))
    return cycle_equal(lhs, rhs)


def projection(n: int, keep: Sequence[int]) -> IntegerAffineMap:
    """Coordinate projection Q^n -> Q^len(keep)."""
    return IntegerAffineMap.linear([[int(j == i) for j in range(n)] for i in keep])


__all__ = ["IntegerAffineMap", "compose", "pushforward", "projection_formula_check",
           "projection", "image_weight"]
