"""Exact tropical intersection theory and bounded rational equivalence on Q^n."""

from .arith import INFINITE, Lattice, Subspace, lattice_index
from .cycle import (
    TropicalCycle,
    add,
    balancing_check,
    common_refinement,
    cycle_equal,
    degree0,
    product,
    scale,
)
from .decompose import (
    BoundedEquivWitness,
    DecompositionWitness,
    EquivalenceReport,
    bezout_check,
    decompose,
    family_fibers_check,
    minimal_splitting_locus,
    recession_equiv,
    subtract_star_step,
    translation_witness,
)
from .divisor import divisor, divisor_chain, fiber, graph_cycle, invert_divisor
from .errors import (
    DimensionMismatch,
    DomainError,
    InternalError,
    LoopGuardExceeded,
    NonGenericError,
    NotAComplexError,
    NotBalancedError,
    OracleIncomplete,
    TroplithError,
)
from .intersection import (
    degree_pairing,
    displacement_oracle,
    numerical_equiv_sample,
    stable_intersect,
)
from .local import UNKNOWN, lindim, lineality_space, profile, skeleton_l, skeleton_s, spldim, star
from .morphism import IntegerAffineMap, projection_formula_check, pushforward
from .plfunction import PLFunction, RationalFunctionExpr, TropicalPolynomial, is_bounded
from .polyhedron import Polyhedron
from .recession import CompleteFan, recession_cycle, simplicial_completion

__version__ = "0.1.0"
