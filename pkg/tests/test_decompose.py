from fractions import Fraction

from troplith.arith import INFINITE
from troplith.corpus import staircase_curve, tropical_line
from troplith.cycle import TropicalCycle, cycle_equal, degree0, product, scale
from troplith.decompose import (
    bezout_check,
    decompose,
    family_fibers_check,
    minimal_splitting_locus,
    recession_equiv,
    translation_witness,
)
from troplith.polyhedron import Polyhedron

L = tropical_line(2)


def test_translated_fan_is_one_summand():
    w = decompose(L.translate((1, 2)))
    assert len(w.summands) == 1
    F, p = w.summands[0]
    assert cycle_equal(F, L) and p == (1, 2)


def test_fan_decomposes_at_origin():
    (F, p), = decompose(L).summands
    assert p == (0, 0)


def test_affine_line_locus():
    X = TropicalCycle(2, 1, [(Polyhedron.from_generators([(0, 3)], [], [(1, 1)]), 1)])
    s, Ws, _ = minimal_splitting_locus(X)
    assert s == 1 and len(Ws) == 1 and Ws[0].direction.dim == 1
    assert minimal_splitting_locus(TropicalCycle.zero(2, 1))[0] == INFINITE


def test_staircase_locus_is_vertices():
    s, Ws, _ = minimal_splitting_locus(staircase_curve())
    assert s == 0 and len(Ws) == 4


def test_equivalence_reports():
    assert recession_equiv(L, L.translate((3, 4))).verdict == "EQUIVALENT"
    X = staircase_curve()
    rep = recession_equiv(X, scale(L, 2))
    assert rep.verdict == "EQUIVALENT"
    rep = recession_equiv(L, scale(L, 3))
    assert rep.verdict == "NOT_EQUIVALENT" and rep.degrees is not None


def test_translation_witness_chain():
    assert translation_witness(L, (0, 0)) == []
    ws = translation_witness(L, (1, Fraction(-1, 2)))
    assert len(ws) == 2 and all(w.verify() for w in ws)
    P = TropicalCycle.point((Fraction(1, 3),))
    (w,) = translation_witness(P, (2,))
    assert degree0(w.claim) == 0


def test_fibers_and_bezout():
    F = product(L, TropicalCycle.whole_space(1))
    assert family_fibers_check(F, 0, 4)
    assert bezout_check(L, L.translate((2, 5)))
