import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pantsdecomp.angle.generic import coxeter_torus_complex, generic_angle_complex
from pantsdecomp.topology.cw import BoundaryError, CWComplex, cap_circle_strata, euler_characteristic
from pantsdecomp.topology.gluing import GluingError, glue_colimit, glue_hocolim, glue_hypersurface, identification_count
from pantsdecomp.topology.homology import homology
from pantsdecomp.topology.pi1 import (
    GROUPS,
    GroupPresentation,
    abelianization,
    commuting_tuples,
    count_homs,
    free_abelian_presentation,
    fundamental_group,
    tietze,
)
from pantsdecomp.topology.torus_cw import cw_from_torus_complex
from pantsdecomp.tropical.dual import dual_intersection_complex
from pantsdecomp.tropical.polynomial import TropicalPolynomial

SURFACE = "1+x+y+z+t*x^2"


def circle():
    c = CWComplex()
    v = c.add_cell(0)
    c.add_cell(1, {v: 0})
    return c


def torus():
    c = CWComplex()
    v = c.add_cell(0)
    a = c.add_cell(1)
    b = c.add_cell(1)
    c.add_cell(2, {a: 0, b: 0})
    return c


def projective_plane():
    c = CWComplex()
    v = c.add_cell(0)
    a = c.add_cell(1, {v: 0})
    c.add_cell(2, {a: 2})
    return c


def test_homology_of_basic_complexes():
    assert homology(circle()).betti == (1, 1)
    h = homology(torus())
    assert h.betti == (1, 2, 1) and euler_characteristic(torus()) == 0
    rp2 = homology(projective_plane())
    assert rp2.betti == (1, 0, 0)
    assert rp2.torsion(1) == (2,)


def test_boundary_squared_must_vanish():
    c = CWComplex()
    v0, v1 = c.add_cell(0), c.add_cell(0)
    e = c.add_cell(1, {v1: 1, v0: -1})
    c.add_cell(2, {e: 1})
    with pytest.raises(BoundaryError):
        c.check()


def test_cap_circle_on_a_segment_loop():
    c = CWComplex()
    v0, v1 = c.add_cell(0), c.add_cell(0)
    e1 = c.add_cell(1, {v1: 1, v0: -1})
    e2 = c.add_cell(1, {v0: 1, v1: -1})
    capped = cap_circle_strata(c, [[e1, e2]])
    assert homology(capped).betti == (1, 0, 0)


def bouquet(k, spheres=0):
    """``k`` circles, each split into two edges, and ``spheres`` free 2-cells, on one base vertex."""
    c = CWComplex()
    base = c.add_cell(0)
    for _ in range(k):
        w = c.add_cell(0)
        c.add_cell(1, {w: 1, base: -1})
        c.add_cell(1, {base: 1, w: -1})
    for _ in range(spheres):
        c.add_cell(2)
    return c


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3))
def test_wedge_of_circles_and_spheres(k, s):
    c = bouquet(k, s)
    c.check()
    b = homology(c).betti
    assert b[:2] == (1, k) and (b[2] if len(b) > 2 else 0) == s


@given(st.integers(1, 4))
def test_graph_fundamental_group_is_free(k):
    pres = fundamental_group(bouquet(k))
    assert pres.generator_count == k and not pres.relators


# -- fundamental groups -------------------------------------------------------


def test_torus_fundamental_group():
    p = fundamental_group(cw_from_torus_complex(coxeter_torus_complex(2)))
    assert abelianization(p) == (2, ())
    assert count_homs(p, GROUPS["s3"]()) == commuting_tuples(GROUPS["s3"](), 2) == 18


def test_pants_fundamental_group_is_free():
    p = fundamental_group(cw_from_torus_complex(generic_angle_complex(2)))
    assert p.generator_count == 2 and not p.relators
    assert count_homs(p, GROUPS["s3"]()) == 36


def test_abelianization_with_torsion():
    assert abelianization(GroupPresentation(1, [[(0, 2)]])) == (0, (2,))
    assert abelianization(GroupPresentation(2, [[(0, 3), (1, 6)]])) == (1, (3,))


def test_tietze_removes_generator_equal_to_word():
    count, rels = tietze(2, [[1, -2]])  # a = b
    assert count == 1 and all(not r for r in rels)


def test_group_battery():
    orders = {name: make().order for name, make in GROUPS.items()}
    assert orders == {"s3": 6, "d4": 8, "q8": 8, "a4": 12}
    z3 = free_abelian_presentation(3)
    assert [count_homs(z3, GROUPS[g]()) for g in ("s3", "d4", "q8", "a4")] == [48, 176, 176, 168]


def test_presentation_string_and_json():
    p = GroupPresentation(2, [[(0, 1), (1, 1), (0, -1), (1, -1)]])
    assert str(p) == "<a, b | a*b*a^-1*b^-1>"
    assert p.to_json() == {"generators": 2, "relators": [[[0, 1], [1, 1], [0, -1], [1, -1]]]}


# -- gluing -------------------------------------------------------------------


def test_single_piece_needs_no_gluing():
    diagram = dual_intersection_complex(TropicalPolynomial.parse("1+x+y"))
    glued = glue_hypersurface(diagram)
    assert homology(glued.complex).betti == (1, 2, 0)


def test_surface_gluing_is_order_independent():
    diagram = dual_intersection_complex(TropicalPolynomial.parse(SURFACE))
    glued = glue_hypersurface(diagram)
    reference = homology(glued.complex)
    assert reference.betti[:2] == (1, 3)
    rng = random.Random(7)
    for _ in range(3):
        chains = list(range(5))  # two vertices, one bounded edge: three chains of length 0, two of length 1
        rng.shuffle(chains)
        again = glue_hypersurface(diagram, order=chains)
        assert homology(again.complex).betti == reference.betti
    n_pairs = identification_count(glued.strata)
    plain = homology(glue_colimit(glued.pieces, glued.strata)).betti
    assert plain[:3] == reference.betti[:3] and not any(plain[3:])
    for _ in range(3):
        order = list(range(n_pairs))
        rng.shuffle(order)
        assert homology(glue_colimit(glued.pieces, glued.strata, order)).betti == plain


def test_gluing_rejects_mismatched_strata():
    a = generic_angle_complex(2)
    b = generic_angle_complex(2)
    other = generic_angle_complex(1)
    with pytest.raises((GluingError, ValueError)):
        glue_hocolim({"a": a, "b": b}, {"e": {"a": other, "b": other}}, {"e": {"a", "b"}})
