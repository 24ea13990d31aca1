import math
from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from pantsdecomp.polyhedra.polyhedron import Polyhedron, face_lattice, minkowski_sum_points, relint_intersect
from pantsdecomp.polyhedra.serialize import complex_from_json, complex_to_json, dumps, polyhedron_from_json, polyhedron_to_json
from pantsdecomp.polyhedra.subdivision import normalized_volume, regular_subdivision


def unit_square():
    return Polyhedron.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_hull_of_square():
    p = unit_square()
    assert len(p.inequalities) == 4
    assert p.vertices() == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert p.dim() == 2 and p.is_bounded()
    assert p.contains((Fraction(1, 2), 1))
    assert not p.relative_interior_contains((Fraction(1, 2), 1))


def test_unbounded_polyhedron_rays_and_lineality():
    cone = Polyhedron.from_points([(0, 0)], [(1, 0), (0, 1)])
    assert not cone.is_bounded()
    assert set(cone.rays()) == {(1, 0), (0, 1)}
    line = Polyhedron(2, [], [((0, 1), 0)])
    assert line.dim() == 1
    assert len(line.lineality()) == 1


def test_empty_polyhedron():
    p = Polyhedron(1, [((1,), 0), ((-1,), -1)])
    assert p.is_empty()


def test_cube_face_lattice():
    cube = Polyhedron.from_points(list(product(range(2), repeat=3)))
    assert face_lattice(cube).f_vector() == (8, 12, 6, 1)


def test_minkowski_sum_of_segments_is_hexagon():
    pts = minkowski_sum_points([[(0, 0), (1, 0)], [(0, 0), (0, 1)], [(0, 0), (1, 1)]])
    assert len(Polyhedron.from_points(pts).vertices()) == 6


def test_relint_intersection():
    a = Polyhedron.from_points([(0, 0), (2, 0)])
    b = Polyhedron.from_points([(1, -1), (1, 1)])
    c = Polyhedron.from_points([(2, -1), (2, 1)])
    assert relint_intersect(a, b)
    assert not relint_intersect(a, c)


def test_regular_subdivision_of_square():
    pts = [(0, 0), (1, 0), (0, 1), (1, 1)]
    sub = regular_subdivision(pts, [0, 0, 0, 1])
    tops = [c for c in sub.cells if c.dim == 2]
    assert len(tops) == 2
    assert all(normalized_volume([pts[k] for k in c.support]) == 1 for c in tops)
    flat = regular_subdivision(pts, [0, 0, 0, 0])
    assert [sorted(c.support) for c in flat.cells if c.dim == 2] == [[0, 1, 2, 3]]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=6, max_size=6))
def test_subdivision_of_triangle_covers_its_area(heights):
    pts = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]
    sub = regular_subdivision(pts, heights)
    tops = [c for c in sub.cells if c.dim == 2]
    # twice the areas of the cells add up to twice the area of 2*simplex
    total = 0
    for c in tops:
        verts = Polyhedron.from_points([pts[k] for k in c.support]).vertices()
        cx = sum(v[0] for v in verts) / len(verts)
        cy = sum(v[1] for v in verts) / len(verts)
        ring = sorted(verts, key=lambda v: math.atan2(v[1] - cy, v[0] - cx))
        total += abs(sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1])))
    assert total == 4


def test_json_roundtrip_is_exact():
    p = Polyhedron.from_points([(0, 0), (Fraction(1, 3), 0), (0, Fraction(2, 5))])
    q = polyhedron_from_json(polyhedron_to_json(p))
    assert q.vertices() == p.vertices()
    sub = regular_subdivision([(0, 0), (1, 0), (0, 1), (1, 1)], [0, 0, 0, 1])
    back = complex_from_json(complex_to_json(sub))
    assert back.f_vector() == sub.f_vector()
    assert dumps(complex_to_json(back)) == dumps(complex_to_json(sub))
