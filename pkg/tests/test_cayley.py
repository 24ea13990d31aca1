import pytest

from pantsdecomp.tropical.cayley import (
    NonTransverseError,
    cayley_polytope,
    cayley_system,
    certify_ci_smooth,
    check_full_support,
    find_unimodular_heights,
    intersect_hypersurfaces,
    simplex_points,
    stable_intersection_transverse,
)
from pantsdecomp.tropical.hypersurface import check_balanced, tropical_hypersurface
from pantsdecomp.tropical.polynomial import TropicalPolynomial

# heights found by find_unimodular_heights(n, degrees, seed=0)
FROZEN_HEIGHTS = {
    (2, (1, 1)): [6, 12, 6, 0, 4, 8],
    (2, (2, 1)): [1, 0, 9, 0, 3, 2, 11, 1, 7],
    (3, (1, 1)): [6, 12, 6, 0, 4, 8, 7, 6],
}


def test_simplex_points_and_cayley_polytope():
    assert len(simplex_points(2, 2)) == 6
    assert len(simplex_points(3, 1)) == 4
    assert len(cayley_polytope(2, (1, 1)).vertices()) == 6
    with pytest.raises(ValueError):
        cayley_polytope(2, (1, 0))


def test_full_support_check():
    assert check_full_support(TropicalPolynomial.parse("1+x+y+x^2+x*y+y^2")) == 2
    assert check_full_support(TropicalPolynomial.parse("1+x+y+z+t*x^2")) is None
    with pytest.raises(ValueError):
        check_full_support(TropicalPolynomial.parse("1+x^2+y"))


@pytest.mark.parametrize("key", sorted(FROZEN_HEIGHTS))
def test_frozen_heights_certify(key):
    n, degrees = key
    report = certify_ci_smooth(cayley_system(n, degrees, FROZEN_HEIGHTS[key]))
    assert report.smooth and report.transverse and report.multiplicities_one
    assert all(report.hypersurfaces_smooth)
    # Bezout: a smooth transverse system of curves meets in d1*d2 points
    if n == 2:
        assert len(report.points()) == degrees[0] * degrees[1]


def test_search_reproduces_frozen_heights():
    assert find_unimodular_heights(2, (1, 1), seed=0) == FROZEN_HEIGHTS[(2, (1, 1))]


def test_intersection_complex_of_two_lines():
    system = cayley_system(2, (1, 1), FROZEN_HEIGHTS[(2, (1, 1))])
    inter = intersect_hypersurfaces(system)
    assert inter.vertices() == [(0, -4)]
    assert list(inter.weights.values()) == [1]


def test_curves_in_three_space_are_balanced():
    system = cayley_system(3, (1, 1), FROZEN_HEIGHTS[(3, (1, 1))])
    inter = intersect_hypersurfaces(system)
    assert inter.dimension == 1
    assert check_balanced(inter)[0]


def test_identical_supports_are_not_stable():
    system = [TropicalPolynomial.parse("1+x+y"), TropicalPolynomial.parse("1+2*x+3*y")]
    report = certify_ci_smooth(system)
    assert not report.smooth and "non-stable" in report.reason
    with pytest.raises(NonTransverseError):
        stable_intersection_transverse(*(tropical_hypersurface(f) for f in system))


def test_hypersurface_certifies_when_smooth():
    assert certify_ci_smooth([TropicalPolynomial.parse("1+x+y+z+t*x^2")]).smooth
    assert not certify_ci_smooth([TropicalPolynomial.parse("1+x+y+x*y")]).smooth
