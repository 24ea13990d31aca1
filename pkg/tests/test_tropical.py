import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pantsdecomp.parsing import ParseError, parse_terms, variable_order
from pantsdecomp.polyhedra.polyhedron import Polyhedron
from pantsdecomp.tropical.dual import NotSmoothError, check_cocycle, dual_intersection_complex
from pantsdecomp.tropical.hypersurface import check_balanced, is_tropically_smooth, tropical_hypersurface
from pantsdecomp.tropical.model_chart import NonSmoothChartError, model_chart, substitute
from pantsdecomp.tropical.polynomial import TropicalPolynomial, initial_form

MULTIPLICITY_CURVE = "t^5*x^3 + t^2*x^2*y + x*y^2 + t*y^3 + t^4*x^2 + x*y + y^2 + t*x + t*y + 1"
ELLIPTIC = "t^4*x^3 + x^2*y + x*y^2 + t^4*y^3 + t^2*x^2 + x*y + t^2*y^2 + t*x + t*y + t^3"
F = Fraction


# -- parsing ------------------------------------------------------------------


def test_parse_terms_and_variable_order():
    terms = parse_terms("t^2*x^2*y - 3/2*x + i*y + 1")
    assert [t.t_power for t in terms] == [2, 0, 0, 0]
    assert variable_order({"y", "x"}) == ["x", "y"]
    assert variable_order({"x2", "x1", "x3"}) == ["x1", "x2", "x3"]


def test_juxtaposed_letters_are_products():
    f = TropicalPolynomial.parse("t^5x^3 + txy + 1")
    assert f.exponents == [(3, 0), (1, 1), (0, 0)]
    assert f.valuations == [5, 1, 0]


def test_phases_from_coefficients():
    f = TropicalPolynomial.parse("1 - x + i*y")
    assert [t.angle for t in f.terms] == [0, 1, F(1, 2)]
    assert str(f) == "1 - x + i*y"
    assert str(TropicalPolynomial.parse("G*x + e(1/3)*y + 2")) == "G*x + e(1/3)*y + 2"


@pytest.mark.parametrize("bad", ["x + x", "1 +", "x^y", "0*x + 1", "(x"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ValueError)):
        TropicalPolynomial.parse(bad)


def test_initial_form():
    f = TropicalPolynomial.parse(MULTIPLICITY_CURVE)
    assert str(initial_form(f, (-2, 1))) == "x^3 + x^2*y + x*y + x"


# -- hypersurfaces ------------------------------------------------------------


def test_line_tropicalizes_to_tripod():
    t = tropical_hypersurface(TropicalPolynomial.parse("1 + x + y"))
    assert t.vertices() == [(0, 0)]
    assert sorted(c.rays for c in t.maximal_cells()) == [((-1, -1),), ((0, 1),), ((1, 0),)]
    ok, cert = check_balanced(t)
    assert ok and cert[0].formula() == "1·(-1,-1)+1·(1,0)+1·(0,1)=0"


def test_curve_with_multiplicity_two():
    f = TropicalPolynomial.parse(MULTIPLICITY_CURVE)
    t = tropical_hypersurface(f)
    assert set(t.vertices()) == {(-2, 0), (-2, 1), (-1, 1), (0, -1), (0, 0)}
    heavy = {(c.vertices, c.rays) for c in t.maximal_cells() if t.weights[c.id] == 2}
    assert heavy == {(((-2, 1),), ((0, 1),)), (((0, 0),), ((1, 0),))}
    assert sum(t.weights.values()) == 14
    ok, cert = check_balanced(t)
    assert ok
    at = {e.point: e.formula() for e in cert}
    assert at[(-2, 1)] == "1·(-1,-1)+1·(0,-1)+1·(1,0)+2·(0,1)=0"
    rep = is_tropically_smooth(f)
    assert not rep.smooth
    w, init, reason = rep.counterexample
    assert w == (-2, 1) and init == "x^3 + x^2*y + x*y + x"


def test_single_monomial_is_empty_with_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        t = tropical_hypersurface(TropicalPolynomial.parse("x"))
    assert not t.cells.cells and caught


def test_surface_in_three_space_is_balanced():
    t = tropical_hypersurface(TropicalPolynomial.parse("1+x+y+z+t*x^2"))
    assert t.dimension == 2
    assert check_balanced(t)[0]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=6, max_size=6))
def test_random_conics_are_balanced(vals):
    exps = ["1", "x", "y", "x^2", "x*y", "y^2"]
    f = TropicalPolynomial.parse(" + ".join(f"t^{v}*{e}" if e != "1" else f"t^{v}" for v, e in zip(vals, exps)))
    t = tropical_hypersurface(f)
    assert check_balanced(t)[0]
    # a smooth conic has the maximal four vertices, each trivalent
    if is_tropically_smooth(f).smooth:
        assert len(t.vertices()) == 4


def test_smoothness_witness_bases():
    rep = is_tropically_smooth(TropicalPolynomial.parse("1+x+y+t*x*y"))
    assert rep.smooth
    assert {w: b for w, (_, b, _) in rep.witnesses.items()} == {(0, 0): [(1, 0), (0, 1)], (-1, -1): [(0, 1), (-1, 1)]}
    rep = is_tropically_smooth(TropicalPolynomial.parse("1+x+y+z+t*x^2"))
    assert rep.smooth
    assert rep.witnesses[(-1, -1, -1)][1] == [(1, 0, 0), (-1, 1, 0), (-1, 0, 1)]
    assert not is_tropically_smooth(TropicalPolynomial.parse("1+x+y+x*y")).smooth


def test_unused_monomial_is_not_smooth():
    rep = is_tropically_smooth(TropicalPolynomial.parse("1 + t*x + x^2"))
    assert not rep.smooth


# -- dual intersection complex ------------------------------------------------


def test_dual_complex_charts_and_cocycle():
    d = dual_intersection_complex(TropicalPolynomial.parse("1+x+y+t*x*y"))
    charts = d.vertex_charts
    assert charts[(0, 0)].basis == ((1, 0), (0, 1))
    assert charts[(-1, -1)].basis == ((0, 1), (-1, 1))
    assert charts[(-1, -1)].monomials[0] == 1  # base monomial x
    assert len(d.transitions) == 2
    assert check_cocycle(d)
    with pytest.raises(NotSmoothError):
        dual_intersection_complex(TropicalPolynomial.parse(MULTIPLICITY_CURVE))


def test_dual_complex_phase_offsets():
    d = dual_intersection_complex(TropicalPolynomial.parse("1 - x + i*y"))
    assert d.vertex_charts[(0, 0)].phase_offset == (1, F(1, 2))


def test_elliptic_dual_complex_cocycle():
    d = dual_intersection_complex(TropicalPolynomial.parse(ELLIPTIC))
    assert len(d.vertices) == 9
    assert check_cocycle(d)


# -- model charts -------------------------------------------------------------


def _elliptic_chart():
    f = TropicalPolynomial.parse(ELLIPTIC)
    sigma = Polyhedron(2, [((1, 0), 1), ((0, 1), 1), ((-1, -1), -1)])
    return f, model_chart(f, sigma)


def test_elliptic_model_chart_strings():
    f, chart = _elliptic_chart()
    assert chart.relation == "u*v*w = t"
    assert chart.substitution == {"u": "t/x", "v": "t/y", "w": "x*y/t"}
    assert chart.content_monomial() == "u*v*w^2"
    assert chart.components["w"] == "u + v + 1"
    assert chart.components["u"] == "v*w + v + 1"
    back = sorted((v, e) for v, e, _ in substitute(chart, f))
    assert back == sorted((t.valuation, t.exponent) for t in f.terms)


def test_model_chart_in_one_variable():
    f = TropicalPolynomial.parse("1 + x + t/x")
    chart = model_chart(f, Polyhedron(1, [((1,), 1), ((-1,), 0)]))
    assert chart.relation == "u*v = t"
    assert sorted(chart.components.values()) == ["u + 1", "v + 1"]


def test_model_chart_rejects_non_smooth_cone():
    f = TropicalPolynomial.parse(ELLIPTIC)
    with pytest.raises(NonSmoothChartError):
        model_chart(f, Polyhedron.from_points([(0, 0), (2, 0), (0, 2)]))
