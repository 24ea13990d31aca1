import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pantsdecomp.arrangements.ideal import (
    ArrangementError,
    LinearIdeal,
    arrangement_from_ideal,
    circuits,
    initial_linear_ideal,
    is_essential,
)
from pantsdecomp.arrangements.matroid import (
    LoopError,
    Matroid,
    bergman_fan,
    characteristic_polynomial,
    complement_betti,
    format_polynomial,
    reduced_characteristic_polynomial,
)
from pantsdecomp.arrangements.random_arrangements import random_essential_ideal
from pantsdecomp.arrangements.sign_nerve import quadrant_product_feasible, realized_strata, sign_nerve
from pantsdecomp.gaussian import GaussQ
from pantsdecomp.polyhedra.matrix import ExactMatrix, kernel_basis
from pantsdecomp.tropical.hypersurface import check_balanced

# columns e1, e2, e3, e1-e2, e1-e3, e2-e3: the braid arrangement in P^2
BRAID_KERNEL = [[1, 0, 0, 1, 1, 0], [0, 1, 0, -1, 0, 1], [0, 0, 1, 0, -1, -1]]


def braid_ideal():
    return LinearIdeal.from_matrix(kernel_basis(ExactMatrix(BRAID_KERNEL), integral=False).tolist())


# -- ideals -------------------------------------------------------------------


def test_parse_and_print():
    ideal = LinearIdeal.parse("1 + 2*x + 3*y")
    assert ideal.monomials == ((0, 0), (1, 0), (0, 1))
    assert str(ideal) == "<1 + 2*x + 3*y>"
    assert ideal.evaluate([GaussQ(1), GaussQ(1), GaussQ(-1)]) == [GaussQ(0)]
    with pytest.raises(ValueError):
        LinearIdeal.parse("1 + t*x")


def test_line_arrangement():
    arr = arrangement_from_ideal(LinearIdeal.parse("1 + x + y"))
    assert arr.dim == 1
    assert arr.hyperplanes == [(1, 0), (0, 1), (-1, -1)]
    assert sum(arr.evaluate([GaussQ(2), GaussQ(5)]), GaussQ(0)) == GaussQ(0)


def test_arrangement_errors():
    with pytest.raises(ArrangementError, match="linearly dependent"):
        arrangement_from_ideal(LinearIdeal.parse("1 + x + y; 2 + 2*x + 2*y"))
    with pytest.raises(ArrangementError, match="no common zero"):
        arrangement_from_ideal(LinearIdeal.parse("1 + x; 1 - x"))
    with pytest.raises(ArrangementError, match="to vanish"):
        arrangement_from_ideal(LinearIdeal.parse("1 + x + y; 1 + x"))
    assert not is_essential(LinearIdeal.parse("1 + x; 1 - x"))


def test_braid_ideal_is_essential():
    ideal = braid_ideal()
    assert ideal.n == 5 and is_essential(ideal)
    assert arrangement_from_ideal(ideal).dim == 2


def test_circuits_and_initial_ideals():
    ideal = LinearIdeal.parse("1 + x + y + z")
    assert len(circuits(ideal)) == 1
    init = initial_linear_ideal(ideal, (1, 0, 0))
    assert str(init) == "<1 + y + z>"
    assert initial_linear_ideal(ideal, (0, 0, 0)).same_ideal(ideal)
    assert str(initial_linear_ideal(LinearIdeal.parse("1 + 2*x + 3*y"), (-1, -1))) == "<2*x + 3*y>"


def test_saturation_flags():
    assert LinearIdeal.parse("1 + x*y + y").saturated_generators() == [True]
    assert LinearIdeal.parse("1 + x^2 + y").saturated_generators() == [False]
    assert LinearIdeal.parse("1 + x; 1 + x^2*y^2").saturated_generators() == [True, False]


# -- matroids -----------------------------------------------------------------


def test_uniform_matroid_polynomials():
    u23 = Matroid.uniform(2, 3)
    assert format_polynomial(characteristic_polynomial(u23)) == "t^2 - 3*t + 2"
    assert reduced_characteristic_polynomial(u23) == [1, -2]
    assert complement_betti(Matroid.uniform(3, 4)) == (1, 3, 3)


def test_braid_matroid():
    m = Matroid.from_arrangement(arrangement_from_ideal(braid_ideal()))
    assert characteristic_polynomial(m) == [1, -6, 11, -6]
    assert complement_betti(m) == (1, 5, 6)
    assert len(m.flats()) == 1 + 6 + 7 + 1


def test_loops_are_rejected():
    m = Matroid([(1, 0), (0, 0), (0, 1)])
    assert m.loops() == [1]
    with pytest.raises(LoopError):
        characteristic_polynomial(m)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_characteristic_polynomial_vanishes_at_one(seed):
    rng = random.Random(seed)
    ideal = random_essential_ideal(rng, max_hyperplanes=5, gaussian=False)
    m = Matroid.from_arrangement(arrangement_from_ideal(ideal))
    chi = characteristic_polynomial(m)
    assert chi[0] == 1 and sum(chi) == 0
    # coefficients alternate in sign
    assert all((-1) ** k * c >= 0 for k, c in enumerate(chi))


def test_bergman_fans():
    fan = bergman_fan(Matroid.uniform(2, 3))
    assert sorted(fan.rays.values()) == [(-1, -1), (0, 1), (1, 0)]
    fan = bergman_fan(Matroid.uniform(3, 4))
    assert len(fan.flags) == 23 and fan.dimension == 2
    assert check_balanced(fan.to_tropical_complex())[0]


# -- sign nerves --------------------------------------------------------------


def test_quadrant_products():
    ideal = LinearIdeal.parse("1 + x + y")
    assert not quadrant_product_feasible(ideal, ("i", "i"), level=1)
    assert quadrant_product_feasible(ideal, ("i", "j"), level=1)
    assert not quadrant_product_feasible(ideal, ("Q0", "Q0"))
    assert quadrant_product_feasible(ideal, ("Q1", "Q1"))


@pytest.mark.parametrize("text, betti", [("1 + x", (1,)), ("1 + x + y", (1, 2)), ("1 + x + y + z", (1, 3, 3))])
@pytest.mark.parametrize("level", [1, 2])
def test_sign_nerve_of_generic_arrangements(text, betti, level):
    assert sign_nerve(LinearIdeal.parse(text), level).betti() == betti


def test_sign_nerve_of_braid_arrangement():
    assert sign_nerve(braid_ideal(), 1).betti() == (1, 5, 6)


def test_beat_point_reduction_keeps_homology():
    ideal = LinearIdeal.parse("1 + x + y")
    full = sign_nerve(ideal, 2, reduce=False)
    small = sign_nerve(ideal, 2)
    assert len(small.vertices) < len(full.vertices)
    assert small.betti() == full.betti() == (1, 2)


def test_sign_nerve_input_checks():
    with pytest.raises(ValueError):
        realized_strata(LinearIdeal.parse("1 + x"), 3)
    with pytest.raises(ArrangementError):
        sign_nerve(LinearIdeal.parse("1 + x; 1 - x"))
