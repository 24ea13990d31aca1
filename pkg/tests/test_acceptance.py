"""Acceptance checks, one per numbered criterion.

Each check prints a single ``criterion N: PASS`` or ``criterion N: FAIL``
line with the measured values and wall time, then asserts.  Run with
``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import random
import time
from math import comb

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_smith

from pantsdecomp.angle.generic import generic_angle_complex, removed_zonotope
from pantsdecomp.angle.torus import kummer_thicken, scaled_period
from pantsdecomp.arrangements.ideal import arrangement_from_ideal
from pantsdecomp.arrangements.matroid import Matroid, bergman_fan, complement_betti
from pantsdecomp.arrangements.random_arrangements import random_essential_ideal
from pantsdecomp.arrangements.sign_nerve import sign_nerve
from pantsdecomp.polyhedra.normal_forms import smith_int
from pantsdecomp.polyhedra.polyhedron import Polyhedron, face_lattice
from pantsdecomp.topology.cw import cap_circle_strata, euler_characteristic
from pantsdecomp.topology.gluing import glue_colimit, glue_hypersurface, identification_count
from pantsdecomp.topology.homology import homology
from pantsdecomp.topology.pi1 import GROUPS, abelianization, commuting_tuples, count_homs, fundamental_group
from pantsdecomp.topology.torus_cw import cw_from_torus_complex
from pantsdecomp.tropical.cayley import cayley_system, certify_ci_smooth, intersect_hypersurfaces
from pantsdecomp.tropical.dual import dual_intersection_complex
from pantsdecomp.tropical.hypersurface import check_balanced, is_tropically_smooth, tropical_hypersurface
from pantsdecomp.tropical.model_chart import model_chart
from pantsdecomp.tropical.polynomial import TropicalPolynomial

MULTIPLICITY_CURVE = "t^5*x^3 + t^2*x^2*y + x*y^2 + t*y^3 + t^4*x^2 + x*y + y^2 + t*x + t*y + 1"
ELLIPTIC = "t^4*x^3 + x^2*y + x*y^2 + t^4*y^3 + t^2*x^2 + x*y + t^2*y^2 + t*x + t*y + t^3"
SURFACE = "1+x+y+z+t*x^2"
CAYLEY_HEIGHTS = {
    (2, (1, 1)): [6, 12, 6, 0, 4, 8],
    (2, (2, 1)): [1, 0, 9, 0, 3, 2, 11, 1, 7],
    (3, (1, 1)): [6, 12, 6, 0, 4, 8, 7, 6],
}


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line past pytest's capture, then assert."""

    def emit(number: int, ok: bool, detail: str, seconds: float) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({seconds:.1f} s) {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def trimmed(betti) -> tuple:
    b = list(betti)
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    return tuple(b)


def betti_of(t) -> tuple:
    return trimmed(homology(cw_from_torus_complex(t)).betti)


def test_criterion_1_generic_angle_complexes(report):
    start = time.time()
    parts, ok = [], True
    for n, limit in ((2, 10), (3, 10), (4, 300)):
        t0 = time.time()
        got = betti_of(generic_angle_complex(n))
        spent = time.time() - t0
        want = tuple(comb(n, k) for k in range(n))
        oracle = complement_betti(Matroid.uniform(n, n + 1))
        ok &= got == want == oracle and spent < limit
        parts.append(f"n={n} betti {got} oracle {oracle} in {spent:.1f}s")
    report(1, ok, "; ".join(parts), time.time() - start)


def test_criterion_2_zonotope_faces(report):
    start = time.time()
    f = face_lattice(removed_zonotope(3)).f_vector()
    report(2, f[:3] == (14, 24, 12), f"rhombic dodecahedron f-vector {f[:3]}", time.time() - start)


def test_criterion_3_kummer_thickenings(report):
    start = time.time()
    parts, ok = [], True
    for n, ms, k, formula in ((2, (2, 3, 4, 5), 1, lambda m: m * m + 1), (3, (2, 3), 2, lambda m: m ** 3 + 2)):
        base = generic_angle_complex(n)
        for m in ms:
            t0 = time.time()
            b = betti_of(kummer_thicken(base, scaled_period(base, m)))
            spent = time.time() - t0
            ok &= b[k] == formula(m) and spent < 120
            parts.append(f"n={n} m={m} b{k}={b[k]}")
    report(3, ok, ", ".join(parts), time.time() - start)


def test_criterion_4_curve_with_multiplicities(report):
    start = time.time()
    f = TropicalPolynomial.parse(MULTIPLICITY_CURVE)
    t = tropical_hypersurface(f)
    verts = set(t.vertices())
    heavy = {(c.vertices, c.rays) for c in t.maximal_cells() if t.weights[c.id] == 2}
    light = sum(1 for c in t.maximal_cells() if t.weights[c.id] == 1)
    balanced, cert = check_balanced(t)
    formula = {e.point: e.formula() for e in cert}.get((-2, 1))
    rep = is_tropically_smooth(f)
    witness = rep.counterexample[:2] if rep.counterexample else None
    ok = (verts == {(-2, 0), (-2, 1), (-1, 1), (0, -1), (0, 0)}
          and heavy == {(((-2, 1),), ((0, 1),)), (((0, 0),), ((1, 0),))} and light == 10
          and balanced and formula == "1·(-1,-1)+1·(0,-1)+1·(1,0)+2·(0,1)=0"
          and not rep.smooth and witness == ((-2, 1), "x^3 + x^2*y + x*y + x"))
    spent = time.time() - start
    report(4, ok and spent < 5, f"{len(verts)} vertices, 2 edges of weight 2, at (-2,1): {formula}; "
           f"non-smooth witness {witness[1] if witness else None}", spent)


def test_criterion_5_smoothness_certificates(report):
    start = time.time()
    a = is_tropically_smooth(TropicalPolynomial.parse("1+x+y+t*x*y"))
    b = is_tropically_smooth(TropicalPolynomial.parse(SURFACE))
    ok = (a.smooth and {w: v[1] for w, v in a.witnesses.items()} == {(0, 0): [(1, 0), (0, 1)],
                                                                     (-1, -1): [(0, 1), (-1, 1)]}
          and b.smooth and b.witnesses[(-1, -1, -1)][1] == [(1, 0, 0), (-1, 1, 0), (-1, 0, 1)]
          and b.witnesses[(0, 0, 0)][1] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    parts = ["witness bases match" if ok else "witness bases differ"]
    for (n, degrees), heights in CAYLEY_HEIGHTS.items():
        t0 = time.time()
        r = certify_ci_smooth(cayley_system(n, degrees, heights))
        spent = time.time() - t0
        ok &= r.smooth and r.multiplicities_one and spent < 60
        parts.append(f"n={n} degrees {degrees}: {len(r.intersection)} mixed cells, multiplicities "
                     f"{sorted({c.multiplicity for c in r.intersection})}")
    report(5, ok, "; ".join(parts), time.time() - start)


def test_criterion_6_model_chart(report):
    start = time.time()
    f = TropicalPolynomial.parse(ELLIPTIC)
    chart = model_chart(f, Polyhedron(2, [((1, 0), 1), ((0, 1), 1), ((-1, -1), -1)]))
    got = (chart.relation, f"f = {chart.content_monomial()}*g", chart.components["w"], chart.components["u"])
    want = ("u*v*w = t", "f = u*v*w^2*g", "u + v + 1", "v*w + v + 1")
    spent = time.time() - start
    report(6, got == want and spent < 5, f"{got[0]}; {got[1]}; g = {chart.g()}; w=0: {got[2]} = 0; "
           f"u=0: {got[3]} = 0", spent)


def test_criterion_7_glued_surface(report):
    start = time.time()
    glued = glue_hypersurface(dual_intersection_complex(TropicalPolynomial.parse(SURFACE)))
    h = homology(glued.complex)
    pres = fundamental_group(glued.complex)
    ab = abelianization(pres)
    counts = {name: (count_homs(pres, make()), commuting_tuples(make(), 3)) for name, make in GROUPS.items()}
    ok = h.rank(1) == 3 and not h.torsion(1) and ab == (3, ()) and all(c == z for c, z in counts.values())
    spent = time.time() - start
    report(7, ok and spent < 300, f"H1 rank {h.rank(1)} torsion {h.torsion(1)}, abelianized pi1 {ab}, "
           f"hom counts {counts}", spent)


def test_criterion_8_elliptic_curve(report):
    start = time.time()
    glued = glue_hypersurface(dual_intersection_complex(TropicalPolynomial.parse(ELLIPTIC)), with_rays=True)
    open_betti = trimmed(homology(glued.complex).betti)
    chi = euler_characteristic(glued.complex)
    closed = cap_circle_strata(glued.complex, glued.ray_circles())
    closed_betti = trimmed(homology(closed).betti)
    spent = time.time() - start
    ok = open_betti == (1, 10) and chi == -9 and closed_betti == (1, 2, 1)
    report(8, ok and spent < 300, f"open betti {open_betti} chi {chi}; capped betti {closed_betti}", spent)


def test_criterion_9_sign_nerve_against_oracle(report):
    start = time.time()
    rng = random.Random(2024)
    mismatches, sizes = [], []
    for k in range(20):
        ideal = random_essential_ideal(rng, max_hyperplanes=6, max_rank=3)
        arr = arrangement_from_ideal(ideal)
        sizes.append(len(arr.hyperplanes))
        oracle = complement_betti(Matroid.from_arrangement(arr))
        got = sign_nerve(ideal, level=2).betti()
        if got != oracle:
            mismatches.append((k, got, oracle))
    spent = time.time() - start
    report(9, not mismatches and spent < 600,
           f"20 arrangements with {min(sizes)}..{max(sizes)} hyperplanes, mismatches {mismatches}", spent)


def _glued_order_independent() -> bool:
    glued = glue_hypersurface(dual_intersection_complex(TropicalPolynomial.parse(SURFACE)))
    ref = trimmed(homology(glued.complex).betti)
    rng = random.Random(11)
    for _ in range(3):
        chains = list(range(5))
        rng.shuffle(chains)
        if trimmed(homology(glue_hypersurface(glued.diagram, order=chains).complex).betti) != ref:
            return False
        pairs = list(range(identification_count(glued.strata)))
        rng.shuffle(pairs)
        if trimmed(homology(glue_colimit(glued.pieces, glued.strata, pairs)).betti) != ref:
            return False
    return True


def test_criterion_10_structural_properties(report):
    start = time.time()
    notes, ok = [], True

    # boundary squared vanishes: CWComplex.check raises otherwise
    t0 = time.time()
    complexes = [cw_from_torus_complex(generic_angle_complex(n)) for n in (1, 2, 3)]
    base = generic_angle_complex(2)
    complexes.append(cw_from_torus_complex(kummer_thicken(base, scaled_period(base, 3))))
    for text in ("1+x+y", SURFACE, ELLIPTIC):
        complexes.append(glue_hypersurface(dual_intersection_complex(TropicalPolynomial.parse(text))).complex)
    complexes.append(sign_nerve(random_essential_ideal(random.Random(5)), 2).to_cw())
    for c in complexes:
        c.check()
    suite = time.time() - t0
    ok &= suite < 120
    notes.append(f"d^2=0 on {len(complexes)} complexes ({suite:.1f}s)")

    # balancing on every tropical output
    t0 = time.time()
    tropical = [tropical_hypersurface(TropicalPolynomial.parse(s))
                for s in ("1+x+y", "1+x+y+t*x*y", MULTIPLICITY_CURVE, ELLIPTIC, SURFACE)]
    tropical += [intersect_hypersurfaces(cayley_system(n, d, h)) for (n, d), h in CAYLEY_HEIGHTS.items()]
    tropical += [bergman_fan(Matroid.uniform(r, r + 1)).to_tropical_complex() for r in (2, 3)]
    balanced = all(check_balanced(t)[0] for t in tropical)
    suite = time.time() - t0
    ok &= balanced and suite < 120
    notes.append(f"balancing on {len(tropical)} complexes {balanced} ({suite:.1f}s)")

    # Smith normal form re-multiplication, with sympy as an independent oracle
    t0 = time.time()
    rng = random.Random(10)
    snf_ok = True
    for _ in range(100):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        a = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        left, d, right = smith_int(a)
        prod = [[sum(left[i][k] * sum(a[k][l] * right[l][j] for l in range(c)) for k in range(r))
                 for j in range(c)] for i in range(r)]
        ref = sympy_smith(sympy.Matrix(a), domain=sympy.ZZ)
        ours = [d[i][i] for i in range(min(r, c)) if d[i][i]]
        theirs = [abs(int(ref[i, i])) for i in range(min(r, c)) if ref[i, i] != 0]
        snf_ok &= prod == d and ours == theirs
    suite = time.time() - t0
    ok &= snf_ok and suite < 120
    notes.append(f"SNF on 100 matrices {snf_ok} ({suite:.1f}s)")

    t0 = time.time()
    glue_ok = _glued_order_independent()
    suite = time.time() - t0
    ok &= glue_ok and suite < 120
    notes.append(f"gluing order independence {glue_ok} ({suite:.1f}s)")
    report(10, ok, "; ".join(notes), time.time() - start)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
