"""Command-line driver: ``pantsdecomp <command> ...``.

Exit codes are 0 on success, 2 when the input is certified negative (for
example not tropically smooth) and 1 on input or usage errors.  Every run
writes ``run.json`` into ``--out-dir`` echoing the parsed input, the
options and a hash of the JSON payload.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import warnings
from fractions import Fraction

from . import __version__
from .gaussian import GaussQ
from .parsing import ParseError, parse_terms, variable_order
from .polyhedra.matrix import primitive_integer_vector

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def to_jsonable(obj):
    """Exact JSON: rationals become ``[p, q]`` pairs, Gaussian rationals strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, GaussQ):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# commands; each returns (exit code, text lines, JSON payload, parsed input)


def cmd_tropicalize(args):
    from .tropical.cayley import certify_ci_smooth, intersect_hypersurfaces
    from .tropical.hypersurface import check_balanced, is_tropically_smooth, tropical_hypersurface
    from .tropical.polynomial import TropicalPolynomial

    pieces = [p for p in args.input.split(";") if p.strip()]
    if len(pieces) > 1:
        names = set()
        for p in pieces:
            for t in parse_terms(p):
                names.update(t.exponents)
        n = len(variable_order(names))
        system = [TropicalPolynomial.parse(p, n) for p in pieces]
        report = certify_ci_smooth(system)
        lines = [f"system of {len(system)} equations in {n} variables", report.summary()]
        payload = {"equations": [str(f) for f in system], "certified": report.smooth, "reason": report.reason}
        if report.smooth:
            inter = intersect_hypersurfaces(system)
            payload["intersection"] = inter.to_json()
            for c in inter.maximal_cells():
                lines.append(f"  cell {c.id}: vertices {[_fmt(v) for v in c.vertices]}, "
                             f"rays {[_fmt(r) for r in c.rays]}, weight {inter.weights.get(c.id)}")
        if report.non_stable:
            region, parts = report.non_stable
            lines.append(f"  initial supports {parts} at w in {[_fmt(v) for v in region.vertices()]}")
        return (EXIT_OK if report.smooth else EXIT_NEGATIVE), lines, payload, [str(f) for f in system]
    f = TropicalPolynomial.parse(args.input)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        t = tropical_hypersurface(f)
    lines = [f"warning: {w.message}" for w in caught]
    if not t.cells.cells:
        return EXIT_OK, lines + ["empty tropical hypersurface"], {"polynomial": str(f), "complex": t.to_json()}, str(f)
    ok, cert = check_balanced(t)
    rep = is_tropically_smooth(f)
    lines.append(f"tropical hypersurface of dimension {t.dimension} in R^{f.n}; f-vector {t.cells.f_vector()}")
    lines.append("vertices: " + " ".join(_fmt(v) for v in t.vertices()))
    for c in t.maximal_cells():
        lines.append(f"  cell {c.id}: vertices {' '.join(_fmt(v) for v in c.vertices)}"
                     + (f", rays {' '.join(_fmt(r) for r in c.rays)}" if c.rays else "")
                     + f", weight {t.weights[c.id]}")
    lines.append("balanced" if ok else "NOT balanced")
    for entry in cert:
        lines.append(f"  at {_fmt(entry.point)}: {entry.formula()}")
    payload = {
        "polynomial": str(f),
        "complex": t.to_json(),
        "balanced": ok,
        "balancing": [{"point": list(e.point), "formula": e.formula()} for e in cert],
        "smooth": rep.smooth,
    }
    if rep.smooth:
        lines.append("tropically smooth")
        for w, (support, basis, _) in sorted(rep.witnesses.items()):
            lines.append(f"  at {_fmt(w)}: unimodular basis {[list(b) for b in basis]}")
        payload["witnesses"] = [{"point": list(w), "basis": [list(b) for b in basis]}
                                for w, (_, basis, _) in sorted(rep.witnesses.items())]
        return EXIT_OK, lines, payload, str(f)
    w, init, reason = rep.counterexample
    lines.append(f"not tropically smooth at {_fmt(w)}: {reason}; initial form {init}")
    payload["counterexample"] = {"point": list(w), "initial_form": init, "reason": reason}
    return EXIT_NEGATIVE, lines, payload, str(f)


_SET = re.compile(r"\{([\d,\s]*)\}|\[(\d+)\]")


def parse_stratum(text: str) -> tuple[list[int], list[int]]:
    """``"{0},{0,1,2,3}"`` or ``"{0},[3]"`` (``[n]`` is ``{0..n}``) into ``(removed, support)``."""
    found = _SET.findall(text)
    if len(found) != 2 or _SET.sub("", text).replace(",", "").strip():
        raise ParseError(f"stratum must look like '{{0}},[3]' or '{{0}},{{0,1,2,3}}', got {text!r}")
    out = []
    for braces, bracket in found:
        if bracket:
            out.append(list(range(int(bracket) + 1)))
        else:
            out.append(sorted({int(x) for x in braces.split(",") if x.strip()}))
    return out[0], out[1]


def _generic_from_polynomial(text: str):
    """Angle complex of a single polynomial with n+1 terms in unimodular position."""
    from .angle.generic import generic_angle_complex
    from .angle.torus import apply_lattice_map
    from .tropical.dual import _chart
    from .tropical.polynomial import TropicalPolynomial

    f = TropicalPolynomial.parse(text)
    if len(f.terms) != f.n + 1:
        raise ParseError("explicit angle complexes need n+1 terms in n variables; use sign-nerve otherwise")
    chart = _chart(f, (), 0, list(range(len(f.terms))))
    if abs(chart.matrix.det()) != 1:
        raise ParseError("the exponent differences do not form a lattice basis")
    inv = chart.matrix.inverse()
    shift = [-x for x in inv.apply(chart.phase_offset)]
    return f.n, apply_lattice_map(generic_angle_complex(f.n), [[int(x) for x in r] for r in inv.tolist()], shift), str(f)


def cmd_angle_set(args):
    from .angle.generic import boundary_stratum_complex, generic_angle_complex
    from .angle.torus import kummer_thicken, scaled_period
    from .topology.homology import homology
    from .topology.torus_cw import cw_from_torus_complex

    if re.fullmatch(r"\s*\d+\s*", args.input):
        n = int(args.input)
        if args.stratum:
            removed, support = parse_stratum(args.stratum)
            t = boundary_stratum_complex(n, removed, support)
            desc = f"boundary stratum removed={removed} support={support} for n={n}"
        else:
            t = generic_angle_complex(n)
            desc = f"generic angle complex, n={n}"
        parsed = {"n": n}
    else:
        if args.stratum:
            raise ParseError("--stratum needs an integer n as input")
        n, t, text = _generic_from_polynomial(args.input)
        desc = f"angle complex of V({text})"
        parsed = {"polynomial": text}
    if args.kummer is not None:
        if args.kummer < 1:
            raise ParseError("--kummer needs a positive integer")
        t = kummer_thicken(t, scaled_period(t, args.kummer))
        desc += f", Kummer index {args.kummer}"
    h = homology(cw_from_torus_complex(t))
    lines = [desc, f"cells per dimension {t.f_vector()}, Euler characteristic {t.euler_characteristic()}",
             f"homology: {h}", f"Betti numbers {h.betti}"]
    if args.stratum and re.fullmatch(r"\s*\d+\s*", args.input):
        removed, support = parse_stratum(args.stratum)
        if support == list(range(n + 1)) and args.kummer is None:
            lines.append(f"subcomplex of the generic complex: {t.is_subcomplex_of(generic_angle_complex(n))}")
    if args.off:
        with open(args.off, "w") as fh:
            fh.write(t.to_off())
        lines.append(f"wrote {args.off} (OFF coordinates are rounded to 6 decimals for viewing only)")
    payload = {"description": desc, "complex": t.to_json(), "homology": h.to_json(), "betti": list(h.betti)}
    return EXIT_OK, lines, payload, parsed


def cmd_pants(args):
    from .topology.cw import cap_circle_strata, euler_characteristic
    from .topology.gluing import glue_hypersurface
    from .topology.homology import homology
    from .topology.pi1 import GROUPS, abelianization, commuting_tuples, count_homs, fundamental_group
    from .tropical.dual import NotSmoothError, dual_intersection_complex
    from .tropical.polynomial import TropicalPolynomial

    f = TropicalPolynomial.parse(args.input)
    groups = [g.strip().lower() for g in args.groups.split(",") if g.strip()] if args.groups else []
    unknown = [g for g in groups if g not in GROUPS]
    if unknown:
        raise ParseError(f"unknown groups {unknown}; choose from {sorted(GROUPS)}")
    try:
        diagram = dual_intersection_complex(f)
    except NotSmoothError as e:
        return EXIT_NEGATIVE, [str(e)], {"polynomial": str(f), "smooth": False, "reason": str(e)}, str(f)
    glued = glue_hypersurface(diagram, with_rays=args.cap)
    cw = glued.complex
    if args.cap:
        cw = cap_circle_strata(cw, glued.ray_circles())
    h = homology(cw)
    lines = [f"glued {len(diagram.vertices)} vertex pieces over {len(glued.strata)} bounded strata"
             + (f", capped {len(glued.ray_circles())} circles" if args.cap else ""),
             f"cells per dimension {cw.cell_counts()}, Euler characteristic {euler_characteristic(cw)}",
             f"homology: {h}", f"Betti numbers {h.betti}"]
    payload = {"polynomial": str(f), "homology": h.to_json(), "betti": list(h.betti),
               "euler_characteristic": euler_characteristic(cw),
               "cells": list(cw.cell_counts())}
    pres = fundamental_group(cw)
    rank, torsion = abelianization(pres)
    lines.append(f"fundamental group {pres}")
    lines.append(f"abelianization Z^{rank}" + "".join(f" + Z/{d}" for d in torsion))
    payload["pi1"] = pres.to_json()
    payload["abelianization"] = {"rank": rank, "torsion": list(torsion)}
    checks = {"H1 equals abelianization": (h.rank(1), h.torsion(1)) == (rank, torsion)}
    counts, versus = {}, {}
    for name in groups:
        g = GROUPS[name]()
        c = count_homs(pres, g)
        counts[name] = c
        if not torsion:
            ref = commuting_tuples(g, rank)
            versus[name] = c == ref
            lines.append(f"  homs into {g.name}: {c} (Z^{rank} gives {ref}: {'same' if c == ref else 'different'})")
        else:
            lines.append(f"  homs into {g.name}: {c}")
    payload["matches_free_abelian_counts"] = versus
    payload["hom_counts"] = counts
    payload["checks"] = checks
    lines.append("checks: " + ", ".join(f"{k}: {'ok' if v else 'differs'}" for k, v in checks.items()))
    return EXIT_OK, lines, payload, str(f)


def cmd_cayley(args):
    from .tropical.cayley import cayley_system, certify_ci_smooth, find_unimodular_heights

    try:
        degrees = [int(x) for x in args.degrees.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"degrees must be comma-separated integers, got {args.degrees!r}") from None
    if not degrees or any(d < 1 for d in degrees):
        raise ParseError("degrees must be positive integers")
    if args.heights:
        heights = [Fraction(x) for x in args.heights.split(",") if x.strip()]
    else:
        heights = find_unimodular_heights(args.n, degrees, seed=args.seed)
        if heights is None:
            return (EXIT_NEGATIVE, ["no certifying heights found by the search"],
                    {"n": args.n, "degrees": degrees, "certified": False}, {"n": args.n, "degrees": degrees})
    system = cayley_system(args.n, degrees, heights)
    report = certify_ci_smooth(system)
    lines = [f"n={args.n}, degrees {tuple(degrees)}, heights {[str(h) for h in heights]}", report.summary()]
    for c in report.intersection:
        where = _fmt(c.point) if c.point is not None else f"{c.dim}-dimensional cell"
        lines.append(f"  {where}: multiplicity {c.multiplicity}")
    payload = {
        "n": args.n, "degrees": degrees, "heights": heights, "certified": report.smooth,
        "reason": report.reason,
        "multiplicities": [c.multiplicity for c in report.intersection],
        "points": [list(p) for p in report.points()],
    }
    parsed = {"n": args.n, "degrees": degrees, "heights": [str(h) for h in heights]}
    return (EXIT_OK if report.smooth else EXIT_NEGATIVE), lines, payload, parsed


def _linear_inequality(text: str, names: list[str]):
    """``"x + y >= 1"`` into ``(a, b)`` meaning ``<a, w> <= b``."""
    m = re.fullmatch(r"(.*?)(<=|>=)(.*)", text.strip())
    if not m:
        raise ParseError(f"expected an inequality with <= or >=, got {text!r}")
    lhs, op, rhs = m.groups()
    coeffs = [Fraction(0)] * len(names)
    const = Fraction(0)
    for side, sign in ((lhs, 1), (rhs, -1)):
        for t in parse_terms(side):
            if t.t_power or t.generic or t.phase or not t.coefficient.is_real():
                raise ParseError(f"inequality terms must be real linear: {text!r}")
            if not t.exponents:
                const += sign * t.coefficient.re
                continue
            if len(t.exponents) != 1 or next(iter(t.exponents.values())) != 1:
                raise ParseError(f"inequality terms must be linear: {text!r}")
            v = next(iter(t.exponents))
            if v not in names:
                raise ParseError(f"unknown coordinate {v!r}")
            coeffs[names.index(v)] += sign * t.coefficient.re
    # lhs - rhs (op) 0
    if op == "<=":
        return coeffs, -const
    return [-c for c in coeffs], const


def _generator_order(inequality):
    a, b = inequality
    vec = primitive_integer_vector([b] + [-x for x in a])
    return -vec[0], tuple(vec[1:])


def cmd_model_chart(args):
    from .polyhedra.polyhedron import Polyhedron
    from .tropical.model_chart import NonSmoothChartError, model_chart, substitute
    from .tropical.polynomial import TropicalPolynomial

    f = TropicalPolynomial.parse(args.input)
    if bool(args.sigma_vertices) == bool(args.sigma_inequalities):
        raise UsageError("give exactly one of --sigma-vertices and --sigma-inequalities")
    if args.sigma_vertices:
        pts = [tuple(Fraction(x) for x in p.split(",")) for p in args.sigma_vertices.split(";") if p.strip()]
        if any(len(p) != f.n for p in pts):
            raise ParseError(f"vertices must have {f.n} coordinates")
        hull = Polyhedron.from_points(pts)
        # facets of a hull come in no particular order; name generators by descending t-power
        sigma = Polyhedron(f.n, sorted(hull.inequalities, key=_generator_order), hull.equalities)
        sigma_text = args.sigma_vertices
    else:
        ineqs = [_linear_inequality(s, f.names) for s in args.sigma_inequalities.split(";") if s.strip()]
        sigma = Polyhedron(f.n, ineqs)
        sigma_text = args.sigma_inequalities
    try:
        chart = model_chart(f, sigma)
    except NonSmoothChartError as e:
        return EXIT_NEGATIVE, [f"no smooth chart: {e}"], {"polynomial": str(f), "smooth": False, "reason": str(e)}, \
            {"polynomial": str(f), "sigma": sigma_text}
    lines = [f"relation: {chart.relation}"]
    lines += [f"  {name} = {sub}" for name, sub in chart.substitution.items()]
    lines.append(f"f = {chart.content_monomial()} * g")
    lines.append(f"g = {chart.g()}")
    for name, comp in chart.components.items():
        lines.append(f"  {name} = 0: {comp} = 0")
    back = sorted((v, m) for v, m, _ in substitute(chart, f))
    orig = sorted((t.valuation, t.exponent) for t in f.terms)
    lines.append("substitution reproduces f: " + ("yes" if back == orig else "no"))
    payload = {"polynomial": str(f), "relation": chart.relation, "substitution": chart.substitution,
               "content": chart.content_monomial(), "g": chart.g(), "components": chart.components}
    return EXIT_OK, lines, payload, {"polynomial": str(f), "sigma": sigma_text}


def cmd_sign_nerve(args):
    from .arrangements.ideal import LinearIdeal, arrangement_from_ideal
    from .arrangements.matroid import Matroid, characteristic_polynomial, complement_betti, format_polynomial
    from .arrangements.sign_nerve import sign_nerve

    ideal = LinearIdeal.parse(args.input)
    nerve = sign_nerve(ideal, args.level)
    betti = nerve.betti()
    m = Matroid.from_arrangement(arrangement_from_ideal(ideal))
    oracle = complement_betti(m)
    lines = [f"ideal {ideal}",
             f"level {args.level}: {len(nerve.patterns)} realized patterns, {len(nerve.cover_elements)} cover elements,"
             f" order complex on {len(nerve.vertices)} vertices with {len(nerve.simplices)} simplices",
             f"homology: {nerve.homology()}",
             f"characteristic polynomial {format_polynomial(characteristic_polynomial(m))}",
             f"Betti numbers {betti}; Orlik-Solomon {oracle}: " + ("agree" if betti == oracle else "DISAGREE")]
    payload = {"ideal": str(ideal), "nerve": nerve.to_json(), "betti": list(betti), "oracle_betti": list(oracle),
               "agree": betti == oracle}
    return (EXIT_OK if betti == oracle else EXIT_NEGATIVE), lines, payload, str(ideal)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pantsdecomp", description="Pair-of-pants decompositions from tropical data.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", metavar="PATH", help="write the full result as JSON")
        sp.add_argument("--out-dir", metavar="DIR", default=".", help="directory for run.json (default: .)")

    sp = sub.add_parser("tropicalize", help="tropical hypersurface, balancing and smoothness (';' separates a system)")
    sp.add_argument("input")
    common(sp)
    sp = sub.add_parser("angle-set", help="angle complex of the generic pair of pants")
    sp.add_argument("input", help="n, or a polynomial with n+1 terms in unimodular position")
    sp.add_argument("--kummer", type=int, metavar="M", help="re-periodise by M times the period lattice")
    sp.add_argument("--stratum", metavar="I,J", help="boundary stratum, e.g. '{0},[3]'")
    sp.add_argument("--off", metavar="PATH", help="write the fundamental domain as OFF (n <= 3)")
    common(sp)
    sp = sub.add_parser("pants", help="glue the pair-of-pants decomposition and compute invariants")
    sp.add_argument("input")
    sp.add_argument("--cap", action="store_true", help="cap the circles at unbounded rays (curves only)")
    sp.add_argument("--groups", metavar="LIST", default="", help="finite groups for hom counts, e.g. s3,d4,q8,a4")
    common(sp)
    sp = sub.add_parser("cayley", help="certify a complete intersection through its Cayley polytope")
    sp.add_argument("n", type=int)
    sp.add_argument("degrees", help="comma-separated degrees, e.g. 1,1")
    sp.add_argument("--heights", help="comma-separated heights of the lattice points (default: searched)")
    sp.add_argument("--seed", type=int, default=0, help="seed for the height search")
    common(sp)
    sp = sub.add_parser("model-chart", help="local chart of the polyhedral model over a cell")
    sp.add_argument("input")
    sp.add_argument("--sigma-vertices", metavar="PTS", help="vertices, e.g. '1,1;1,0;0,1'")
    sp.add_argument("--sigma-inequalities", metavar="INEQS", help="inequalities, e.g. 'x<=1; y<=1; x+y>=1'")
    common(sp)
    sp = sub.add_parser("sign-nerve", help="sign-pattern nerve of a linear ideal with an Orlik-Solomon check")
    sp.add_argument("input", help="generators separated by ';'")
    sp.add_argument("--level", type=int, choices=(1, 2), default=2)
    common(sp)
    return p


COMMANDS = {
    "tropicalize": cmd_tropicalize,
    "angle-set": cmd_angle_set,
    "pants": cmd_pants,
    "cayley": cmd_cayley,
    "model-chart": cmd_model_chart,
    "sign-nerve": cmd_sign_nerve,
}


def _write_manifest(args, parsed, code: int, payload_text: str) -> None:
    import os
    import platform

    options = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "input", "out_dir")}
    manifest = {
        "command": args.command,
        "input": getattr(args, "input", None),
        "parsed_input": to_jsonable(parsed),
        "options": to_jsonable(options),
        "exit_code": code,
        "result_sha256": hashlib.sha256(payload_text.encode()).hexdigest(),
        "versions": {"pantsdecomp": __version__, "python": ".".join(platform.python_version_tuple()[:2])},
    }
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "run.json"), "w") as fh:
        fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    try:
        code, lines, payload, parsed = COMMANDS[args.command](args)
    except (ParseError, UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        text = json.dumps({"error": str(e), "exit_code": EXIT_ERROR}, indent=1, sort_keys=True)
        _write_manifest(args, None, EXIT_ERROR, text)
        return EXIT_ERROR
    payload = dict(payload, exit_code=code)
    text = json.dumps(to_jsonable(payload), indent=1, sort_keys=True)
    for line in lines:
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    _write_manifest(args, parsed, code, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
