"""JSON round-tripping for rationals, polyhedra and polyhedral complexes.

Rationals are written as ``[numerator, denominator]`` integer pairs so
that a dump followed by a load reproduces every value bit-exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .polyhedron import PolyCell, PolyComplex, Polyhedron


def rational_to_json(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def rational_from_json(pair) -> Fraction:
    num, den = pair
    return Fraction(int(num), int(den))


def vector_to_json(v) -> list:
    return [rational_to_json(x) for x in v]


def vector_from_json(v) -> tuple:
    return tuple(rational_from_json(x) for x in v)


def polyhedron_to_json(p: Polyhedron) -> dict:
    return {
        "ambient_dim": p.ambient_dim,
        "inequalities": [{"normal": vector_to_json(a), "offset": rational_to_json(b)} for a, b in p.inequalities],
        "equalities": [{"normal": vector_to_json(a), "offset": rational_to_json(b)} for a, b in p.equalities],
    }


def polyhedron_from_json(d: dict) -> Polyhedron:
    return Polyhedron(
        d["ambient_dim"],
        [(vector_from_json(c["normal"]), rational_from_json(c["offset"])) for c in d["inequalities"]],
        [(vector_from_json(c["normal"]), rational_from_json(c["offset"])) for c in d["equalities"]],
    )


def cell_to_json(c: PolyCell) -> dict:
    out = {
        "id": c.id,
        "dim": c.dim,
        "vertices": [vector_to_json(v) for v in c.vertices],
        "rays": [vector_to_json(r) for r in c.rays],
        "faces": list(c.faces),
    }
    if c.lineality:
        out["lineality"] = [vector_to_json(r) for r in c.lineality]
    if c.support:
        out["support"] = list(c.support)
    return out


def cell_from_json(d: dict) -> PolyCell:
    return PolyCell(
        d["id"],
        d["dim"],
        tuple(vector_from_json(v) for v in d["vertices"]),
        tuple(vector_from_json(r) for r in d["rays"]),
        tuple(d["faces"]),
        tuple(vector_from_json(r) for r in d.get("lineality", ())),
        tuple(d.get("support", ())),
    )


def complex_to_json(c: PolyComplex) -> dict:
    return {"ambient_dim": c.ambient_dim, "cells": [cell_to_json(x) for x in c.cells]}


def complex_from_json(d: dict) -> PolyComplex:
    return PolyComplex(d["ambient_dim"], [cell_from_json(x) for x in d["cells"]])


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
