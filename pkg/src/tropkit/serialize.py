"""JSON (de)serialization for polytopes, fans, polynomials and polytope bases."""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .errors import ParseError
from .fan import Cone, Fan, WeightedFan, validate_fan
from .lattice import normalize_number
from .polytope import LatticePolytope, convex_hull
from .tropical import GENERIC, LaurentPolynomial


def _number(x):
    if isinstance(x, bool):
        raise ParseError(f"expected a number, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return normalize_number(Fraction(x))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not an exact number: {x!r}") from None
    raise ParseError(f"expected an integer or a fraction string, got {x!r}")


def _field(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise ParseError(f"field {key!r} has the wrong type")
    return val


def _vectors(rows, n, what):
    if not isinstance(rows, list):
        raise ParseError(f"{what} must be a list")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise ParseError(f"{what} entry {r!r} is not a vector of length {n}")
        out.append(tuple(_number(x) for x in r))
    return out


def load_source(text: str):
    """Inline JSON, or the path of a JSON file."""
    stripped = text.lstrip()
    if stripped[:1] in ("{", "["):
        raw = text
    elif os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raise ParseError(f"{text!r} is neither inline JSON nor an existing file")
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None


def dumps(obj) -> str:
    """Canonical JSON text used by every command."""
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


# polytopes


def polytope_to_json(P: LatticePolytope) -> dict:
    return P.to_json()


def polytope_from_json(obj) -> LatticePolytope:
    n = _field(obj, "dim", int)
    verts = _vectors(_field(obj, "vertices", list), n, "vertices")
    if not verts:
        raise ParseError("a polytope needs at least one vertex")
    return convex_hull(verts)


def basis_from_json(obj) -> list[LatticePolytope]:
    if not isinstance(obj, list) or not obj:
        raise ParseError("a basis is a nonempty list of polytopes")
    return [polytope_from_json(p) for p in obj]


# fans


def _cones(obj):
    n = _field(obj, "dim", int)
    entries = _field(obj, "cones", list)
    out = []
    for e in entries:
        gens = _vectors(_field(e, "generators", list), n, "generators")
        if any(not isinstance(x, int) for g in gens for x in g):
            raise ParseError("cone generators must be integer vectors")
        w = Fraction(_number(e.get("weight", 1)))
        out.append((Cone.from_generators(gens, n), w))
    return n, out


def fan_from_json(obj) -> Fan:
    n, pairs = _cones(obj)
    return validate_fan([c for c, _ in pairs], n)


def weighted_fan_from_json(obj) -> WeightedFan:
    """Weights default to 1; ``d`` defaults to the largest cone dimension."""
    n, pairs = _cones(obj)
    d = obj.get("d")
    if d is None:
        d = max((c.dim for c, _ in pairs), default=n - 1)
    elif not isinstance(d, int) or isinstance(d, bool):
        raise ParseError("field 'd' must be an integer")
    validate_fan([c for c, _ in pairs], n)
    return WeightedFan.from_weighted_cones(pairs, n, d)


def fan_to_json(f) -> dict:
    return f.to_json()


# polynomials


def polynomial_to_json(f: LaurentPolynomial) -> dict:
    return f.to_json()


def polynomial_from_json(obj) -> LaurentPolynomial:
    n = _field(obj, "n", int)
    terms = {}
    for t in _field(obj, "terms", list):
        exp = _field(t, "exp", list)
        if len(exp) != n or not all(isinstance(e, int) and not isinstance(e, bool) for e in exp):
            raise ParseError(f"exponent {exp!r} is not an integer vector of length {n}")
        coef = t.get("coef", "1")
        c = GENERIC if coef == "generic" else Fraction(_number(coef))
        terms[tuple(exp)] = c
    return LaurentPolynomial(n, terms)
