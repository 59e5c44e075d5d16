"""Laurent polynomials, their Newton polytopes and tropical hypersurfaces.

Coefficients are exact rationals or the marker :data:`GENERIC`; counting is
purely combinatorial, so numeric coefficients are never inspected for
degeneracy.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError, ParseError
from .fan import Cone, Fan, ShiftPolicy, WeightedFan, stable_intersection_number, validate_fan
from .lattice import normalize_number, primitive
from .polytope import LatticePolytope, convex_hull, edges, mixed_volume


class _Generic:
    """Symbolic generic coefficient; absorbs any arithmetic with it."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "GENERIC"

    def __str__(self):
        return "generic"


GENERIC = _Generic()


def _add(a, b):
    if a is GENERIC or b is GENERIC:
        return GENERIC
    return a + b


def _mul(a, b):
    if a is GENERIC or b is GENERIC:
        return GENERIC
    return a * b


class LaurentPolynomial:
    """Finite map from exponent vectors in Z^n to nonzero coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping):
        clean = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise DomainError(f"exponent {exp} does not have length {n}")
            c = c if c is GENERIC else Fraction(c)
            if exp in clean:
                c = _add(clean[exp], c)
            clean[exp] = c
        clean = {e: c for e, c in clean.items() if c is GENERIC or c != 0}
        if not clean:
            raise DomainError("empty polynomial: every coefficient is zero")
        self.n = n
        self.terms = dict(sorted(clean.items()))

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and (self.n, self.terms) == (other.n, other.terms)

    def __hash__(self):
        return hash((self.n, tuple(self.terms.items())))

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r})"

    def support(self) -> list[tuple]:
        return list(self.terms)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if self.n != other.n:
            raise DomainError("product of polynomials in different numbers of variables")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = _mul(c1, c2)
                out[e] = _add(out[e], c) if e in out else c
        return LaurentPolynomial(self.n, out)

    def __str__(self):
        names = _names(self.n)
        parts = []
        for exp, c in self.terms.items():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            if c is GENERIC:
                coef = "g"
            elif c == 1 and factors:
                coef = ""
            elif c == -1 and factors:
                coef = "-"
            else:
                coef = str(c)
            body = "*".join(factors)
            if coef in ("", "-"):
                parts.append(coef + body)
            else:
                parts.append(coef + ("*" + body if body else ""))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def to_json(self):
        return {
            "n": self.n,
            "terms": [
                {"exp": list(e), "coef": "generic" if c is GENERIC else str(c)}
                for e, c in self.terms.items()
            ],
        }


def _names(n):
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{i + 1}" for i in range(n)]


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+|\.\d+)?)|(?P<var>x\d+|[xyz])|(?P<gen>g)|(?P<op>[-+*^()]))"
)


def _tokenize(text):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def polynomial(self):
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        terms.append(self.term(sign))
        while True:
            kind, val, pos = self.peek()
            if kind == "end":
                return terms
            if kind == "op" and val in "+-":
                self.take()
                terms.append(self.term(-1 if val == "-" else 1))
            else:
                raise ParseError(f"unexpected {val!r}", pos)

    def term(self, sign):
        powers = {}
        coef_box = [Fraction(sign)]
        self.factor(powers, coef_box)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                self.factor(powers, coef_box)
            elif kind in ("num", "var", "gen"):
                self.factor(powers, coef_box)
            else:
                return coef_box[0], powers

    def factor(self, powers, coef_box):
        kind, val, pos = self.take()
        if kind == "num":
            coef_box[0] = _mul(coef_box[0], Fraction(val))
        elif kind == "gen":
            coef_box[0] = GENERIC
        elif kind == "var":
            e = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                e = self.exponent()
            powers[(val, pos)] = e
        else:
            raise ParseError(f"expected a coefficient or variable, got {val or 'end of input'!r}", pos)

    def exponent(self):
        kind, val, pos = self.take()
        paren = kind == "op" and val == "("
        if paren:
            kind, val, pos = self.take()
        sign = 1
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            kind, val, pos = self.take()
        if kind != "num" or not val.isdigit():
            raise ParseError("exponent must be an integer", pos)
        if paren:
            self.expect_op(")")
        return sign * int(val)


def _var_index(name):
    return {"x": 0, "y": 1, "z": 2}[name] if len(name) == 1 else int(name[1:]) - 1


def parse_laurent(text: str, n: int | None = None) -> LaurentPolynomial:
    """Parse ``"x^-1*y^2 + 3 - g*x"`` style input.

    Variables are ``x, y, z`` or ``x1 .. xn`` (not mixed); ``g`` is a generic
    coefficient.  ``n`` fixes the number of variables, otherwise it is the
    largest variable index used (at least 1).
    """
    raw = _Parser(text).polynomial()
    styles = set()
    terms = []
    top = 0
    for coef, powers in raw:
        exps = {}
        for (name, pos), e in powers.items():
            styles.add(len(name) > 1)
            if len(styles) > 1:
                raise ParseError("mixing x,y,z with indexed variables x1..xn", pos)
            idx = _var_index(name)
            if idx < 0:
                raise ParseError("variables are indexed from x1", pos)
            exps[idx] = exps.get(idx, 0) + e
            top = max(top, idx + 1)
        terms.append((coef, exps))
    if n is None:
        n = max(top, 1)
    elif top > n:
        raise ParseError(f"variable index {top} exceeds n = {n}", 0)
    out = {}
    for coef, exps in terms:
        exp = tuple(exps.get(i, 0) for i in range(n))
        out[exp] = _add(out[exp], coef) if exp in out else coef
    return LaurentPolynomial(n, out)


# --------------------------------------------------------------------------
# Newton polytopes and tropical hypersurfaces


def newton_polytope(f: LaurentPolynomial) -> LatticePolytope:
    return convex_hull(f.support())


@dataclass(frozen=True)
class TropicalHypersurface:
    """Weighted (n-1)-fan dual to the edges of a Newton polytope."""

    weighted: WeightedFan
    source_polytope: LatticePolytope


def _orthants(n):
    for signs in range(1 << n):
        yield [tuple((-1 if signs >> i & 1 else 1) * int(i == j) for j in range(n)) for i in range(n)]


def _edge_cones(P: LatticePolytope, i: int, j: int) -> list[Cone]:
    n = P.ambient_dim
    v, w = P.vertices[i], P.vertices[j]
    eqs = [tuple(b - a for a, b in zip(v, w))]
    ineqs = [tuple(b - a for a, b in zip(v, u)) for u in P.vertices if u != v]
    if P.dim == n:
        return [Cone.from_hrep(eqs, ineqs, n)]
    # the normal cone contains a line; split it along the coordinate orthants
    pieces = set()
    for orth in _orthants(n):
        c = Cone.from_hrep(eqs, ineqs + orth, n)
        if c.dim == n - 1:
            pieces.add(c)
    return sorted(pieces, key=Cone.sort_key)


def tropical_hypersurface(f: LaurentPolynomial) -> TropicalHypersurface:
    """Cones of functionals minimized on an edge, weighted by its lattice length.

    Lower-dimensional Newton polytopes give normal cones with lineality; those
    are subdivided by the coordinate orthants so every cone stays pointed.
    """
    P = newton_polytope(f)
    n = f.n
    if P.dim == 0:
        return TropicalHypersurface(WeightedFan(Fan(n, frozenset()), n - 1, {}), P)
    pairs = []
    for i, j in edges(P):
        _, length = primitive(tuple(b - a for a, b in zip(P.vertices[i], P.vertices[j])))
        pairs.extend((c, length) for c in _edge_cones(P, i, j))
    return TropicalHypersurface(WeightedFan.from_weighted_cones(pairs, n, n - 1), P)


def bkk_count(fs: Sequence[LaurentPolynomial]):
    """``n!`` times the mixed volume of the Newton polytopes."""
    n = len(fs)
    if n == 0 or any(f.n != n for f in fs):
        raise DomainError("BKK count needs n polynomials in n variables")
    return normalize_number(math.factorial(n) * mixed_volume([newton_polytope(f) for f in fs]))


def bkk_via_fans(fs: Sequence[LaurentPolynomial], shift_policy: ShiftPolicy | None = None):
    """Stable intersection number of the two tropical curves (plane case only)."""
    if len(fs) != 2 or any(f.n != 2 for f in fs):
        raise DomainError("unsupported dimension: the fan route is implemented for n = 2 only")
    a, b = (tropical_hypersurface(f).weighted for f in fs)
    return stable_intersection_number(a, b, shift_policy)


def verify_bergman_shape(t) -> bool:
    """Pure of dimension n-1 and a valid fan.

    Accepts a :class:`TropicalHypersurface`, a :class:`WeightedFan` or a
    :class:`Fan`.
    """
    if isinstance(t, TropicalHypersurface):
        t = t.weighted
    fan = t.fan if isinstance(t, WeightedFan) else t
    n = fan.ambient_dim
    maxi = fan.maximal_cones()
    if any(c.dim != n - 1 for c in maxi):
        return False
    try:
        validate_fan(maxi, n)
    except DomainError:
        return False
    return True
