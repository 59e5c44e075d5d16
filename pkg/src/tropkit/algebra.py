"""Volume polynomials and the graded algebra of differential operators modulo
the annihilator of a homogeneous polynomial.

Operators are constant-coefficient polynomials in the partial derivatives,
given as ``{exponent_tuple: coefficient}``.  Graded dimensions are ranks of
catalecticant matrices, computed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError
from .lattice import normalize_number, rank
from .polytope import LatticePolytope, convex_hull, minkowski_sum, mixed_volume, scale, volume


def monomials(m: int, degree: int):
    """Exponent tuples of all degree-``degree`` monomials in ``m`` variables (lex order)."""
    if degree < 0:
        return []
    if m == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        out.extend((first,) + rest for rest in monomials(m - 1, degree - first))
    return out


@dataclass(frozen=True)
class HomogeneousPolynomial:
    num_vars: int
    degree: int
    coefficients: tuple  # sorted (exponent, Fraction) pairs, zeros dropped

    @classmethod
    def from_dict(cls, num_vars: int, degree: int, coeffs: Mapping) -> "HomogeneousPolynomial":
        items = []
        for exp, c in coeffs.items():
            exp = tuple(exp)
            if len(exp) != num_vars or sum(exp) != degree:
                raise DomainError(f"monomial {exp} is not of degree {degree} in {num_vars} variables")
            c = Fraction(c)
            if c:
                items.append((exp, c))
        return cls(num_vars, degree, tuple(sorted(items, reverse=True)))

    def as_dict(self) -> dict:
        return dict(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, point: Sequence):
        total = Fraction(0)
        for exp, c in self.coefficients:
            term = c
            for x, e in zip(point, exp):
                term *= Fraction(x) ** e
            total += term
        return normalize_number(total)

    def coefficient(self, exp) -> Fraction:
        return self.as_dict().get(tuple(exp), Fraction(0))

    def to_json(self) -> dict:
        return {_monomial_name(e): str(c) for e, c in self.coefficients}


def _monomial_name(exp) -> str:
    parts = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e]
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class PolytopeBasis:
    """Polytopes spanning a finite-dimensional space of virtual polytopes."""

    polytopes: tuple

    def __post_init__(self):
        if not self.polytopes:
            raise DomainError("a polytope basis needs at least one polytope")
        dims = {P.ambient_dim for P in self.polytopes}
        if len(dims) != 1:
            raise DomainError("basis polytopes live in different dimensions")
        object.__setattr__(self, "polytopes", tuple(self.polytopes))

    @property
    def ambient_dim(self) -> int:
        return self.polytopes[0].ambient_dim

    def combination(self, coeffs: Sequence[int]) -> LatticePolytope:
        """``sum c_i P_i`` for nonnegative coefficients (not all zero)."""
        out = None
        for c, P in zip(coeffs, self.polytopes):
            if c:
                term = scale(P, c)
                out = term if out is None else minkowski_sum(out, term)
        if out is None:
            return convex_hull([(0,) * self.ambient_dim])
        return out


@dataclass(frozen=True)
class HilbertFunction:
    values: tuple


def volume_polynomial(basis) -> HomogeneousPolynomial:
    """``vol(x_1 P_1 + ... + x_m P_m)`` as an exact polynomial.

    The coefficient of ``x^k`` is the multinomial ``(n; k)`` times the mixed
    volume with ``P_i`` repeated ``k_i`` times.
    """
    if not isinstance(basis, PolytopeBasis):
        basis = PolytopeBasis(tuple(basis))
    n = basis.ambient_dim
    m = len(basis.polytopes)
    coeffs = {}
    for k in monomials(m, n):
        args = [P for P, ki in zip(basis.polytopes, k) for _ in range(ki)]
        if len(set(args)) == 1:
            mv = volume(args[0])
        else:
            mv = mixed_volume(args)
        multinom = math.factorial(n)
        for ki in k:
            multinom //= math.factorial(ki)
        coeffs[k] = multinom * Fraction(mv)
    return HomogeneousPolynomial.from_dict(m, n, coeffs)


def apply_operator(op_monomial: Sequence[int], P: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """Iterated partial derivative ``d^a P``; over-differentiation gives zero."""
    a = tuple(op_monomial)
    if len(a) != P.num_vars:
        raise DomainError("operator and polynomial have different numbers of variables")
    deg = max(P.degree - sum(a), 0)
    out = {}
    for exp, c in P.coefficients:
        if any(e < k for e, k in zip(exp, a)):
            continue
        factor = 1
        for e, k in zip(exp, a):
            factor *= math.perm(e, k)
        new = tuple(e - k for e, k in zip(exp, a))
        out[new] = out.get(new, 0) + c * factor
    return HomogeneousPolynomial.from_dict(P.num_vars, deg, out)


def apply_differential(op: Mapping, P: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """Apply ``sum c_a d^a`` (homogeneous or not) and collect the result."""
    total = {}
    for a, c in op.items():
        for exp, v in apply_operator(a, P).coefficients:
            total[exp] = total.get(exp, 0) + Fraction(c) * v
    total = {e: v for e, v in total.items() if v}
    if not total:
        return HomogeneousPolynomial(P.num_vars, 0, ())
    deg = sum(next(iter(total)))
    return HomogeneousPolynomial(P.num_vars, deg, tuple(sorted(total.items(), reverse=True)))


def annihilator_membership(op: Mapping, P: HomogeneousPolynomial) -> bool:
    return apply_differential(op, P).is_zero()


def catalecticant(P: HomogeneousPolynomial, k: int) -> list[list[Fraction]]:
    """Matrix of ``D -> D.P`` from degree-k operators to degree-(n-k) polynomials."""
    m, n = P.num_vars, P.degree
    cols = monomials(m, n - k)
    rows = []
    for a in monomials(m, k):
        d = apply_operator(a, P).as_dict()
        rows.append([d.get(b, Fraction(0)) for b in cols])
    return rows


def hilbert_function(P: HomogeneousPolynomial) -> HilbertFunction:
    """Graded dimensions of the quotient by the annihilator, degrees 0..n."""
    if P.is_zero():
        raise DomainError("the zero polynomial has no associated algebra")
    return HilbertFunction(tuple(rank(catalecticant(P, k)) for k in range(P.degree + 1)))


def poincare_check(h) -> bool:
    values = tuple(h.values if isinstance(h, HilbertFunction) else h)
    if not values or values[0] != 1 or values[-1] != 1:
        return False
    return values == values[::-1]
