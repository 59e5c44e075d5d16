"""Rational polyhedral cones, fans and weighted fans.

A :class:`Cone` keeps its extreme rays together with an H-representation
(equations of its linear span plus facet inequalities); both are derived at
construction and checked against each other.  Weighted fans support
balancing checks, sums and equivalence up to common refinement, and the
intersection number of a complementary pair after a generic translation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .dd import extreme_rays
from .errors import DomainError, ResourceError
from .lattice import (
    INFINITE,
    clear_denominators,
    dot,
    integer_kernel,
    lattice_index,
    normalize_number,
    primitive_or_zero,
    rank,
    rref,
    saturate,
    solve_affine,
)


def _canonical_hyperplane(u):
    u = primitive_or_zero(u)
    first = next(x for x in u if x)
    return u if first > 0 else tuple(-x for x in u)


def _rays_from_hrep(equations, inequalities, dim):
    """Extreme rays of the pointed cone ``{eq . x = 0, ineq . x >= 0}`` in R^dim."""
    eqs = [clear_denominators(e) for e in equations]
    eqs = [e for e in eqs if any(e)]
    if eqs:
        K = integer_kernel(eqs, dim)
    else:
        K = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    if not K:
        return []
    A = [tuple(dot(clear_denominators(u), k) for k in K) for u in inequalities]
    if rank(A) < len(K):
        raise DomainError("cone contains a line (not strictly convex)")
    out = []
    for z in extreme_rays(A, len(K)):
        x = [0] * dim
        for zi, k in zip(z, K):
            if zi:
                for j in range(dim):
                    x[j] += zi * k[j]
        out.append(primitive_or_zero(x))
    return out


@dataclass(frozen=True, eq=False)
class Cone:
    """Strictly convex rational polyhedral cone.

    ``equations`` span the orthogonal complement of the cone's linear span;
    ``inequalities`` are facet normals (``u . x >= 0`` on the cone), given as
    integer vectors; ``facet_rays[i]`` lists the rays on facet ``i``.
    """

    ambient_dim: int
    rays: tuple
    dim: int
    equations: tuple
    inequalities: tuple
    facet_rays: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rays == other.rays

    def __hash__(self):
        return hash((self.ambient_dim, self.rays))

    def __repr__(self):
        return f"Cone({list(map(list, self.rays))})"

    def sort_key(self):
        return (self.dim, self.rays)

    # -- construction ----------------------------------------------------

    @classmethod
    def zero(cls, ambient_dim: int) -> "Cone":
        eqs = tuple(tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim))
        return cls(ambient_dim, (), 0, eqs, (), ())

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence], ambient_dim: int | None = None) -> "Cone":
        gens = [primitive_or_zero(g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise DomainError("ambient dimension needed for a cone without generators")
            ambient_dim = len(gens[0])
        if any(len(g) != ambient_dim for g in gens):
            raise DomainError("generator of the wrong dimension")
        gens = sorted({g for g in gens if any(g)})
        n = ambient_dim
        if not gens:
            return cls.zero(n)
        _, pivots = rref(gens, n)
        d = len(pivots)
        equations = tuple(integer_kernel(gens, n))
        proj = [tuple(g[c] for c in pivots) for g in gens]
        normals_j = extreme_rays(proj, d)
        if len(normals_j) < d or rank(normals_j) < d:
            raise DomainError("generators do not span a strictly convex cone")
        normals = []
        for u in normals_j:
            full = [0] * n
            for c, x in zip(pivots, u):
                full[c] = x
            normals.append(tuple(full))
        normals.sort()
        rays = []
        for g in gens:
            tight = [u for u in normals if dot(u, g) == 0]
            if d == 1 or (len(tight) >= d - 1 and rank(tight) == d - 1):
                rays.append(g)
        rays = tuple(sorted(rays))
        facet_rays = []
        for u in normals:
            on = frozenset(i for i, r in enumerate(rays) if dot(u, r) == 0)
            # V/H cross-check: every facet is spanned by d-1 independent rays
            if rank([rays[i] for i in on]) != d - 1:
                raise DomainError("inconsistent cone representation")
            facet_rays.append(on)
        return cls(n, rays, d, equations, tuple(normals), tuple(facet_rays))

    @classmethod
    def from_hrep(cls, equations, inequalities, ambient_dim: int) -> "Cone":
        rays = _rays_from_hrep(equations, inequalities, ambient_dim)
        return cls.from_generators(rays, ambient_dim)

    # -- predicates -----------------------------------------------------

    def contains(self, x) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(
            dot(u, x) >= 0 for u in self.inequalities
        )

    def in_relint(self, x) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(
            dot(u, x) > 0 for u in self.inequalities
        )

    def relint_point(self) -> tuple:
        return tuple(sum(col) for col in zip(*self.rays)) if self.rays else (0,) * self.ambient_dim

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.from_hrep(
            self.equations + other.equations,
            self.inequalities + other.inequalities,
            self.ambient_dim,
        )

    def faces(self) -> list["Cone"]:
        """All faces, from the origin up to the cone itself."""
        cached = self._cache.get("faces")
        if cached is None:
            full = frozenset(range(len(self.rays)))
            found = {full}
            frontier = set(self.facet_rays)
            while frontier:
                found |= frontier
                frontier = {a & b for a in frontier for b in self.facet_rays} - found
            cached = sorted(
                (self if s == full else Cone.from_generators([self.rays[i] for i in s], self.ambient_dim)
                 for s in found),
                key=Cone.sort_key,
            )
            self._cache["faces"] = cached
        return list(cached)

    def facets(self) -> list["Cone"]:
        return [f for f in self.faces() if f.dim == self.dim - 1]

    def is_face_of(self, other: "Cone") -> bool:
        if not set(self.rays) <= set(other.rays):
            return False
        return self in other.faces()

    @property
    def lattice(self):
        """``span(cone) ∩ Z^n``."""
        lat = self._cache.get("lattice")
        if lat is None:
            lat = saturate(list(self.rays), self.ambient_dim)
            self._cache["lattice"] = lat
        return lat


def cone(*generators) -> Cone:
    """Shorthand: ``cone((1, 0), (0, 1))``."""
    return Cone.from_generators(generators)


# --------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan:
    """Face-closed collection of cones meeting along common faces."""

    ambient_dim: int
    cones: frozenset

    @classmethod
    def from_cones(cls, cones: Iterable[Cone], ambient_dim: int | None = None) -> "Fan":
        """Face closure of ``cones`` (no intersection check, see :func:`validate_fan`)."""
        cones = list(cones)
        if ambient_dim is None:
            if not cones:
                raise DomainError("ambient dimension needed for an empty fan")
            ambient_dim = cones[0].ambient_dim
        closed = set()
        for c in cones:
            if c.ambient_dim != ambient_dim:
                raise DomainError("cones of different ambient dimensions")
            closed.update(c.faces())
        return cls(ambient_dim, frozenset(closed))

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cones), default=-1)

    def sorted_cones(self) -> list[Cone]:
        return sorted(self.cones, key=Cone.sort_key)

    def cones_of_dim(self, k: int) -> list[Cone]:
        return [c for c in self.sorted_cones() if c.dim == k]

    def maximal_cones(self) -> list[Cone]:
        cached = getattr(self, "_maximal", None)
        if cached is None:
            cs = self.sorted_cones()
            out = []
            for c in cs:
                if not any(c is not o and o.dim > c.dim and c.is_face_of(o) for o in cs):
                    out.append(c)
            cached = out
            object.__setattr__(self, "_maximal", cached)
        return list(cached)

    def is_pure(self, d: int | None = None) -> bool:
        dims = {c.dim for c in self.maximal_cones()}
        if d is None:
            return len(dims) <= 1
        return dims <= {d}

    def to_json(self):
        return {
            "dim": self.ambient_dim,
            "cones": [{"generators": [list(r) for r in c.rays]} for c in self.maximal_cones()],
        }


def validate_fan(cones: Iterable[Cone], ambient_dim: int | None = None, close_faces: bool = True) -> Fan:
    """Check the fan axioms, returning the (face-closed) fan.

    With ``close_faces`` the missing faces are added; otherwise a missing face
    is reported.  Two maximal cones whose intersection is not a face of both
    are always an error.
    """
    cones = list(cones)
    if ambient_dim is None and cones:
        ambient_dim = cones[0].ambient_dim
    if not close_faces:
        given = set(cones)
        for c in cones:
            for f in c.faces():
                if f not in given:
                    raise DomainError(f"face-closure violation: face {f!r} of {c!r} is missing")
    fan = Fan.from_cones(cones, ambient_dim)
    maxi = fan.maximal_cones()
    for s, t in itertools.combinations(maxi, 2):
        meet = s.intersect(t)
        if meet not in s.faces() or meet not in t.faces():
            raise DomainError(f"intersection-not-a-face violation between {s!r} and {t!r}")
    return fan


def _box_polytope(c: Cone):
    """``c ∩ [-1, 1]^n`` as a polytope."""
    from .polytope import convex_hull

    n = c.ambient_dim
    eqs = [tuple(e) + (0,) for e in c.equations]
    ineqs = [tuple(u) + (0,) for u in c.inequalities]
    for i in range(n):
        for s in (1, -1):
            row = [0] * (n + 1)
            row[i] = s
            row[n] = 1
            ineqs.append(tuple(row))
    verts = [tuple(Fraction(x, r[n]) for x in r[:n]) for r in _rays_from_hrep(eqs, ineqs, n + 1) if r[n] > 0]
    return convex_hull(verts)


def box_fraction(c: Cone):
    """Share of the cube ``[-1, 1]^n`` covered by ``c`` (a rational solid-angle proxy)."""
    from .polytope import volume

    if c.dim < c.ambient_dim:
        return 0
    return normalize_number(Fraction(volume(_box_polytope(c))) / 2 ** c.ambient_dim)


def is_complete(f: Fan) -> bool:
    """Support equals R^n, decided by exact volume accounting in the unit cube."""
    total = sum((Fraction(box_fraction(c)) for c in f.cones_of_dim(f.ambient_dim)), Fraction(0))
    return total == 1


def quotient_generator(sigma: Cone, tau: Cone) -> tuple:
    """Lattice point of ``sigma`` generating ``N_sigma / N_tau`` (tau a facet of sigma)."""
    if tau.dim != sigma.dim - 1 or not tau.is_face_of(sigma):
        raise DomainError(f"{tau!r} is not a facet of {sigma!r}")
    if tau.dim == 0:
        return sigma.rays[0]
    rays_on = set(tau.rays)
    k = next(
        i for i, on in enumerate(sigma.facet_rays) if {sigma.rays[j] for j in on} == rays_on
    )
    u = sigma.inequalities[k]
    basis = sigma.lattice.basis
    vals = [dot(u, b) for b in basis]
    # extended gcd over the basis values gives x in N_sigma with u . x = gcd
    g, coeffs = vals[0], [1] + [0] * (len(vals) - 1)
    for i in range(1, len(vals)):
        a, b = g, vals[i]
        x0, x1, y0, y1 = 1, 0, 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        coeffs = [c * x0 for c in coeffs]
        coeffs[i] = y0
        g = a
    if g < 0:
        g = -g
        coeffs = [-c for c in coeffs]
    x = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(sigma.ambient_dim)]
    # slide along tau until x lands inside sigma
    r = tau.relint_point()
    m = 0
    for j, w in enumerate(sigma.inequalities):
        if j == k:
            continue
        wx, wr = dot(w, x), dot(w, r)
        if wx < 0:
            m = max(m, -((wx) // wr))
    return tuple(xi + m * ri for xi, ri in zip(x, r))


# --------------------------------------------------------------------------
# weighted fans


@dataclass(frozen=True, eq=False)
class WeightedFan:
    """A pure d-dimensional fan with rational weights on its d-cones."""

    fan: Fan
    d: int
    weights: Mapping

    def __post_init__(self):
        if not self.fan.is_pure(self.d):
            raise DomainError(f"fan is not pure of dimension {self.d}")
        top = set(self.fan.cones_of_dim(self.d))
        if set(self.weights) != top:
            raise DomainError("weights must be given on exactly the top-dimensional cones")
        object.__setattr__(self, "weights", {c: Fraction(w) for c, w in self.weights.items()})

    @classmethod
    def from_weighted_cones(cls, pairs, ambient_dim: int, d: int | None = None) -> "WeightedFan":
        pairs = [(c, Fraction(w)) for c, w in pairs]
        if d is None:
            if not pairs:
                raise DomainError("dimension needed for an empty weighted fan")
            d = pairs[0][0].dim
        weights = {}
        for c, w in pairs:
            weights[c] = weights.get(c, 0) + w
        fan = Fan.from_cones(weights, ambient_dim)
        return cls(fan, d, weights)

    @property
    def ambient_dim(self) -> int:
        return self.fan.ambient_dim

    def top_cones(self) -> list[Cone]:
        return self.fan.cones_of_dim(self.d)

    def support_cones(self) -> list[Cone]:
        """Top cones of nonzero weight."""
        return [c for c in self.top_cones() if self.weights[c] != 0]

    def scaled(self, c) -> "WeightedFan":
        return WeightedFan(self.fan, self.d, {k: w * Fraction(c) for k, w in self.weights.items()})

    def to_json(self):
        return {
            "dim": self.ambient_dim,
            "d": self.d,
            "cones": [
                {"generators": [list(r) for r in c.rays], "weight": str(self.weights[c])}
                for c in self.top_cones()
            ],
        }


def is_balanced(w: WeightedFan) -> bool:
    """Balancing at every codimension-one cone of the fan."""
    if w.d == 0:
        return True
    walls: dict = {}
    for sigma in w.top_cones():
        for tau in sigma.facets():
            walls.setdefault(tau, []).append(sigma)
    for tau, sigmas in walls.items():
        total = [Fraction(0)] * w.ambient_dim
        for sigma in sigmas:
            c = w.weights[sigma]
            if c:
                xi = quotient_generator(sigma, tau)
                total = [t + c * x for t, x in zip(total, xi)]
        if any(dot(e, total) != 0 for e in tau.equations):
            return False
    return True


def common_refinement(a: Fan, b: Fan) -> Fan:
    """Fan of all intersections ``sigma ∩ sigma'`` (support is ``|a| ∩ |b|``)."""
    if a.ambient_dim != b.ambient_dim:
        raise DomainError("fans in different dimensions")
    meets = {s.intersect(t) for s in a.maximal_cones() for t in b.maximal_cones()}
    return Fan.from_cones(meets, a.ambient_dim)


def _split(c: Cone, h) -> list[Cone]:
    vals = [dot(h, r) for r in c.rays]
    if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
        return [c]
    neg = tuple(-x for x in h)
    halves = [
        Cone.from_hrep(c.equations, c.inequalities + (h,), c.ambient_dim),
        Cone.from_hrep(c.equations, c.inequalities + (neg,), c.ambient_dim),
    ]
    return [p for p in halves if p.dim == c.dim]


def _chambers(fans: Sequence[WeightedFan]) -> list[Cone]:
    """Top-dimensional cells of the hyperplane arrangement cut out by all support cones.

    Each support cone of each fan is a union of such cells, and the cells
    (with their faces) form a fan refining every input.
    """
    cones = [c for w in fans for c in w.support_cones()]
    hyperplanes = sorted(
        {_canonical_hyperplane(u) for c in cones for u in c.equations + c.inequalities}
    )
    cells = set()
    for c in cones:
        pieces = [c]
        for h in hyperplanes:
            pieces = [p for q in pieces for p in _split(q, h)]
        cells.update(pieces)
    return sorted(cells, key=Cone.sort_key)


def _induced_weight(w: WeightedFan, cell: Cone) -> Fraction:
    x = cell.relint_point()
    return sum((w.weights[s] for s in w.support_cones() if s.contains(x)), Fraction(0))


def _check_compatible(a: WeightedFan, b: WeightedFan):
    if a.ambient_dim != b.ambient_dim:
        raise DomainError("weighted fans in different dimensions")
    if a.d != b.d:
        raise DomainError(f"cannot add a {a.d}-fan and a {b.d}-fan")


def weighted_equivalent(a: WeightedFan, b: WeightedFan) -> bool:
    """Same support (ignoring zero weights) and equal weights on a common refinement."""
    if a.ambient_dim != b.ambient_dim or a.d != b.d:
        return False
    return all(_induced_weight(a, c) == _induced_weight(b, c) for c in _chambers([a, b]))


def weighted_sum(a: WeightedFan, b: WeightedFan) -> WeightedFan:
    """Sum of weights on a common refinement of both supports."""
    _check_compatible(a, b)
    cells = _chambers([a, b])
    pairs = [(c, _induced_weight(a, c) + _induced_weight(b, c)) for c in cells]
    if not pairs:
        return WeightedFan(Fan(a.ambient_dim, frozenset()), a.d, {})
    return WeightedFan.from_weighted_cones(pairs, a.ambient_dim, a.d)


# --------------------------------------------------------------------------
# stable intersection


@dataclass(frozen=True)
class ShiftedComplex:
    """A weighted fan translated by a rational vector."""

    base: WeightedFan
    shift: tuple


@dataclass(frozen=True)
class ShiftPolicy:
    """How generic translations are drawn: seeded, ``verifications`` successful shifts."""

    seed: int = 0
    verifications: int = 1
    max_retries: int = 32


def random_shift(rng: random.Random, n: int) -> tuple:
    """Rational vector with odd denominators."""
    return tuple(
        Fraction(rng.randint(-10**6, 10**6), 2 * rng.randint(0, 5000) + 1) for _ in range(n)
    )


def _nonempty_translated_meet(s: Cone, t: Cone, shift) -> bool:
    """Is ``s ∩ (shift + t)`` nonempty?  Checked on the homogenized cone."""
    n = s.ambient_dim
    eqs = [tuple(e) + (0,) for e in s.equations]
    eqs += [tuple(e) + (-dot(e, shift),) for e in t.equations]
    ineqs = [tuple(u) + (0,) for u in s.inequalities]
    ineqs += [tuple(u) + (-dot(u, shift),) for u in t.inequalities]
    ineqs.append((0,) * n + (1,))
    return any(r[n] > 0 for r in _rays_from_hrep(eqs, ineqs, n + 1))


def intersection_points(a: WeightedFan, shifted: ShiftedComplex):
    """Transverse intersection points as ``(sigma, sigma', point)`` triples.

    Returns ``None`` when ``a`` and the translated fan do not meet transversely.
    """
    b, shift = shifted.base, tuple(Fraction(x) for x in shifted.shift)
    n = a.ambient_dim
    if b.ambient_dim != n or len(shift) != n:
        raise DomainError("dimension mismatch between fans and shift")
    if a.d + b.d != n:
        raise DomainError(f"fan dimensions {a.d} + {b.d} are not complementary in R^{n}")
    points = []
    for s in a.support_cones():
        for t in b.support_cones():
            rows = list(s.equations) + list(t.equations)
            rhs = [0] * len(s.equations) + [dot(e, shift) for e in t.equations]
            sol = solve_affine(rows, rhs)
            if sol is None:
                continue
            p, free = sol
            if free:
                if _nonempty_translated_meet(s, t, shift):
                    return None
                continue
            q = tuple(x - y for x, y in zip(p, shift))
            if not (s.contains(p) and t.contains(q)):
                continue
            if not (s.in_relint(p) and t.in_relint(q)):
                return None
            points.append((s, t, tuple(normalize_number(x) for x in p)))
    return points


def is_transverse(a: WeightedFan, shifted: ShiftedComplex) -> bool:
    return intersection_points(a, shifted) is not None


def intersection_multiplicity(a: WeightedFan, b: WeightedFan, s: Cone, t: Cone):
    index = lattice_index(s.lattice, t.lattice)
    if index == INFINITE:
        raise DomainError("cones with non-complementary spans")
    return a.weights[s] * b.weights[t] * index


def intersection_number_at(a: WeightedFan, b: WeightedFan, shift) -> Fraction:
    """Sum of multiplicities for one explicit translation of ``b``.

    No balancing check: for unbalanced inputs the value depends on ``shift``.
    """
    pts = intersection_points(a, ShiftedComplex(b, tuple(shift)))
    if pts is None:
        raise DomainError(f"translation {tuple(map(str, shift))} is not transverse")
    return normalize_number(
        sum((intersection_multiplicity(a, b, s, t) for s, t, _ in pts), Fraction(0))
    )


def stable_intersection_number(a: WeightedFan, b: WeightedFan, shift_policy: ShiftPolicy | None = None):
    """Intersection number of balanced fans of complementary dimension."""
    policy = shift_policy or ShiftPolicy()
    n = a.ambient_dim
    if a.d + b.d != n:
        raise DomainError(f"fan dimensions {a.d} + {b.d} are not complementary in R^{n}")
    if not is_balanced(a) or not is_balanced(b):
        raise DomainError("stable intersection needs balanced fans")
    rng = random.Random(policy.seed)
    values = []
    for _ in range(policy.verifications):
        for _attempt in range(policy.max_retries):
            shift = random_shift(rng, n)
            pts = intersection_points(a, ShiftedComplex(b, shift))
            if pts is not None:
                values.append(
                    sum((intersection_multiplicity(a, b, s, t) for s, t, _ in pts), Fraction(0))
                )
                break
        else:
            raise ResourceError(f"no transverse shift found in {policy.max_retries} attempts")
    if len(set(values)) > 1:
        raise RuntimeError(f"intersection number depends on the shift: {sorted(set(values))}")
    return normalize_number(values[0])
