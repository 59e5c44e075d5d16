"""Lattice polytopes in vertex representation.

Hulls are computed exactly: a monotone chain in the plane, the double
description method in higher dimension.  Facets are derived on demand and
cached on the (otherwise immutable) polytope.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .dd import extreme_rays
from .errors import DomainError, ResourceError
from .lattice import (
    clear_denominators,
    dot,
    normalize_number,
    primitive,
    rank,
)

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class Facet:
    """Facet ``{x : normal . x = offset}``; the polytope lies on the ``>=`` side."""

    normal: tuple
    offset: object
    vertex_indices: frozenset


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many points, stored by its sorted vertex list.

    Vertices are integral for every polytope built from lattice points;
    :func:`scale` by a non-integer factor is the one way to get rational ones.
    """

    ambient_dim: int
    vertices: tuple
    dim: int
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def __add__(self, other):
        return minkowski_sum(self, other)

    def translate(self, shift):
        shift = tuple(shift)
        verts = [tuple(normalize_number(a + b) for a, b in zip(v, shift)) for v in self.vertices]
        return LatticePolytope(self.ambient_dim, tuple(verts), self.dim)

    def to_json(self):
        return {"dim": self.ambient_dim, "vertices": [[_json_num(x) for x in v] for v in self.vertices]}


def _json_num(x):
    return x if isinstance(x, int) else str(x)


# --------------------------------------------------------------------------
# hulls


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _ccw_hull_2d(points):
    """Strictly convex counter-clockwise vertex cycle (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _primitive_normal(a, offset_times):
    """Make an integer normal primitive, dividing the matching offset along."""
    normal, g = primitive(a)
    return normal, normalize_number(Fraction(offset_times) / g)


def _full_hull(points, n):
    """Vertices and facet inequalities of a full-dimensional point set in R^n."""
    if n == 1:
        lo = min(p[0] for p in points)
        hi = max(p[0] for p in points)
        return [(lo,), (hi,)], [((1,), lo), ((-1,), -hi)]
    if n == 2:
        cyc = _ccw_hull_2d(points)
        facets = []
        for p, q in zip(cyc, cyc[1:] + cyc[:1]):
            a = (-(q[1] - p[1]), q[0] - p[0])
            a = clear_denominators(a)
            normal, _ = primitive(a)
            facets.append((normal, normalize_number(Fraction(dot(normal, p)))))
        return cyc, facets
    rows = [(1,) + tuple(p) for p in points]
    rays = extreme_rays(rows, n + 1)
    facets = []
    for ray in rays:
        if not any(ray[1:]):
            continue
        facets.append(_primitive_normal(ray[1:], -ray[0]))
    verts = []
    for p in points:
        tight = [a for a, b in facets if dot(a, p) == b]
        if len(tight) >= n and rank(tight) == n:
            verts.append(p)
    return verts, facets


def _affine_frame(points):
    """Dimension of the affine hull and coordinates that embed it injectively."""
    p0 = points[0]
    rows = [clear_denominators([a - b for a, b in zip(p, p0)]) for p in points[1:]]
    rows = [list(r) for r in rows if any(r)]
    pivots = []
    # fraction-free forward elimination; pivot columns are those of the echelon form
    r = 0
    for c in range(len(p0)):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        a = rows[r][c]
        for i in range(r + 1, len(rows)):
            b = rows[i][c]
            if b:
                rows[i] = [a * x - b * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return len(pivots), pivots


def convex_hull(points: Iterable[Sequence]) -> LatticePolytope:
    """Convex hull of a nonempty finite point set (any dimension)."""
    pts = sorted({tuple(x if type(x) is int else normalize_number(Fraction(x)) for x in p) for p in points})
    if not pts:
        raise DomainError("convex hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DomainError("points have inconsistent dimensions")
    k, pivots = _affine_frame(pts)
    if k == 0:
        return LatticePolytope(n, (pts[0],), 0)
    if k == n:
        verts, ineqs = _full_hull(pts, n)
        P = LatticePolytope(n, tuple(sorted(verts)), n)
        P._cache["facets"] = _facet_list(P, ineqs)
        return P
    else:
        proj = {}
        for p in pts:
            proj.setdefault(tuple(p[c] for c in pivots), p)
        pverts, _ = _full_hull(list(proj), k)
        verts = [proj[tuple(v)] for v in pverts]
    return LatticePolytope(n, tuple(sorted(verts)), k)



# --------------------------------------------------------------------------
# arithmetic


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """Hull of all pairwise vertex sums."""
    if P.ambient_dim != Q.ambient_dim:
        raise DomainError("Minkowski sum of polytopes in different dimensions")
    sums = {tuple(a + b for a, b in zip(u, v)) for u in P.vertices for v in Q.vertices}
    return convex_hull(sums)


def scale(P: LatticePolytope, c) -> LatticePolytope:
    """Dilate ``P`` by a positive rational factor."""
    c = Fraction(c)
    if c <= 0:
        raise DomainError("only positive dilation factors are allowed")
    verts = [tuple(normalize_number(c * x) for x in v) for v in P.vertices]
    return LatticePolytope(P.ambient_dim, tuple(verts), P.dim)


def point(coords) -> LatticePolytope:
    return convex_hull([tuple(coords)])


# --------------------------------------------------------------------------
# facets and volumes


def facets(P: LatticePolytope) -> list[Facet]:
    """Irredundant facets with primitive inward normals."""
    if P.dim != P.ambient_dim:
        raise DomainError(f"facets need a full-dimensional polytope (dim {P.dim} < {P.ambient_dim})")
    cached = P._cache.get("facets")
    if cached is None:
        _, ineqs = _full_hull(list(P.vertices), P.ambient_dim)
        cached = _facet_list(P, ineqs)
        P._cache["facets"] = cached
    return list(cached)


def _facet_list(P, ineqs):
    out = []
    for a, b in ineqs:
        idx = frozenset(i for i, v in enumerate(P.vertices) if dot(a, v) == b)
        out.append(Facet(a, b, idx))
    out.sort(key=lambda f: (f.normal, f.offset))
    return out


def edges(P: LatticePolytope) -> list[tuple[int, int]]:
    """Index pairs of vertices spanning one-dimensional faces."""
    if P.dim == 0:
        return []
    if P.dim < P.ambient_dim:
        _, pivots = _affine_frame(list(P.vertices))
        sub = convex_hull([tuple(v[c] for c in pivots) for v in P.vertices])
        back = {tuple(v[c] for c in pivots): i for i, v in enumerate(P.vertices)}
        return sorted(
            tuple(sorted((back[sub.vertices[i]], back[sub.vertices[j]]))) for i, j in edges(sub)
        )
    n = P.ambient_dim
    if n == 1:
        return [(0, 1)]
    fs = facets(P)
    out = []
    for i, j in itertools.combinations(range(len(P.vertices)), 2):
        common = [f.normal for f in fs if i in f.vertex_indices and j in f.vertex_indices]
        if len(common) >= n - 1 and rank(common) == n - 1:
            out.append((i, j))
    return out


def _facet_projection_volume(P: LatticePolytope, F: Facet):
    """Integral (n-1)-volume of ``F``, via projection along a coordinate axis.

    Euclidean volume divided by the length of the primitive normal equals the
    volume of the shadow on ``x_j = 0`` divided by ``|normal_j|``.
    """
    n = P.ambient_dim
    if n == 1:
        return 1
    j = next(i for i, x in enumerate(F.normal) if x)
    shadow = [tuple(x for c, x in enumerate(P.vertices[i]) if c != j) for i in F.vertex_indices]
    if n == 3:
        ring = _ccw_hull_2d(shadow)
        area = Fraction(sum(_cross(ring[0], p, q) for p, q in zip(ring[1:], ring[2:])), 2)
    else:
        area = Fraction(volume(convex_hull(shadow)))
    return normalize_number(area / abs(F.normal[j]))


def volume(P: LatticePolytope):
    """Exact Euclidean n-volume by pyramids over the facets (0 if degenerate)."""
    if P.dim < P.ambient_dim:
        return 0
    cached = P._cache.get("volume")
    if cached is not None:
        return cached
    n = P.ambient_dim
    if n == 1:
        result = P.vertices[-1][0] - P.vertices[0][0]
    else:
        apex = P.vertices[0]
        total = Fraction(0)
        for F in facets(P):
            height = dot(F.normal, apex) - F.offset
            if height:
                total += height * Fraction(_facet_projection_volume(P, F))
        result = normalize_number(total / n)
    P._cache["volume"] = result
    return result


def facet_integral_volume(P: LatticePolytope, F: Facet):
    """Volume of ``F`` normalized to the lattice of its affine span."""
    if F not in facets(P):
        raise DomainError("not a facet of the given polytope")
    return _facet_projection_volume(P, F)


def pascal_residual(P: LatticePolytope) -> tuple:
    """Sum over facets of integral facet volume times primitive inward normal."""
    n = P.ambient_dim
    total = [Fraction(0)] * n
    for F in facets(P):
        w = _facet_projection_volume(P, F)
        for i in range(n):
            total[i] += w * F.normal[i]
    return tuple(normalize_number(x) for x in total)


def _count_dilate(P: LatticePolytope, fs, k: int) -> int:
    n = P.ambient_dim
    if k == 0:
        return 1
    lo = [k * min(v[i] for v in P.vertices) for i in range(n)]
    hi = [k * max(v[i] for v in P.vertices) for i in range(n)]
    count = 0
    for head in itertools.product(*(range(lo[i], hi[i] + 1) for i in range(n - 1))):
        # solve the inequalities for the range of the last coordinate
        a_lo, a_hi = lo[-1], hi[-1]
        ok = True
        for F in fs:
            rest = k * F.offset - dot(F.normal[:-1], head)
            c = F.normal[-1]
            if c > 0:
                a_lo = max(a_lo, -((-rest) // c))
            elif c < 0:
                a_hi = min(a_hi, rest // c)
            elif rest > 0:
                ok = False
                break
        if ok and a_hi >= a_lo:
            count += a_hi - a_lo + 1
    return count


def ehrhart_counts(P: LatticePolytope, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Lattice point counts of ``kP`` for ``k = 0..n``."""
    if not P.is_lattice:
        raise DomainError("Ehrhart counting needs a lattice polytope")
    if P.dim != P.ambient_dim:
        raise DomainError("Ehrhart oracle needs a full-dimensional polytope")
    n = P.ambient_dim
    widths = [max(v[i] for v in P.vertices) - min(v[i] for v in P.vertices) for i in range(n)]
    candidates = sum(math.prod(k * w + 1 for w in widths) for k in range(n + 1))
    if candidates > budget:
        raise ResourceError(f"enumeration needs {candidates} candidate points (budget {budget})")
    fs = facets(P)
    return [_count_dilate(P, fs, k) for k in range(n + 1)]


def volume_ehrhart_oracle(P: LatticePolytope, budget: int = DEFAULT_BUDGET):
    """Volume as the leading coefficient of the Ehrhart polynomial.

    The n-th forward difference of the counts at ``k = 0..n`` divided by n!.
    """
    counts = ehrhart_counts(P, budget)
    n = P.ambient_dim
    diff = sum((-1) ** (n - k) * math.comb(n, k) * c for k, c in enumerate(counts))
    return normalize_number(Fraction(diff, math.factorial(n)))


def mixed_volume(polytopes: Sequence[LatticePolytope]):
    """Mixed volume by inclusion-exclusion over Minkowski subsums."""
    polytopes = list(polytopes)
    if not polytopes:
        raise DomainError("mixed volume of an empty list")
    n = polytopes[0].ambient_dim
    if len(polytopes) != n:
        raise DomainError(f"mixed volume in R^{n} needs exactly {n} polytopes, got {len(polytopes)}")
    if any(P.ambient_dim != n for P in polytopes):
        raise DomainError("polytopes live in different dimensions")
    sums = {}
    total = Fraction(0)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        sums[mask] = polytopes[low] if rest == 0 else minkowski_sum(sums[rest], polytopes[low])
        sign = (-1) ** (n + bin(mask).count("1"))
        total += sign * Fraction(volume(sums[mask]))
    return normalize_number(total / math.factorial(n))


# --------------------------------------------------------------------------
# normal fan


def normal_fan(P: LatticePolytope):
    """Complete fan of inward normal cones at the vertices of ``P``."""
    from .fan import Cone, Fan

    if P.dim != P.ambient_dim:
        raise DomainError("normal fan of a lower-dimensional polytope has lineality")
    fs = facets(P)
    cones = []
    for i in range(len(P.vertices)):
        gens = [F.normal for F in fs if i in F.vertex_indices]
        cones.append(Cone.from_generators(gens, P.ambient_dim))
    return Fan.from_cones(cones, P.ambient_dim)


# --------------------------------------------------------------------------
# virtual polytopes


@dataclass(frozen=True, eq=False)
class VirtualPolytope:
    """Formal difference ``plus - minus`` under Minkowski cancellation."""

    plus: LatticePolytope
    minus: LatticePolytope

    def __eq__(self, other):
        if not isinstance(other, VirtualPolytope):
            return NotImplemented
        return virtual_equal(self, other)

    __hash__ = None


def virtual_equal(a: VirtualPolytope, b: VirtualPolytope) -> bool:
    if a.plus.ambient_dim != b.plus.ambient_dim:
        raise DomainError("virtual polytopes in different dimensions")
    return minkowski_sum(a.plus, b.minus) == minkowski_sum(b.plus, a.minus)
