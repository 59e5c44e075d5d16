"""Random generators and brute-force oracles shared by the test modules."""

import itertools
import math
from fractions import Fraction

from tropkit import Cone, LaurentPolynomial, WeightedFan, convex_hull
from tropkit.lattice import primitive


def random_polytope(rng, n, lo=0, hi=6, max_points=8):
    while True:
        k = rng.randint(n + 1, max(n + 1, max_points))
        pts = {tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(k)}
        P = convex_hull(pts)
        if P.dim == n:
            return P


def random_laurent(rng, n=2, max_terms=6, lo=-4, hi=4):
    k = rng.randint(1, max_terms)
    terms = {}
    while len(terms) < k:
        terms[tuple(rng.randint(lo, hi) for _ in range(n))] = Fraction(rng.randint(1, 9)) * rng.choice((1, -1))
    return LaurentPolynomial(n, terms)


def dense(n_vars, d):
    """All monomials of degree <= d with coefficient 1."""
    exps = [e for e in itertools.product(range(d + 1), repeat=n_vars) if sum(e) <= d]
    return LaurentPolynomial(n_vars, {e: 1 for e in exps})


def weighted_rays(pairs, n=2):
    return WeightedFan.from_weighted_cones([(Cone.from_generators([r], n), w) for r, w in pairs], n, 1)


def tropical_line(w=(1, 1, 1)):
    return weighted_rays(list(zip([(1, 0), (0, 1), (-1, -1)], w)))


def random_balanced_curve(rng, k_max=4, box=3):
    """Balanced 1-fan in the plane: random weighted rays closed up by one more ray."""
    while True:
        k = rng.randint(1, k_max)
        pairs = []
        for _ in range(k):
            v = (rng.randint(-box, box), rng.randint(-box, box))
            if v == (0, 0):
                continue
            r, _ = primitive(v)
            pairs.append((r, rng.randint(1, 3)))
        total = [sum(w * r[i] for r, w in pairs) for i in range(2)]
        if not pairs or total == [0, 0]:
            continue
        r, length = primitive([-x for x in total])
        pairs.append((r, length))
        return weighted_rays(pairs)


def brute_extreme_points(points):
    """Points not in the hull of the others, by an LP-free exact test in the plane."""
    pts = sorted(set(points))
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        inside = False
        for a, b, c in itertools.combinations(others, 3):
            if _in_triangle(p, a, b, c):
                inside = True
                break
        if not inside:
            for a, b in itertools.combinations(others, 2):
                if _on_segment(p, a, b):
                    inside = True
                    break
        if not inside:
            out.append(p)
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _in_triangle(p, a, b, c):
    d1, d2, d3 = _cross(a, b, p), _cross(b, c, p), _cross(c, a, p)
    if _cross(a, b, c) == 0:
        return False
    return (d1 >= 0 and d2 >= 0 and d3 >= 0) or (d1 <= 0 and d2 <= 0 and d3 <= 0)


def _on_segment(p, a, b):
    return _cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def shoelace(ring):
    s = sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(ring, ring[1:] + ring[:1]))
    return Fraction(abs(s), 2)


def brute_index(A_rows, B_rows, n, box=None):
    """[Z^n : A + B] by counting cosets of A + B meeting a box of size index^n."""
    gens = [tuple(r) for r in A_rows] + [tuple(r) for r in B_rows]
    # the lattice contains d*Z^n for d = |det| of any n independent generators
    dets = []
    for combo in itertools.combinations(gens, n):
        d = _det(combo)
        if d:
            dets.append(abs(d))
    if not dets:
        return None
    D = math.gcd(*dets)
    # reduce generators mod D and close up in (Z/D)^n
    group = {(0,) * n}
    frontier = list(group)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % D for a, b in zip(x, g))
                if y not in group:
                    group.add(y)
                    new.append(y)
        frontier = new
    return D**n // len(group)


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum(
        (-1) ** j * rows[0][j] * _det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(n)
    )
