"""Double description method for pointed polyhedral cones.

Given integer rows ``A`` with full column rank, :func:`extreme_rays` returns
the extreme rays of ``{y : A y >= 0}``.  Adjacency of rays is decided with the
combinatorial test on zero sets, which are kept as int bitmasks.
"""

from __future__ import annotations

import math
from fractions import Fraction
from operator import mul

from .errors import DomainError
from .lattice import clear_denominators, rref


def _independent_rows(rows, dim):
    chosen = []
    basis = []  # reduced rows over Q, kept in echelon order
    for idx, row in enumerate(rows):
        vec = [Fraction(x) for x in row]
        for b, c in basis:
            if vec[c]:
                f = vec[c] / b[c]
                vec = [x - f * y for x, y in zip(vec, b)]
        c = next((j for j, x in enumerate(vec) if x), None)
        if c is None:
            continue
        basis.append((vec, c))
        chosen.append(idx)
        if len(chosen) == dim:
            break
    return chosen


def _normalize(v):
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def extreme_rays(rows, dim: int) -> list[tuple[int, ...]]:
    """Primitive extreme rays of ``{y in R^dim : row . y >= 0 for all rows}``.

    Raises :class:`DomainError` if the rows do not have rank ``dim`` (the cone
    would contain a line).
    """
    rows = [clear_denominators(r) for r in rows]
    rows = [r for r in rows if any(r)]
    if dim == 0:
        return []
    basis_idx = _independent_rows(rows, dim)
    if len(basis_idx) < dim:
        raise DomainError("inequality system does not define a pointed cone")

    # initial simplicial cone: columns of the inverse of the basis rows
    B = [rows[i] for i in basis_idx]
    aug = [list(B[i]) + [int(i == j) for j in range(dim)] for i in range(dim)]
    red, _ = rref(aug, dim)
    inv_cols = [[red[i][dim + j] for i in range(dim)] for j in range(dim)]
    rays = [_normalize(clear_denominators(col)) for col in inv_cols]

    order = list(basis_idx) + [i for i in range(len(rows)) if i not in set(basis_idx)]
    bit = {row_idx: 1 << k for k, row_idx in enumerate(order)}
    zeros = []
    for r in rays:
        z = 0
        for i in basis_idx:
            if sum(map(mul, rows[i], r)) == 0:
                z |= bit[i]
        zeros.append(z)

    need = dim - 2
    for i in order[dim:]:
        a = rows[i]
        vals = [sum(map(mul, a, r)) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if not neg:
            zeros = [z | bit[i] if vals[k] == 0 else z for k, z in enumerate(zeros)]
            continue
        new_rays, new_zeros = [], []
        for p in pos:
            zp = zeros[p]
            for q in neg:
                common = zp & zeros[q]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for k, zk in enumerate(zeros):
                    if k != p and k != q and common & ~zk == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], -vals[q]
                ray = _normalize(tuple(vp * y + vq * x for x, y in zip(rays[p], rays[q])))
                new_rays.append(ray)
                new_zeros.append(common | bit[i])
        keep = [k for k, v in enumerate(vals) if v >= 0]
        rays = [rays[k] for k in keep] + new_rays
        zeros = [zeros[k] | (bit[i] if vals[k] == 0 else 0) for k in keep] + new_zeros
    return rays
