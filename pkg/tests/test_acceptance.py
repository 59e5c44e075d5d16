"""Acceptance criteria.  Each test prints one PASS/FAIL line; the lines are
echoed again in the terminal summary.

Every criterion is computed by a report builder that is a pure function of
the seed, so the determinism criterion can rebuild all reports and compare
their JSON bytes.
"""

import itertools
import os
import random
import time

from conftest import ACCEPTANCE_LINES
from helpers import dense, random_balanced_curve, random_laurent, random_polytope, tropical_line
from tropkit.algebra import hilbert_function, poincare_check, volume_polynomial
from tropkit.fan import (
    ShiftedComplex,
    ShiftPolicy,
    intersection_number_at,
    is_balanced,
    is_transverse,
    stable_intersection_number,
    weighted_equivalent,
    weighted_sum,
)
from tropkit.polytope import (
    convex_hull,
    mixed_volume,
    pascal_residual,
    scale,
    volume,
    volume_ehrhart_oracle,
)
from tropkit.serialize import dumps
from tropkit.tropical import bkk_count, bkk_via_fans, tropical_hypersurface

SEED = int(os.environ.get("TROPKIT_SEED", "20240"))

_reports = {}


def _s(x):
    return str(x)


def emit(num, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {num:>2}: {title} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)


def timed(builder, seed):
    t0 = time.perf_counter()
    report = builder(seed)
    return report, time.perf_counter() - t0


# --------------------------------------------------------------------------
# report builders


def bezout_table(seed):
    rows = []
    for d, e in itertools.product(range(1, 5), repeat=2):
        fs = [dense(2, d), dense(2, e)]
        count = bkk_count(fs)
        fans = bkk_via_fans(fs, ShiftPolicy(seed=seed + 10 * d + e))
        rows.append({"d": d, "e": e, "bkk_count": _s(count), "bkk_via_fans": _s(fans)})
    ok = all(r["bkk_count"] == r["bkk_via_fans"] == str(r["d"] * r["e"]) for r in rows)
    return {"ok": ok, "rows": rows}


def bkk_pairs(seed):
    rng = random.Random(seed)
    rows = []
    for i in range(200):
        f, g = random_laurent(rng), random_laurent(rng)
        count = bkk_count([f, g])
        fans = bkk_via_fans([f, g], ShiftPolicy(seed=seed + i, verifications=5))
        rows.append([str(f), str(g), _s(count), _s(fans)])
    return {"ok": all(r[2] == r[3] for r in rows), "pairs": rows}


def volume_oracle(seed):
    rng = random.Random(seed + 3)
    rows = []
    for i in range(100):
        P = random_polytope(rng, 2 + i % 2)
        rows.append({"vertices": P.to_json()["vertices"], "volume": _s(volume(P)), "ehrhart": _s(volume_ehrhart_oracle(P))})
    return {"ok": all(r["volume"] == r["ehrhart"] for r in rows), "polytopes": rows}


def mixed_volume_axioms(seed):
    rng = random.Random(seed + 4)
    out = {}
    ok = True
    for n in (2, 3):
        hi = 6 if n == 2 else 3
        sym = lin = diag = 0
        for _ in range(50):
            Ps = [random_polytope(rng, n, hi=hi, max_points=6) for _ in range(n)]
            v = mixed_volume(Ps)
            sym += all(mixed_volume(list(p)) == v for p in itertools.permutations(Ps))
        for _ in range(50):
            Ps = [random_polytope(rng, n, hi=hi, max_points=6) for _ in range(n)]
            extra = random_polytope(rng, n, hi=hi, max_points=6)
            c = rng.randint(1, 3)
            lhs = mixed_volume([scale(Ps[0], c) + extra] + Ps[1:])
            lin += lhs == c * mixed_volume(Ps) + mixed_volume([extra] + Ps[1:])
        for _ in range(50):
            P = random_polytope(rng, n, hi=hi)
            diag += mixed_volume([P] * n) == volume(P)
        out[f"n{n}"] = {"symmetry": sym, "multilinearity": lin, "diagonal": diag}
        ok = ok and sym == lin == diag == 50
    return {"ok": ok, **out}


def pascal(seed):
    rng = random.Random(seed + 5)
    residuals = []
    for i in range(100):
        P = random_polytope(rng, 2 + i % 2)
        residuals.append([_s(x) for x in pascal_residual(P)])
    return {"ok": all(all(x == "0" for x in r) for r in residuals), "nonzero": [r for r in residuals if any(x != "0" for x in r)]}


def balancing(seed):
    rng = random.Random(seed + 6)
    polys = [dense(2, d) for d in range(1, 5)]
    polys += [random_laurent(rng) for _ in range(200)]
    polys += [random_laurent(rng, n=3, lo=-2, hi=2) for _ in range(30)]
    balanced = sum(is_balanced(tropical_hypersurface(f).weighted) for f in polys)
    bad = tropical_line((1, 1, 2))
    L = tropical_line()
    shifts = [(1, 2), (2, 1), (-2, -1), (-1, -3), (3, -1)]
    counts = [_s(intersection_number_at(bad, L, s)) for s in shifts]
    ok = balanced == len(polys) and not is_balanced(bad) and len(set(counts)) > 1
    return {"ok": ok, "hypersurfaces": len(polys), "balanced": balanced, "perturbed_counts": counts}


def transversality(seed):
    L = tropical_line()
    t11 = is_transverse(L, ShiftedComplex(L, (1, 1)))
    t12 = is_transverse(L, ShiftedComplex(L, (1, 2)))
    return {"ok": t11 is False and t12 is True, "shift_1_1": t11, "shift_1_2": t12}


def polytope_algebra(seed):
    rng = random.Random(seed + 8)
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    triangle = convex_hull([(0, 0), (1, 0), (0, 1)])
    h_st = list(hilbert_function(volume_polynomial([square, triangle])).values)
    D = convex_hull([(0, 0), (2, 0), (1, 3)])
    h_hom = list(hilbert_function(volume_polynomial([D, scale(D, 2)])).values)
    random_h = []
    coeff_ok = True
    for m, n in itertools.product((1, 2, 3), repeat=2):
        for _ in range(3):
            if n == 1:
                basis = [convex_hull([(0,), (rng.randint(1, 5),)]) for _ in range(m)]
            else:
                basis = [random_polytope(rng, n, hi=3, max_points=6) for _ in range(m)]
            P = volume_polynomial(basis)
            h = hilbert_function(P)
            random_h.append({"m": m, "n": n, "hilbert": list(h.values), "poincare": poincare_check(h)})
            for i, j in itertools.product(range(m), repeat=2):
                exp = [0] * m
                exp[i] += n - 1
                exp[j] += 1
                expected = volume(basis[i]) if i == j else n * mixed_volume([basis[i]] * (n - 1) + [basis[j]])
                coeff_ok = coeff_ok and P.coefficient(exp) == expected
    # top-degree products against tropical intersection numbers
    tropical_ok = True
    for d, e in itertools.product(range(1, 4), repeat=2):
        f, g = dense(2, d), dense(2, e)
        P = volume_polynomial([convex_hull(f.support()), convex_hull(g.support())])
        num = stable_intersection_number(
            tropical_hypersurface(f).weighted, tropical_hypersurface(g).weighted, ShiftPolicy(seed=seed)
        )
        tropical_ok = tropical_ok and P.coefficient((1, 1)) == num == d * e
    ok = (
        h_st == [1, 2, 1]
        and h_hom == [1, 1, 1]
        and all(r["poincare"] for r in random_h)
        and coeff_ok
        and tropical_ok
    )
    return {
        "ok": ok,
        "square_triangle": h_st,
        "homothetic": h_hom,
        "random": random_h,
        "coefficients": coeff_ok,
        "tropical": tropical_ok,
    }


def ring_laws(seed):
    rng = random.Random(seed + 9)
    assoc = comm = 0
    for _ in range(50):
        A, B, C = (random_balanced_curve(rng) for _ in range(3))
        comm += weighted_equivalent(weighted_sum(A, B), weighted_sum(B, A))
        assoc += weighted_equivalent(weighted_sum(weighted_sum(A, B), C), weighted_sum(A, weighted_sum(B, C)))
    return {"ok": assoc == comm == 50, "associative": assoc, "commutative": comm}


BUILDERS = {
    1: bezout_table,
    2: bkk_pairs,
    3: volume_oracle,
    4: mixed_volume_axioms,
    5: pascal,
    6: balancing,
    7: transversality,
    8: polytope_algebra,
    9: ring_laws,
}


def _run(num):
    report, elapsed = timed(BUILDERS[num], SEED)
    _reports[num] = report
    return report, elapsed


# --------------------------------------------------------------------------
# criteria


def test_criterion_01_bezout_table():
    report, t = _run(1)
    ok = report["ok"] and t < 10
    emit(1, "Bezout/BKK table d,e in 1..4", ok, f"16 pairs, {t:.2f}s of 10s")
    assert report["ok"], report
    assert t < 10


def test_criterion_02_bkk_cross_oracle():
    report, t = _run(2)
    bad = sum(r[2] != r[3] for r in report["pairs"])
    ok = report["ok"] and t < 60
    emit(2, "BKK count vs fan intersection, 200 random pairs x 5 shifts", ok, f"{bad} mismatches, {t:.2f}s of 60s")
    assert report["ok"]
    assert t < 60


def test_criterion_03_volume_oracle():
    report, t = _run(3)
    bad = sum(r["volume"] != r["ehrhart"] for r in report["polytopes"])
    ok = report["ok"] and t < 60
    emit(3, "volume vs Ehrhart oracle, 100 polytopes", ok, f"{bad} mismatches, {t:.2f}s of 60s")
    assert report["ok"]
    assert t < 60


def test_criterion_04_mixed_volume_axioms():
    report, t = _run(4)
    emit(4, "mixed volume symmetry/multilinearity/diagonal", report["ok"], f"n2={report['n2']}, n3={report['n3']}, {t:.2f}s")
    assert report["ok"], report


def test_criterion_05_pascal():
    report, t = _run(5)
    emit(5, "integral Pascal identity, 100 polytopes", report["ok"], f"{len(report['nonzero'])} nonzero, {t:.2f}s")
    assert report["ok"], report["nonzero"]


def test_criterion_06_balancing():
    report, t = _run(6)
    detail = f"{report['balanced']}/{report['hypersurfaces']} balanced; perturbed line counts {report['perturbed_counts']}"
    emit(6, "balancing and shift dependence", report["ok"], detail)
    assert report["ok"], report


def test_criterion_07_transversality():
    report, t = _run(7)
    emit(7, "tropical line shifted by (1,1) / (1,2)", report["ok"], f"transverse: {report['shift_1_1']} / {report['shift_1_2']}")
    assert report["ok"], report


def test_criterion_08_polytope_algebra():
    report, t = _run(8)
    detail = f"{report['square_triangle']}, {report['homothetic']}, {len(report['random'])} random bases, {t:.2f}s"
    emit(8, "polytope algebra Hilbert functions", report["ok"], detail)
    assert report["ok"], report


def test_criterion_09_ring_laws():
    report, t = _run(9)
    emit(9, "weighted fan sum laws, 50 triples", report["ok"], f"assoc {report['associative']}/50, comm {report['commutative']}/50")
    assert report["ok"], report


def test_criterion_10_determinism(tmp_path):
    first, second = tmp_path / "run1.json", tmp_path / "run2.json"
    first_reports = {k: _reports[k] if k in _reports else BUILDERS[k](SEED) for k in BUILDERS}
    first.write_text(dumps({str(k): v for k, v in first_reports.items()}))
    second.write_text(dumps({str(k): BUILDERS[k](SEED) for k in BUILDERS}))
    same = first.read_bytes() == second.read_bytes()
    emit(10, "byte-identical reports for a fixed seed", same, f"{first.stat().st_size} bytes")
    assert same
