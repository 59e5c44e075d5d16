import random
from fractions import Fraction

import pytest

from helpers import dense, random_laurent, tropical_line
from tropkit import DomainError, ParseError
from tropkit.fan import Cone, Fan, ShiftPolicy, is_balanced, weighted_equivalent, weighted_sum
from tropkit.polytope import convex_hull, minkowski_sum
from tropkit.tropical import (
    GENERIC,
    LaurentPolynomial,
    bkk_count,
    bkk_via_fans,
    newton_polytope,
    parse_laurent,
    tropical_hypersurface,
    verify_bergman_shape,
)


def rays_and_weights(f):
    W = tropical_hypersurface(f).weighted
    return {c.rays: w for c, w in W.weights.items()}


# parsing


def test_parse_examples():
    assert parse_laurent("x + y + 1").terms == {(1, 0): 1, (0, 1): 1, (0, 0): 1}
    f = parse_laurent("y^2 + 3 + 5*x^2 + x^3")
    assert set(f.support()) == {(0, 2), (0, 0), (2, 0), (3, 0)}
    assert f.terms[(2, 0)] == 5
    with pytest.raises(DomainError, match="empty polynomial"):
        parse_laurent("x^-1*y^2 - x^-1*y^2")


def test_parse_variants():
    assert parse_laurent("x^(-1) y^2 + 2/3").terms == {(-1, 2): 1, (0, 0): Fraction(2, 3)}
    assert parse_laurent("x1*x3^2 - x2", n=4).terms == {(1, 0, 2, 0): 1, (0, 1, 0, 0): -1}
    assert parse_laurent("g*x + g + y").terms[(1, 0)] is GENERIC
    assert parse_laurent("2x + 3x").terms == {(1,): 5}
    assert parse_laurent("x*x*y^-1").terms == {(2, -1): 1}


@pytest.mark.parametrize("text, pos", [("x + * y", 4), ("x^", 2), ("x + q", 4), ("x^1.5", 2), ("x*", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_laurent(text)
    assert info.value.position == pos


def test_parse_rejects_mixed_variable_styles():
    with pytest.raises(ParseError):
        parse_laurent("x + x2")
    with pytest.raises(ParseError):
        parse_laurent("z", n=2)


def test_str_round_trip():
    rng = random.Random(0)
    for _ in range(50):
        f = random_laurent(rng, n=rng.randint(1, 3))
        assert parse_laurent(str(f), f.n) == f


def test_generic_absorbs_arithmetic():
    f = parse_laurent("g*x + 1")
    g = parse_laurent("x - 1")
    prod = f * g
    assert prod.terms[(2,)] is GENERIC and prod.terms[(1,)] is GENERIC
    assert prod.terms[(0,)] == -1


# Newton polytopes


def test_newton_examples():
    assert set(newton_polytope(parse_laurent("g*y^2 + g + g*x^2 + g*x^3")).vertices) == {(0, 0), (3, 0), (0, 2)}
    assert newton_polytope(parse_laurent("x^3*y^-2")).vertices == ((3, -2),)
    assert newton_polytope(parse_laurent("x + y + 1")) == convex_hull([(0, 0), (1, 0), (0, 1)])


def _generic(f):
    return LaurentPolynomial(f.n, {e: GENERIC for e in f.terms})


def test_newton_of_product_is_minkowski_sum():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.choice((2, 3))
        f, g = _generic(random_laurent(rng, n)), _generic(random_laurent(rng, n))
        assert newton_polytope(f * g) == minkowski_sum(newton_polytope(f), newton_polytope(g))


def test_monomial_shift_invariance():
    rng = random.Random(2)
    for _ in range(30):
        f = random_laurent(rng)
        beta = (rng.randint(-3, 3), rng.randint(-3, 3))
        shifted = f * LaurentPolynomial(2, {beta: 1})
        assert newton_polytope(shifted) == newton_polytope(f).translate(beta)
        assert tropical_hypersurface(shifted).weighted.to_json() == tropical_hypersurface(f).weighted.to_json()


# tropical hypersurfaces


def test_tropical_examples():
    assert rays_and_weights(parse_laurent("x + y + 1")) == {((-1, -1),): 1, ((0, 1),): 1, ((1, 0),): 1}
    for d in (2, 3, 4):
        assert rays_and_weights(dense(2, d)) == {((-1, -1),): d, ((0, 1),): d, ((1, 0),): d}
    assert rays_and_weights(parse_laurent("1 + x^2 + y^2")) == {((-1, -1),): 2, ((0, 1),): 2, ((1, 0),): 2}


def test_single_monomial_gives_empty_cycle():
    T = tropical_hypersurface(parse_laurent("x^3*y^-2"))
    assert T.weighted.weights == {} and T.weighted.d == 1


def test_tropical_plane():
    W = tropical_hypersurface(parse_laurent("1 + x + y + z")).weighted
    assert len(W.top_cones()) == 6 and all(w == 1 for w in W.weights.values())
    assert is_balanced(W)


def test_lower_dimensional_newton_polytope():
    # binomial 1 + xy: its curve is the line x + y = 0, weight 1
    W = tropical_hypersurface(parse_laurent("1 + x*y")).weighted
    assert {c.rays for c in W.top_cones()} == {((1, -1),), ((-1, 1),)}
    assert is_balanced(W)
    # 1 + x + y^... in 3 variables with a planar Newton polygon
    W3 = tropical_hypersurface(parse_laurent("1 + x + y", n=3)).weighted
    assert is_balanced(W3) and verify_bergman_shape(W3)


def test_random_hypersurfaces_are_balanced_fans():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.choice((2, 2, 3))
        f = random_laurent(rng, n, lo=-2, hi=2)
        T = tropical_hypersurface(f)
        assert is_balanced(T.weighted)
        if T.weighted.weights:
            assert verify_bergman_shape(T)
        assert all(w > 0 and w.denominator == 1 for w in T.weighted.weights.values())


def test_trop_of_product_is_sum():
    rng = random.Random(4)
    for _ in range(25):
        f, g = _generic(random_laurent(rng)), _generic(random_laurent(rng))
        a, b = tropical_hypersurface(f).weighted, tropical_hypersurface(g).weighted
        assert weighted_equivalent(weighted_sum(a, b), tropical_hypersurface(f * g).weighted)


def test_verify_bergman_shape():
    assert verify_bergman_shape(tropical_line())
    assert verify_bergman_shape(tropical_hypersurface(parse_laurent("x+y+1")))
    assert not verify_bergman_shape(Fan(2, frozenset({Cone.zero(2)})))
    assert not verify_bergman_shape(Fan.from_cones([Cone.from_generators([(1, 0), (0, 1)])]))


# BKK


def test_bkk_examples():
    line = parse_laurent("x + y + 1")
    assert bkk_count([line, line]) == 1 == bkk_via_fans([line, line])
    assert bkk_count([dense(2, 2), dense(2, 3)]) == 6 == bkk_via_fans([dense(2, 2), dense(2, 3)])
    a, b = parse_laurent("1 + x*y"), parse_laurent("1 + x*y^-1")
    assert bkk_count([a, b]) == 2 == bkk_via_fans([a, b])


def test_bkk_errors():
    with pytest.raises(DomainError, match="unsupported dimension"):
        bkk_via_fans([dense(3, 1)] * 3)
    with pytest.raises(DomainError):
        bkk_count([dense(2, 1)])


def test_bkk_three_variables():
    assert bkk_count([dense(3, 1), dense(3, 2), dense(3, 3)]) == 6


def test_bkk_cross_oracle_small():
    rng = random.Random(5)
    for k in range(25):
        f, g = random_laurent(rng), random_laurent(rng)
        assert bkk_count([f, g]) == bkk_via_fans([f, g], ShiftPolicy(seed=k, verifications=3))
