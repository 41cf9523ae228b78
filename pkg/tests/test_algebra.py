"""Exact arithmetic layer: vectors, primitives, polynomial division."""

import random
from fractions import Fraction as F

import pytest

from momentkit.algebra import (
    as_vec,
    divides_linear,
    dot,
    generic_vector,
    homogeneous_degree,
    linear_poly,
    monomials,
    pivot_index,
    poly_add,
    poly_const,
    poly_degree,
    poly_eval,
    poly_from_json,
    poly_mul,
    poly_quotient_by_linear,
    poly_str,
    poly_to_json,
    poly_var,
    primitive,
    restrict_to_hyperplane,
    vec,
    vec_from_json,
    vec_to_json,
)
from momentkit.errors import DomainError


def _random_vec(rng, n, lo=-6, hi=6):
    return tuple(F(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(n))


def _random_poly(rng, n, max_deg=3, terms=4):
    f = {}
    for _ in range(terms):
        mono = tuple(rng.randint(0, max_deg) for _ in range(n))
        c = F(rng.randint(-5, 5))
        if c:
            f[mono] = f.get(mono, F(0)) + c
    return {m: c for m, c in f.items() if c}


def test_primitive_examples():
    assert primitive(vec(2, 4)) == vec(1, 2)
    assert primitive(vec("1/2", "1/3")) == vec(3, 2)
    assert primitive(vec(-3, 0, 6)) == vec(-1, 0, 2)


def test_primitive_zero_vector_rejected():
    with pytest.raises(DomainError):
        primitive(vec(0, 0))


def test_primitive_idempotent_and_scale_invariant():
    rng = random.Random(11)
    for _ in range(200):
        v = _random_vec(rng, rng.randint(1, 4))
        if all(e == 0 for e in v):
            continue
        p = primitive(v)
        assert primitive(p) == p
        assert all(e.denominator == 1 for e in p)
        c = F(rng.randint(1, 9), rng.randint(1, 9))
        assert primitive(tuple(c * e for e in v)) == p


def test_dot_symmetric_bilinear():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 4)
        u, v, w = (_random_vec(rng, n) for _ in range(3))
        c = F(rng.randint(-4, 4), rng.randint(1, 3))
        assert dot(u, v) == dot(v, u)
        lhs = dot(u, tuple(c * a + b for a, b in zip(v, w)))
        assert lhs == c * dot(u, v) + dot(u, w)


def test_poly_degree_conventions():
    assert poly_degree({}) == -1
    assert poly_degree(poly_const(2, 5)) == 0
    f = poly_add(poly_var(2, 0), poly_const(2, 1))
    assert poly_degree(f) == 1
    assert homogeneous_degree(f) is None
    assert homogeneous_degree({}) == -1
    assert homogeneous_degree(poly_var(3, 1)) == 1


def test_poly_eval_is_ring_morphism():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 3)
        f, g = _random_poly(rng, n), _random_poly(rng, n)
        x = _random_vec(rng, n)
        assert poly_eval(poly_mul(f, g), x) == poly_eval(f, x) * poly_eval(g, x)
        assert poly_eval(poly_add(f, g), x) == poly_eval(f, x) + poly_eval(g, x)


def test_divides_linear_examples():
    x = vec(1, 0)
    x_minus_y = vec(1, -1)
    f1 = {(2, 0): F(1), (1, 1): F(1)}  # x^2 + x*y
    assert divides_linear(x, f1)
    f2 = {(2, 0): F(1), (0, 2): F(-1)}  # x^2 - y^2
    assert divides_linear(x_minus_y, f2)
    assert not divides_linear(x, {(0, 1): F(1)})  # x does not divide y


def test_divides_linear_zero_form_rejected():
    with pytest.raises(DomainError):
        divides_linear(vec(0, 0), poly_var(2, 0))


def test_quotient_examples():
    x = vec(1, 0)
    assert poly_quotient_by_linear(x, {(2, 0): F(1)}) == {(1, 0): F(1)}
    q = poly_quotient_by_linear(vec(1, -1), {(2, 0): F(1), (0, 2): F(-1)})
    assert q == {(1, 0): F(1), (0, 1): F(1)}  # x + y
    assert poly_quotient_by_linear(vec(0, 1), {}) == {}


def test_quotient_requires_divisibility():
    with pytest.raises(DomainError):
        poly_quotient_by_linear(vec(1, 0), {(0, 1): F(1)})


def test_division_round_trip():
    rng = random.Random(23)
    for _ in range(150):
        n = rng.randint(1, 3)
        ell = _random_vec(rng, n, -4, 4)
        if all(e == 0 for e in ell):
            continue
        f = _random_poly(rng, n)
        prod = poly_mul(linear_poly(ell), f)
        assert divides_linear(ell, prod)
        assert poly_quotient_by_linear(ell, prod) == f


def test_divisibility_agrees_with_random_hyperplane_points():
    # Probabilistic cross-check: f vanishes at 50 random points of the
    # hyperplane ell = 0 iff the exact substitution test says ell | f.
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randint(2, 3)
        ell = _random_vec(rng, n, -4, 4)
        if all(e == 0 for e in ell):
            continue
        f = _random_poly(rng, n)
        if rng.random() < 0.5:
            f = poly_mul(linear_poly(ell), f)
        piv = pivot_index(ell)
        all_zero = True
        for _ in range(50):
            x = list(_random_vec(rng, n, -50, 50))
            x[piv] = F(0)
            x[piv] = -dot(ell, tuple(x)) / ell[piv]
            if poly_eval(f, tuple(x)) != 0:
                all_zero = False
                break
        assert divides_linear(ell, f) == all_zero


def test_restrict_to_hyperplane_kills_the_form_itself():
    ell = vec(2, -3, 1)
    assert restrict_to_hyperplane(ell, linear_poly(ell)) == {}


def test_pivot_index_prefers_largest_then_lowest():
    assert pivot_index(vec(1, -3, 3)) == 1
    assert pivot_index(vec(2, 2)) == 0


def test_monomials_order_and_count():
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert monomials(1, 3) == [(3,)]
    assert monomials(3, 0) == [(0, 0, 0)]
    assert len(monomials(3, 4)) == 15  # C(4+2, 2)
    assert monomials(0, 0) == [()]
    assert monomials(0, 2) == []


def test_poly_str_graded_lex():
    f = {(0, 0): F(5), (2, 0): F(1), (1, 1): F(-3, 2), (0, 1): F(1)}
    assert poly_str(f) == "x^2 - 3/2*x*y + y + 5"
    assert poly_str({}) == "0"


def test_rational_and_vector_json_round_trip():
    v = vec("3/4", -2, 0)
    assert vec_to_json(v) == ["3/4", "-2", "0"]
    assert vec_from_json(vec_to_json(v)) == v
    f = {(2, 1): F(-7, 3), (0, 0): F(4)}
    assert poly_to_json(f) == {"2,1": "-7/3", "0,0": "4"}
    assert poly_from_json(poly_to_json(f), 2) == f


def test_poly_from_json_validates_shape():
    with pytest.raises(ValueError):
        poly_from_json({"1": "2"}, 2)
    with pytest.raises(ValueError):
        poly_from_json({"-1,0": "2"}, 2)
    with pytest.raises(ValueError):
        poly_from_json(["nope"], 2)


def test_generic_vector_deterministic_and_generic():
    vecs = [vec(1, 0), vec(0, 1), vec(-1, 1)]
    a = generic_vector(2, vecs, seed=3)
    b = generic_vector(2, vecs, seed=3)
    assert a == b
    assert all(dot(a, v) != 0 for v in vecs)
    assert generic_vector(2, vecs, seed=4) != a or True  # just runs


def test_as_vec_coerces_strings():
    assert as_vec(["1/2", 3]) == (F(1, 2), F(3))
