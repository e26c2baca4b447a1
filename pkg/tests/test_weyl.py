"""Weyl algebra arithmetic, Bernstein/order symbols, and the identification of
the principal symbol of an order-one operator with the characteristic
polynomial of its vector-field part."""

from fractions import Fraction as F

import pytest

from folichar.foliations import PolyVectorField, characteristic_polynomial
from folichar.polynomials import MultiPoly, VarSpace
from folichar.weyl import (
    SizeMismatch,
    WeylOperator,
    ZeroOperator,
    bernstein_symbol,
    charvariety_of_principal_ideal,
    order_one_field,
    principal_symbol,
    weyl_mul,
)

from conftest import rand_poly, rng_for

D1 = WeylOperator.d_var(1, 0)
X1 = WeylOperator.x_var(1, 0)


def rand_weyl(rng, n, max_deg=2, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        xe = tuple(rng.randint(0, max_deg) for _ in range(n))
        de = tuple(rng.randint(0, max_deg) for _ in range(n))
        terms[(xe, de)] = F(rng.randint(-5, 5))
    return WeylOperator(n, terms)


# ---------------------------------------------------------------------------
# multiplication


def test_weyl_mul_examples():
    p = weyl_mul(D1, X1)  # d x = x d + 1
    assert p.terms == {((1,), (1,)): F(1), ((0,), (0,)): F(1)}

    q = weyl_mul(weyl_mul(D1, D1), X1)  # d^2 x = x d^2 + 2 d
    assert q.terms == {((1,), (2,)): F(1), ((0,), (1,)): F(2)}

    r = weyl_mul(X1, D1)  # already normally ordered
    assert r.terms == {((1,), (1,)): F(1)}


def test_weyl_commutation_relations():
    n = 3
    one = WeylOperator.constant(n, 1)
    for i in range(n):
        for j in range(n):
            d = WeylOperator.d_var(n, i)
            x = WeylOperator.x_var(n, j)
            bracket = weyl_mul(d, x) - weyl_mul(x, d)
            if i == j:
                assert bracket == one
            else:
                assert bracket.is_zero()


def test_weyl_mul_associative():
    rng = rng_for("weyl-assoc")
    for _ in range(40):
        n = rng.choice([1, 2])
        a, b, c = (rand_weyl(rng, n) for _ in range(3))
        assert weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c))


def test_weyl_mul_size_mismatch():
    with pytest.raises(SizeMismatch):
        weyl_mul(D1, WeylOperator.d_var(2, 0))


# ---------------------------------------------------------------------------
# Bernstein symbol


def test_bernstein_symbol_examples():
    k, s = bernstein_symbol(weyl_mul(X1, D1) + WeylOperator.constant(1, 1))
    assert k == 2 and str(s) == "x1*y1"

    x1cubed = weyl_mul(X1, weyl_mul(X1, X1))
    k, s = bernstein_symbol(weyl_mul(D1, D1) + x1cubed)
    assert k == 3 and str(s) == "x1^3"

    k, s = bernstein_symbol(D1 + X1)
    assert k == 1 and str(s) == "x1 + y1"


def test_symbols_reject_zero_operator():
    with pytest.raises(ZeroOperator):
        bernstein_symbol(WeylOperator.zero(1))
    with pytest.raises(ZeroOperator):
        principal_symbol(WeylOperator.zero(2))


def test_bernstein_symbol_multiplicative():
    # sigma(ab) = sigma(a) sigma(b) when the top parts do not cancel;
    # cancellation shows up as a degree drop instead
    rng = rng_for("weyl-sigma-mult")
    for _ in range(60):
        n = rng.choice([1, 2])
        a, b = rand_weyl(rng, n), rand_weyl(rng, n)
        if a.is_zero() or b.is_zero():
            continue
        ka, sa = bernstein_symbol(a)
        kb, sb = bernstein_symbol(b)
        ab = weyl_mul(a, b)
        if sa * sb != MultiPoly.zero(sa.space):
            kab, sab = bernstein_symbol(ab)
            assert kab == ka + kb
            assert sab == sa * sb
        else:
            assert ab.is_zero() or ab.total_degree() < ka + kb


# ---------------------------------------------------------------------------
# order filtration / principal symbol


def test_principal_symbol_examples():
    S = VarSpace(("x1", "x2"))
    x1, x2 = (MultiPoly.variable(S, v) for v in S.all_vars)
    rot = PolyVectorField(S, [x2, -x1])
    op = WeylOperator.from_vector_field(rot) + WeylOperator.from_poly(x1)
    m, sym = principal_symbol(op, space=S.doubled())
    assert m == 1 and str(sym) == "x2*y1 - x1*y2"

    da, db = WeylOperator.d_var(2, 0), WeylOperator.d_var(2, 1)
    m, sym = principal_symbol(weyl_mul(da, db) + da)
    assert m == 2 and str(sym) == "y1*y2"

    m, sym = principal_symbol(X1)
    assert m == 0 and str(sym) == "x1"


def test_principal_symbol_of_field_plus_function_is_char_poly():
    rng = rng_for("weyl-bridge")
    for _ in range(30):
        n = rng.choice([1, 2, 3])
        space = VarSpace(tuple(f"x{i + 1}" for i in range(n)))
        comps = [rand_poly(rng, space, 2, max_terms=3) for _ in range(n)]
        if all(c.is_zero() for c in comps):
            comps[0] = MultiPoly.variable(space, "x1")
        xi = PolyVectorField(space, comps)
        f = rand_poly(rng, space, 2, max_terms=3)
        op = WeylOperator.from_vector_field(xi) + WeylOperator.from_poly(f)
        m, sym = principal_symbol(op, space=space.doubled())
        assert m == 1
        assert sym == characteristic_polynomial(xi)
        assert order_one_field(op, space.doubled()) == xi


def test_charvariety_of_principal_ideal():
    S = VarSpace(("x1", "x2"))
    x1, x2 = (MultiPoly.variable(S, v) for v in S.all_vars)
    diag = PolyVectorField(S, [x1, 2 * x2])
    op = WeylOperator.from_vector_field(diag) + WeylOperator.constant(2, 7)
    ideal = charvariety_of_principal_ideal(op, space=S.doubled())
    assert [str(g) for g in ideal.generators] == ["x1*y1 + 2*x2*y2"]
    assert ideal.generators[0] == characteristic_polynomial(diag)

    ideal = charvariety_of_principal_ideal(WeylOperator.d_var(1, 0))
    assert [str(g) for g in ideal.generators] == ["y1"]

    dsq = weyl_mul(WeylOperator.d_var(1, 0), WeylOperator.d_var(1, 0))
    ideal = charvariety_of_principal_ideal(dsq)
    assert [str(g) for g in ideal.generators] == ["y1^2"]
