"""Seeded random generators shared across the test modules."""

import random
from fractions import Fraction

from folichar.foliations import PolyVectorField
from folichar.polynomials import MultiPoly, VarSpace


def rng_for(name, seed=20250814):
    return random.Random(f"{name}:{seed}")


def rand_poly(rng, space, max_deg, max_terms=4, nonzero=False):
    n = space.nvars
    p = MultiPoly.zero(space)
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(n)] += 1
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        p = p + MultiPoly.monomial(space, tuple(e), c)
    if nonzero and p.is_zero():
        p = p + MultiPoly.constant(space, 1)
    return p


def rand_field(rng, n, max_deg, max_terms=3):
    space = VarSpace(tuple(f"x{i + 1}" for i in range(n)))
    while True:
        comps = [rand_poly(rng, space, max_deg, max_terms) for _ in range(n)]
        if any(not c.is_zero() for c in comps):
            return PolyVectorField(space, comps)


def axis_invariant_field(rng, n, max_deg):
    """Random field leaving the x1-axis invariant: a_i in (x2..xn) for i >= 2."""
    space = VarSpace(tuple(f"x{i + 1}" for i in range(n)))
    xs = [MultiPoly.variable(space, v) for v in space.all_vars]
    comps = [rand_poly(rng, space, max_deg)]
    for i in range(1, n):
        acc = MultiPoly.zero(space)
        for j in range(1, n):
            acc = acc + xs[j] * rand_poly(rng, space, max_deg - 1, 2)
        comps.append(acc)
    if all(c.is_zero() for c in comps):
        comps[0] = xs[0]
    return PolyVectorField(space, comps)
