"""Vector fields as foliation data: characteristic polynomial, prolongation,
singular schemes, invariance classification, Darboux search, degree bookkeeping."""

from fractions import Fraction as F

import pytest

from folichar.foliations import (
    ConstantFunction,
    EmptyVariety,
    PolyVectorField,
    ch_singular_locus,
    characteristic_polynomial,
    classify_ch_subvariety,
    darboux_search,
    hamiltonian,
    hyperplane_at_infinity,
    is_invariant,
    prolong,
    singular_scheme,
)
from folichar.ideals import Ideal, eliminate
from folichar.polynomials import LEX, MultiPoly, VarSpace

from conftest import rand_field, rand_poly, rng_for

S2 = VarSpace(("x1", "x2"))
X1, X2 = (MultiPoly.variable(S2, v) for v in S2.all_vars)
D2 = S2.doubled()
DX1, DX2, DY1, DY2 = (MultiPoly.variable(D2, v) for v in D2.all_vars)

ROT = PolyVectorField(S2, [X2, -X1])            # x2 d1 - x1 d2
DIAG = PolyVectorField(S2, [X1, 2 * X2])        # x1 d1 + 2 x2 d2
CUSP = PolyVectorField(S2, [X1 * X1, X2])       # x1^2 d1 + x2 d2
D1 = PolyVectorField(S2, [MultiPoly.constant(S2, 1), MultiPoly.zero(S2)])


def random_field(rng, n=2, max_deg=2):
    space = VarSpace(tuple(f"x{i + 1}" for i in range(n)))
    return rand_field(rng, n, max_deg)


# ---------------------------------------------------------------------------
# characteristic polynomial


def test_characteristic_polynomial_examples():
    assert str(characteristic_polynomial(ROT)) == "x2*y1 - x1*y2"
    assert str(characteristic_polynomial(DIAG)) == "x1*y1 + 2*x2*y2"
    assert str(characteristic_polynomial(D1)) == "y1"


def test_characteristic_polynomial_is_sum_ai_yi():
    rng = rng_for("ch-structure")
    for _ in range(25):
        n = rng.choice([2, 3])
        xi = rand_field(rng, n, 3)
        P = characteristic_polynomial(xi)
        dspace = xi.space.doubled()
        expected = MultiPoly.zero(dspace)
        for a, yidx in zip(xi.components, dspace.y_indices):
            expected = expected + a.lift_to(dspace) * MultiPoly.variable(
                dspace, dspace.all_vars[yidx]
            )
        assert P == expected
        # linear-homogeneous in the y-block
        yset = set(dspace.y_indices)
        assert set(P.homogeneous_parts(yset)) == {1}


# ---------------------------------------------------------------------------
# hamiltonian fields


def test_hamiltonian_examples():
    h = hamiltonian(DY1)
    assert [str(c) for c in h.x_components] == ["1", "0"]
    assert all(c.is_zero() for c in h.y_components)

    h = hamiltonian(DX1)
    assert all(c.is_zero() for c in h.x_components)
    assert [str(c) for c in h.y_components] == ["-1", "0"]

    h = hamiltonian(DX1 * DY1)
    assert [str(c) for c in h.x_components] == ["x1", "0"]
    assert [str(c) for c in h.y_components] == ["-y1", "0"]


def test_hamiltonian_rejects_constants():
    with pytest.raises(ConstantFunction):
        hamiltonian(MultiPoly.constant(D2, 3))
    with pytest.raises(ConstantFunction):
        hamiltonian(MultiPoly.zero(D2))


def test_hamiltonian_annihilates_its_function():
    rng = rng_for("ham-annihilate")
    for _ in range(30):
        f = rand_poly(rng, D2, 3, max_terms=5, nonzero=True)
        if f.degree() == 0:
            continue
        assert hamiltonian(f).apply(f).is_zero()


def test_hamiltonian_leibniz_rule():
    # ham(u*f) = u*ham(f) + f*ham(u), componentwise
    rng = rng_for("ham-leibniz")
    checked = 0
    while checked < 25:
        u = rand_poly(rng, D2, 2, max_terms=4, nonzero=True)
        f = rand_poly(rng, D2, 2, max_terms=4, nonzero=True)
        if u.degree() == 0 or f.degree() == 0:
            continue
        lhs = hamiltonian(u * f)
        hu, hf = hamiltonian(u), hamiltonian(f)
        for L, a, b in zip(
            lhs.x_components + lhs.y_components,
            hu.x_components + hu.y_components,
            hf.x_components + hf.y_components,
        ):
            assert L == f * a + u * b
        checked += 1


# ---------------------------------------------------------------------------
# prolongation


def test_prolong_examples():
    pr = prolong(ROT)
    assert [str(c) for c in pr.x_components] == ["x2", "-x1"]
    assert [str(c) for c in pr.y_components] == ["y2", "-y1"]

    pr = prolong(D1)
    assert [str(c) for c in pr.x_components] == ["1", "0"]
    assert all(c.is_zero() for c in pr.y_components)

    pr = prolong(CUSP)
    assert [str(c) for c in pr.x_components] == ["x1^2", "x2"]
    assert [str(c) for c in pr.y_components] == ["-2*x1*y1", "-y2"]


def test_prolong_is_hamiltonian_of_characteristic_polynomial():
    rng = rng_for("prolong-ham")
    for _ in range(25):
        n = rng.choice([2, 3])
        xi = rand_field(rng, n, 3)
        assert prolong(xi) == hamiltonian(characteristic_polynomial(xi))


def test_prolong_tangency():
    # the prolonged field annihilates the characteristic polynomial
    rng = rng_for("prolong-tangency")
    for _ in range(40):
        n = rng.choice([2, 3, 4])
        xi = rand_field(rng, n, 3)
        P = characteristic_polynomial(xi)
        assert prolong(xi).apply(P).is_zero()


def test_prolong_zero_section_restriction():
    rng = rng_for("prolong-restrict")
    for _ in range(20):
        n = rng.choice([2, 3])
        xi = rand_field(rng, n, 3)
        pr = prolong(xi)
        dspace = pr.space
        yset = set(dspace.y_indices)
        # x-components never involve y and restrict to the original components
        for comp, a in zip(pr.x_components, xi.components):
            assert not comp.involves(yset)
            assert comp.restrict_to(xi.space) == a
        # y-components are y-linear, hence vanish on the zero section
        zero_at = {idx: F(0) for idx in dspace.y_indices}
        for comp in pr.y_components:
            assert comp.substitute(zero_at).is_zero()
            if not comp.is_zero():
                assert set(comp.homogeneous_parts(yset)) == {1}
        assert pr.is_prolongation_shaped()


def test_prolong_zero_section_always_invariant():
    rng = rng_for("prolong-zero-section")
    for _ in range(15):
        n = rng.choice([2, 3])
        xi = rand_field(rng, n, 2)
        pr = prolong(xi)
        dspace = pr.space
        ygens = [
            MultiPoly.variable(dspace, dspace.all_vars[i]) for i in dspace.y_indices
        ]
        report = is_invariant(pr, Ideal(dspace, ygens))
        assert report.invariant


# ---------------------------------------------------------------------------
# singular schemes


def test_singular_scheme_isolated_reduced():
    ss = singular_scheme(ROT)
    assert ss.isolated and ss.reduced
    assert ss.vecdim == 1 and ss.distinct_points == 1
    assert ss.divisorial_part is None


def test_singular_scheme_nonreduced():
    ss = singular_scheme(CUSP)
    assert ss.isolated and not ss.reduced
    assert ss.vecdim == 2 and ss.distinct_points == 1
    assert ss.divisorial_part is None


def test_singular_scheme_divisorial():
    ss = singular_scheme(PolyVectorField(S2, [X1, X1]))
    assert str(ss.divisorial_part) == "x1"
    assert not ss.isolated


def test_ch_singular_locus_trio():
    rep = ch_singular_locus(DIAG)
    assert rep.smooth_away_from_zero_section and rep.consistent
    gens = {str(g) for g in rep.jacobian_ideal.generators}
    assert gens == {"x1*y1 + 2*x2*y2", "y1", "2*y2", "x1", "2*x2"}

    assert not ch_singular_locus(CUSP).smooth_away_from_zero_section
    assert ch_singular_locus(D1).smooth_away_from_zero_section


# ---------------------------------------------------------------------------
# invariance and classification


def test_is_invariant_examples():
    assert is_invariant(DIAG, Ideal(S2, [X2])).invariant
    rep = is_invariant(ROT, Ideal(S2, [X2]))
    assert not rep.invariant
    # certificate shows the failing generator and its nonzero remainder
    bad = [c for c in rep.certificates if not c.remainder.is_zero()]
    assert bad and str(bad[0].image) == "-x1"

    pr = prolong(DIAG)
    assert is_invariant(pr, Ideal(D2, [DX2, DY1])).invariant


def test_is_invariant_rejects_unit_ideal():
    with pytest.raises(EmptyVariety):
        is_invariant(DIAG, Ideal(S2, [MultiPoly.constant(S2, 1)]))


def test_classify_trichotomy_table():
    P = characteristic_polynomial(DIAG)
    cases = [
        (Ideal(D2, [DY1, DY2]), "ZeroSection"),
        (Ideal(D2, [DX1, DX2]), "FiberOverSingularPoint"),
        (Ideal(D2, [DX2, DY1]), "QuasiMinimalityViolation"),
        (Ideal(D2, [P]), "WholeCharVariety"),
    ]
    for J, tag in cases:
        c = classify_ch_subvariety(DIAG, J)
        assert c.tag == tag, f"{tag}: got {c.tag}"
        assert c.certificate is not None
    fiber = classify_ch_subvariety(DIAG, Ideal(D2, [DX1, DX2]))
    assert fiber.point == (F(0), F(0))


def test_classify_negative_tags():
    assert classify_ch_subvariety(DIAG, Ideal(D2, [DX1 - 1])).tag == "NotContained"
    assert (
        classify_ch_subvariety(DIAG, Ideal(D2, [DX1, DX2, DY1 + DY2 * DY2])).tag
        == "NotYHomogeneous"
    )
    assert (
        classify_ch_subvariety(DIAG, Ideal(D2, [DY1, DY2, DX1 - DX2])).tag
        == "NotInvariant"
    )
    unit = classify_ch_subvariety(DIAG, Ideal(D2, [MultiPoly.constant(D2, 1)]))
    assert unit.tag == "EmptyVariety"


def test_projection_of_invariant_subvariety_is_invariant():
    # eliminating the y-block from a prolongation-invariant ideal leaves an
    # ideal stable under the base field
    fixtures = [
        (DIAG, Ideal(D2, [DX1, DY2])),
        (DIAG, Ideal(D2, [DX2, DY1])),
        (DIAG, Ideal(D2, [DX1, DX2])),
        (ROT, Ideal(D2, [DX1 * DX1 + DX2 * DX2, DY1 * DY1 + DY2 * DY2])),
    ]
    for xi, J in fixtures:
        pr = prolong(xi)
        assert is_invariant(pr, J).invariant
        projected = eliminate(J, [D2.all_vars[i] for i in D2.x_indices])
        restricted = Ideal(S2, [g.restrict_to(S2) for g in projected.generators])
        if restricted.generators:
            assert is_invariant(xi, restricted).invariant


# ---------------------------------------------------------------------------
# Darboux search


def test_darboux_diagonal_field():
    rep = darboux_search(DIAG, 1, 0)
    got = sorted((str(p.polynomial), str(p.cofactor)) for p in rep.pairs)
    assert got == [("x1", "1"), ("x2", "2")]
    assert rep.complete


def test_darboux_rotation_first_integral():
    rep = darboux_search(ROT, 2, 1)
    got = sorted((str(p.polynomial), str(p.cofactor)) for p in rep.pairs)
    assert got == [("x1^2 + x2^2", "0")]


def test_darboux_bound_zero_is_empty():
    rep = darboux_search(DIAG, 0, 0)
    assert rep.pairs == [] and rep.complete


def test_darboux_pairs_reverify():
    rng = rng_for("darboux-reverify")
    fields = [DIAG, ROT, CUSP]
    for _ in range(5):
        fields.append(rand_field(rng, 2, 1))
    for xi in fields:
        rep = darboux_search(xi, 2, max(xi.degree() - 1, 0))
        for pair in rep.pairs:
            g, c = pair.polynomial, pair.cofactor
            assert g.degree() >= 1
            assert (xi.apply(g) - c * g).is_zero()
            # monic normalization in the leading coefficient
            assert g.leading(LEX)[1] == 1


# ---------------------------------------------------------------------------
# hyperplane at infinity


def test_hyperplane_at_infinity_table():
    radial = hyperplane_at_infinity(PolyVectorField(S2, [X1, X2]))
    assert (radial.invariant, radial.projective_degree) == (False, 0)
    assert radial.affine_degree == 1

    rot = hyperplane_at_infinity(ROT)
    assert (rot.invariant, rot.projective_degree) == (True, 1)
    assert rot.radial_factor is None

    mixed = hyperplane_at_infinity(
        PolyVectorField(S2, [1 + X1 * X1, X1 * X2])
    )
    assert (mixed.invariant, mixed.projective_degree) == (False, 1)
    assert str(mixed.radial_factor) == "x1"

    diag = hyperplane_at_infinity(DIAG)
    assert (diag.invariant, diag.projective_degree) == (True, 1)
