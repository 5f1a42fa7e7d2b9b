"""Derivation certification: well-definedness, nilpotency, decomposition, exp."""

import random
from fractions import Fraction

import pytest

from suspensia import (
    MINUS_INFINITY,
    DerivationError,
    MissingCertificateError,
    NotWellDefinedError,
    QQ,
    algebra_from_strings,
    attach_grading,
    build_vandermonde_lnd,
    build_Yp,
    certify_lnd,
    decompose,
    exp,
    homogeneous_degree,
    homogenize_lnd,
    identity_morphism,
    is_diagonal_semisimple,
    new_derivation,
    nu,
    parse_expression,
    zero_derivation,
)
from suspensia.constructions import yp_weight_row

from helpers import nonzero_random_polynomial, random_polynomial

import helpers


def free_xy():
    return algebra_from_strings(QQ, ["x", "y"], [])


def torus_line():
    return algebra_from_strings(QQ, ["y", "w"], ["y*w - 1"])


def D(algebra, **images):
    parsed = {
        name: parse_expression(str(expr), algebra.context)
        for name, expr in images.items()
    }
    return new_derivation(algebra, parsed)


@pytest.fixture(scope="module")
def y3():
    algebra = build_Yp(3)
    derivation = build_vandermonde_lnd(3, algebra)
    certify_lnd(derivation, 8)
    return algebra, derivation


def test_partial_derivative_derivation():
    d = D(free_xy(), x="0", y="x")
    assert d.well_defined.ok
    assert d.images["y"].rep == parse_expression("x", d.algebra.context)


def test_vandermonde_relation_images_identically_zero(y3):
    _, derivation = y3
    assert all(check.identically_zero for check in derivation.well_defined.checks)


def test_ill_defined_rejected_with_witness():
    with pytest.raises(NotWellDefinedError) as info:
        D(torus_line(), y="1", w="0")
    assert info.value.witness.text() == "w"


def test_missing_image_rejected():
    algebra = free_xy()
    with pytest.raises(DerivationError):
        new_derivation(algebra, {"x": parse_expression("0", algebra.context)})


def test_apply_is_leibniz_on_products():
    rng = random.Random(59)
    fixtures = [
        D(free_xy(), x="1", y="0"),
        D(torus_line(), y="y", w="-w"),
    ]
    for d in fixtures:
        for _ in range(200):
            a = d.algebra.element(random_polynomial(rng, d.algebra.context, max_exp=2))
            b = d.algebra.element(random_polynomial(rng, d.algebra.context, max_exp=2))
            assert d.apply(a * b) == a * d.apply(b) + b * d.apply(a)


def test_apply_leibniz_on_torus_product():
    d = D(torus_line(), y="y", w="-w")
    y, w = d.algebra.variable("y"), d.algebra.variable("w")
    assert d.apply(y * w) == y * d.apply(w) + w * d.apply(y)
    assert not d.apply(y * w)


def test_apply_iter_z_twice_vanishes(y3):
    algebra, derivation = y3
    assert not derivation.apply_iter(algebra.variable("z"), 2)


def test_apply_zero_derivation(y3):
    algebra, _ = y3
    zero = zero_derivation(algebra)
    assert not zero.apply(algebra.variable("x0"))


def test_nu_values(y3):
    algebra, derivation = y3
    assert nu(derivation, algebra.variable("z"), 8) == 1
    assert nu(derivation, algebra.zero(), 8) == MINUS_INFINITY
    assert nu(derivation, algebra.variable("x0"), 8) == 2
    # the same order falls out of iteration in the free ring: the third
    # application of the raw Leibniz extension kills x0 identically
    raw = algebra.variable("x0").rep
    for _ in range(3):
        raw = derivation.leibniz_image(raw)
    assert not raw.terms


def test_certify_vandermonde(y3):
    _, derivation = y3
    certificate = derivation.lnd_certificate
    assert certificate.certified
    assert certificate.orders == {"x0": 2, "x1": 2, "x2": 2, "y": 0, "z": 1, "w": 0}


def test_certify_euler_inconclusive():
    d = D(free_xy(), x="x", y="0")
    certificate = certify_lnd(d, 12)
    assert not certificate.certified
    assert "x" in certificate.inconclusive


def test_certify_zero_derivation():
    zero = zero_derivation(free_xy())
    certificate = certify_lnd(zero, 4)
    assert certificate.certified
    assert set(certificate.orders.values()) == {0}


def test_degree_function_laws_partial_derivative():
    rng = random.Random(61)
    algebra = free_xy()
    d = D(algebra, x="1", y="0")
    for _ in range(200):
        f = algebra.element(nonzero_random_polynomial(rng, algebra.context, max_exp=3))
        g = algebra.element(nonzero_random_polynomial(rng, algebra.context, max_exp=3))
        nf, ng = nu(d, f, 16), nu(d, g, 16)
        assert nu(d, f * g, 32) == nf + ng
        if f + g:
            assert nu(d, f + g, 32) <= max(nf, ng)


def test_degree_function_laws_vandermonde(y3):
    rng = random.Random(67)
    algebra, derivation = y3
    pool = [
        algebra.variable("x0"),
        algebra.variable("x1"),
        algebra.variable("x2"),
        algebra.variable("z"),
        algebra.one(),
    ]
    for _ in range(200):
        f = sum(
            (helpers.random_fraction(rng) * e for e in rng.sample(pool, 2)),
            algebra.zero(),
        )
        g = sum(
            (helpers.random_fraction(rng) * e for e in rng.sample(pool, 2)),
            algebra.zero(),
        )
        if not f or not g:
            continue
        nf, ng = nu(derivation, f, 8), nu(derivation, g, 8)
        assert nu(derivation, f * g, 16) == nf + ng
        if f + g:
            assert nu(derivation, f + g, 16) <= max(nf, ng)


def test_decompose_direct_reading():
    algebra = algebra_from_strings(QQ, ["x"], [])
    d = D(algebra, x="x^2 + 1")
    grading = attach_grading(algebra, [(1,)])
    pieces = decompose(d, grading)
    assert (pieces.lower, pieces.upper) == (-1, 1)
    assert pieces.components[-1].images["x"] == 1
    assert pieces.components[1].images["x"].rep == parse_expression(
        "x^2", algebra.context
    )
    assert -1 in pieces.components and 1 in pieces.components and 0 not in pieces.components


def test_decompose_homogeneous_is_identity(y3):
    algebra, derivation = y3
    grading = attach_grading(algebra, [yp_weight_row(3)])
    pieces = decompose(derivation, grading)
    assert list(pieces.components) == [1]
    assert pieces.components[1] == derivation


def _mixed_y3_lnd(algebra, derivation):
    # (1 + y) times the solved derivation: still nilpotent since y is killed,
    # and inhomogeneous under gradings that weight y
    scale = algebra.one() + algebra.variable("y")
    images = {n: (scale * derivation.images[n]).rep for n in algebra.variables}
    return new_derivation(algebra, images)


def test_decompose_sums_back_and_extremes_certify(y3):
    algebra, derivation = y3
    mixed = _mixed_y3_lnd(algebra, derivation)
    assert certify_lnd(mixed, 8).certified
    grading = attach_grading(algebra, [(0, -1, -2, 1, 0, -1)])
    pieces = decompose(mixed, grading)
    assert len(pieces.components) == 2
    for name in algebra.variables:
        total = algebra.zero()
        for part in pieces.components.values():
            total = total + part.images[name]
        assert total == mixed.images[name]
    for extreme in (pieces.lower, pieces.upper):
        assert certify_lnd(pieces.components[extreme], 8).certified
    assert pieces.components[pieces.lower] == derivation


def test_decompose_zero_derivation():
    algebra = free_xy()
    pieces = decompose(
        zero_derivation(algebra), attach_grading(algebra, [(1, 1)])
    )
    assert pieces.components == {}
    assert pieces.lower is None and pieces.upper is None


def test_homogeneous_degree_vector(y3):
    algebra, derivation = y3
    grading = attach_grading(algebra, [yp_weight_row(3), (0, 0, 0, 0, 0, 0)])
    assert homogeneous_degree(derivation, grading) == (1, 0)


def test_homogenize_already_homogeneous(y3):
    algebra, derivation = y3
    grading = attach_grading(algebra, [yp_weight_row(3)])
    result, degree = homogenize_lnd(derivation, grading, 8)
    assert result == derivation
    assert degree == (1,)


def test_homogenize_takes_top_component():
    algebra = free_xy()
    d = D(algebra, x="0", y="x + x^2")
    grading = attach_grading(algebra, [(1, 1)])
    certify_lnd(d, 8)
    result, degree = homogenize_lnd(d, grading)
    assert result.images["y"].rep == parse_expression("x^2", algebra.context)
    assert degree == (1,)
    assert result.lnd_certificate.certified


def test_homogenize_two_rows():
    algebra = free_xy()
    d = D(algebra, x="0", y="x + x^2")
    grading = attach_grading(algebra, [(1, 1), (1, 2)])
    certify_lnd(d, 8)
    result, degree = homogenize_lnd(d, grading)
    assert homogeneous_degree(result, grading) == degree
    # homogeneous under both rows
    for row in (0, 1):
        for name in algebra.variables:
            rep = result.images[name].rep
            if rep.terms:
                assert len(rep.weighted_components(grading.matrix[row])) == 1


def test_homogenize_zero_rejected():
    algebra = free_xy()
    grading = attach_grading(algebra, [(1, 1)])
    with pytest.raises(DerivationError):
        homogenize_lnd(zero_derivation(algebra), grading)


def test_diagonal_semisimple():
    d = D(free_xy(), x="x", y="2*y")
    assert is_diagonal_semisimple(d) == (1, 2)
    zero = zero_derivation(free_xy())
    assert is_diagonal_semisimple(zero) == (0, 0)


def test_diagonal_semisimple_absent(y3):
    _, derivation = y3
    assert is_diagonal_semisimple(derivation) is None
    d = D(free_xy(), x="y", y="0")
    assert is_diagonal_semisimple(d) is None


def test_exp_identity_at_zero():
    algebra = free_xy()
    d = D(algebra, x="0", y="x")
    certify_lnd(d, 4)
    assert exp(d, 0).agrees_with(identity_morphism(algebra))


def test_exp_triangular():
    algebra = free_xy()
    d = D(algebra, x="0", y="x")
    certify_lnd(d, 4)
    m = exp(d, Fraction(1))
    assert m.images["y"].rep == parse_expression("x + y", algebra.context)
    assert m.images["x"] == algebra.variable("x")


def test_exp_requires_certificate():
    d = D(free_xy(), x="0", y="x")
    with pytest.raises(MissingCertificateError):
        exp(d, 1)


def test_exp_group_law_triangular():
    rng = random.Random(71)
    algebra = free_xy()
    d = D(algebra, x="0", y="x + x^2")
    certify_lnd(d, 8)
    for _ in range(20):
        s = helpers.random_fraction(rng)
        t = helpers.random_fraction(rng)
        composed = exp(d, s).compose(exp(d, t))
        assert composed.agrees_with(exp(d, s + t))


def test_exp_vandermonde_maps_relations_into_ideal(y3):
    algebra, derivation = y3
    m = exp(derivation, 1, with_inverse=True)
    for relation in algebra.relations:
        assert not m.apply(relation)
    assert m.inverse is not None
    roundtrip = m.inverse.compose(m)
    assert roundtrip.agrees_with(identity_morphism(algebra))


def test_exp_group_law_vandermonde(y3):
    rng = random.Random(73)
    _, derivation = y3
    for _ in range(5):
        s = helpers.random_fraction(rng, span=3)
        t = helpers.random_fraction(rng, span=3)
        assert exp(derivation, s).compose(exp(derivation, t)).agrees_with(
            exp(derivation, s + t)
        )


def test_certificate_json_payload(y3):
    from suspensia.derivation import certificate_json

    algebra, derivation = y3
    grading = attach_grading(algebra, [yp_weight_row(3)])
    payload = certificate_json(derivation, grading)
    assert payload["wellDefined"]["ok"]
    assert all(r["identicallyZero"] for r in payload["wellDefined"]["relations"])
    assert payload["lnd"]["status"] == "certified"
    assert payload["lnd"]["orders"] == {
        "x0": 2, "x1": 2, "x2": 2, "y": 0, "z": 1, "w": 0
    }
    assert payload["homogeneous"] == [1]


def test_decomposed_components_satisfy_leibniz(y3):
    rng = random.Random(79)
    algebra, derivation = y3
    mixed = _mixed_y3_lnd(algebra, derivation)
    grading = attach_grading(algebra, [(0, -1, -2, 1, 0, -1)])
    pieces = decompose(mixed, grading)
    pool = [algebra.variable(n) for n in ("x0", "x1", "z", "y")]
    for part in pieces.components.values():
        for _ in range(25):
            a, b = rng.sample(pool, 2)
            assert part.apply(a * b) == a * part.apply(b) + b * part.apply(a)
