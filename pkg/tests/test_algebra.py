"""Presented algebras, element equality, gradings, and coarsening."""

import random

import pytest

from suspensia import (
    Context,
    GradingError,
    Polynomial,
    PresentationError,
    QQ,
    algebra_from_strings,
    attach_grading,
    build_Xp,
    build_Yp,
    coarsen_grading,
    new_algebra,
    parse_expression,
)
from suspensia.linalg import matmul

from helpers import random_polynomial


def torus_line():
    return algebra_from_strings(QQ, ["y", "w"], ["y*w - 1"])


def test_torus_line_algebra():
    algebra = torus_line()
    assert algebra.variables == ("y", "w")
    assert algebra.unit_witnesses == {"y": "w", "w": "y"}
    assert algebra.element(parse_expression("y*w", algebra.context)) == algebra.one()


def test_yp3_presentation_shape():
    algebra = build_Yp(3)
    assert algebra.variables == ("x0", "x1", "x2", "y", "z", "w")
    assert len(algebra.relations) == 2
    z2 = algebra.variable("z") ** 2
    F = algebra.element(algebra.relations[0] + parse_expression("z^2", algebra.context))
    assert F == z2


def test_unit_ideal_rejected():
    with pytest.raises(PresentationError):
        algebra_from_strings(QQ, ["x"], ["x", "x - 1"])


def test_new_algebra_entry_point():
    ctx = Context(QQ, ("x", "y"))
    algebra = new_algebra(QQ, ("x", "y"), [parse_expression("x*y", ctx)])
    assert algebra.variables == ("x", "y")


def test_element_equality_in_free_algebra():
    algebra = algebra_from_strings(QQ, ["x", "y"], [])
    assert algebra.variable("x") != algebra.variable("y")


def test_element_arithmetic_reduces():
    algebra = torus_line()
    y, w = algebra.variable("y"), algebra.variable("w")
    assert y * w == 1
    assert (y * w + w) == w + 1
    assert (y + w) ** 2 == y ** 2 + 2 + w ** 2


def test_attach_grading_x3():
    algebra, grading = build_Xp(3)
    assert grading.matrix == ((2, 2, 2, 0, 3, 0),)
    degrees = [
        next(iter(r.weighted_components(grading.matrix[0])))
        for r in algebra.relations
    ]
    assert degrees == [6, 0]


def test_attach_grading_rejects_bad_weights():
    algebra, _ = build_Xp(3)
    # z -> 2 breaks homogeneity of the first relation
    with pytest.raises(GradingError) as info:
        attach_grading(algebra, [(2, 2, 2, 0, 2, 0)])
    assert info.value.row == 0
    assert info.value.witness is not None
    # recompute the witness degrees independently
    weights = (2, 2, 2, 0, 2, 0)
    comps = algebra.relations[0].weighted_components(weights)
    assert len(comps) > 1


def test_zero_matrix_is_trivial_grading():
    algebra, _ = build_Xp(3)
    grading = attach_grading(algebra, [(0,) * 6])
    assert grading.matrix == ((0, 0, 0, 0, 0, 0),)


def test_grading_acceptance_equivalent_to_homogeneous_basis():
    # independent cross-check: acceptance iff every reduced basis element is
    # homogeneous
    algebra, grading = build_Xp(3)
    for weights in grading.matrix:
        for g in algebra.basis.generators:
            assert len(g.weighted_components(weights)) == 1
    bad = (2, 2, 2, 0, 2, 0)
    assert any(
        len(g.weighted_components(bad)) > 1 for g in algebra.basis.generators
    )
    with pytest.raises(GradingError):
        attach_grading(algebra, [bad])


def test_graded_components_well_defined_on_cosets():
    rng = random.Random(41)
    algebra, grading = build_Xp(3)
    row = 0
    for _ in range(25):
        f = random_polynomial(rng, algebra.context, max_terms=5, max_exp=2)
        direct = grading.components(algebra.element(f), row)
        raw = f.weighted_components(grading.matrix[row])
        for deg in set(direct) | set(raw):
            lhs = direct.get(deg, algebra.zero())
            rhs = algebra.element(raw.get(deg, Polynomial.zero(algebra.context)))
            assert lhs == rhs


def test_coarsen_sum_of_rows():
    algebra = algebra_from_strings(QQ, ["x", "y"], [])
    grading = attach_grading(algebra, [(1, 0), (0, 1)])
    coarse = coarsen_grading(grading, [(1, 1)])
    assert coarse.matrix == ((1, 1),)


def test_coarsen_identity():
    algebra = algebra_from_strings(QQ, ["x", "y"], [])
    grading = attach_grading(algebra, [(1, 0), (0, 1)])
    same = coarsen_grading(grading, [(1, 0), (0, 1)])
    assert same.matrix == grading.matrix


def test_coarsen_rejects_rank_deficiency():
    algebra = algebra_from_strings(QQ, ["x", "y"], [])
    grading = attach_grading(algebra, [(1, 0), (0, 1)])
    with pytest.raises(GradingError):
        coarsen_grading(grading, [(1, 1), (2, 2)])
    with pytest.raises(GradingError):
        coarsen_grading(grading, [(0, 0)])


def test_coarsen_keeps_relations_at_weight_zero():
    # torus grading rows keep every defining relation at weight 0; any
    # projection of those rows does too
    rng = random.Random(43)
    algebra = algebra_from_strings(
        QQ, ["x", "y1", "y2", "y3"], ["y1^2*y2^3*y3^5 - x"]
    )
    rows = ((0, 5, 0, -2), (0, 0, 5, -3))
    grading = attach_grading(algebra, rows)
    for _ in range(10):
        pi = [(rng.randint(-3, 3), rng.randint(-3, 3))]
        if pi[0] == (0, 0):
            continue
        coarse = coarsen_grading(grading, pi)
        assert coarse.matrix == tuple(tuple(r) for r in matmul(pi, rows))
        for relation in algebra.relations:
            assert list(relation.weighted_components(coarse.matrix[0])) == [0]


def test_grading_degree_of_element():
    algebra, grading = build_Xp(3)
    assert grading.degree(algebra.variable("z")) == (3,)
    assert grading.degree(algebra.variable("x0") ** 2) == (4,)
    with pytest.raises(ValueError):
        grading.degree(algebra.zero())
