"""Finitely presented commutative algebras and their integer gradings.

An algebra is K[variables]/I for an ideal I given by relation polynomials.
Coset equality is decided through normal forms against a reduced Groebner
basis, computed once at construction.  A grading is an integer weight matrix
(one row per Z-factor) under which every relation, and every reduced basis
element, must be homogeneous.

Algebras are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import CyclotomicNumber
from .groebner import GroebnerBasis, MonomialOrder, buchberger, grevlex
from .linalg import matmul, rank
from .poly import Context, ContextError, Polynomial, monomial_text


class PresentationError(ValueError):
    """The relations generate the unit ideal (the algebra collapses to 0)."""


class GradingError(ValueError):
    """A weight matrix under which some relation is not homogeneous."""

    def __init__(self, message: str, row: int | None = None, witness: str | None = None):
        super().__init__(message)
        self.row = row
        self.witness = witness


class PresentedAlgebra:
    """K[variables]/(relations), with computable equality via normal forms."""

    def __init__(self, context: Context, relations, order: MonomialOrder | None = None):
        relations = tuple(relations)
        for r in relations:
            if not isinstance(r, Polynomial) or r.context != context:
                raise ContextError("every relation must be a polynomial in the algebra context")
        self.context = context
        self.relations = relations
        self.basis = buchberger(relations, order or grevlex(), context=context)
        if self.basis.is_unit_ideal():
            raise PresentationError(
                "inconsistent presentation: 1 lies in the relation ideal"
            )
        self.unit_witnesses = _detect_unit_witnesses(context, relations)
        self.gradings = {}

    @property
    def variables(self) -> tuple:
        return self.context.variables

    @property
    def field(self):
        return self.context.field

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.basis.normal_form(f)

    def element(self, value) -> AlgebraElement:
        """Wrap a polynomial (or scalar, or element) as a canonical coset."""
        if isinstance(value, AlgebraElement):
            if value.algebra is not self and not self.same_presentation(value.algebra):
                raise ContextError("element belongs to a different algebra")
            return value
        if isinstance(value, (int, Fraction, CyclotomicNumber)):
            value = Polynomial.constant(self.context, value)
        return AlgebraElement(self, self.normal_form(value))

    def variable(self, name: str) -> AlgebraElement:
        return self.element(Polynomial.variable(self.context, name))

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, Polynomial.zero(self.context))

    def one(self) -> AlgebraElement:
        return self.element(Polynomial.one(self.context))

    def same_presentation(self, other) -> bool:
        return (
            isinstance(other, PresentedAlgebra)
            and self.context == other.context
            and self.relations == other.relations
        )

    def __repr__(self):
        rels = ", ".join(r.text() for r in self.relations)
        return f"PresentedAlgebra({self.field.text}[{', '.join(self.variables)}] / ({rels}))"


def new_algebra(field, variables, relations) -> PresentedAlgebra:
    """Construct K[variables]/(relations); fails if the ideal is the unit ideal."""
    return PresentedAlgebra(Context(field, tuple(variables)), relations)


def _detect_unit_witnesses(context: Context, relations) -> dict:
    """Variables made invertible by a relation of the exact shape u*v - 1."""
    witnesses = {}
    zero_mono = (0,) * context.nvars
    for r in relations:
        if len(r.terms) != 2:
            continue
        const = r.terms.get(zero_mono)
        if const is None or const != -1:
            continue
        mono, coeff = next((m, c) for m, c in r.terms.items() if m != zero_mono)
        if coeff != 1 or sum(mono) != 2 or max(mono) != 1:
            continue
        i, j = [k for k, e in enumerate(mono) if e]
        u, v = context.variables[i], context.variables[j]
        witnesses[u] = v
        witnesses[v] = u
    return witnesses


class AlgebraElement:
    """A coset, stored through its unique normal-form representative."""

    __slots__ = ("algebra", "rep")

    def __init__(self, algebra: PresentedAlgebra, rep: Polynomial):
        self.algebra = algebra
        self.rep = rep

    def _operand(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra and not self.algebra.same_presentation(
                other.algebra
            ):
                raise ContextError("elements of different algebras")
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber, Polynomial)):
            return self.algebra.element(other)
        return None

    def __add__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        # normal forms are closed under addition, no re-reduction needed
        return AlgebraElement(self.algebra, self.rep + other.rep)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return AlgebraElement(self.algebra, self.rep - other.rep)

    def __rsub__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.rep)

    def __mul__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return AlgebraElement(self.algebra, self.algebra.normal_form(self.rep * other.rep))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("element power must be a non-negative integer")
        result = self.algebra.one()
        base = self
        for _ in range(n):
            result = result * base
        return result

    def __eq__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return self.rep == other.rep

    def __bool__(self):
        return bool(self.rep.terms)

    def __str__(self):
        return self.rep.text()

    def __repr__(self):
        return f"AlgebraElement({self.rep.text()!r})"


@dataclass(frozen=True, eq=False)
class Grading:
    """An accepted integer grading: one weight row per Z-factor."""

    algebra: PresentedAlgebra
    matrix: tuple

    @property
    def nrows(self) -> int:
        return len(self.matrix)

    def row(self, r: int) -> tuple:
        return self.matrix[r]

    def degree(self, value) -> tuple:
        """The multidegree of a homogeneous element; raises if inhomogeneous."""
        rep = value.rep if isinstance(value, AlgebraElement) else value
        if not rep.terms:
            raise ValueError("the zero element has no degree")
        out = []
        for weights in self.matrix:
            comps = rep.weighted_components(weights)
            if len(comps) != 1:
                raise GradingError(
                    f"element {rep.text()} is not homogeneous", witness=rep.text()
                )
            out.append(next(iter(comps)))
        return tuple(out)

    def components(self, value, row: int) -> dict:
        """Graded pieces of an element along one row, as canonical cosets."""
        element = self.algebra.element(value)
        return {
            deg: AlgebraElement(self.algebra, part)
            for deg, part in element.rep.weighted_components(self.matrix[row]).items()
        }


def attach_grading(algebra: PresentedAlgebra, matrix) -> Grading:
    """Validate and attach a weight matrix.

    Every relation and every reduced-basis element must be homogeneous under
    every row; checking the basis as well guards against term orders mixing
    degrees behind the relations' backs.
    """
    rows = tuple(tuple(int(w) for w in row) for row in matrix)
    nv = algebra.context.nvars
    for row in rows:
        if len(row) != nv:
            raise GradingError(
                f"weight row length {len(row)} does not match {nv} variables"
            )
    for r, weights in enumerate(rows):
        for poly, origin in [(p, "relation") for p in algebra.relations] + [
            (p, "basis element") for p in algebra.basis.generators
        ]:
            comps = poly.weighted_components(weights)
            if len(comps) > 1:
                degs = sorted(comps)
                m1 = next(iter(comps[degs[0]].terms))
                m2 = next(iter(comps[degs[-1]].terms))
                witness = (
                    f"{monomial_text(algebra.context, m1) or '1'} (weight {degs[0]}) vs "
                    f"{monomial_text(algebra.context, m2) or '1'} (weight {degs[-1]})"
                )
                raise GradingError(
                    f"{origin} {poly.text()} is not homogeneous under row {r}: {witness}",
                    row=r,
                    witness=witness,
                )
    return Grading(algebra, rows)


def coarsen_grading(grading: Grading, projection) -> Grading:
    """Push a Z^n grading forward along a full-row-rank integer projection."""
    pi = [ [int(c) for c in row] for row in projection ]
    if not pi or any(len(row) != grading.nrows for row in pi):
        raise GradingError(
            f"projection must have rows of length {grading.nrows}"
        )
    if len(pi) > grading.nrows or rank(pi) != len(pi):
        raise GradingError("projection matrix must have full row rank")
    new_matrix = tuple(tuple(row) for row in matmul(pi, grading.matrix))
    # homogeneity is inherited: each relation's single multidegree projects
    return Grading(grading.algebra, new_matrix)
