"""Derivations of presented algebras: certification and structure.

A derivation is fixed by its generator images and extends through the
Leibniz rule.  It descends to the quotient exactly when the extension sends
every relation into the ideal, which is checked (and certified) at
construction.  Nilpotency is certified by direct iteration on generators;
finite orders on all generators extend to the whole algebra because the
induced order function nu is a degree function (subadditive under sums,
additive under products), so the certificate never relies on sampling.

Certifying nilpotency is semi-decidable: the certifier answers Certified or
Inconclusive (cap reached), never "not locally nilpotent".

Derivations are immutable after construction; apply/nu/exp are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, Grading, PresentedAlgebra
from .poly import ContextError, Polynomial

#: The order of the zero element (absorbing under addition of orders).
MINUS_INFINITY = float("-inf")

DEFAULT_CAP = 64

_JUSTIFICATION = (
    "finite nilpotency order on every generator extends to the whole algebra "
    "because the induced order function is a degree function"
)


class DerivationError(ValueError):
    """Invalid derivation construction or use."""


class NotWellDefinedError(DerivationError):
    """The Leibniz extension maps some relation outside the ideal."""

    def __init__(self, message: str, relation: Polynomial, witness: Polynomial):
        super().__init__(message)
        self.relation = relation
        self.witness = witness


class MissingCertificateError(DerivationError):
    """An operation that needs a nilpotency certificate was called without one."""


class InconclusiveError(DerivationError):
    """Certification hit the iteration cap without reaching zero."""


class MorphismError(ValueError):
    """Proposed images do not send every relation to zero."""


@dataclass(frozen=True)
class RelationCheck:
    """Outcome of pushing one relation through the Leibniz extension."""

    relation: Polynomial
    image: Polynomial
    normal_form: Polynomial

    @property
    def identically_zero(self) -> bool:
        return not self.image.terms

    @property
    def ok(self) -> bool:
        return not self.normal_form.terms

    def to_json(self) -> dict:
        return {
            "relation": self.relation.text(),
            "image": self.image.text(),
            "normalForm": self.normal_form.text(),
            "identicallyZero": self.identically_zero,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class WellDefinedness:
    """Per-relation membership witnesses for the Leibniz extension."""

    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "relations": [c.to_json() for c in self.checks]}


@dataclass(frozen=True)
class LNDCertificate:
    """Nilpotency orders per generator, or the generators still unresolved."""

    cap: int
    orders: dict
    inconclusive: tuple
    justification: str = _JUSTIFICATION

    @property
    def certified(self) -> bool:
        return not self.inconclusive

    @property
    def status(self) -> str:
        return "certified" if self.certified else "inconclusive"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "cap": self.cap,
            "orders": dict(sorted(self.orders.items())),
            "inconclusiveGenerators": sorted(self.inconclusive),
            "justification": self.justification,
        }


class Derivation:
    """A certified-well-defined derivation of a presented algebra."""

    __slots__ = ("algebra", "images", "well_defined", "lnd_certificate")

    def __init__(self, algebra, images, well_defined):
        self.algebra = algebra
        self.images = images
        self.well_defined = well_defined
        self.lnd_certificate = None

    def image(self, name: str) -> AlgebraElement:
        return self.images[name]

    def leibniz_image(self, f: Polynomial) -> Polynomial:
        """Image of a plain polynomial under the Leibniz extension (no reduction)."""
        out = Polynomial.zero(self.algebra.context)
        for name in self.algebra.variables:
            rep = self.images[name].rep
            if rep.terms:
                df = f.diff(name)
                if df.terms:
                    out = out + df * rep
        return out

    def apply(self, value) -> AlgebraElement:
        a = self.algebra.element(value)
        return self.algebra.element(self.leibniz_image(a.rep))

    def apply_iter(self, value, n: int) -> AlgebraElement:
        a = self.algebra.element(value)
        for _ in range(n):
            a = self.apply(a)
        return a

    def is_zero(self) -> bool:
        return all(not v for v in self.images.values())

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return (
            self.algebra.same_presentation(other.algebra)
            and all(self.images[n].rep == other.images[n].rep for n in self.images)
        )

    def __repr__(self):
        imgs = ", ".join(f"{n} -> {e.rep.text()}" for n, e in self.images.items())
        return f"Derivation({imgs})"


def new_derivation(algebra: PresentedAlgebra, images: dict) -> Derivation:
    """Build a derivation from generator images, certifying well-definedness.

    Every variable needs exactly one image.  For each relation r the Leibniz
    extension is applied to r and reduced; a nonzero normal form means the
    map does not descend to the quotient and construction fails with that
    witness.
    """
    resolved = {}
    for name in algebra.variables:
        if name not in images:
            raise DerivationError(f"missing image for variable {name!r}")
        resolved[name] = algebra.element(images[name])
    for name in images:
        if name not in resolved:
            raise DerivationError(f"image given for unknown variable {name!r}")

    candidate = Derivation(algebra, resolved, None)
    checks = []
    for r in algebra.relations:
        raw = candidate.leibniz_image(r)
        nf = algebra.normal_form(raw)
        checks.append(RelationCheck(r, raw, nf))
    certificate = WellDefinedness(tuple(checks))
    if not certificate.ok:
        bad = next(c for c in checks if not c.ok)
        raise NotWellDefinedError(
            f"image of relation {bad.relation.text()} is not in the ideal "
            f"(normal form: {bad.normal_form.text()})",
            bad.relation,
            bad.normal_form,
        )
    return Derivation(algebra, resolved, certificate)


def zero_derivation(algebra: PresentedAlgebra) -> Derivation:
    return new_derivation(algebra, {name: 0 for name in algebra.variables})


def nu(derivation: Derivation, value, cap: int = DEFAULT_CAP):
    """The order of an element: least n with the (n+1)-st application zero.

    Returns MINUS_INFINITY for the zero element and None when the cap was
    exhausted without reaching zero (inconclusive).
    """
    current = derivation.algebra.element(value)
    if not current:
        return MINUS_INFINITY
    for count in range(cap + 1):
        current = derivation.apply(current)
        if not current:
            return count
    return None


def certify_lnd(derivation: Derivation, cap: int = DEFAULT_CAP) -> LNDCertificate:
    """Certify local nilpotency by iterating on every generator.

    Generators that reach zero within the cap get their order recorded; any
    survivor makes the certificate inconclusive.  A "not locally nilpotent"
    verdict is never produced.  The certificate is cached on the derivation.
    """
    orders = {}
    unresolved = []
    for name in derivation.algebra.variables:
        val = nu(derivation, derivation.algebra.variable(name), cap)
        if val is None:
            unresolved.append(name)
        elif val == MINUS_INFINITY:
            orders[name] = 0
        else:
            orders[name] = val
    certificate = LNDCertificate(cap, orders, tuple(unresolved))
    derivation.lnd_certificate = certificate
    return certificate


# ----------------------------------------------------------------------
# homogeneous structure


@dataclass
class HomogeneousDecomposition:
    """A derivation split into graded pieces along one grading row."""

    derivation: Derivation
    grading: Grading
    row: int
    components: dict
    lower: int | None
    upper: int | None

    def component(self, degree: int) -> Derivation:
        return self.components[degree]


def decompose(derivation: Derivation, grading: Grading, row: int = 0) -> HomogeneousDecomposition:
    """Split a derivation into homogeneous pieces along one grading row.

    Piece i sends x to the (deg x + i)-component of the image of x.  Each
    piece is rebuilt through the certified constructor, so well-definedness
    of every component is established independently rather than inferred.
    """
    algebra = derivation.algebra
    if grading.algebra is not algebra and not algebra.same_presentation(grading.algebra):
        raise DerivationError("grading belongs to a different algebra")
    weights = grading.matrix[row]
    per_generator = {}
    shifts = set()
    for i, name in enumerate(algebra.variables):
        rep = derivation.images[name].rep
        comps = rep.weighted_components(weights)
        var_weight = weights[i]
        per_generator[name] = {deg - var_weight: part for deg, part in comps.items()}
        shifts.update(per_generator[name])
    components = {}
    for shift in sorted(shifts):
        images = {
            name: per_generator[name].get(shift, Polynomial.zero(algebra.context))
            for name in algebra.variables
        }
        components[shift] = new_derivation(algebra, images)
    return HomogeneousDecomposition(
        derivation,
        grading,
        row,
        components,
        min(shifts) if shifts else None,
        max(shifts) if shifts else None,
    )


def homogeneous_degree(derivation: Derivation, grading: Grading):
    """The multidegree shift of a homogeneous derivation, or None.

    Each nonzero image must be homogeneous and all images must agree on the
    shift, row by row.  The zero derivation reports None.
    """
    result = []
    for weights in grading.matrix:
        shift = None
        for i, name in enumerate(derivation.algebra.variables):
            rep = derivation.images[name].rep
            if not rep.terms:
                continue
            comps = rep.weighted_components(weights)
            if len(comps) != 1:
                return None
            this = next(iter(comps)) - weights[i]
            if shift is None:
                shift = this
            elif shift != this:
                return None
        if shift is None:
            return None
        result.append(shift)
    return tuple(result)


def homogenize_lnd(derivation: Derivation, grading: Grading, cap: int | None = None):
    """Extract a homogeneous certified-nilpotent derivation from a certified one.

    Row by row, the top graded component is taken (extreme components of a
    nilpotent derivation stay nilpotent) and re-certified.  Returns the
    homogeneous derivation together with its multidegree.
    """
    if derivation.is_zero():
        raise DerivationError("cannot homogenize the zero derivation")
    certificate = derivation.lnd_certificate
    if certificate is None:
        certificate = certify_lnd(derivation, cap or DEFAULT_CAP)
    if not certificate.certified:
        raise InconclusiveError(
            "homogenization needs a certified derivation; cap "
            f"{certificate.cap} was not enough"
        )
    cap_value = cap or certificate.cap
    current = derivation
    for row in range(grading.nrows):
        pieces = decompose(current, grading, row)
        top = pieces.components[pieces.upper]
        top_cert = certify_lnd(top, cap_value)
        if not top_cert.certified:
            raise InconclusiveError(
                f"extreme component at row {row} did not certify within cap {cap_value}"
            )
        current = top
    degree = homogeneous_degree(current, grading)
    if degree is None:
        raise DerivationError("homogenization produced an inhomogeneous result")
    return current, degree


def is_diagonal_semisimple(derivation: Derivation):
    """Scaling weights when every generator image is a scalar multiple of it.

    This is only the diagonal-on-generators sufficient condition; a None
    answer does not rule out a semiinvariant basis existing elsewhere.
    """
    algebra = derivation.algebra
    weights = []
    for name in algebra.variables:
        img = derivation.images[name].rep
        gen = algebra.variable(name).rep
        if not gen.terms:
            if img.terms:
                return None
            weights.append(algebra.field.zero)
            continue
        if not img.terms:
            weights.append(algebra.field.zero)
            continue
        lead = next(iter(gen.terms))
        scale = img.coefficient(lead) / gen.terms[lead]
        if img != gen * scale:
            return None
        weights.append(scale)
    return tuple(weights)


# ----------------------------------------------------------------------
# exponentials


class AlgebraMorphism:
    """An algebra map given on generators; relations must map to zero."""

    __slots__ = ("source", "target", "images", "inverse")

    def __init__(self, source, target, images: dict, inverse=None, check: bool = True):
        self.source = source
        self.target = target
        self.images = {name: target.element(v) for name, v in images.items()}
        for name in source.variables:
            if name not in self.images:
                raise MorphismError(f"missing image for variable {name!r}")
        self.inverse = inverse
        if check:
            for r in source.relations:
                nf = target.normal_form(self._push(r))
                if nf.terms:
                    raise MorphismError(
                        f"relation {r.text()} maps to nonzero {nf.text()}"
                    )

    def _push(self, f: Polynomial) -> Polynomial:
        bindings = {name: img.rep for name, img in self.images.items()}
        return f.substitute(bindings, into=self.target.context)

    def apply(self, value) -> AlgebraElement:
        a = self.source.element(value)
        return self.target.element(self._push(a.rep))

    def compose(self, inner: AlgebraMorphism) -> AlgebraMorphism:
        """The map sending x first through inner, then through this morphism."""
        if not inner.target.same_presentation(self.source):
            raise MorphismError("morphisms do not compose: target/source mismatch")
        images = {name: self.apply(img) for name, img in inner.images.items()}
        return AlgebraMorphism(inner.source, self.target, images, check=False)

    def agrees_with(self, other: AlgebraMorphism) -> bool:
        return all(self.images[n] == other.images[n] for n in self.images)

    def __repr__(self):
        imgs = ", ".join(f"{n} -> {e.rep.text()}" for n, e in self.images.items())
        return f"AlgebraMorphism({imgs})"


def identity_morphism(algebra: PresentedAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(
        algebra, algebra, {n: algebra.variable(n) for n in algebra.variables}, check=False
    )


def exp(derivation: Derivation, t, certificate: LNDCertificate | None = None,
        with_inverse: bool = False) -> AlgebraMorphism:
    """The automorphism sum_j t^j D^j / j!, exact thanks to nilpotency.

    Requires a certificate (the cached one is used if present): each
    generator's series stops at its certified order, so the sum is finite
    and the map lands back in the algebra.  Relations are verified to map
    to zero after substitution.
    """
    algebra = derivation.algebra
    certificate = certificate or derivation.lnd_certificate
    if certificate is None:
        raise MissingCertificateError(
            "exponentiation requires a nilpotency certificate; run certify_lnd first"
        )
    if not certificate.certified:
        raise InconclusiveError("cannot exponentiate an inconclusive certificate")
    t = algebra.field.coerce(t)
    images = {}
    for name in algebra.variables:
        order = certificate.orders[name]
        acc = algebra.variable(name)
        term = acc
        for j in range(1, order + 1):
            term = derivation.apply(term)
            scalar = t ** j * Fraction(1, math.factorial(j))
            acc = acc + term * scalar
        images[name] = acc
    forward = AlgebraMorphism(algebra, algebra, images, check=True)
    if with_inverse:
        forward.inverse = exp(derivation, -t, certificate, with_inverse=False)
    return forward


def certificate_json(derivation: Derivation, grading: Grading | None = None) -> dict:
    """The certificate payload: well-definedness, nilpotency, homogeneity."""
    data = {"wellDefined": derivation.well_defined.to_json()}
    if derivation.lnd_certificate is not None:
        data["lnd"] = derivation.lnd_certificate.to_json()
    if grading is not None:
        degree = homogeneous_degree(derivation, grading)
        if degree is not None:
            data["homogeneous"] = list(degree)
    return data
