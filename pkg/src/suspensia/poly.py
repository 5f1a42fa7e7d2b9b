"""Sparse multivariate polynomials over an exact coefficient field.

A polynomial stores its terms as a dict from exponent tuples (one entry per
context variable) to nonzero coefficients.  The canonical text form uses
``^`` for powers and ``*`` between factors, with terms in graded-lex order;
it is exactly the format the expression parser reads back.

Polynomials are immutable by convention; all operations return new values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coeff import CoefficientError, CyclotomicField, CyclotomicNumber, RationalField

# An exponent tuple, one non-negative integer per context variable.
Monomial = tuple

# An integer weight per context variable; one row of a grading matrix.
WeightVector = tuple

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ContextError(ValueError):
    """Variable or context misuse: unknown names, mixed contexts."""


class PowerCollapseError(ValueError):
    """A power-collapse rewrite hit an exponent not divisible by the power."""

    def __init__(self, message: str, witness: str):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Context:
    """A coefficient field together with an ordered tuple of variable names."""

    field: object
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        seen = set()
        for name in self.variables:
            if not isinstance(name, str) or not _IDENT_RE.match(name):
                raise ContextError(f"invalid variable name {name!r}")
            if name in seen:
                raise ContextError(f"duplicate variable name {name!r}")
            seen.add(name)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ContextError(f"unknown variable {name!r}") from None


def monomial_weight(mono, weights) -> int:
    return sum(e * w for e, w in zip(mono, weights) if e)


def monomial_text(context: Context, mono) -> str:
    parts = []
    for name, e in zip(context.variables, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _gradedlex_key(mono):
    return (sum(mono), mono)


class Polynomial:
    __slots__ = ("context", "terms")

    def __init__(self, context: Context, terms=None):
        clean = {}
        if terms:
            nv = context.nvars
            zero = context.field.zero
            for mono, coeff in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != nv or any(e < 0 for e in mono):
                    raise ContextError(f"bad exponent vector {mono} for {context.variables}")
                coeff = clean.get(mono, zero) + context.field.coerce(coeff)
                if coeff:
                    clean[mono] = coeff
                elif mono in clean:
                    del clean[mono]
        self.context = context
        self.terms = clean

    @classmethod
    def _raw(cls, context: Context, terms: dict) -> Polynomial:
        # trusted constructor: terms already canonical for this context
        poly = object.__new__(cls)
        poly.context = context
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, context: Context) -> Polynomial:
        return cls._raw(context, {})

    @classmethod
    def constant(cls, context: Context, value) -> Polynomial:
        coeff = context.field.coerce(value)
        if not coeff:
            return cls.zero(context)
        return cls._raw(context, {(0,) * context.nvars: coeff})

    @classmethod
    def one(cls, context: Context) -> Polynomial:
        return cls.constant(context, 1)

    @classmethod
    def variable(cls, context: Context, name: str) -> Polynomial:
        return cls.monomial(context, {name: 1})

    @classmethod
    def monomial(cls, context: Context, exponents, coeff=1) -> Polynomial:
        """Build a single term; exponents is a dict name -> exponent or a tuple."""
        if isinstance(exponents, dict):
            exps = [0] * context.nvars
            for name, e in exponents.items():
                exps[context.index(name)] = e
            exponents = tuple(exps)
        return cls(context, {tuple(exponents): coeff})

    # ------------------------------------------------------------------
    # arithmetic

    def _operand(self, other):
        if isinstance(other, Polynomial):
            if other.context != self.context:
                raise ContextError("polynomials from different contexts")
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return Polynomial.constant(self.context, other)
        return None

    def __add__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            prev = out.get(mono)
            if prev is None:
                out[mono] = coeff
            else:
                val = prev + coeff
                if val:
                    out[mono] = val
                else:
                    del out[mono]
        return Polynomial._raw(self.context, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            prev = out.get(mono)
            if prev is None:
                out[mono] = -coeff
            else:
                val = prev - coeff
                if val:
                    out[mono] = val
                else:
                    del out[mono]
        return Polynomial._raw(self.context, out)

    def __rsub__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Polynomial._raw(
            self.context, {m: -c for m, c in self.terms.items()}
        )

    def __mul__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                coeff = c1 * c2
                prev = out.get(mono)
                if prev is None:
                    if coeff:
                        out[mono] = coeff
                else:
                    val = prev + coeff
                    if val:
                        out[mono] = val
                    else:
                        del out[mono]
        return Polynomial._raw(self.context, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power must be a non-negative integer")
        result = Polynomial.one(self.context)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.context == other.context and self.terms == other.terms
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = self._operand(other)
            return self.terms == other.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------------
    # structure queries

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        if not self.terms:
            return self.context.field.zero
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self.text()}")
        return next(iter(self.terms.values()))

    def total_degree(self):
        """Max total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.context.index(name)
        return max((m[i] for m in self.terms), default=0)

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.context.field.zero)

    def diff(self, name: str) -> Polynomial:
        """Formal partial derivative with respect to one variable."""
        i = self.context.index(name)
        out = {}
        for mono, coeff in self.terms.items():
            e = mono[i]
            if e:
                lowered = mono[:i] + (e - 1,) + mono[i + 1:]
                prev = out.get(lowered)
                val = coeff * e if prev is None else prev + coeff * e
                if val:
                    out[lowered] = val
                elif lowered in out:
                    del out[lowered]
        return Polynomial._raw(self.context, out)

    # ------------------------------------------------------------------
    # weighted degrees

    def _check_weights(self, weights):
        weights = tuple(int(w) for w in weights)
        if len(weights) != self.context.nvars:
            raise ContextError(
                f"weight vector length {len(weights)} does not match "
                f"{self.context.nvars} variables"
            )
        return weights

    def weighted_degree(self, weights):
        """Max weight of the monomials, or None for the zero polynomial."""
        weights = self._check_weights(weights)
        if not self.terms:
            return None
        return max(monomial_weight(m, weights) for m in self.terms)

    def weighted_components(self, weights) -> dict:
        """Split into weight-homogeneous parts, keyed by weighted degree."""
        weights = self._check_weights(weights)
        buckets = {}
        for mono, coeff in self.terms.items():
            buckets.setdefault(monomial_weight(mono, weights), {})[mono] = coeff
        return {
            deg: Polynomial._raw(self.context, part)
            for deg, part in sorted(buckets.items())
        }

    # ------------------------------------------------------------------
    # maps between contexts

    def substitute(self, bindings: dict, into: Context | None = None) -> Polynomial:
        """Image under the evaluation map sending bound variables to polynomials.

        Unbound variables must exist (by name) in the target context.
        """
        target = into if into is not None else self.context
        images = []
        for name in self.context.variables:
            if name in bindings:
                g = bindings[name]
                if not isinstance(g, Polynomial) or g.context != target:
                    raise ContextError(f"binding for {name!r} is not in the target context")
                images.append(g)
            else:
                images.append(Polynomial.variable(target, name))
        power_cache = {}
        result = Polynomial.zero(target)
        for mono, coeff in self.terms.items():
            term = Polynomial.constant(target, coeff)
            for i, e in enumerate(mono):
                if e:
                    cached = power_cache.get((i, e))
                    if cached is None:
                        cached = images[i] ** e
                        power_cache[(i, e)] = cached
                    term = term * cached
            result = result + term
        return result

    def convert(self, into: Context) -> Polynomial:
        """Reinterpret in another context, mapping variables by name.

        Coefficients are coerced by the target field, so Q embeds into any
        Q(z@p) and a rational-valued cyclotomic coefficient descends to Q.
        """
        mapping = []
        for i, name in enumerate(self.context.variables):
            if name in into.variables:
                mapping.append(into.index(name))
            else:
                mapping.append(None)
        out = {}
        for mono, coeff in self.terms.items():
            exps = [0] * into.nvars
            for i, e in enumerate(mono):
                if e:
                    j = mapping[i]
                    if j is None:
                        raise ContextError(
                            f"variable {self.context.variables[i]!r} has no "
                            "counterpart in the target context"
                        )
                    exps[j] = e
            out[tuple(exps)] = coeff
        return Polynomial(into, out)

    # ------------------------------------------------------------------
    # text form

    def sorted_terms(self):
        """Terms in canonical (graded-lex, descending) order."""
        return sorted(
            self.terms.items(), key=lambda kv: _gradedlex_key(kv[0]), reverse=True
        )

    def text(self) -> str:
        if not self.terms:
            return "0"
        rendered = []
        for mono, coeff in self.sorted_terms():
            mono_s = monomial_text(self.context, mono)
            rendered.append(_term_text(coeff, mono_s))
        sign, body = rendered[0]
        out = body if sign > 0 else "-" + body
        for sign, body in rendered[1:]:
            out += (" + " if sign > 0 else " - ") + body
        return out

    __str__ = text

    def __repr__(self):
        return f"Polynomial({self.text()!r})"


def _term_text(coeff, mono_s: str):
    """Render one term; returns (sign, body) with sign pulled out for joining."""
    if isinstance(coeff, CyclotomicNumber):
        if coeff.is_rational():
            coeff = coeff.rational_value()
        else:
            body = f"({coeff})"
            return (1, f"{body}*{mono_s}" if mono_s else body)
    sign = -1 if coeff < 0 else 1
    mag = abs(coeff)
    if not mono_s:
        return (sign, str(mag))
    if mag == 1:
        return (sign, mono_s)
    return (sign, f"{mag}*{mono_s}")


def collapse_power(
    f: Polynomial, var: str, power: int, new_var: str, into: Context
) -> Polynomial:
    """Rewrite var^(k*power) as new_var^k; every var-exponent must divide.

    The check is the point: the rewrite is only an isomorphism onto the image
    when no stray powers remain, so failure reports the offending monomial.
    """
    if power < 1:
        raise ValueError("collapse power must be a positive integer")
    src = f.context
    i = src.index(var)
    j = into.index(new_var)
    out = {}
    for mono, coeff in f.terms.items():
        e = mono[i]
        if e % power:
            witness = monomial_text(src, mono) or "1"
            raise PowerCollapseError(
                f"exponent of {var} in {witness} is not divisible by {power}",
                witness,
            )
        exps = [0] * into.nvars
        for k, ek in enumerate(mono):
            if k == i or not ek:
                continue
            name = src.variables[k]
            exps[into.index(name)] = ek
        exps[j] += e // power
        mono_t = tuple(exps)
        prev = out.get(mono_t)
        out[mono_t] = coeff if prev is None else prev + coeff
    return Polynomial(into, out)
