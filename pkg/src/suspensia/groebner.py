"""Buchberger's algorithm, normal forms, ideal membership, and elimination.

This is the quotient-ring engine: a reduced Groebner basis makes equality
modulo an ideal computable through unique remainders.  Plain Buchberger with
the product and chain pair-pruning criteria is enough at the scale this
package targets (a handful of variables and relations).

Completed bases are immutable; reductions against one basis are pure and may
run concurrently.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .poly import Context, ContextError, Polynomial


class OrderError(ValueError):
    """A monomial order incompatible with the requested operation."""


@dataclass(frozen=True)
class MonomialOrder:
    """A total monomial order compatible with multiplication.

    kind is one of "lex", "grevlex", "elimination"; elimination orders sort
    every monomial containing a block variable above every monomial without,
    with grevlex ties inside each block.
    """

    kind: str
    block: tuple = ()

    def key_for(self, context: Context):
        """Return a key function on exponent tuples; larger key = larger monomial."""
        if self.kind == "lex":
            return lambda m: m
        if self.kind == "grevlex":
            return lambda m: (sum(m), *(-e for e in reversed(m)))
        if self.kind == "elimination":
            idx = tuple(context.index(v) for v in self.block)
            if len(set(idx)) != len(idx):
                raise OrderError("repeated variable in elimination block")
            rest = tuple(i for i in range(context.nvars) if i not in set(idx))

            def key(m):
                b = [m[i] for i in idx]
                r = [m[i] for i in rest]
                return (
                    sum(b),
                    *(-e for e in reversed(b)),
                    sum(r),
                    *(-e for e in reversed(r)),
                )

            return key
        raise OrderError(f"unknown monomial order kind {self.kind!r}")


def lex() -> MonomialOrder:
    return MonomialOrder("lex")


def grevlex() -> MonomialOrder:
    return MonomialOrder("grevlex")


def elimination(*variables: str) -> MonomialOrder:
    if not variables:
        raise OrderError("elimination order needs at least one block variable")
    return MonomialOrder("elimination", tuple(variables))


class _Prepared:
    """A basis element preprocessed for division: monic, lead term split off."""

    __slots__ = ("lm", "tail")

    def __init__(self, terms: dict, keyf):
        lm = max(terms, key=keyf)
        lc = terms[lm]
        if lc == 1:
            self.tail = [(m, c) for m, c in terms.items() if m != lm]
        else:
            inv = 1 / lc
            self.tail = [(m, c * inv) for m, c in terms.items() if m != lm]
        self.lm = lm


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _reduce_terms(work: dict, prepared: list, keyf) -> dict:
    """Fully reduce a term dict, returning the (canonical) remainder dict."""
    work = dict(work)
    heap = [(tuple(-v for v in keyf(m)), m) for m in work]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, mono = heapq.heappop(heap)
        coeff = work.get(mono)
        if not coeff:
            continue
        reducer = None
        for g in prepared:
            if _divides(g.lm, mono):
                reducer = g
                break
        if reducer is None:
            remainder[mono] = coeff
            del work[mono]
            continue
        del work[mono]
        shift = tuple(a - b for a, b in zip(mono, reducer.lm))
        for mg, cg in reducer.tail:
            t = tuple(a + b for a, b in zip(mg, shift))
            prev = work.get(t)
            if prev is None:
                work[t] = -coeff * cg
                heapq.heappush(heap, (tuple(-v for v in keyf(t)), t))
            else:
                val = prev - coeff * cg
                if val:
                    work[t] = val
                else:
                    del work[t]
    return remainder


def _monic(terms: dict, keyf) -> dict:
    lm = max(terms, key=keyf)
    lc = terms[lm]
    if lc == 1:
        return dict(terms)
    inv = 1 / lc
    return {m: c * inv for m, c in terms.items()}


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """The S-polynomial of f and g under the given order."""
    if f.context != g.context:
        raise ContextError("polynomials from different contexts")
    keyf = order.key_for(f.context)
    terms = _s_poly_terms(f.terms, g.terms, keyf)
    return Polynomial._raw(f.context, terms)


def _s_poly_terms(tf: dict, tg: dict, keyf) -> dict:
    lmf = max(tf, key=keyf)
    lmg = max(tg, key=keyf)
    lcm = tuple(max(a, b) for a, b in zip(lmf, lmg))
    out = {}
    inv_f = 1 / tf[lmf]
    shift_f = tuple(a - b for a, b in zip(lcm, lmf))
    for m, c in tf.items():
        t = tuple(a + b for a, b in zip(m, shift_f))
        out[t] = out.get(t, 0) + c * inv_f
    inv_g = 1 / tg[lmg]
    shift_g = tuple(a - b for a, b in zip(lcm, lmg))
    for m, c in tg.items():
        t = tuple(a + b for a, b in zip(m, shift_g))
        val = out.get(t, 0) - c * inv_g
        if val:
            out[t] = val
        elif t in out:
            del out[t]
    return {m: c for m, c in out.items() if c}


@dataclass
class GroebnerBasis:
    """A Groebner basis; when reduced is set, it is the unique reduced basis."""

    context: Context
    order: MonomialOrder
    generators: tuple
    reduced: bool = True
    _prepared: list = field(default=None, repr=False, compare=False)

    def _prep(self):
        if self._prepared is None:
            keyf = self.order.key_for(self.context)
            self._prepared = [_Prepared(g.terms, keyf) for g in self.generators]
        return self._prepared

    def normal_form(self, f: Polynomial) -> Polynomial:
        """The unique remainder of f against this basis."""
        if f.context != self.context:
            raise ContextError("polynomial does not live in the basis context")
        if not f.terms or not self.generators:
            return f
        keyf = self.order.key_for(self.context)
        return Polynomial._raw(self.context, _reduce_terms(f.terms, self._prep(), keyf))

    def is_member(self, f: Polynomial) -> bool:
        return not self.normal_form(f).terms

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and g.terms for g in self.generators)


def buchberger(
    generators, order: MonomialOrder | None = None, context: Context | None = None
) -> GroebnerBasis:
    """Compute the reduced Groebner basis of the ideal the generators span."""
    generators = list(generators)
    if context is None:
        if not generators:
            raise ContextError("cannot infer a context from no generators")
        context = generators[0].context
    order = order if order is not None else grevlex()
    keyf = order.key_for(context)

    basis = []
    for g in generators:
        if g.context != context:
            raise ContextError("generators from different contexts")
        if g.terms:
            basis.append(_monic(g.terms, keyf))

    prepared = [_Prepared(t, keyf) for t in basis]
    lms = [p.lm for p in prepared]

    def lcm_of(i, j):
        return tuple(max(a, b) for a, b in zip(lms[i], lms[j]))

    pairs = {}
    for i in range(len(basis)):
        for j in range(i):
            pairs[(j, i)] = keyf(lcm_of(j, i))

    while pairs:
        (i, j) = min(pairs, key=lambda p: (pairs[p], p))
        del pairs[(i, j)]
        lcm = lcm_of(i, j)
        # product criterion: coprime lead monomials never yield new elements
        if all(a + b == c for a, b, c in zip(lms[i], lms[j], lcm)):
            continue
        # chain criterion: a third element dividing the lcm, with both of its
        # pairs already handled, makes this pair redundant
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lms[k], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        s_terms = _s_poly_terms(basis[i], basis[j], keyf)
        remainder = _reduce_terms(s_terms, prepared, keyf) if s_terms else {}
        if remainder:
            new_terms = _monic(remainder, keyf)
            basis.append(new_terms)
            prepared.append(_Prepared(new_terms, keyf))
            lms.append(prepared[-1].lm)
            t = len(basis) - 1
            for k in range(t):
                pairs[(k, t)] = keyf(lcm_of(k, t))

    reduced = _reduce_basis(basis, keyf)
    polys = tuple(
        Polynomial._raw(context, terms)
        for terms in sorted(reduced, key=lambda t: keyf(max(t, key=keyf)))
    )
    return GroebnerBasis(context, order, polys, reduced=True)


def _reduce_basis(basis, keyf):
    """Minimalize and interreduce a basis of monic term dicts."""
    entries = [(max(t, key=keyf), t) for t in basis]
    minimal = []
    for lm, t in sorted(entries, key=lambda e: keyf(e[0])):
        if not any(_divides(other, lm) for other, _ in minimal):
            minimal.append((lm, t))
    current = [t for _, t in minimal]
    changed = True
    while changed:
        changed = False
        for idx in range(len(current)):
            others = [_Prepared(t, keyf) for k, t in enumerate(current) if k != idx]
            reduced = _reduce_terms(current[idx], others, keyf)
            reduced = _monic(reduced, keyf)
            if reduced != current[idx]:
                current[idx] = reduced
                changed = True
    return current


def eliminate(basis: GroebnerBasis, drop) -> GroebnerBasis:
    """Intersect the ideal with the subring omitting the dropped variables.

    The basis must already be computed under an elimination order whose block
    is exactly the dropped variable set; the retained elements then form a
    reduced basis of the elimination ideal under grevlex.
    """
    drop = tuple(drop)
    if not drop:
        return basis
    for name in drop:
        basis.context.index(name)
    if basis.order.kind != "elimination" or set(basis.order.block) != set(drop):
        raise OrderError(
            "basis must be computed under an elimination order for exactly "
            f"the dropped variables {sorted(drop)}"
        )
    drop_idx = {basis.context.index(v) for v in drop}
    kept = tuple(v for v in basis.context.variables if v not in drop)
    new_ctx = Context(basis.context.field, kept)
    gens = [
        g.convert(new_ctx)
        for g in basis.generators
        if all(m[i] == 0 for m in g.terms for i in drop_idx)
    ]
    keyf = grevlex().key_for(new_ctx)
    gens.sort(key=lambda g: keyf(max(g.terms, key=keyf)))
    return GroebnerBasis(new_ctx, grevlex(), tuple(gens), reduced=basis.reduced)
