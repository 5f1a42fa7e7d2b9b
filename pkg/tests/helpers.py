"""Shared oracles and random generators for the test suite.

The oracles deliberately take different computational routes than the
library: cyclotomic reduction by long division instead of index folding,
products by enumerating all cross terms instead of pairwise dict merging.
"""

from fractions import Fraction
from itertools import product as iter_product

from suspensia import Context, CyclotomicNumber, Polynomial, QQ
from suspensia.coeff import CyclotomicField


def reduce_cyclotomic_oracle(p, dense):
    """Reduce a dense coefficient list (little-endian powers of z) mod
    1 + z + ... + z^(p-1) by plain long division; returns p-1 coordinates."""
    work = [Fraction(c) for c in dense]
    while len(work) >= p:
        lead = work.pop()
        base = len(work) - (p - 1)
        for k in range(p - 1):
            work[base + k] -= lead
    return tuple(work + [Fraction(0)] * (p - 1 - len(work)))


def cyclo_from_power_oracle(p, k):
    """z^k reduced by the oracle."""
    dense = [0] * (k + 1)
    dense[k] = 1
    return CyclotomicNumber(p, reduce_cyclotomic_oracle(p, dense))


def brute_force_product(factors):
    """Expand a product of polynomials by enumerating every cross term."""
    context = factors[0].context
    terms = {}
    for combo in iter_product(*[list(f.terms.items()) for f in factors]):
        mono = tuple(sum(parts) for parts in zip(*[m for m, _ in combo]))
        coeff = combo[0][1]
        for _, c in combo[1:]:
            coeff = coeff * c
        terms[mono] = terms.get(mono, context.field.zero) + coeff
    return Polynomial(context, {m: c for m, c in terms.items() if c})


def random_fraction(rng, span=6):
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return Fraction(num, den)


def random_scalar(rng, field, span=6):
    if isinstance(field, CyclotomicField):
        return CyclotomicNumber(
            field.p, [random_fraction(rng, span) for _ in range(field.p - 1)]
        )
    return random_fraction(rng, span)


def random_polynomial(rng, context, max_terms=4, max_exp=3, span=6):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in range(context.nvars))
        terms[mono] = random_scalar(rng, context.field, span)
    return Polynomial(context, terms)


def nonzero_random_polynomial(rng, context, **kwargs):
    while True:
        f = random_polynomial(rng, context, **kwargs)
        if f.terms:
            return f


QXY = Context(QQ, ("x", "y"))
