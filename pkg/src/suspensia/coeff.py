"""Exact scalar arithmetic over Q and over prime-order cyclotomic fields.

Rational scalars are plain ``fractions.Fraction`` values, which already keep
themselves normalized (coprime numerator/denominator, positive denominator).
A :class:`CyclotomicNumber` holds coordinates in the power basis
``1, z, ..., z^(p-2)`` of the field obtained by adjoining a primitive p-th
root of unity ``z`` to Q, for prime p.  All arithmetic reduces modulo
``1 + z + ... + z^(p-1)``, so every value has exactly one representation.

Values are immutable and all operations are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

_FIELD_TEXT_RE = re.compile(r"Q\(z@(\d+)\)\Z")


class CoefficientError(ValueError):
    """Invalid scalar construction, mismatched fields, or division by zero."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise CoefficientError(f"expected a rational value, got {value!r}")


# --- dense univariate helpers over Q (little-endian coefficient lists) ----
#
# Only used for inversion: extended Euclid in Q[t] modulo the cyclotomic
# polynomial 1 + t + ... + t^(p-1).


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _psub(a, b):
    out = [_ZERO] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _pmul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def _pdivmod(a, b):
    a = _trim(list(a))
    db = len(b) - 1
    inv_lead = _ONE / b[db]
    q = [_ZERO] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        f = a[da] * inv_lead
        q[da - db] = f
        for i, cb in enumerate(b):
            a[i + da - db] -= f * cb
        _trim(a)
    return _trim(q), a


def _pxgcd(a, m):
    """Return (g, u) with u*a = g modulo m, g the gcd of a and m."""
    r0, r1 = list(a), list(m)
    s0, s1 = [_ONE], []
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    return r0, s0


class CyclotomicNumber:
    """Element of the field Q(z) with z a primitive p-th root of unity."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs) -> None:
        if not is_prime(p):
            raise CoefficientError(f"cyclotomic order must be prime, got {p}")
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) != p - 1:
            raise CoefficientError(
                f"expected {p - 1} coordinates for order {p}, got {len(coeffs)}"
            )
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def from_rational(cls, p: int, value) -> CyclotomicNumber:
        value = _as_fraction(value)
        return cls(p, (value,) + (_ZERO,) * (p - 2))

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.p != self.p:
                raise CoefficientError(
                    f"mixed cyclotomic orders {self.p} and {other.p}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.p, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicNumber(
            self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicNumber(
            self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CyclotomicNumber(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.p
        conv = [_ZERO] * (2 * p - 3)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        # z^p = 1, then z^(p-1) = -(1 + z + ... + z^(p-2))
        folded = [_ZERO] * p
        for k, c in enumerate(conv):
            folded[k % p] += c
        top = folded[p - 1]
        return CyclotomicNumber(p, tuple(folded[t] - top for t in range(p - 1)))

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        if not self:
            raise CoefficientError("division by zero")
        if self.is_rational():
            return CyclotomicNumber.from_rational(self.p, _ONE / self.coeffs[0])
        modulus = [_ONE] * self.p
        g, u = _pxgcd(list(self.coeffs), modulus)
        # the cyclotomic polynomial is irreducible over Q, so g is a constant
        scale = _ONE / g[0]
        _, u = _pdivmod([c * scale for c in u], modulus)
        u = u + [_ZERO] * (self.p - 1 - len(u))
        return CyclotomicNumber(self.p, u)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.from_rational(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except CoefficientError:
            return False
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise CoefficientError(f"value does not lie in Q: {self}")
        return self.coeffs[0]

    def __str__(self) -> str:
        sym = f"z@{self.p}"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            mono = sym if k == 1 else f"{sym}^{k}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __repr__(self):
        return f"CyclotomicNumber({self.p}, {self})"


def root_of_unity(p: int, i: int) -> CyclotomicNumber:
    """Return the i-th root of unity z^i of prime order p (z^p = 1)."""
    if not is_prime(p):
        raise CoefficientError(f"root of unity order must be prime, got {p}")
    if not 1 <= i <= p:
        raise CoefficientError(f"root index must lie in 1..{p}, got {i}")
    k = i % p
    if k < p - 1:
        coords = [_ZERO] * (p - 1)
        coords[k] = _ONE
        return CyclotomicNumber(p, coords)
    return CyclotomicNumber(p, (-_ONE,) * (p - 1))


@dataclass(frozen=True)
class RationalField:
    """The coefficient field Q; elements are Fraction values."""

    def coerce(self, value) -> Fraction:
        if isinstance(value, CyclotomicNumber):
            return value.rational_value()
        return _as_fraction(value)

    @property
    def zero(self) -> Fraction:
        return _ZERO

    @property
    def one(self) -> Fraction:
        return _ONE

    @property
    def text(self) -> str:
        return "Q"


@dataclass(frozen=True)
class CyclotomicField:
    """The coefficient field Q(z@p) for prime p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise CoefficientError(f"cyclotomic order must be prime, got {self.p}")

    def coerce(self, value) -> CyclotomicNumber:
        if isinstance(value, CyclotomicNumber):
            if value.p != self.p:
                raise CoefficientError(
                    f"cyclotomic order {value.p} does not match field order {self.p}"
                )
            return value
        return CyclotomicNumber.from_rational(self.p, _as_fraction(value))

    @property
    def zero(self) -> CyclotomicNumber:
        return CyclotomicNumber.from_rational(self.p, 0)

    @property
    def one(self) -> CyclotomicNumber:
        return CyclotomicNumber.from_rational(self.p, 1)

    @property
    def text(self) -> str:
        return f"Q(z@{self.p})"


QQ = RationalField()


def field_from_text(text: str):
    """Parse a field descriptor: "Q" or "Q(z@p)" for prime p."""
    if text == "Q":
        return QQ
    match = _FIELD_TEXT_RE.match(text)
    if match:
        return CyclotomicField(int(match.group(1)))
    raise CoefficientError(f"unknown field descriptor {text!r}")
