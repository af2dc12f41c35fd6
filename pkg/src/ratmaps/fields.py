"""Exact coefficient fields: the rationals and prime fields GF(p).

Rational elements are plain ``fractions.Fraction`` values (always stored
in lowest terms with positive denominator), prime-field elements are
``Fp`` instances carrying their modulus.  Every element therefore knows
its own field, and mixing fields raises ``FieldMismatch``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, NotPrime, ZeroPolynomial

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """An element of GF(p), kept in the canonical range 0..p-1."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.v == 0:
            raise DivisionByZero(f"division by zero in GF({self.p})")
        return Fp(self.v * pow(o.v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o / self

    def __pow__(self, n: int):
        if n < 0:
            if self.v == 0:
                raise DivisionByZero("zero to a negative power")
            return Fp(pow(self.v, n, self.p), self.p)
        return Fp(pow(self.v, n, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Common interface of the two supported coefficient fields."""

    characteristic: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    def contains(self, value) -> bool:
        raise NotImplementedError

    def elements(self):
        """Iterate all elements (finite fields only)."""
        raise NotImplementedError


class Rationals(Field):
    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def from_fraction(self, q: Fraction):
        return q

    def contains(self, value) -> bool:
        return isinstance(value, (Fraction, int)) and not isinstance(value, bool)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """GF(p) for a prime p fitting in a machine word."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise NotPrime(f"modulus {p!r} is not prime")
        if p >= 1 << 63:
            raise NotPrime(f"modulus {p} exceeds the machine-word limit")
        self.p = p
        self.characteristic = p

    def zero(self):
        return Fp(0, self.p)

    def one(self):
        return Fp(1, self.p)

    def from_int(self, n: int):
        return Fp(n, self.p)

    def from_fraction(self, q: Fraction):
        den = q.denominator % self.p
        if den == 0:
            raise DivisionByZero(f"denominator {q.denominator} vanishes mod {self.p}")
        return Fp(q.numerator, self.p) / Fp(den, self.p)

    def contains(self, value) -> bool:
        return isinstance(value, Fp) and value.p == self.p

    def elements(self):
        return (Fp(v, self.p) for v in range(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def field_of(value) -> Field:
    if isinstance(value, Fp):
        return PrimeField(value.p)
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return QQ
    raise FieldMismatch(f"not a field element: {value!r}")


def field_arith(a, b, op: str):
    """Exact field arithmetic on two elements of the same field.

    ``op`` is one of ``add``, ``sub``, ``mul``, ``div``.
    """
    fa, fb = field_of(a), field_of(b)
    if fa != fb:
        raise FieldMismatch(f"{fa} vs {fb}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _int_divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def roots_in_K(f) -> list:
    """All roots of a univariate polynomial lying in its own field.

    Returns ``[(root, multiplicity), ...]`` in a deterministic order.
    Over the rationals the candidates come from the rational-root
    theorem applied to the content-normalized integer form; over GF(p)
    every residue is tried.  Multiplicities are found by deflation, so
    each reported pair satisfies (y - root)^mult | f exactly.
    """
    from .polyring import Poly  # local import to avoid a cycle

    if not isinstance(f, Poly):
        raise TypeError("roots_in_K expects a univariate Poly")
    if f.ring.nvars != 1:
        raise ValueError("roots_in_K expects a univariate polynomial")
    if f.is_zero():
        raise ZeroPolynomial("cannot enumerate roots of the zero polynomial")

    field = f.ring.field
    if isinstance(field, PrimeField):
        candidates = list(field.elements())
    else:
        candidates = _rational_candidates(f)

    out = []
    for theta in candidates:
        mult = _multiplicity(f, theta)
        if mult > 0:
            out.append((theta, mult))
    if isinstance(field, PrimeField):
        out.sort(key=lambda rm: rm[0].v)
    else:
        out.sort(key=lambda rm: rm[0])
    return out


def _rational_candidates(f):
    coeffs = {e[0]: c for e, c in f.terms.items()}
    lo = min(coeffs)
    cands = [Fraction(0)] if lo > 0 else []
    shifted = {e - lo: c for e, c in coeffs.items()}
    denom_lcm = 1
    for c in shifted.values():
        denom_lcm = denom_lcm * c.denominator // _gcd_int(denom_lcm, c.denominator)
    ints = {e: int(c * denom_lcm) for e, c in shifted.items()}
    content = 0
    for v in ints.values():
        content = _gcd_int(content, v)
    ints = {e: v // content for e, v in ints.items()}
    hi = max(ints)
    a0, ad = ints.get(0, 0), ints[hi]
    if a0 == 0:  # cannot happen after the shift, but keep the guard cheap
        return cands
    for r in _int_divisors(a0):
        for s in _int_divisors(ad):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if cand not in cands:
                    cands.append(cand)
    return cands


def _gcd_int(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _multiplicity(f, theta) -> int:
    """Multiplicity of theta as a root of f, by repeated exact division."""
    from .polyring import Poly

    ring = f.ring
    linear = Poly(ring, {(1,): ring.field.one(), (0,): -theta})
    mult = 0
    g = f
    while g.evaluate([theta]) == ring.field.zero() and not g.is_zero():
        g = g.divexact(linear)
        mult += 1
    return mult
