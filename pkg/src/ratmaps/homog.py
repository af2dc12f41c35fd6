"""Homogenization between univariate and homogeneous bivariate tuples.

The correspondence sends f in K[y1]^m of degree at most s to
h = y2^s f(y1/y2), homogeneous of degree s, with inverse f = h(y1, 1).
It transports common divisors both ways (those not divisible by y2) and
underlies the decomposition H = g * h(p, q) and the degree formulas
deg h(p,q) = s * deg(p,q), low deg h(p,q) = s * low deg(p,q).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AssertionFailure,
    BothZero,
    DivisibleByY2,
    LinearFactorPresent,
    NotPrimitive,
    WitnessRejected,
    ZeroTuple,
)
from .fields import roots_in_K
from .polyring import (
    Poly,
    PolyRing,
    RatFunc,
    RatMap,
    eval_univar_at_ratio,
    gcd_many,
    tuple_degrees,
)


def uni_ring(field) -> PolyRing:
    return PolyRing(field, ("y1",))


def bi_ring(field) -> PolyRing:
    return PolyRing(field, ("y1", "y2"))


@dataclass(frozen=True)
class UniTuple:
    """A nonzero tuple of univariate polynomials with a degree bound."""

    polys: tuple
    bound: int

    def __post_init__(self):
        if all(p.is_zero() for p in self.polys):
            raise ZeroTuple("all components are zero")
        for p in self.polys:
            if p.ring.nvars != 1:
                raise ValueError("components must be univariate")
            if not p.is_zero() and p.total_degree() > self.bound:
                raise ValueError("component degree exceeds the bound")

    @property
    def ring(self):
        return self.polys[0].ring

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.polys) + ")"


@dataclass(frozen=True)
class HomogTuple:
    """A nonzero tuple of bivariate polynomials, homogeneous of one degree."""

    polys: tuple
    degree: int

    def __post_init__(self):
        if all(p.is_zero() for p in self.polys):
            raise ZeroTuple("all components are zero")
        for p in self.polys:
            if p.ring.nvars != 2:
                raise ValueError("components must be bivariate")
            if p.is_zero():
                continue
            if not p.is_homogeneous() or p.total_degree() != self.degree:
                raise ValueError(
                    f"component {p} is not homogeneous of degree {self.degree}"
                )

    @property
    def ring(self):
        return self.polys[0].ring

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.polys) + ")"


def homogenize(f: UniTuple) -> HomogTuple:
    """h_i = y2^s f_i(y1/y2), each homogeneous of degree s = f.bound."""
    s = f.bound
    target = bi_ring(f.ring.field)
    out = []
    for p in f.polys:
        out.append(Poly(target, {(e[0], s - e[0]): c for e, c in p.terms.items()}))
    return HomogTuple(tuple(out), s)


def dehomogenize(h: HomogTuple) -> UniTuple:
    """f_i = h_i(y1, 1), with bound s; the left inverse of homogenize."""
    target = uni_ring(h.ring.field)
    out = []
    for p in h.polys:
        out.append(Poly(target, {(e[0],): c for e, c in p.terms.items()}))
    return UniTuple(tuple(out), h.degree)


def divisor_transport(g: Poly) -> Poly:
    """y2^(deg g) * g(y1/y2): the bivariate shadow of a univariate divisor."""
    if g.is_zero():
        raise ZeroTuple("cannot transport the zero polynomial")
    if g.ring.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    s = g.total_degree()
    target = bi_ring(g.ring.field)
    return Poly(target, {(e[0], s - e[0]): c for e, c in g.terms.items()})


def divisor_transport_inverse(gt: Poly) -> Poly:
    """g = gt(y1, 1) for homogeneous gt with y2 not dividing gt."""
    if gt.is_zero():
        raise ZeroTuple("cannot transport the zero polynomial")
    if gt.ring.nvars != 2 or not gt.is_homogeneous():
        raise ValueError("expected a homogeneous bivariate polynomial")
    if min(e[1] for e in gt.terms) > 0:
        raise DivisibleByY2("y2 divides the input")
    target = uni_ring(gt.ring.field)
    return Poly(target, {(e[0],): c for e, c in gt.terms.items()})


def has_linear_factor(gt: Poly) -> bool:
    """Whether a homogeneous bivariate polynomial has a linear factor over K.

    The factor structure of homogeneous bivariate polynomials makes this
    decidable by inspection: a linear factor exists iff y2 divides gt or
    gt(y1, 1) has a root in K.
    """
    if gt.is_constant():
        return False
    if min(e[1] for e in gt.terms) > 0:
        return True
    dehom = divisor_transport_inverse(gt)
    if dehom.is_constant():
        return False
    return bool(roots_in_K(dehom))


def hfc_decompose(h_map: RatMap, i: int, p: Poly, q: Poly, f: UniTuple):
    """Check a decomposition witness and assemble H = g * h(p, q).

    The caller supplies the univariate tuple f; the function verifies the
    identity H_i^{-1} H = f_i^{-1}(p/q) f(p/q) exactly, demands that f be
    primitive, homogenizes f at s = deg f and returns (f, g, h) with
    g = H_i / h_i(p, q), after confirming H = g * h(p, q).
    """
    if h_map[i].is_zero():
        raise ZeroTuple(f"component {i} is zero")
    if len(f.polys) != h_map.m:
        raise WitnessRejected("witness tuple has the wrong length")
    if not gcd_many(f.polys).is_one():
        raise NotPrimitive("witness tuple is not primitive")
    s = max(p2.total_degree() for p2 in f.polys if not p2.is_zero())
    fi = f.polys[i]
    if fi.is_zero():
        raise WitnessRejected("witness component at the pivot index is zero")
    ring = p.ring
    cleared = [eval_univar_at_ratio(fk, p, q, s) for fk in f.polys]
    if cleared[i].is_zero():
        raise WitnessRejected("f_i(p/q) vanishes")
    pivot = h_map[i]
    for k in range(h_map.m):
        lhs = h_map[k] / pivot
        rhs = RatFunc(cleared[k], cleared[i])
        if lhs != rhs:
            raise WitnessRejected(f"identity fails at component {k}")
    f_exact = UniTuple(f.polys, s)
    h = homogenize(f_exact)
    g = pivot / RatFunc.from_poly(cleared[i])
    for k in range(h_map.m):
        if g * RatFunc.from_poly(cleared[k]) != h_map[k]:
            raise WitnessRejected(f"assembled decomposition fails at component {k}")
    return f_exact, g, h


def degree_formula(h: HomogTuple, p: Poly, q: Poly):
    """(s * deg(p,q), s * low deg(p,q)), valid when gcd(h) has no linear factor.

    Also asserts h(p, q) != 0 and cross-checks both values against direct
    expansion; a mismatch would be a bug, not bad input.
    """
    if p.is_zero() and q.is_zero():
        raise BothZero("p and q are both zero")
    g = gcd_many(h.polys)
    if has_linear_factor(g):
        raise LinearFactorPresent("gcd of the tuple has a linear factor over K")
    s = h.degree
    dp = tuple_degrees([p, q])
    expect_deg = s * dp.deg
    expect_low = s * dp.lowdeg
    composed = [
        compose_homog_at(c, p, q) for c in h.polys
    ]
    if all(c.is_zero() for c in composed):
        raise AssertionFailure("h(p, q) vanished despite the linear-factor filter")
    actual = tuple_degrees(composed)
    if (actual.deg, actual.lowdeg) != (expect_deg, expect_low):
        raise AssertionFailure(
            f"degree formula mismatch: expected ({expect_deg}, {expect_low}), "
            f"expansion gives ({actual.deg}, {actual.lowdeg})"
        )
    return expect_deg, expect_low


def compose_homog_at(c: Poly, p: Poly, q: Poly) -> Poly:
    """c(p, q) for bivariate c, evaluated by direct polynomial composition."""
    from .polyring import compose_poly

    return compose_poly(c, [p, q], p.ring)
