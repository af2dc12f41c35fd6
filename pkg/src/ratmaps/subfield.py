"""Subfields of K(x) of low transcendence degree and their generators.

Covers Jacobian-rank transcendence degrees (exact in characteristic zero,
with a bounded dependence search as the flagged fallback elsewhere),
gcd-substitution identities, GL2 equivalence of generator pairs, the
unit-combination chain for fields containing a nonconstant polynomial,
polynomial and bounded rational membership tests, the constructive
single-variable generator, and the full witness verifier for
decompositions H = g * h(p, q).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import (
    AllConstant,
    AllZero,
    AssertionFailure,
    BothConstant,
    CharPUnsupported,
    ConstantP,
    ConstantRatio,
    NotCoprime,
    NotPrimitivePair,
    SingularMatrix,
    WitnessRejected,
    ZeroDenominator,
)
from .homog import HomogTuple, compose_homog_at, degree_formula, uni_ring
from .linalg import (
    field_nullspace,
    field_solve,
    monomial_index,
    poly_to_row,
    ratfunc_matrix_rank,
)
from .polyring import (
    Poly,
    PolyRing,
    RatFunc,
    RatMap,
    compose_poly,
    eval_univar_at_ratio,
    gcd_many,
    is_primitive,
    jacobian,
    poly_lcm,
    relabel,
)


# -- GL2 action ------------------------------------------------------------


@dataclass(frozen=True)
class Mobius:
    """An invertible 2x2 matrix over K acting on generator pairs (p, q)."""

    t11: object
    t12: object
    t21: object
    t22: object

    def __post_init__(self):
        if not self.det():
            raise SingularMatrix("matrix is singular")

    def det(self):
        return self.t11 * self.t22 - self.t12 * self.t21

    def apply(self, p: Poly, q: Poly):
        return (
            p.scale(self.t11) + q.scale(self.t12),
            p.scale(self.t21) + q.scale(self.t22),
        )

    def compose(self, other: Mobius) -> Mobius:
        return Mobius(
            self.t11 * other.t11 + self.t12 * other.t21,
            self.t11 * other.t12 + self.t12 * other.t22,
            self.t21 * other.t11 + self.t22 * other.t21,
            self.t21 * other.t12 + self.t22 * other.t22,
        )

    def inverse(self) -> Mobius:
        """The adjugate, an inverse up to the nonzero scalar det."""
        return Mobius(self.t22, -self.t12, -self.t21, self.t11)

    def is_scalar(self) -> bool:
        return (not self.t12) and (not self.t21) and self.t11 == self.t22

    def proportional_to(self, other: Mobius) -> bool:
        mine = (self.t11, self.t12, self.t21, self.t22)
        theirs = (other.t11, other.t12, other.t21, other.t22)
        for a, b in zip(mine, theirs):
            for c, d in zip(mine, theirs):
                if a * d != c * b:
                    return False
        return True

    def entries(self):
        return (self.t11, self.t12, self.t21, self.t22)


# -- transcendence degree ----------------------------------------------------


def adjoin_t(h: RatMap) -> RatMap:
    """The map tH over the ring extended with a fresh variable t."""
    ring = h.ring
    if "t" in ring.names:
        raise ValueError("the ring already contains a variable named t")
    ext = PolyRing(ring.field, ring.names + ("t",))
    vm = list(range(ring.nvars))
    t = ext.var(ext.nvars - 1)
    comps = []
    for c in h.comps:
        num = relabel(c.num, ext, vm)
        den = relabel(c.den, ext, vm)
        comps.append(RatFunc(num * t, den))
    return RatMap(comps)


def trdeg_rank(h: RatMap, with_t: bool = False) -> int:
    """trdeg_K K(H), or of K(tH), as a Jacobian rank (characteristic zero).

    The Jacobian of tH is taken with respect to (x, t).  Rank equals the
    transcendence degree of the generated field by the Jacobian criterion,
    which is an exact contract only in characteristic zero.
    """
    if h.ring.field.characteristic != 0:
        raise CharPUnsupported(
            "Jacobian rank equals trdeg only in characteristic zero; "
            "use the bounded dependence search instead"
        )
    target = adjoin_t(h) if with_t else h
    return ratfunc_matrix_rank(jacobian(target))


@dataclass
class DependenceSearch:
    """Outcome of the bounded algebraic-dependence search."""

    value: int
    certified: bool
    relations: list
    note: str

    def to_dict(self):
        return {
            "value": self.value,
            "certified": self.certified,
            "relations": [str(r) for r in self.relations],
            "note": self.note,
        }


def trdeg_bounded_dependence(
    h: RatMap, with_t: bool = False, degree_bound: int = 2
) -> DependenceSearch:
    """Greedy bounded search for algebraic dependences among the components.

    Component i counts as dependent when some nonzero polynomial relation
    of total degree <= degree_bound links it to components 1..i-1; the
    returned value is the number of components left uncounted, a certified
    upper bound for the transcendence degree.  It is never certified as
    the exact transcendence degree (relations beyond the bound may exist),
    hence certified is always False.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    target = adjoin_t(h) if with_t else h
    comps = list(target.comps)
    field = target.ring.field
    names = tuple(f"h{i + 1}" for i in range(len(comps)))
    rel_ring = PolyRing(field, names)
    independent = 0
    relations = []
    prods = {(): RatFunc.from_poly(target.ring.one())}
    for i in range(len(comps)):
        exps = _exponents_upto(i + 1, degree_bound)
        cols = []
        for e in exps:
            if e not in prods:
                base = prods[e[:-1] + (e[-1] - 1,)] if e[-1] else prods[e[:-1]]
                prods[e] = base * comps[i] if e[-1] else base
            cols.append(prods[e])
        den = target.ring.one()
        for rf in cols:
            if not rf.den.is_one():
                den = poly_lcm(den, rf.den)
        cleared = [rf.num * den.divexact(rf.den) for rf in cols]
        index = monomial_index(cleared)
        width = len(index)
        matrix_cols = [poly_to_row(pl, index, width, field) for pl in cleared]
        rows = [[col[r] for col in matrix_cols] for r in range(width)]
        basis = field_nullspace(rows, len(cols), field)
        found = None
        for vec in basis:
            if any(c for e, c in zip(exps, vec) if e[-1] > 0):
                found = vec
                break
        if found is None:
            independent += 1
        else:
            terms = {}
            for e, c in zip(exps, found):
                if c:
                    terms[e + (0,) * (len(comps) - len(e))] = c
            relations.append(Poly(rel_ring, terms))
    note = (
        "no dependence found within the bound"
        if not relations
        else f"{len(relations)} dependence(s) found"
    )
    return DependenceSearch(independent, False, relations, note)


def _exponents_upto(nvars: int, bound: int):
    out = []
    for total in range(bound + 1):
        for e in itertools.product(range(bound + 1), repeat=nvars):
            if sum(e) == total:
                out.append(e)
    return out


# -- gcd under substitution --------------------------------------------------


def gcd_subst_uni(fs, p: Poly) -> Poly:
    """gcd(f)(p), asserted equal to gcd(f_1(p), ..., f_m(p)) up to a unit.

    Both sides are computed independently and compared after monic
    normalization; disagreement raises an internal alarm, since the
    identity holds in any integral K-domain.
    """
    fs = list(fs)
    if all(f.is_zero() for f in fs):
        raise AllZero("all components are zero")
    g = gcd_many(fs)
    lhs = compose_poly(g, [p], p.ring).monic()
    rhs = gcd_many([compose_poly(f, [p], p.ring) for f in fs])
    if lhs != rhs:
        raise AssertionFailure(
            "gcd does not commute with substitution (univariate case)"
        )
    return lhs


def gcd_subst_homog(h, p: Poly, q: Poly) -> Poly:
    """gcd(h)(p, q) for homogeneous-or-zero h and a primitive pair (p, q)."""
    polys = list(h.polys) if isinstance(h, HomogTuple) else list(h)
    if all(c.is_zero() for c in polys):
        raise AllZero("all components are zero")
    for c in polys:
        if not c.is_zero() and not c.is_homogeneous():
            raise ValueError("components must be homogeneous or zero")
    if not is_primitive([p, q]):
        raise NotPrimitivePair("(p, q) is not primitive")
    g = gcd_many(polys)
    lhs = compose_homog_at(g, p, q).monic()
    rhs = gcd_many([compose_homog_at(c, p, q) for c in polys])
    if lhs != rhs:
        raise AssertionFailure(
            "gcd does not commute with substitution (homogeneous case)"
        )
    return lhs


# -- Moebius equivalence of generator pairs -----------------------------------


def mobius_equiv(p: Poly, q: Poly, pstar: Poly, qstar: Poly):
    """A matrix T with p*/q* = (T11 p + T12 q)/(T21 p + T22 q), if one exists.

    Existence is equivalent to K(p/q) = K(p*/q*).  The bilinear identity
    q* (T11 p + T12 q) = p* (T21 p + T22 q) is solved as a linear system in
    the four entries; an invertible solution is verified exactly before it
    is returned, and None means the fields differ.
    """
    if q.is_zero() or RatFunc(p, q).is_constant():
        raise ConstantRatio("p/q lies in K")
    if not is_primitive([p, q]):
        raise NotCoprime("(p, q) is not reduced")
    if not pstar.is_zero() or not qstar.is_zero():
        if not is_primitive([pstar, qstar]):
            raise NotCoprime("(p*, q*) is not reduced")
    if qstar.is_zero():
        return None
    field = p.ring.field
    cols = [qstar * p, qstar * q, -(pstar * p), -(pstar * q)]
    index = monomial_index(cols)
    width = len(index)
    col_rows = [poly_to_row(c, index, width, field) for c in cols]
    rows = [[col[r] for col in col_rows] for r in range(width)]
    for vec in field_nullspace(rows, 4, field):
        t21_p_t22_q = p.scale(vec[2]) + q.scale(vec[3])
        if t21_p_t22_q.is_zero():
            continue
        if not (vec[0] * vec[3] - vec[1] * vec[2]):
            continue
        cand = Mobius(*vec)
        num, den = cand.apply(p, q)
        if RatFunc(num, den) == RatFunc(pstar, qstar):
            return cand
    return None


# -- the unit-combination chain ----------------------------------------------


def unit_combination(p: Poly, q: Poly):
    """(lambda, mu) with lambda*p + mu*q = 1, or None when no such pair exists."""
    if p.is_constant() and q.is_constant():
        raise BothConstant("p and q are both constant")
    if not is_primitive([p, q]):
        raise NotCoprime("gcd(p, q) is not a unit")
    field = p.ring.field
    one = p.ring.one()
    index = monomial_index([p, q, one])
    width = len(index)
    col_p = poly_to_row(p, index, width, field)
    col_q = poly_to_row(q, index, width, field)
    rhs = poly_to_row(one, index, width, field)
    rows = [[col_p[r], col_q[r]] for r in range(width)]
    sol = field_solve(rows, rhs, field)
    return None if sol is None else (sol[0], sol[1])


@dataclass
class EnotherChain:
    """Verdicts for the chain linking a unit combination to K(p/q) = K(p, q)."""

    has_unit_combo: bool
    contains_nonconstant_poly: bool
    field_equals_Kpq: bool
    lam: object = None
    mu: object = None
    generator: Poly = None
    p_membership: Poly = None
    q_membership: Poly = None

    def to_dict(self):
        d = {
            "has_unit_combo": self.has_unit_combo,
            "contains_nonconstant_poly": self.contains_nonconstant_poly,
            "field_equals_Kpq": self.field_equals_Kpq,
        }
        if self.has_unit_combo:
            d["lambda"] = str(self.lam)
            d["mu"] = str(self.mu)
            d["generator"] = str(self.generator)
            d["p_as_poly_in_generator"] = str(self.p_membership)
            d["q_as_poly_in_generator"] = str(self.q_membership)
        return d


def enother_chain(p: Poly, q: Poly) -> EnotherChain:
    """Decide the unit-combination condition and report its equivalents.

    The decided condition is the existence of lambda, mu in K with
    lambda*p + mu*q = 1; the other two verdicts (a nonconstant polynomial
    in K(p/q), and K(p/q) = K(p, q)) are reported as equal to it.  When it
    holds, the nonconstant member r* of {p, q} generates, and both p and q
    are exhibited as polynomials in r* as a constructive confirmation.
    """
    combo = unit_combination(p, q)
    if combo is None:
        return EnotherChain(False, False, False)
    lam, mu = combo
    rstar = p if not p.is_constant() else q
    f_p = member_Kp(p, rstar)
    f_q = member_Kp(q, rstar)
    if f_p is None or f_q is None:
        raise AssertionFailure(
            "unit combination exists but a membership verification failed"
        )
    return EnotherChain(True, True, True, lam, mu, rstar, f_p, f_q)


# -- membership tests ---------------------------------------------------------


def member_Kp(r: Poly, p: Poly):
    """A univariate F with r = F(p), or None; decides r in K[p]."""
    if p.is_constant():
        raise ConstantP("p must not be constant")
    yring = uni_ring(p.ring.field)
    if r.is_zero():
        return yring.zero()
    if r.is_constant():
        return yring.const(r.constant_value())
    deg_r, deg_p = r.total_degree(), p.total_degree()
    if deg_r % deg_p:
        return None
    d = deg_r // deg_p
    field = p.ring.field
    powers = [p.ring.one()]
    for _ in range(d):
        powers.append(powers[-1] * p)
    index = monomial_index(powers + [r])
    width = len(index)
    cols = [poly_to_row(pw, index, width, field) for pw in powers]
    rhs = poly_to_row(r, index, width, field)
    rows = [[col[k] for col in cols] for k in range(width)]
    sol = field_solve(rows, rhs, field)
    if sol is None:
        return None
    return Poly(yring, {(i,): c for i, c in enumerate(sol)})


def member_Kpq(r: RatFunc, p: Poly, q: Poly, bound: int):
    """Search for f1, f2 with r = f1(p/q)/f2(p/q) and deg <= bound.

    An empty result means only "not found within the bound"; it is never
    a certificate of non-membership in K(p/q).
    """
    if q.is_zero():
        raise ZeroDenominator("q is zero")
    if bound < 0:
        raise ValueError("bound must be non-negative")
    field = p.ring.field
    yring = uni_ring(field)
    num, den = r.num, r.den
    for d in range(bound + 1):
        basis_polys = [_pq_power(p, q, j, d) for j in range(d + 1)]
        cols = [-(den * b) for b in basis_polys] + [num * b for b in basis_polys]
        index = monomial_index(cols)
        width = len(index)
        col_rows = [poly_to_row(c, index, width, field) for c in cols]
        rows = [[col[k] for col in col_rows] for k in range(width)]
        for vec in field_nullspace(rows, 2 * (d + 1), field):
            f2_cleared = p.ring.zero()
            for j in range(d + 1):
                f2_cleared = f2_cleared + basis_polys[j].scale(vec[d + 1 + j])
            if f2_cleared.is_zero():
                continue
            f1 = Poly(yring, {(j,): vec[j] for j in range(d + 1)})
            f2 = Poly(yring, {(j,): vec[d + 1 + j] for j in range(d + 1)})
            f1, f2 = _reduce_pair(f1, f2)
            lhs = r * RatFunc.from_poly(eval_univar_at_ratio(f2, p, q, d))
            if lhs == RatFunc.from_poly(eval_univar_at_ratio(f1, p, q, d)):
                return f1, f2
    return None


def _pq_power(p: Poly, q: Poly, j: int, d: int) -> Poly:
    return p**j * q ** (d - j)


def _reduce_pair(f1: Poly, f2: Poly):
    if not f1.is_zero():
        g = gcd_many([f1, f2])
        if not g.is_one():
            f1, f2 = f1.divexact(g), f2.divexact(g)
    c = f2.lc()
    one = f2.ring.field.one()
    if c != one:
        inv = one / c
        f1, f2 = f1.scale(inv), f2.scale(inv)
    return f1, f2


# -- the constructive single-variable generator --------------------------------


def luroth_generator_1var(rs) -> tuple:
    """A reduced coprime pair (p, q) generating the field the inputs generate.

    Classical construction: over the rational function field, the minimal
    polynomial of the variable is the gcd of num_i(Y) - r_i * den_i(Y) over
    the nonconstant inputs; any nonconstant coefficient of its monic form
    generates.  Deterministic choice: smallest numerator-plus-denominator
    degree, then smallest coefficient index; the result is normalized so
    that p is monic.  Every input is re-verified to lie in K(p/q) by a
    bounded membership search.
    """
    rs = [r if isinstance(r, RatFunc) else RatFunc.from_poly(r) for r in rs]
    if not rs:
        raise AllConstant("no inputs")
    ring = rs[0].ring
    if ring.nvars != 1:
        raise ValueError("inputs must be univariate rational functions")
    nonconst = [r for r in rs if not r.is_constant()]
    if not nonconst:
        raise AllConstant("all inputs are constant")
    field = ring.field
    work = PolyRing(field, (ring.names[0], "Y"))
    gs = []
    for r in nonconst:
        nx = relabel(r.num, work, [0])
        dx = relabel(r.den, work, [0])
        ny = relabel(r.num, work, [1])
        dy = relabel(r.den, work, [1])
        gs.append(ny * dx - nx * dy)
    minpoly = gcd_many(gs)
    coeffs = minpoly.coeffs_wrt(1)
    top = max(coeffs)
    if top < 1:
        raise AssertionFailure("minimal polynomial degenerated to degree zero")
    lead = Poly(ring, {(e[0],): c for e, c in coeffs[top].terms.items()})
    candidates = []
    for j in sorted(coeffs):
        if j == top:
            continue
        cj = Poly(ring, {(e[0],): c for e, c in coeffs[j].terms.items()})
        theta = RatFunc(cj, lead)
        if theta.is_constant():
            continue
        size = theta.num.total_degree() + theta.den.total_degree()
        candidates.append((size, j, theta))
    if not candidates:
        raise AssertionFailure("no nonconstant coefficient in the minimal polynomial")
    candidates.sort(key=lambda t: (t[0], t[1]))
    theta = candidates[0][2]
    # scaling the generator by a unit keeps the field: present p monic
    p_gen, q_gen = theta.num.monic(), theta.den
    for r in rs:
        b = max(r.num.total_degree(), r.den.total_degree(), 1)
        if member_Kpq(r, p_gen, q_gen, int(b)) is None:
            raise AssertionFailure(
                "an input fell outside the field of the computed generator"
            )
    return p_gen, q_gen


# -- witness verification for H = g * h(p, q) -----------------------------------


@dataclass(frozen=True)
class LurothWitness:
    """Decomposition data: H = g * h(p, q) with h primitive homogeneous or zero."""

    g: RatFunc
    h: object  # HomogTuple or None for the zero tuple
    p: Poly
    q: Poly


@dataclass
class CheckItem:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Hmgrk2Report:
    items: list = dc_field(default_factory=list)
    trdeg_tH: object = None
    note: str = ""

    def add(self, name, ok, detail=""):
        self.items.append(CheckItem(name, "pass" if ok else "fail", detail))

    def skip(self, name, detail=""):
        self.items.append(CheckItem(name, "skip", detail))

    def all_ok(self) -> bool:
        return all(item.status != "fail" for item in self.items)

    def to_dict(self):
        return {
            "checks": [item.to_dict() for item in self.items],
            "trdeg_tH": self.trdeg_tH,
            "all_ok": self.all_ok(),
            "note": self.note,
        }


def hmgrk2_verify(h_map: RatMap, w: LurothWitness) -> Hmgrk2Report:
    """Verify a decomposition witness and all its stated consequences.

    Checks, in order: the defining identity H = g * h(p, q); equality of
    trdeg K(tH) and trdeg K(t h(p,q)) (characteristic zero only); the
    primitivity equivalences; trdeg <= 1 iff h is constant; the degree
    formulas; and the homogeneity equivalence.  Structural defects and a
    failed identity raise WitnessRejected; consequence failures are
    recorded in the report, since they would contradict a theorem and
    deserve eyes rather than silence.
    """
    report = Hmgrk2Report()
    ring = h_map.ring
    field = ring.field
    if w.g.is_zero():
        raise WitnessRejected("g must be nonzero")
    if w.h is not None and not isinstance(w.h, HomogTuple):
        raise WitnessRejected("h must be a HomogTuple or None")
    if w.h is not None and not is_primitive(w.h.polys):
        raise WitnessRejected("h must be primitive or zero")
    if w.p.is_constant() and w.q.is_constant():
        raise WitnessRejected("(p, q) must not be constant")
    if not is_primitive([w.p, w.q]):
        raise WitnessRejected("(p, q) must be primitive")
    if w.h is not None and len(w.h.polys) != h_map.m:
        raise WitnessRejected("h has the wrong number of components")

    if w.h is None:
        hp = [ring.zero() for _ in range(h_map.m)]
    else:
        hp = [compose_homog_at(c, w.p, w.q) for c in w.h.polys]
    for k in range(h_map.m):
        if w.g * RatFunc.from_poly(hp[k]) != h_map[k]:
            raise WitnessRejected(f"H = g * h(p, q) fails at component {k}")
    report.add("identity H = g*h(p,q)", True)

    char_zero = field.characteristic == 0
    if char_zero:
        t_h = trdeg_rank(h_map, with_t=True)
        t_hp = trdeg_rank(RatMap.from_polys(hp), with_t=True)
        report.trdeg_tH = t_h
        report.add(
            "trdeg K(tH) = trdeg K(th(p,q))",
            t_h == t_hp,
            f"{t_h} vs {t_hp}",
        )
    else:
        report.skip("trdeg K(tH) = trdeg K(th(p,q))", "positive characteristic")

    nonzero_H = not h_map.is_zero()
    prim_hp = is_primitive(hp)
    prim_h = w.h is not None and is_primitive(w.h.polys)
    nonzero_h = w.h is not None
    report.add(
        "H != 0 <=> h(p,q) primitive <=> h primitive <=> h != 0",
        nonzero_H == prim_hp == prim_h == nonzero_h,
        f"{nonzero_H}, {prim_hp}, {prim_h}, {nonzero_h}",
    )

    h_const = w.h is None or w.h.degree == 0
    if char_zero:
        report.add(
            "trdeg K(tH) <= 1 <=> h constant",
            (t_h <= 1) == h_const,
            f"trdeg {t_h}, h constant: {h_const}",
        )
    else:
        report.skip("trdeg K(tH) <= 1 <=> h constant", "positive characteristic")

    if w.h is None:
        report.skip("degree formulas", "h = 0")
    else:
        try:
            deg, lowdeg = degree_formula(w.h, w.p, w.q)
            report.add("degree formulas", True, f"deg {deg}, low deg {lowdeg}")
        except AssertionFailure as exc:
            report.add("degree formulas", False, str(exc))

    if w.h is None or w.h.degree == 0:
        report.skip(
            "h(p,q) homogeneous <=> (p,q) homogeneous",
            "vacuous for constant or zero h",
        )
    else:
        lhs = _tuple_is_homogeneous(hp)
        rhs = _tuple_is_homogeneous([w.p, w.q])
        report.add(
            "h(p,q) homogeneous <=> (p,q) homogeneous", lhs == rhs, f"{lhs} vs {rhs}"
        )

    report.note = (
        "minimality of deg(p,q) is not decided; when it is minimal, "
        "K(p/q) is algebraically closed in K(x)"
    )
    return report


def _tuple_is_homogeneous(polys) -> bool:
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        return True
    degs = set()
    for p in nz:
        if not p.is_homogeneous():
            return False
        degs.add(p.total_degree())
    return len(degs) == 1
