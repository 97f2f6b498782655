"""Polynomial self-maps of the affine plane and their geometry.

A PolyMap is a pair of polynomials in the source variables (x, y); its
target plane carries the variables (s, t) so graph ideals can mix both
planes.  Properness is decided by the finite-extension test, the
topological degree by counting a fiber with multiplicity, and the
branch locus by eliminating the source variables from the graph ideal
over the critical locus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .groebner import (ComputationBudget, ResourceBudgetExceeded, buchberger,
                       elimination_ideal, finite_extension_test,
                       quotient_dimension)
from .polyring import (ExactDivisionError, MultiPoly, QQ, RingMismatch,
                       common_field, divides, exact_div, gcd_poly,
                       is_scalar_multiple, jacobian_det, primitive_normalize,
                       squarefree_part, substitute)

SOURCE_VARS = ("x", "y")
TARGET_VARS = ("s", "t")


class PolyMap:
    """A polynomial map (x, y) -> (f1(x, y), f2(x, y))."""

    __slots__ = ("f1", "f2", "name")

    def __init__(self, f1: MultiPoly, f2: MultiPoly, name: str = ""):
        if f1.vars != SOURCE_VARS or f2.vars != SOURCE_VARS:
            raise RingMismatch("map components must live in the (x, y) plane")
        field = common_field(f1.field, f2.field)
        object.__setattr__(self, "f1", f1.in_field(field))
        object.__setattr__(self, "f2", f2.in_field(field))
        object.__setattr__(self, "name", name)

    def __setattr__(self, *a):
        raise AttributeError("PolyMap is immutable")

    @property
    def field(self):
        return self.f1.field

    def components(self):
        return (self.f1, self.f2)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.f1 == other.f1 and self.f2 == other.f2

    def __hash__(self):
        return hash((self.f1, self.f2))

    def __repr__(self):
        from .parser import format_map
        label = f" {self.name}" if self.name else ""
        return f"PolyMap{label}({format_map(self.f1, self.f2)})"


class PlaneAutomorphism:
    """A polynomial automorphism of the plane, stored with its inverse.

    The constructor checks both compositions against the identity, so a
    constructed value is an automorphism by construction.
    """

    __slots__ = ("forward", "inverse")

    def __init__(self, forward, inverse):
        fw = tuple(forward)
        inv = tuple(inverse)
        if len(fw) != 2 or len(inv) != 2:
            raise ValueError("an automorphism needs two components each way")
        x = MultiPoly.variable("x", SOURCE_VARS, fw[0].field)
        y = MultiPoly.variable("y", SOURCE_VARS, fw[0].field)
        for a, b in ((fw, inv), (inv, fw)):
            land = [substitute(c, {"x": b[0], "y": b[1]}) for c in a]
            if land[0] != x.in_field(land[0].field) or land[1] != y.in_field(land[1].field):
                raise ValueError("forward and inverse do not compose to the identity")
        object.__setattr__(self, "forward", fw)
        object.__setattr__(self, "inverse", inv)

    def __setattr__(self, *a):
        raise AttributeError("PlaneAutomorphism is immutable")

    @classmethod
    def identity(cls, field=QQ):
        x = MultiPoly.variable("x", SOURCE_VARS, field)
        y = MultiPoly.variable("y", SOURCE_VARS, field)
        return cls((x, y), (x, y))

    @classmethod
    def linear(cls, a, b, c, d, field=QQ):
        """(x, y) -> (a x + b y, c x + d y) for an invertible 2x2 matrix."""
        a, b, c, d = (field.coerce(v) for v in (a, b, c, d))
        det = a * d - b * c
        if not det:
            raise ValueError("matrix is singular")
        inv_det = det.inverse() if hasattr(det, "inverse") else Fraction(1, 1) / det
        x = MultiPoly.variable("x", SOURCE_VARS, field)
        y = MultiPoly.variable("y", SOURCE_VARS, field)
        fw = (x * a + y * b, x * c + y * d)
        inv = ((x * d - y * b) * inv_det, (x * (-c) + y * a) * inv_det)
        return cls(fw, inv)

    @classmethod
    def triangular(cls, p: MultiPoly, lower=False):
        """(x, y) -> (x + p(y), y), or (x, y + p(x)) when lower is set."""
        x = MultiPoly.variable("x", SOURCE_VARS, p.field)
        y = MultiPoly.variable("y", SOURCE_VARS, p.field)
        if lower:
            if p.uses_variable("y"):
                raise ValueError("shear polynomial must avoid the sheared variable")
            return cls((x, y + p), (x, y - p))
        if p.uses_variable("x"):
            raise ValueError("shear polynomial must avoid the sheared variable")
        return cls((x + p, y), (x - p, y))

    @classmethod
    def translation(cls, a, b, field=QQ):
        x = MultiPoly.variable("x", SOURCE_VARS, field)
        y = MultiPoly.variable("y", SOURCE_VARS, field)
        return cls((x + a, y + b), (x - a, y - b))

    def then(self, other: "PlaneAutomorphism") -> "PlaneAutomorphism":
        """Composition self followed by other."""
        fw = tuple(substitute(c, {"x": self.forward[0], "y": self.forward[1]})
                   for c in other.forward)
        inv = tuple(substitute(c, {"x": other.inverse[0], "y": other.inverse[1]})
                    for c in self.inverse)
        return PlaneAutomorphism(fw, inv)

    def as_map(self) -> PolyMap:
        return PolyMap(self.forward[0], self.forward[1])

    def __repr__(self):
        from .parser import format_map
        return f"PlaneAutomorphism({format_map(*self.forward)})"


# ---------------------------------------------------------------------------
# families

def make_family(name: str, **params) -> PolyMap:
    """Named families of plane maps used throughout the test catalog.

    whitney            -> (x, y^3 + x*y)
    power d            -> (x, y^d)
    product m n        -> (x^m, y^n)
    pinch d            -> (x + y + x*y, x^(d-1)*y)        [d >= 2]
    shifted_power d n  -> (x, y^d - d*x^n*y)              [d >= 3, n >= 1]
    semi_separate q    -> (x, q) for a polynomial q monic in y
    separate p q       -> (p(x), q(y))
    """
    x = MultiPoly.variable("x", SOURCE_VARS)
    y = MultiPoly.variable("y", SOURCE_VARS)
    if name == "whitney":
        return PolyMap(x, y**3 + x * y, name="whitney")
    if name == "power":
        d = params["d"]
        if d < 1:
            raise ValueError("power family needs d >= 1")
        return PolyMap(x, y**d, name=f"power(d={d})")
    if name == "product":
        m, n = params["m"], params["n"]
        if m < 1 or n < 1:
            raise ValueError("product family needs m, n >= 1")
        return PolyMap(x**m, y**n, name=f"product(m={m},n={n})")
    if name == "pinch":
        d = params["d"]
        if d < 2:
            raise ValueError("pinch family needs d >= 2")
        return PolyMap(x + y + x * y, x**(d - 1) * y, name=f"pinch(d={d})")
    if name == "shifted_power":
        d, n = params["d"], params["n"]
        if d < 3 or n < 1:
            raise ValueError("shifted_power family needs d >= 3, n >= 1")
        return PolyMap(x, y**d - d * x**n * y, name=f"shifted_power(d={d},n={n})")
    if name == "semi_separate":
        q = params["q"]
        return PolyMap(x.in_field(q.field), q, name="semi_separate")
    if name == "separate":
        p, q = params["p"], params["q"]
        if p.uses_variable("y") or q.uses_variable("x"):
            raise ValueError("separate components must be univariate in x and y")
        return PolyMap(p, q, name="separate")
    raise ValueError(f"unknown family {name!r}")


# ---------------------------------------------------------------------------
# basic geometry

def is_proper(f: PolyMap, budget=None) -> bool:
    """Whether f is proper, i.e. the coordinate ring is finite over the image."""
    return finite_extension_test(f.f1, f.f2, SOURCE_VARS, TARGET_VARS, budget)


def is_monic_in_y(q: MultiPoly) -> bool:
    """Whether q = y^d + (lower y-degree, coefficients in x) with unit lead."""
    d = q.degree_in("y")
    if d < 1:
        return False
    i = q.vars.index("y")
    lead = [(e, c) for e, c in q.terms.items() if e[i] == d]
    if len(lead) != 1:
        return False
    e, c = lead[0]
    return not any(e[j] for j in range(len(e)) if j != i)


def topological_degree(f: PolyMap, seed: int = 0, retries: int = 5,
                       budget=None) -> int:
    """Cardinality (with multiplicity) of a fiber over a random rational point.

    Two independent draws must agree; disagreement re-draws up to
    `retries` times before raising.
    """
    rng = random.Random(seed)

    def draw():
        return Fraction(rng.randint(-99, 99), rng.randint(1, 7))

    def fiber_dim():
        a, b = draw(), draw()
        gens = [f.f1 - a, f.f2 - b]
        gb = buchberger(gens, budget=budget)
        return quotient_dimension(gb)

    for _ in range(retries):
        d1 = fiber_dim()
        d2 = fiber_dim()
        if d1 == d2 and d1 not in (0, float("inf")):
            return d1
    raise ArithmeticError("fiber counts kept disagreeing; is the map proper?")


def critical_ideal(f: PolyMap) -> MultiPoly:
    """Jacobian determinant of f (the principal generator of the critical ideal)."""
    return jacobian_det(f.f1, f.f2)


def branch_ideal(f: PolyMap, budget=None) -> list:
    """Generators of the branch ideal in the target variables (s, t).

    Eliminates the source variables from <J_f, s - f1, t - f2>; each
    generator comes back content-normalized with a fixed sign.
    """
    J = critical_ideal(f)
    if not J.terms:
        raise ValueError("map is not dominant (identically zero Jacobian)")
    allv = SOURCE_VARS + TARGET_VARS
    field = f.field
    gens = [J.extended(allv),
            MultiPoly.variable("s", allv, field) - f.f1.extended(allv),
            MultiPoly.variable("t", allv, field) - f.f2.extended(allv)]
    return elimination_ideal(gens, SOURCE_VARS, budget)


# ---------------------------------------------------------------------------
# branch verification tiers

@dataclass
class BranchCheck:
    """Outcome of the tiered branch verification for one claimed equation."""

    claimed: MultiPoly
    substitution_divisible: bool
    claimed_squarefree: bool
    elimination_status: str  # "pass" | "fail" | "skipped-budget" | "not-run"
    elimination_generators: list | None = None

    @property
    def ok(self) -> bool:
        if not (self.substitution_divisible and self.claimed_squarefree):
            return False
        return self.elimination_status in ("pass", "skipped-budget", "not-run")

    def tier_report(self):
        return {
            "substitution_divisible": self.substitution_divisible,
            "claimed_squarefree": self.claimed_squarefree,
            "elimination": self.elimination_status,
        }


def verify_branch(f: PolyMap, claimed: MultiPoly, run_elimination=True,
                  budget=None) -> BranchCheck:
    """Check a claimed branch equation for f, cheap tiers first.

    The claimed polynomial is written in (x, y) read as coordinates on
    the target plane.  Tier one: the pullback of the claim must vanish
    on the reduced critical locus, i.e. be divisible by the squarefree
    part of J_f.  Tier two: the claim itself must be squarefree.  Tier
    three (optional, budgeted): the eliminated branch ideal must be
    principal with the claim as generator, up to a unit.
    """
    field = common_field(f.field, claimed.field)
    claim = claimed.in_field(field).rename(SOURCE_VARS)
    fl = PolyMap(f.f1.in_field(field), f.f2.in_field(field))
    J = critical_ideal(fl)
    if not J.terms:
        raise ValueError("map is not dominant (identically zero Jacobian)")
    pullback = substitute(claim, {"x": fl.f1, "y": fl.f2})
    sub_ok = divides(squarefree_part(J), pullback)
    sf_ok = is_scalar_multiple(squarefree_part(claim), claim)
    elim_status = "not-run"
    elim_gens = None
    if run_elimination:
        try:
            gens = branch_ideal(fl, budget)
            elim_gens = gens
            if len(gens) == 1 and is_scalar_multiple(
                    gens[0], primitive_normalize(claim)):
                elim_status = "pass"
            else:
                elim_status = "fail"
        except ResourceBudgetExceeded:
            elim_status = "skipped-budget"
    return BranchCheck(claim, sub_ok, sf_ok, elim_status, elim_gens)


# ---------------------------------------------------------------------------
# composition and equivalence

def compose(f: PolyMap, pre: PlaneAutomorphism = None,
            post: PlaneAutomorphism = None) -> PolyMap:
    """The map post . f . pre (either side may be omitted)."""
    g1, g2 = f.f1, f.f2
    if pre is not None:
        g1 = substitute(g1, {"x": pre.forward[0], "y": pre.forward[1]})
        g2 = substitute(g2, {"x": pre.forward[0], "y": pre.forward[1]})
    if post is not None:
        h1, h2 = post.forward
        g1, g2 = (substitute(h1, {"x": g1, "y": g2}),
                  substitute(h2, {"x": g1, "y": g2}))
    return PolyMap(g1, g2)


def jacobian_power_factorization(f: PolyMap, d: int):
    """Split J_f as H1^(d-2) * H2 with both factors nonconstant, if possible.

    Repeated factors come out of gcd chains with the partial
    derivatives; for the exponent-one case the only factor search tried
    is the content with respect to each variable.  Returns (H1, H2) or
    None.
    """
    if d < 3:
        raise ValueError("factorization shape needs d >= 3")
    J = critical_ideal(f)
    if not J.terms or J.is_constant():
        return None
    e = d - 2

    def split(h1):
        if h1.is_constant():
            return None
        h1 = primitive_normalize(h1)
        try:
            h2 = exact_div(J, h1**e)
        except ExactDivisionError:
            return None
        if h2.is_constant():
            return None
        return (h1, h2)

    if e == 1:
        from .polyring import _content_primitive
        for v in ("y", "x"):
            if J.degree_in(v) > 0:
                cont, _ = _content_primitive(J, v)
                got = split(cont)
                if got:
                    return got
        return split(_repeated_part(J))
    return split(_repeated_part(J, power=e))


def _repeated_part(p: MultiPoly, power: int = 1):
    """Product of factors of p whose multiplicity is at least power (>= 2 counts once more).

    For power >= 2 this returns prod_i P_i^(m_i // power) over the
    squarefree decomposition; for power == 1 it returns the part of p
    with multiplicity at least two (each such factor once).
    """
    decomp = squarefree_decomposition(p)
    one = MultiPoly.constant(1, p.vars, p.field)
    out = one
    for mult, q in decomp:
        if power >= 2:
            k = mult // power
            if k:
                out = out * q**k
        elif mult >= 2:
            out = out * q
    return out


def squarefree_decomposition(p: MultiPoly):
    """[(multiplicity, factor)] with the factors squarefree and pairwise coprime."""
    if not p.terms or p.is_constant():
        raise ValueError("decomposition needs a nonconstant polynomial")
    out = []
    rest = p
    mult = 1
    while not rest.is_constant():
        sf = squarefree_part(rest)
        quot = exact_div(rest, sf)
        if quot.is_constant():
            out.append((mult, sf))
            break
        nxt = squarefree_part(quot)
        # factors of multiplicity exactly `mult` divide sf but not nxt
        exact = exact_div(sf, gcd_poly(sf, nxt)) if not sf.is_constant() else sf
        if not exact.is_constant():
            out.append((mult, primitive_normalize(exact)))
        rest = quot
        mult += 1
    return out


def integral_relation_check(f: PolyMap, element: MultiPoly,
                            relation: MultiPoly, main_var: str = "u") -> bool:
    """Whether a monic relation r(u, s, t) annihilates `element` over the image.

    The relation must be monic in its main variable up to a nonzero
    scalar (a unit does not affect integrality); s and t stand for the
    two components of f.
    """
    d = relation.degree_in(main_var)
    if d < 1:
        raise ValueError("relation is constant in its main variable")
    i = relation.vars.index(main_var)
    lead = [(e, c) for e, c in relation.terms.items() if e[i] == d]
    if len(lead) != 1 or any(lead[0][0][j] for j in range(len(lead[0][0])) if j != i):
        raise ValueError("relation is not monic in its main variable")
    field = common_field(relation.field, f.field)
    elem = element.in_field(field)
    images = {main_var: elem, "s": f.f1.in_field(field), "t": f.f2.in_field(field)}
    value = substitute(relation.in_field(field), images)
    return not value.terms
