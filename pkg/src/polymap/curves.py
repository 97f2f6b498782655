"""Plane curve singularities: Milnor numbers and low-degree classification.

The Milnor number at the origin is the local dimension of the Jacobian
algebra, computed with a standard basis in the local order.  Together
with properness it separates maps whose critical curves have different
singularities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .groebner import (buchberger, local_quotient_dimension,
                       mora_standard_basis, quotient_dimension)
from .maps import PolyMap, critical_ideal, is_proper
from .polyring import (MultiPoly, derivative, evaluate, is_scalar_multiple,
                       squarefree_part, substitute)


@dataclass(frozen=True)
class MilnorResult:
    value: object  # int, or math.inf for a non-isolated singularity
    isolated: bool

    def __int__(self):
        if not self.isolated:
            raise ValueError("non-isolated singularity has no finite Milnor number")
        return self.value


def milnor_at_origin(F: MultiPoly) -> MilnorResult:
    """Milnor number of the curve F = 0 at the origin.

    Computes dim of the local ring modulo the two partial derivatives.
    A smooth point gives 0; a non-isolated critical point comes back
    with value inf and isolated=False.
    """
    origin = {v: Fraction(0) for v in F.vars}
    if evaluate(F, origin):
        raise ValueError("curve does not pass through the origin")
    gens = [derivative(F, v) for v in F.vars]
    gens = [g for g in gens if g.terms]
    if not gens:
        return MilnorResult(math.inf, False)
    basis = mora_standard_basis(gens)
    dim = local_quotient_dimension(basis)
    if dim == math.inf:
        return MilnorResult(math.inf, False)
    return MilnorResult(dim, True)


def singular_points_exist_outside_origin(F: MultiPoly) -> bool:
    """Whether the reduced curve F = 0 has singular points away from the origin.

    Compares the total count of singular points (with multiplicity)
    against the count concentrated at the origin.
    """
    if not is_scalar_multiple(squarefree_part(F), F):
        raise ValueError("curve must be squarefree")
    gens = [F] + [derivative(F, v) for v in F.vars]
    gens = [g for g in gens if g.terms]
    total = quotient_dimension(buchberger(gens))
    if total == math.inf:
        # squarefree curves have finite singular locus; an infinite
        # answer means the input was degenerate in some other way
        return True
    if total == 0:
        return False
    local = local_quotient_dimension(mora_standard_basis(gens))
    return total > local


LINE = "line"
CONIC_ONE_POINT = "conic-one-point-at-infinity"
CONIC_TWO_POINTS = "conic-two-points-at-infinity"
DEGENERATE_CONIC = "degenerate-conic"
NOT_APPLICABLE = "not-applicable"


def classify_low_degree_curve(F: MultiPoly) -> str:
    """Classify a degree <= 2 plane curve up to biholomorphism.

    Smooth conics are separated by how many points their projective
    closure puts on the line at infinity: one (the curve is a copy of
    the affine line) or two (a punctured line).
    """
    deg = F.total_degree()
    if deg > 2:
        raise ValueError("classification only covers degrees 1 and 2")
    if deg < 1:
        return NOT_APPLICABLE
    if deg == 1:
        return LINE
    xi = F.vars.index("x")
    yi = F.vars.index("y")

    def pick(ex, ey):
        e = [0] * len(F.vars)
        e[xi], e[yi] = ex, ey
        return F.coeff(tuple(e))

    half = Fraction(1, 2)
    a, b, c = pick(2, 0), pick(1, 1), pick(0, 2)
    d, e, f = pick(1, 0), pick(0, 1), pick(0, 0)
    m = [[a, b * half, d * half],
         [b * half, c, e * half],
         [d * half, e * half, f]]
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    if not det:
        return DEGENERATE_CONIC
    disc = b * b - 4 * a * c
    return CONIC_TWO_POINTS if disc else CONIC_ONE_POINT


class PreconditionError(ValueError):
    """A distinguishing argument was asked for outside its hypotheses."""


@dataclass(frozen=True)
class NonEquivalenceCertificate:
    """Witness that two maps cannot be equivalent.

    Equivalent maps have critical curves that match under a polynomial
    change of coordinates, so the Milnor numbers of those curves at
    their singular points must agree.
    """

    milnor_first: int
    milnor_second: int
    reason: str = "critical curves have different Milnor numbers at the origin"


def distinguish_by_milnor(f: PolyMap, g: PolyMap, budget=None):
    """Certificate of non-equivalence from critical-curve Milnor numbers.

    Both maps must be proper with a reduced critical curve whose only
    singular point is the origin.  Equal Milnor numbers prove nothing
    and come back as None.
    """
    values = []
    for label, h in (("first", f), ("second", g)):
        if not is_proper(h, budget):
            raise PreconditionError(f"{label} map is not proper")
        J = critical_ideal(h)
        if not J.terms or J.is_constant():
            raise PreconditionError(f"{label} map has no critical curve")
        if not is_scalar_multiple(squarefree_part(J), J):
            raise PreconditionError(f"{label} critical curve is not reduced")
        origin = {v: Fraction(0) for v in J.vars}
        if evaluate(J, origin):
            raise PreconditionError(
                f"{label} critical curve misses the origin")
        if singular_points_exist_outside_origin(J):
            raise PreconditionError(
                f"{label} critical curve is singular away from the origin")
        values.append(milnor_at_origin(J).value)
    if values[0] == values[1]:
        return None
    return NonEquivalenceCertificate(values[0], values[1])
