"""Sparse multivariate polynomials over Q or Q(zeta_N).

Terms are kept in a dict mapping exponent tuples to nonzero
coefficients.  A polynomial is pinned to an ordered variable tuple and
a coefficient field; operations across different rings raise
RingMismatch rather than guessing an embedding.

Monomial orders are separate objects (lex, degrevlex, block
elimination, local anti-graded) so the same polynomial can be read
under several orders.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .numberfield import (CycloNumber, ConductorMismatch, common_conductor,
                          embed, totient)


class RingMismatch(ValueError):
    """Operands live in different polynomial rings."""


class ExactDivisionError(ArithmeticError):
    """Requested quotient does not exist in the ring."""


# ---------------------------------------------------------------------------
# coefficient fields

class RationalField:
    """The field Q; coefficients are ints or Fractions."""

    is_cyclotomic = False
    conductor = 1

    def coerce(self, value):
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, CycloNumber):
            if value.is_rational():
                return self.coerce(value.rational_value())
            raise RingMismatch("cyclotomic coefficient in a rational ring")
        raise RingMismatch(f"cannot coerce {value!r} into Q")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class CyclotomicField:
    """The field Q(zeta_N) for a fixed conductor N."""

    is_cyclotomic = True

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor

    def coerce(self, value):
        if isinstance(value, (int, Fraction)):
            return CycloNumber.from_rational(value, self.conductor)
        if isinstance(value, CycloNumber):
            if value.conductor == self.conductor:
                return value
            if self.conductor % value.conductor == 0:
                return embed(value, self.conductor)
            raise ConductorMismatch(
                f"conductor {value.conductor} does not divide {self.conductor}")
        raise RingMismatch(f"cannot coerce {value!r} into Q(zeta_{self.conductor})")

    @property
    def zero(self):
        return CycloNumber.zero(self.conductor)

    @property
    def one(self):
        return CycloNumber.one(self.conductor)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("cyclo", self.conductor))

    def __repr__(self):
        return f"QQ(zeta_{self.conductor})"


def common_field(f1, f2):
    """Smallest field of the supported family containing both."""
    if f1 == f2:
        return f1
    if not f1.is_cyclotomic:
        return f2
    if not f2.is_cyclotomic:
        return f1
    return CyclotomicField(common_conductor(f1.conductor, f2.conductor))


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    is_global = True
    name = "order"

    def key(self, exps):  # pragma: no cover - interface stub
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps):
        return exps


class DegRevLex(MonomialOrder):
    name = "degrevlex"

    def key(self, exps):
        return (sum(exps),) + tuple(-e for e in reversed(exps))


class BlockOrder(MonomialOrder):
    """Elimination order: degrevlex on a front block, then degrevlex on the rest."""

    name = "block"

    def __init__(self, front_indices, nvars):
        self.front = tuple(front_indices)
        self.back = tuple(i for i in range(nvars) if i not in self.front)
        self.nvars = nvars

    def key(self, exps):
        fe = tuple(exps[i] for i in self.front)
        be = tuple(exps[i] for i in self.back)
        return ((sum(fe),) + tuple(-e for e in reversed(fe))
                + (sum(be),) + tuple(-e for e in reversed(be)))

    def __repr__(self):
        return f"block(front={self.front})"


class LocalOrder(MonomialOrder):
    """Anti-graded revlex: lower total degree ranks higher (a local order)."""

    name = "local"
    is_global = False

    def key(self, exps):
        return (-sum(exps),) + tuple(-e for e in reversed(exps))


def block_order(variables, front_vars) -> BlockOrder:
    idx = []
    for v in front_vars:
        if v not in variables:
            raise ValueError(f"unknown variable {v!r}")
        idx.append(variables.index(v))
    return BlockOrder(idx, len(variables))


DEFAULT_ORDER = DegRevLex()


# ---------------------------------------------------------------------------
# polynomials

class MultiPoly:
    """A sparse polynomial over an ordered variable tuple and a coefficient field."""

    __slots__ = ("vars", "field", "terms")

    def __init__(self, variables, terms, field=QQ, *, _clean=False):
        variables = tuple(variables)
        if _clean:
            clean = terms
        else:
            clean = {}
            nv = len(variables)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nv:
                    raise ValueError("exponent arity does not match the variables")
                coeff = field.coerce(coeff)
                if coeff:
                    prior = clean.get(exps)
                    if prior is not None:
                        coeff = prior + coeff
                        if coeff:
                            clean[exps] = coeff
                        else:
                            del clean[exps]
                    else:
                        clean[exps] = coeff
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables, field=QQ):
        return cls(variables, {}, field, _clean=True)

    @classmethod
    def constant(cls, value, variables, field=QQ):
        value = field.coerce(value)
        nv = len(tuple(variables))
        terms = {(0,) * nv: value} if value else {}
        return cls(variables, terms, field, _clean=True)

    @classmethod
    def variable(cls, name, variables, field=QQ):
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: field.one}, field, _clean=True)

    @classmethod
    def monomial(cls, coeff, exps, variables, field=QQ):
        return cls(variables, {tuple(exps): coeff}, field)

    # -- ring plumbing ------------------------------------------------

    def _same_ring(self, other):
        if self.vars != other.vars or self.field != other.field:
            raise RingMismatch(
                f"rings differ: {self.vars}/{self.field} vs {other.vars}/{other.field}")

    def _coerce_operand(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars or other.field != self.field:
                raise RingMismatch(
                    f"rings differ: {self.vars}/{self.field} vs {other.vars}/{other.field}")
            return other
        if isinstance(other, (int, Fraction, CycloNumber)):
            return MultiPoly.constant(other, self.vars, self.field)
        return None

    def in_field(self, field) -> "MultiPoly":
        """The same polynomial with coefficients coerced into a larger field."""
        if field == self.field:
            return self
        return MultiPoly(self.vars, {e: field.coerce(c) for e, c in self.terms.items()},
                         field, _clean=True)

    def rename(self, new_variables) -> "MultiPoly":
        """Reinterpret the polynomial over variables of other names, position by position."""
        new_variables = tuple(new_variables)
        if len(new_variables) != len(self.vars):
            raise ValueError("arity mismatch in rename")
        return MultiPoly(new_variables, dict(self.terms), self.field, _clean=True)

    def restricted(self, keep_vars) -> "MultiPoly":
        """Drop variables that do not occur; error if a dropped variable occurs."""
        keep_vars = tuple(keep_vars)
        keep_idx = [self.vars.index(v) for v in keep_vars]
        drop_idx = [i for i in range(len(self.vars)) if i not in keep_idx]
        terms = {}
        for exps, coeff in self.terms.items():
            if any(exps[i] for i in drop_idx):
                raise ValueError("polynomial involves a dropped variable")
            terms[tuple(exps[i] for i in keep_idx)] = coeff
        return MultiPoly(keep_vars, terms, self.field, _clean=True)

    def extended(self, new_variables) -> "MultiPoly":
        """The same polynomial viewed in a ring with extra variables."""
        new_variables = tuple(new_variables)
        pos = {v: i for i, v in enumerate(new_variables)}
        for v in self.vars:
            if v not in pos:
                raise ValueError(f"new ring is missing variable {v!r}")
        nv = len(new_variables)
        terms = {}
        for exps, coeff in self.terms.items():
            out = [0] * nv
            for v, e in zip(self.vars, exps):
                out[pos[v]] = e
            terms[tuple(out)] = coeff
        return MultiPoly(new_variables, terms, self.field, _clean=True)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            c = terms.get(exps)
            if c is None:
                terms[exps] = coeff
            else:
                c = c + coeff
                if c:
                    terms[exps] = c
                else:
                    del terms[exps]
        return MultiPoly(self.vars, terms, self.field, _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            c = terms.get(exps)
            if c is None:
                terms[exps] = -coeff
            else:
                c = c - coeff
                if c:
                    terms[exps] = c
                else:
                    del terms[exps]
        return MultiPoly(self.vars, terms, self.field, _clean=True)

    def __rsub__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()},
                         self.field, _clean=True)

    def __mul__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.vars, self.field)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                prior = out.get(exps)
                if prior is None:
                    out[exps] = c
                else:
                    c = prior + c
                    if c:
                        out[exps] = c
                    else:
                        del out[exps]
        return MultiPoly(self.vars, out, self.field, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(1, self.vars, self.field)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = MultiPoly.constant(other, self.vars, self.field)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.vars == other.vars and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries ------------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return self.field.zero
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def leading(self, order: MonomialOrder = DEFAULT_ORDER):
        """Leading (exponent, coefficient) under the given order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order: MonomialOrder = DEFAULT_ORDER, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def uses_variable(self, name: str) -> bool:
        i = self.vars.index(name)
        return any(e[i] for e in self.terms)

    def __repr__(self):
        from .parser import format_poly
        return f"MultiPoly({format_poly(self)!r})"


# ---------------------------------------------------------------------------
# calculus

def derivative(p: MultiPoly, name: str) -> MultiPoly:
    """Partial derivative with respect to one variable."""
    i = p.vars.index(name)
    terms = {}
    for exps, coeff in p.terms.items():
        e = exps[i]
        if e:
            ne = exps[:i] + (e - 1,) + exps[i + 1:]
            c = coeff * e
            prior = terms.get(ne)
            terms[ne] = c if prior is None else prior + c
    return MultiPoly(p.vars, {e: c for e, c in terms.items() if c}, p.field, _clean=True)


def jacobian_det(f1: MultiPoly, f2: MultiPoly, variables=None) -> MultiPoly:
    """Determinant of the Jacobian matrix of (f1, f2) in two variables."""
    f1._same_ring(f2)
    if variables is None:
        variables = f1.vars[:2]
    x, y = variables
    return (derivative(f1, x) * derivative(f2, y)
            - derivative(f1, y) * derivative(f2, x))


def hessian_det(p: MultiPoly, variables=None) -> MultiPoly:
    """Determinant of the Hessian matrix of p in two variables."""
    if variables is None:
        variables = p.vars[:2]
    x, y = variables
    px, py = derivative(p, x), derivative(p, y)
    return derivative(px, x) * derivative(py, y) - derivative(px, y) ** 2


# ---------------------------------------------------------------------------
# substitution

def substitute(p: MultiPoly, images: dict) -> MultiPoly:
    """Evaluate p at polynomial images of its variables.

    Variables absent from `images` map to themselves; the target ring
    is taken from the images (they must agree) and must then contain
    any such untouched variable.
    """
    target_vars = None
    target_field = p.field
    for img in images.values():
        if not isinstance(img, MultiPoly):
            raise TypeError("images must be MultiPoly values")
        if target_vars is None:
            target_vars = img.vars
        elif img.vars != target_vars:
            raise RingMismatch("substitution images live in different rings")
        target_field = common_field(target_field, img.field)
    if target_vars is None:
        target_vars = p.vars
    full = {}
    for v in p.vars:
        if v in images:
            full[v] = images[v].in_field(target_field)
        elif p.uses_variable(v):
            full[v] = MultiPoly.variable(v, target_vars, target_field)
    one = MultiPoly.constant(1, target_vars, target_field)
    powers = {v: [one] for v in full}
    result = MultiPoly.zero(target_vars, target_field)
    for exps, coeff in p.terms.items():
        term = MultiPoly.constant(coeff, target_vars, target_field)
        for v, e in zip(p.vars, exps):
            if not e:
                continue
            plist = powers[v]
            while len(plist) <= e:
                plist.append(plist[-1] * full[v])
            term = term * plist[e]
        result = result + term
    return result


def evaluate(p: MultiPoly, point: dict):
    """Value of p at a point given coordinate-wise as field constants."""
    images = {v: MultiPoly.constant(c, p.vars, p.field) for v, c in point.items()}
    return substitute(p, images).constant_value()


# ---------------------------------------------------------------------------
# normalization helpers

def _coeff_fractions(p: MultiPoly):
    for c in p.terms.values():
        if isinstance(c, CycloNumber):
            for q in c.coeffs:
                if q:
                    yield Fraction(q)
        else:
            yield Fraction(c)


def _first_signed(coeff):
    if isinstance(coeff, CycloNumber):
        for q in coeff.coeffs:
            if q:
                return q
        return 0
    return coeff


def primitive_normalize(p: MultiPoly, order: MonomialOrder = DEFAULT_ORDER) -> MultiPoly:
    """Scale p so its coefficients are integral with content one.

    The sign is fixed so the leading coefficient's first nonzero
    coordinate is positive; the result is the canonical associate used
    for frozen expected values.
    """
    if not p.terms:
        return p
    num = 0
    den = 1
    for q in _coeff_fractions(p):
        num = gcd(num, q.numerator)
        den = den * q.denominator // gcd(den, q.denominator)
    scale = Fraction(den, num)
    _, lead = p.leading(order)
    if _first_signed(lead) * scale < 0:
        scale = -scale
    if scale == 1:
        return p
    return MultiPoly(p.vars, {e: c * scale for e, c in p.terms.items()}, p.field,
                     _clean=True)


def monic(p: MultiPoly, order: MonomialOrder = DEFAULT_ORDER) -> MultiPoly:
    if not p.terms:
        return p
    _, lead = p.leading(order)
    if isinstance(lead, CycloNumber):
        inv = lead.inverse()
    else:
        inv = Fraction(1, 1) / Fraction(lead)
    return MultiPoly(p.vars, {e: c * inv for e, c in p.terms.items()}, p.field,
                     _clean=True)


def is_scalar_multiple(p: MultiPoly, q: MultiPoly) -> bool:
    """True iff p = c*q for some nonzero field constant c (or both are zero)."""
    if not p.terms and not q.terms:
        return True
    if not p.terms or not q.terms:
        return False
    if set(p.terms) != set(q.terms):
        return False
    e0 = next(iter(p.terms))
    cp, cq = p.terms[e0], q.terms[e0]
    # cross-multiply to avoid inverses
    return all(p.terms[e] * cq == q.terms[e] * cp for e in p.terms)


# ---------------------------------------------------------------------------
# exact division

def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient a/b when b divides a exactly; ExactDivisionError otherwise."""
    a._same_ring(b)
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.terms:
        return MultiPoly.zero(a.vars, a.field)
    order = DEFAULT_ORDER
    keyf = order.key
    be, bc = b.leading(order)
    binv = bc.inverse() if isinstance(bc, CycloNumber) else Fraction(1, 1) / Fraction(bc)
    rem = dict(a.terms)
    quo = {}
    bterms = list(b.terms.items())
    while rem:
        e = max(rem, key=keyf)
        qe = tuple(x - y for x, y in zip(e, be))
        if any(x < 0 for x in qe):
            raise ExactDivisionError("leading monomial not divisible")
        qc = rem[e] * binv
        quo[qe] = qc
        for eb, cb in bterms:
            ne = tuple(x + y for x, y in zip(qe, eb))
            c = rem.get(ne)
            delta = qc * cb
            if c is None:
                rem[ne] = -delta
            else:
                c = c - delta
                if c:
                    rem[ne] = c
                else:
                    del rem[ne]
    return MultiPoly(a.vars, quo, a.field)


def divides(b: MultiPoly, a: MultiPoly) -> bool:
    try:
        exact_div(a, b)
        return True
    except ExactDivisionError:
        return False


# ---------------------------------------------------------------------------
# univariate views (for resultants, pseudo-division, gcd)

def _as_univariate(p: MultiPoly, name: str) -> dict:
    """Coefficients of p as a polynomial in one variable; values keep the full ring."""
    i = p.vars.index(name)
    out = {}
    for exps, coeff in p.terms.items():
        d = exps[i]
        base = exps[:i] + (0,) + exps[i + 1:]
        bucket = out.setdefault(d, {})
        bucket[base] = coeff
    return {d: MultiPoly(p.vars, t, p.field, _clean=True) for d, t in out.items()}


def _leading_in(p: MultiPoly, name: str):
    d = p.degree_in(name)
    i = p.vars.index(name)
    terms = {}
    for exps, coeff in p.terms.items():
        if exps[i] == d:
            terms[exps[:i] + (0,) + exps[i + 1:]] = coeff
    return d, MultiPoly(p.vars, terms, p.field, _clean=True)


def _var_power(p: MultiPoly, name: str, e: int) -> MultiPoly:
    i = p.vars.index(name)
    one = [0] * len(p.vars)
    one[i] = e
    return MultiPoly.monomial(p.field.one, tuple(one), p.vars, p.field)


def pseudo_rem(a: MultiPoly, b: MultiPoly, name: str) -> MultiPoly:
    """Pseudo-remainder of a by b in the named variable: lc(b)^(da-db+1)*a mod b."""
    a._same_ring(b)
    db, lb = _leading_in(b, name)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    r = a
    da = a.degree_in(name)
    if da < db:
        return r
    e = da - db + 1
    while r.terms and r.degree_in(name) >= db:
        dr, lr = _leading_in(r, name)
        r = lb * r - lr * _var_power(a, name, dr - db) * b
        e -= 1
    if e > 0:
        r = (lb ** e) * r
    return r


# ---------------------------------------------------------------------------
# resultants (fraction-free Bareiss on the Sylvester matrix)

def sylvester_matrix(a: MultiPoly, b: MultiPoly, name: str):
    """Sylvester matrix of a and b in the named variable, a-rows above b-rows."""
    da, db = a.degree_in(name), b.degree_in(name)
    if da <= 0 and db <= 0:
        raise ValueError("both inputs are constant in the chosen variable")
    if not a.terms or not b.terms:
        raise ValueError("resultant of the zero polynomial")
    ua, ub = _as_univariate(a, name), _as_univariate(b, name)
    zero = MultiPoly.zero(a.vars, a.field)
    size = da + db
    rows = []
    acoeffs = [ua.get(da - j, zero) for j in range(da + 1)]
    bcoeffs = [ub.get(db - j, zero) for j in range(db + 1)]
    for i in range(db):
        rows.append([zero] * i + acoeffs + [zero] * (size - i - da - 1))
    for i in range(da):
        rows.append([zero] * i + bcoeffs + [zero] * (size - i - db - 1))
    return rows


def _bareiss_det(rows):
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    m = [list(r) for r in rows]
    ring = m[0][0]
    sign = 1
    prev = MultiPoly.constant(1, ring.vars, ring.field)
    for k in range(n - 1):
        if not m[k][k].terms:
            pivot_row = next((r for r in range(k + 1, n) if m[r][k].terms), None)
            if pivot_row is None:
                return MultiPoly.zero(ring.vars, ring.field)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev) if prev.terms else num
            m[i][k] = MultiPoly.zero(ring.vars, ring.field)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(a: MultiPoly, b: MultiPoly, name: str) -> MultiPoly:
    """Resultant of a and b in the named variable, by fraction-free elimination."""
    return _bareiss_det(sylvester_matrix(a, b, name))


# ---------------------------------------------------------------------------
# gcd (subresultant polynomial remainder sequence)

def _content_primitive(p: MultiPoly, name: str):
    """Content (gcd of coefficients) and primitive part of p in the named variable."""
    coeffs = list(_as_univariate(p, name).values())
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = gcd_poly(cont, c)
        if cont.is_constant():
            break
    if cont.is_constant():
        cont = MultiPoly.constant(1, p.vars, p.field)
        return cont, p
    return cont, exact_div(p, cont)


def _prs_gcd(a: MultiPoly, b: MultiPoly, name: str) -> MultiPoly:
    # subresultant remainder sequence on primitive inputs
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    one = MultiPoly.constant(1, a.vars, a.field)
    g = h = one
    while True:
        delta = a.degree_in(name) - b.degree_in(name)
        r = pseudo_rem(a, b, name)
        if not r.terms:
            break
        if r.degree_in(name) == 0:
            return one
        a, b = b, exact_div(r, g * h ** delta)
        _, g = _leading_in(a, name)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_div(g ** delta, h ** (delta - 1))
    _, prim = _content_primitive(b, name)
    return prim


def gcd_poly(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, monic-normalized by its leading coefficient."""
    a._same_ring(b)
    if not a.terms:
        return monic(b)
    if not b.terms:
        return monic(a)
    if a.is_constant() or b.is_constant():
        return MultiPoly.constant(1, a.vars, a.field)
    name = None
    for v in a.vars:
        if a.uses_variable(v) or b.uses_variable(v):
            name = v
            break
    if a.degree_in(name) == 0 or b.degree_in(name) == 0:
        # one input is free of the chosen variable; a common divisor must be too
        free, other = (a, b) if a.degree_in(name) == 0 else (b, a)
        c_other, _ = _content_primitive(other, name)
        return monic(gcd_poly(free, c_other))
    ca, pa = _content_primitive(a, name)
    cb, pb = _content_primitive(b, name)
    cont = gcd_poly(ca, cb)
    prim = _prs_gcd(pa, pb, name)
    return monic(cont * prim)


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of p, as a primitive associate."""
    if not p.terms:
        raise ValueError("squarefree part of the zero polynomial")
    if p.is_constant():
        return MultiPoly.constant(1, p.vars, p.field)
    name = next(v for v in p.vars if p.uses_variable(v))
    cont, prim = _content_primitive(p, name)
    g = gcd_poly(prim, derivative(prim, name))
    sf = exact_div(prim, g) if not g.is_constant() else prim
    if not cont.is_constant():
        sf = sf * squarefree_part(cont)
    return primitive_normalize(sf)
