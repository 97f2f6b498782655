"""Groebner and local standard bases with an explicit computation budget.

The global engine is Buchberger's algorithm with the Gebauer-Moeller
pair criteria, normal pair selection (smallest lcm in the active
order) and sugar-degree bookkeeping.  The local engine is Mora's
tangent-cone algorithm: the weak normal form lets the reducer set grow
by intermediate results whenever the reducer's ecart exceeds the
current one, which is what makes local division terminate.

Budgets are first class: exceeding one raises ResourceBudgetExceeded,
which callers surface as a distinct "skipped" outcome rather than a
pass or a fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .numberfield import CycloNumber
from .polyring import (LocalOrder, DegRevLex, MonomialOrder, MultiPoly,
                       block_order, monic, primitive_normalize)


class ResourceBudgetExceeded(RuntimeError):
    """A computation hit its pair or coefficient-size budget before finishing."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats or {}


@dataclass
class ComputationBudget:
    """Limits for a single basis computation; None means unlimited."""

    max_pair_reductions: int | None = None
    max_coeff_bits: int | None = None

    def check_pairs(self, count, stats):
        if self.max_pair_reductions is not None and count > self.max_pair_reductions:
            raise ResourceBudgetExceeded(
                f"pair-reduction budget {self.max_pair_reductions} exceeded", dict(stats))

    def check_coeffs(self, p: MultiPoly, stats):
        if self.max_coeff_bits is None:
            return
        bits = 0
        for c in p.terms.values():
            if isinstance(c, CycloNumber):
                qs = [Fraction(q) for q in c.coeffs if q]
            else:
                qs = [Fraction(c)]
            for q in qs:
                bits = max(bits, q.numerator.bit_length(), q.denominator.bit_length())
        if bits > self.max_coeff_bits:
            raise ResourceBudgetExceeded(
                f"coefficient budget {self.max_coeff_bits} bits exceeded", dict(stats))


@dataclass
class IdealBasis:
    """Generators together with a computed (standard) basis and run statistics."""

    generators: list
    order: MonomialOrder
    basis: list
    is_local: bool = False
    stats: dict = dataclass_field(default_factory=dict)

    @property
    def vars(self):
        src = self.basis if self.basis else self.generators
        return src[0].vars

    @property
    def field(self):
        src = self.basis if self.basis else self.generators
        return src[0].field

    def leading_exponents(self):
        return [g.leading(self.order)[0] for g in self.basis]


def _exp_lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _exp_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _exp_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _normalize(p: MultiPoly, order) -> MultiPoly:
    # primitive integer coefficients over Q; monic over a cyclotomic field
    if p.field.is_cyclotomic:
        return monic(p, order)
    return primitive_normalize(p, order)


def _coeff_quot(c, lc):
    if isinstance(c, CycloNumber) or isinstance(lc, CycloNumber):
        return c * lc.inverse()
    return Fraction(c) / Fraction(lc)


def _key_memo(order):
    cache = {}
    okey = order.key

    def keyf(e):
        k = cache.get(e)
        if k is None:
            k = okey(e)
            cache[e] = k
        return k

    return keyf


class _Entry:
    __slots__ = ("poly", "lead_exp", "lead_coeff", "sugar", "index", "retired")

    def __init__(self, poly, order, sugar, index):
        self.poly = poly
        self.lead_exp, self.lead_coeff = poly.leading(order)
        self.sugar = sugar
        self.index = index
        self.retired = False


def _reduce_terms(hterms, entries, keyf, sugar=None):
    """Full division of a raw term dict by the entry list; returns (remainder, sugar)."""
    out = {}
    while hterms:
        e = max(hterms, key=keyf)
        c = hterms.pop(e)
        red = None
        for g in entries:
            if _exp_divides(g.lead_exp, e):
                red = g
                break
        if red is None:
            out[e] = c
            continue
        shift = _exp_sub(e, red.lead_exp)
        factor = _coeff_quot(c, red.lead_coeff)
        if sugar is not None:
            sugar = max(sugar, red.sugar + sum(shift))
        for ge, gc in red.poly.terms.items():
            if ge == red.lead_exp:
                continue
            ne = _exp_add(ge, shift)
            cur = hterms.get(ne)
            delta = factor * gc
            if cur is None:
                hterms[ne] = -delta
            else:
                cur = cur - delta
                if cur:
                    hterms[ne] = cur
                else:
                    del hterms[ne]
    return out, sugar


def _spoly_terms(f: _Entry, g: _Entry):
    """S-polynomial as a raw term dict, cross-scaled to avoid inverses."""
    lcm = _exp_lcm(f.lead_exp, g.lead_exp)
    sf = _exp_sub(lcm, f.lead_exp)
    sg = _exp_sub(lcm, g.lead_exp)
    cf, cg = f.lead_coeff, g.lead_coeff
    terms = {}
    for e, c in f.poly.terms.items():
        terms[_exp_add(e, sf)] = c * cg
    for e, c in g.poly.terms.items():
        ne = _exp_add(e, sg)
        cur = terms.get(ne)
        delta = c * cf
        if cur is None:
            terms[ne] = -delta
        else:
            cur = cur - delta
            if cur:
                terms[ne] = cur
            else:
                del terms[ne]
    sugar = max(f.sugar + sum(sf), g.sugar + sum(sg))
    return terms, sugar


def _gm_update(pairs, entries, new: _Entry):
    """Gebauer-Moeller update of the pair set for a freshly added element."""
    t = new.index
    lcm_with_new = {g.index: _exp_lcm(g.lead_exp, new.lead_exp)
                    for g in entries if g.index != t}
    # prune old pairs strictly dominated by the new element
    survivors = {}
    for (i, j), lcm in pairs.items():
        if (_exp_divides(new.lead_exp, lcm)
                and lcm_with_new[i] != lcm and lcm_with_new[j] != lcm):
            continue
        survivors[(i, j)] = lcm
    # candidate pairs with the new element, from the non-retired part
    fresh = {g.index: lcm_with_new[g.index] for g in entries
             if not g.retired and g.index != t}
    # drop candidates whose lcm is a proper multiple of another candidate's lcm
    kept = {}
    for i, lcm in fresh.items():
        dominated = any(other != lcm and _exp_divides(other, lcm)
                        for other in fresh.values())
        if not dominated:
            kept[i] = lcm
    # one representative per lcm class; a coprime member kills its whole class
    classes = {}
    for i, lcm in sorted(kept.items()):
        classes.setdefault(lcm, []).append(i)
    for lcm, members in classes.items():
        if any(_exp_coprime(entries[i].lead_exp, new.lead_exp) for i in members):
            continue
        survivors[(members[0], t)] = lcm
    return survivors


def buchberger(generators, order: MonomialOrder = None,
               budget: ComputationBudget = None, auto_reduce=True) -> IdealBasis:
    """Groebner basis of the generated ideal under a global monomial order."""
    if order is None:
        order = DegRevLex()
    if not order.is_global:
        raise ValueError("buchberger needs a global order; use mora_standard_basis")
    budget = budget or ComputationBudget()
    gens = [g for g in generators if g.terms]
    if not gens:
        raise ValueError("no nonzero generators")
    ring = gens[0]
    for g in gens[1:]:
        ring._same_ring(g)
    keyf = _key_memo(order)
    stats = {"pair_reductions": 0, "zero_reductions": 0, "basis_size": 0}

    entries: list[_Entry] = []
    pairs: dict = {}

    def add(poly, sugar):
        entry = _Entry(poly, order, sugar, len(entries))
        entries.append(entry)
        # pairs are formed against the pre-retirement basis; only afterwards may
        # elements with now-redundant leading terms stop spawning future pairs
        new_pairs = _gm_update(pairs, entries, entry)
        for e in entries:
            if e is not entry and not e.retired and _exp_divides(entry.lead_exp, e.lead_exp):
                e.retired = True
        return new_pairs

    for g in sorted((_normalize(g, order) for g in gens),
                    key=lambda p: keyf(p.leading(order)[0])):
        pairs = add(g, g.total_degree())

    while pairs:
        (i, j), _lcm = min(pairs.items(), key=lambda kv: (keyf(kv[1]), kv[0]))
        del pairs[(i, j)]
        stats["pair_reductions"] += 1
        budget.check_pairs(stats["pair_reductions"], stats)
        sterms, sugar = _spoly_terms(entries[i], entries[j])
        active = sorted((e for e in entries if not e.retired),
                        key=lambda e: keyf(e.lead_exp))
        rterms, sugar = _reduce_terms(sterms, active, keyf, sugar)
        if not rterms:
            stats["zero_reductions"] += 1
            continue
        h = _normalize(MultiPoly(ring.vars, rterms, ring.field, _clean=True), order)
        budget.check_coeffs(h, stats)
        pairs = add(h, sugar)

    basis = [e.poly for e in entries if not e.retired]
    if auto_reduce:
        basis = _interreduce(basis, order, keyf)
    stats["basis_size"] = len(basis)
    return IdealBasis(list(generators), order, basis, is_local=False, stats=stats)


def _interreduce(basis, order, keyf):
    basis = sorted(basis, key=lambda p: keyf(p.leading(order)[0]))
    kept, leads = [], []
    for p in basis:
        le = p.leading(order)[0]
        if any(_exp_divides(q, le) for q in leads):
            continue
        kept.append(p)
        leads.append(le)
    out = []
    for i, p in enumerate(kept):
        others = [_Entry(q, order, q.total_degree(), k)
                  for k, q in enumerate(kept) if k != i]
        others.sort(key=lambda e: keyf(e.lead_exp))
        terms, _ = _reduce_terms(dict(p.terms), others, keyf)
        out.append(_normalize(MultiPoly(p.vars, terms, p.field, _clean=True), order))
    return sorted(out, key=lambda p: keyf(p.leading(order)[0]))


def normal_form(p: MultiPoly, basis: IdealBasis) -> MultiPoly:
    """Remainder of p under full division by a computed global basis."""
    if basis.is_local:
        raise ValueError("normal_form asks for a global basis")
    if not p.terms:
        return p
    order = basis.order
    keyf = _key_memo(order)
    entries = [_Entry(g, order, g.total_degree(), i) for i, g in enumerate(basis.basis)]
    entries.sort(key=lambda e: keyf(e.lead_exp))
    terms, _ = _reduce_terms(dict(p.terms), entries, keyf)
    return MultiPoly(p.vars, terms, p.field, _clean=True)


def elimination_ideal(generators, eliminate, budget=None) -> list:
    """Generators of the ideal's intersection with the subring without `eliminate`."""
    gens = [g for g in generators if g.terms]
    if not gens:
        raise ValueError("no nonzero generators")
    variables = gens[0].vars
    for v in eliminate:
        if v not in variables:
            raise ValueError(f"unknown variable {v!r}")
    order = block_order(variables, tuple(eliminate))
    gb = buchberger(gens, order, budget)
    keep = tuple(v for v in variables if v not in eliminate)
    elim_idx = [variables.index(v) for v in eliminate]
    out = []
    for g in gb.basis:
        if all(all(e[i] == 0 for i in elim_idx) for e in g.terms):
            out.append(primitive_normalize(g.restricted(keep)))
    return out


def quotient_dimension(basis: IdealBasis):
    """Vector-space dimension of the global quotient ring; math.inf if not finite."""
    if basis.is_local:
        raise ValueError("use local_quotient_dimension for local bases")
    return _staircase_count(basis.leading_exponents(), len(basis.vars))


def local_quotient_dimension(basis: IdealBasis):
    """Dimension of the local quotient at the origin; math.inf if not finite."""
    if not basis.is_local:
        raise ValueError("needs a local standard basis")
    return _staircase_count(basis.leading_exponents(), len(basis.vars))


def _staircase_count(leads, nvars):
    """Number of monomials outside the leading-term ideal."""
    if any(not any(e) for e in leads):
        return 0  # the ideal contains a unit
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in leads if all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            return math.inf
        bounds.append(min(pure))
    count = 0

    def walk(prefix):
        nonlocal count
        if len(prefix) == nvars:
            if not any(_exp_divides(le, prefix) for le in leads):
                count += 1
            return
        for e in range(bounds[len(prefix)]):
            walk(prefix + (e,))

    walk(())
    return count


def finite_extension_test(f1: MultiPoly, f2: MultiPoly,
                          source_vars=("x", "y"), target_vars=("s", "t"),
                          budget=None) -> bool:
    """Whether the source coordinate ring is a finite module over the image.

    Basis of the graph ideal <s - f1, t - f2> under a block order with
    the source variables up front; finite iff the leading monomials
    include a pure power of every source variable (no target variables
    in those leading monomials).
    """
    from .polyring import jacobian_det
    f1._same_ring(f2)
    if not jacobian_det(f1, f2, source_vars).terms:
        raise ValueError("map is not dominant (identically zero Jacobian)")
    allvars = tuple(source_vars) + tuple(target_vars)
    field = f1.field
    g1 = MultiPoly.variable(target_vars[0], allvars, field) - f1.extended(allvars)
    g2 = MultiPoly.variable(target_vars[1], allvars, field) - f2.extended(allvars)
    order = block_order(allvars, tuple(source_vars))
    gb = buchberger([g1, g2], order, budget)
    src_idx = [allvars.index(v) for v in source_vars]
    tgt_idx = [allvars.index(v) for v in target_vars]
    found = dict.fromkeys(src_idx, False)
    for e in gb.leading_exponents():
        if any(e[i] for i in tgt_idx):
            continue
        live = [i for i in src_idx if e[i]]
        if len(live) == 1:
            found[live[0]] = True
    return all(found.values())


# ---------------------------------------------------------------------------
# local standard bases (Mora's algorithm)

DEFAULT_MORA_STEP_CEILING = 200_000


def _ecart(terms, lead_exp):
    deg = max(sum(e) for e in terms)
    return deg - sum(lead_exp)


class _LocalEntry:
    __slots__ = ("terms", "lead_exp", "lead_coeff", "ecart")

    def __init__(self, terms, keyf):
        self.terms = terms
        self.lead_exp = max(terms, key=keyf)
        self.lead_coeff = terms[self.lead_exp]
        self.ecart = _ecart(terms, self.lead_exp)


def _mora_normal_form(hterms, reducers, keyf, counter, ceiling):
    """Mora weak normal form; the reducer list grows with eligible intermediates."""
    local = list(reducers)
    while hterms:
        le = max(hterms, key=keyf)
        candidates = [g for g in local if _exp_divides(g.lead_exp, le)]
        if not candidates:
            return hterms
        h_ecart = _ecart(hterms, le)
        g = min(candidates, key=lambda g: (g.ecart, g.lead_exp))
        if g.ecart > h_ecart:
            local.append(_LocalEntry(dict(hterms), keyf))
        counter["steps"] += 1
        if counter["steps"] > ceiling:
            raise ResourceBudgetExceeded("local reduction step ceiling hit", dict(counter))
        shift = _exp_sub(le, g.lead_exp)
        factor = _coeff_quot(hterms[le], g.lead_coeff)
        for ge, gc in g.terms.items():
            ne = _exp_add(ge, shift)
            cur = hterms.get(ne)
            delta = factor * gc
            if cur is None:
                hterms[ne] = -delta
            else:
                cur = cur - delta
                if cur:
                    hterms[ne] = cur
                else:
                    del hterms[ne]
    return hterms


def mora_standard_basis(generators,
                        step_ceiling=DEFAULT_MORA_STEP_CEILING) -> IdealBasis:
    """Standard basis of the generated ideal in the local ring at the origin."""
    order = LocalOrder()
    gens = [g for g in generators if g.terms]
    if not gens:
        raise ValueError("no nonzero generators")
    ring = gens[0]
    for g in gens[1:]:
        ring._same_ring(g)
    keyf = _key_memo(order)
    counter = {"steps": 0, "pair_reductions": 0}

    entries = [_LocalEntry(dict(_normalize(g, order).terms), keyf)
               for g in sorted(gens, key=lambda p: keyf(p.leading(order)[0]))]
    pairs = [(i, j) for i in range(len(entries)) for j in range(i + 1, len(entries))]
    while pairs:
        pairs.sort(key=lambda ij: (keyf(_exp_lcm(entries[ij[0]].lead_exp,
                                                 entries[ij[1]].lead_exp)), ij),
                   reverse=True)
        i, j = pairs.pop()
        f, g = entries[i], entries[j]
        if _exp_coprime(f.lead_exp, g.lead_exp):
            continue
        counter["pair_reductions"] += 1
        lcm = _exp_lcm(f.lead_exp, g.lead_exp)
        sf, sg = _exp_sub(lcm, f.lead_exp), _exp_sub(lcm, g.lead_exp)
        sterms = {}
        for e, c in f.terms.items():
            sterms[_exp_add(e, sf)] = c * g.lead_coeff
        for e, c in g.terms.items():
            ne = _exp_add(e, sg)
            cur = sterms.get(ne)
            delta = c * f.lead_coeff
            if cur is None:
                sterms[ne] = -delta
            else:
                cur = cur - delta
                if cur:
                    sterms[ne] = cur
                else:
                    del sterms[ne]
        rterms = _mora_normal_form(sterms, entries, keyf, counter, step_ceiling)
        if not rterms:
            continue
        poly = _normalize(MultiPoly(ring.vars, rterms, ring.field, _clean=True), order)
        new = _LocalEntry(dict(poly.terms), keyf)
        k = len(entries)
        entries.append(new)
        pairs.extend((i2, k) for i2 in range(k))

    # keep one representative per minimal leading monomial
    final = []
    for e in sorted(entries, key=lambda e: keyf(e.lead_exp), reverse=True):
        if any(_exp_divides(f.lead_exp, e.lead_exp) for f in final):
            continue
        final = [f for f in final if not _exp_divides(e.lead_exp, f.lead_exp)]
        final.append(e)
    basis = sorted((MultiPoly(ring.vars, e.terms, ring.field, _clean=True) for e in final),
                   key=lambda p: keyf(p.leading(order)[0]), reverse=True)
    return IdealBasis(list(generators), order, basis, is_local=True,
                      stats=dict(counter))
