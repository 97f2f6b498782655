"""Exact arithmetic in Q and in the cyclotomic fields Q(zeta_N).

A CycloNumber lives in one fixed field Q(zeta_N) and stores its
coordinates in the power basis 1, z, ..., z^(phi(N)-1), where z is the
principal N-th root of unity and phi is Euler's totient.  Coordinates
are Fractions (plain ints where exact).  Values are immutable.

Mixed-conductor arithmetic is deliberately not supported: callers pick
a common conductor up front and embed with `embed`.  Rationals coerce
into any conductor.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd


class ConductorMismatch(ValueError):
    """Operands live in cyclotomic fields neither of which was embedded into the other."""


def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient needs n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divexact_int(a, b):
    # long division of integer polynomials, exact by construction
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        q, r = divmod(c, b[db])
        if r:
            raise ArithmeticError("division not exact")
        out[i - db] = q
        for j in range(db + 1):
            a[i - db + j] -= q * b[j]
    if any(a):
        raise ArithmeticError("division not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0] = -1
    poly[n] = 1
    for d in divisors(n):
        if d < n:
            poly = _poly_divexact_int(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_row(n: int) -> tuple[int, ...]:
    # z^phi expressed over the power basis: z^phi = -(c_0 + c_1 z + ...)
    phi = totient(n)
    cyc = cyclotomic_polynomial(n)
    return tuple(-c for c in cyc[:phi])


def _shift_reduce(coeffs, n):
    # multiply a basis vector by z, folding the overflow back in
    phi = len(coeffs)
    top = coeffs[phi - 1]
    out = [0] + list(coeffs[: phi - 1])
    if top:
        row = _reduction_row(n)
        for i, r in enumerate(row):
            if r:
                out[i] += top * r
    return out


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class CycloNumber:
    """An element of Q(zeta_N) in the power basis modulo the N-th cyclotomic polynomial."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        phi = totient(conductor)
        coeffs = tuple(_norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
                       for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"need {phi} coordinates for conductor {conductor}, got {len(coeffs)}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("CycloNumber is immutable")

    @classmethod
    def from_rational(cls, value, conductor: int) -> "CycloNumber":
        phi = totient(conductor)
        return cls(conductor, (value,) + (0,) * (phi - 1))

    @classmethod
    def zero(cls, conductor: int) -> "CycloNumber":
        return cls.from_rational(0, conductor)

    @classmethod
    def one(cls, conductor: int) -> "CycloNumber":
        return cls.from_rational(1, conductor)

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"conductor {other.conductor} vs {self.conductor}; embed first")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(other, self.conductor)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNumber(self.conductor,
                           tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNumber(self.conductor,
                           tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycloNumber(self.conductor, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        phi = len(a)
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        if phi == 1:
            return CycloNumber(self.conductor, (conv[0],))
        out = conv[:phi]
        n = self.conductor
        tail = conv[phi:]
        if any(tail):
            # fold z^(phi+j) back onto the basis, highest power first
            for k in range(len(tail) - 1, -1, -1):
                c = tail[k]
                if not c:
                    continue
                row = _power_basis_row(n, phi + k)
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycloNumber(self.conductor, out)

    __rmul__ = __mul__

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

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloNumber.one(self.conductor)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(other, self.conductor)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if other.conductor != self.conductor:
            raise ConductorMismatch(
                f"cannot compare conductors {self.conductor} and {other.conductor}; embed first")
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return Fraction(self.coeffs[0])

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm modulo Phi_N."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloNumber.from_rational(Fraction(1, 1) / Fraction(self.coeffs[0]),
                                             self.conductor)
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        a = [Fraction(c) for c in self.coeffs]
        u = _poly_invert_mod(a, modulus)
        phi = totient(self.conductor)
        u = u + [Fraction(0)] * (phi - len(u))
        return CycloNumber(self.conductor, u[:phi])

    def __repr__(self):
        return f"CycloNumber({self.conductor}, {self.coeffs})"


@lru_cache(maxsize=None)
def _power_basis_row(n: int, k: int) -> tuple:
    # z^k over the power basis, as integers (the modulus is monic integral)
    phi = totient(n)
    if k < phi:
        row = [0] * phi
        row[k] = 1
        return tuple(row)
    prev = _power_basis_row(n, k - 1)
    return tuple(_shift_reduce(prev, n))


def _poly_deg(a):
    d = len(a) - 1
    while d >= 0 and not a[d]:
        d -= 1
    return d


def _poly_divmod_frac(a, b):
    a = list(a)
    db = _poly_deg(b)
    lead = b[db]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(_poly_deg(a), db - 1, -1):
        if not a[i]:
            continue
        c = a[i] / lead
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return q, a


def _poly_invert_mod(a, modulus):
    # Bezout coefficients for gcd(a, modulus) = const; modulus irreducible
    r0, r1 = list(modulus), list(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while _poly_deg(r1) > 0:
        q, r = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, r
        qs = _poly_mul_frac(q, s1)
        s0, s1 = s1, [x - y for x, y in _pad(s0, qs)]
        if _poly_deg(r1) < 0:
            raise ZeroDivisionError("element shares a factor with the modulus")
    c = r1[_poly_deg(r1)]
    return [x / c for x in s1]


def _poly_mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def zeta(n: int, power: int = 1) -> CycloNumber:
    """The root of unity zeta_n^power as an element of Q(zeta_n)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    k = power % n
    if totient(n) == 1:
        # Q(zeta_1) = Q(zeta_2) = Q
        value = 1 if n == 1 else (-1) ** k
        return CycloNumber.from_rational(value, n)
    return CycloNumber(n, _power_basis_row(n, k))


def embed(a: CycloNumber, conductor: int) -> CycloNumber:
    """Image of a under Q(zeta_n) -> Q(zeta_m), zeta_n |-> zeta_m^(m/n); needs n | m."""
    n = a.conductor
    if conductor % n != 0:
        raise ConductorMismatch(f"{n} does not divide {conductor}")
    if conductor == n:
        return a
    step = conductor // n
    phi = totient(conductor)
    out = [0] * phi
    for i, c in enumerate(a.coeffs):
        if c:
            row = _power_basis_row(conductor, i * step)
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return CycloNumber(conductor, out)


def approx(a: CycloNumber) -> complex:
    """Floating-point image of a under zeta_N -> exp(2*pi*i/N)."""
    n = a.conductor
    z = 0j
    for i, c in enumerate(a.coeffs):
        if c:
            z += float(c) * cmath.exp(2j * cmath.pi * i / n)
    return z


def common_conductor(m: int, n: int) -> int:
    return m * n // gcd(m, n)
