"""Arithmetic in Q[s]/(m) and a few dense univariate helpers over Q.

Univariate polynomials are plain lists of rationals, lowest degree first,
with no trailing zeros (the zero polynomial is ``[]``).
"""

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm


def _frac(c):
    return c if isinstance(c, Fraction) else Fraction(c)


def upoly_trim(p):
    p = [_frac(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_add(p, q):
    n = max(len(p), len(q))
    return upoly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def upoly_neg(p):
    return [-c for c in p]


def upoly_sub(p, q):
    return upoly_add(p, upoly_neg(q))


def upoly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return upoly_trim(out)


def upoly_divmod(p, q):
    q = upoly_trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = upoly_trim(p)
    quot = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q):
        shift = len(r) - len(q)
        c = r[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[i + shift] -= c * b
        r = upoly_trim(r)
    return upoly_trim(quot), r


def upoly_monic(p):
    p = upoly_trim(p)
    if not p:
        return p
    return [c / p[-1] for c in p]


def upoly_gcd(p, q):
    a, b = upoly_trim(p), upoly_trim(q)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    return upoly_monic(a)


def upoly_deriv(p):
    return upoly_trim([i * c for i, c in enumerate(p)][1:])


def upoly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p):
    """Distinct rational roots of ``p`` (rational root theorem)."""
    p = upoly_trim(p)
    if len(p) <= 1:
        return []
    den = reduce(lcm, (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    roots = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    ints = ints[low:]
    if len(ints) == 1:
        return roots
    n = len(ints) - 1
    # Cauchy bound: every root has |r| < 1 + max|a_i / a_n|
    bound = 1 + Fraction(max(abs(c) for c in ints[:-1]), abs(ints[-1]))
    dens = _divisors(ints[-1])
    for num in _divisors(ints[0]):
        for den_ in dens:
            if num >= bound * den_:
                continue
            if gcd(num, den_) != 1:
                continue
            powers = [num ** i * den_ ** (n - i) for i in range(n + 1)]
            for sign in (1, -1):
                # homogeneous integer evaluation of the cleared polynomial at num/den_
                if sum(c * w * sign ** i for i, (c, w) in enumerate(zip(ints, powers))) == 0:
                    roots.append(Fraction(sign * num, den_))
    return sorted(set(roots))


def factor_low_degree(p):
    """Irreducible monic factors over Q of a polynomial of degree at most 3.

    Returns a list of (factor, multiplicity). Linear factors come first,
    sorted by root; at most one nonlinear factor remains, which is irreducible
    because it has degree 2 or 3 and no rational root.
    """
    p = upoly_monic(p)
    if len(p) - 1 > 3:
        raise ValueError("factor_low_degree only handles degree <= 3")
    factors = []
    for r in rational_roots(p):
        lin = [-r, Fraction(1)]
        mult = 0
        while True:
            q, rem = upoly_divmod(p, lin)
            if rem:
                break
            p, mult = q, mult + 1
        factors.append((lin, mult))
    if len(p) > 1:
        factors.append((p, 1))
    return factors


class MinPoly:
    """Monic squarefree univariate polynomial defining Q[s]/(m)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = upoly_trim(coeffs)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if len(upoly_gcd(coeffs, upoly_deriv(coeffs))) > 1:
            raise ValueError("minimal polynomial must be squarefree")
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def generator(self):
        return ExtElem(self, [0, 1])

    def __eq__(self, other):
        return isinstance(other, MinPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"MinPoly({[str(c) for c in self.coeffs]})"


class ExtElem:
    """Element of Q[s]/(m), stored as its reduced representative."""

    __slots__ = ("minpoly", "coeffs")

    def __init__(self, minpoly, coeffs):
        self.minpoly = minpoly
        rem = upoly_divmod(coeffs, list(minpoly.coeffs))[1]
        rem += [Fraction(0)] * (minpoly.degree - len(rem))
        self.coeffs = tuple(rem)

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            if other.minpoly != self.minpoly:
                raise ValueError("elements of different extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return ExtElem(self.minpoly, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElem(self.minpoly, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.minpoly, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExtElem(self.minpoly, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElem(self.minpoly, upoly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ExtElem(self.minpoly, [1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        # extended Euclid on (rep, m); gcd must be a unit
        r0, r1 = list(self.minpoly.coeffs), upoly_trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        while len(r1) > 1:
            q, r = upoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, upoly_sub(s0, upoly_mul(q, s1))
            if not r1:
                raise ZeroDivisionError("element is a zero divisor")
        return ExtElem(self.minpoly, [c / r1[0] for c in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ExtElem)):
            other = self._coerce(other)
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.minpoly, self.coeffs))

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"ExtElem({self})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*s" + (f"^{i}" if i > 1 else ""))
        return "(" + " + ".join(parts) + ")" if parts else "0"
