"""Sparse multivariate polynomials with exact coefficients.

A polynomial lives in a *ring*, which is just an ordered tuple of variable
names. Terms map exponent tuples to nonzero coefficients (``int``,
``Fraction`` or :class:`~togliatti.polycore.numberfield.ExtElem`).
Monomials are ordered graded-lexicographically with the first variable
largest; printing lists terms in descending order.
"""

from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm

from togliatti.errors import RingMismatchError, UnknownVariableError
from togliatti.polycore.numberfield import ExtElem

_SCALARS = (int, Fraction, ExtElem)


def _nc(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(a, b):
    if isinstance(a, ExtElem) or isinstance(b, ExtElem):
        return a / b if isinstance(a, ExtElem) else ExtElem(b.minpoly, [a]) / b
    return _nc(Fraction(a) / b)


def gradlex_key(exps):
    return (sum(exps), exps)


def monomials_of_degree(ring, d):
    """Exponent vectors of total degree ``d``, descending graded-lex order.

    ``ring`` is either a tuple of variable names or a variable count.
    """
    n = ring if isinstance(ring, int) else len(ring)
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []

    def rec(k, rest):
        if k == 1:
            yield (rest,)
            return
        for e in range(rest, -1, -1):
            for tail in rec(k - 1, rest - e):
                yield (e,) + tail

    out = list(rec(n, d))
    assert len(out) == comb(d + n - 1, n - 1)
    return out


def monomial_str(ring, exps):
    parts = []
    for v, e in zip(ring, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


class MultiPoly:
    """Immutable sparse polynomial over an ordered variable tuple."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        ring = tuple(ring)
        n = len(ring)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not match ring {ring}")
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.ring = ring
        self.terms = {e: _nc(c) for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def zero(cls, ring):
        return cls._raw(tuple(ring), {})

    @classmethod
    def const(cls, ring, c):
        ring = tuple(ring)
        c = _nc(c)
        return cls._raw(ring, {(0,) * len(ring): c} if c else {})

    @classmethod
    def var(cls, ring, name):
        ring = tuple(ring)
        if name not in ring:
            raise UnknownVariableError(f"unknown variable {name!r} for ring {ring}")
        exps = tuple(1 if v == name else 0 for v in ring)
        return cls._raw(ring, {exps: 1})

    @classmethod
    def monomial(cls, ring, exps, coeff=1):
        return cls(ring, {tuple(exps): coeff})

    # basic queries

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.ring), 0)

    def total_degree(self):
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var):
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(v for v, k in zip(self.ring, e) if k)
        return {v for v in self.ring if v in used}

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d):
        return MultiPoly._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def lowest_degree(self):
        return min((sum(e) for e in self.terms), default=-1)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: gradlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=gradlex_key)
        return e, self.terms[e]

    def leading_coeff(self):
        return self.leading_term()[1]

    def _index(self, var):
        try:
            return self.ring.index(var)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {var!r} for ring {self.ring}") from None

    # ring handling

    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def embed(self, ring):
        """Re-express in ``ring``, which must contain every variable used."""
        ring = tuple(ring)
        if ring == self.ring:
            return self
        pos = []
        for v, in_use in zip(self.ring, self._used_mask()):
            if v in ring:
                pos.append(ring.index(v))
            elif in_use:
                raise RingMismatchError(f"variable {v!r} missing from target ring {ring}")
            else:
                pos.append(None)
        n = len(ring)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for k, p in zip(e, pos):
                if k:
                    ne[p] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(ring, out)

    def _used_mask(self):
        mask = [False] * len(self.ring)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    mask[i] = True
        return mask

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, _SCALARS):
            return MultiPoly.const(self.ring, other)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _nc(s)
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _nc(c)
        if not c:
            return MultiPoly.zero(self.ring)
        out = {}
        for e, a in self.terms.items():
            p = _nc(a * c)
            if p:
                out[e] = p
        return MultiPoly._raw(self.ring, out)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        if len(other.terms) == 1:
            (f, b), = other.terms.items()
            return MultiPoly._raw(self.ring, {tuple(x + y for x, y in zip(e, f)): _nc(a * b)
                                             for e, a in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(self.ring, {e: _nc(c) for e, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if isinstance(other, ExtElem):
                return self.scale(other.inverse())
            return self.scale(Fraction(1) / other)
        if isinstance(other, MultiPoly):
            return self.divexact(other)
        return NotImplemented

    def divexact(self, other):
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.ring, other)
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if len(other.terms) == 1:
            (f, b), = other.terms.items()
            out = {}
            for e, a in self.terms.items():
                q = tuple(x - y for x, y in zip(e, f))
                if min(q, default=0) < 0:
                    raise ArithmeticError("inexact polynomial division")
                out[q] = _div(a, b)
            return MultiPoly._raw(self.ring, out)
        lead_e, lead_c = other.leading_term()
        rem = dict(self.terms)
        quot = {}
        other_terms = list(other.terms.items())
        while rem:
            e = max(rem, key=gradlex_key)
            q_e = tuple(x - y for x, y in zip(e, lead_e))
            if min(q_e, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            c = rem[e]
            q_c = _div(c, lead_c)
            quot[q_e] = q_c
            for f, b in other_terms:
                g = tuple(x + y for x, y in zip(q_e, f))
                s = rem.get(g, 0) - q_c * b
                if s:
                    rem[g] = _nc(s)
                else:
                    rem.pop(g, None)
        return MultiPoly._raw(self.ring, quot)

    def divides(self, other):
        """True iff ``self`` divides ``other`` exactly."""
        try:
            other.divexact(self)
        except ArithmeticError:
            return False
        return True

    # comparison

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, _SCALARS):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution

    def partial(self, var, order=1):
        i = self._index(var)
        out = self.terms
        for _ in range(order):
            nxt = {}
            for e, c in out.items():
                k = e[i]
                if k:
                    ne = e[:i] + (k - 1,) + e[i + 1:]
                    nxt[ne] = _nc(c * k)
            out = nxt
        return MultiPoly._raw(self.ring, out)

    def diff(self, multi_index, variables=None):
        """Apply the partial derivative with exponents ``multi_index``.

        ``variables`` names the variables the multi-index refers to
        (default: the whole ring).
        """
        variables = self.ring if variables is None else tuple(variables)
        f = self
        for v, k in zip(variables, multi_index):
            if k:
                f = f.partial(v, k)
        return f

    def specialize(self, assignment):
        """Substitute scalar values for some variables, keeping the ring."""
        idx = [(self._index(v), val) for v, val in assignment.items()]
        if not idx:
            return self
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, val in idx:
                k = e[i]
                if k:
                    c = c * val ** k
                    ne[i] = 0
            if not c:
                continue
            ne = tuple(ne)
            s = out.get(ne, 0) + c
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return MultiPoly._raw(self.ring, {e: _nc(c) for e, c in out.items()})

    def evaluate(self, point):
        """Evaluate at a full assignment (mapping or sequence in ring order)."""
        if not isinstance(point, dict):
            point = dict(zip(self.ring, point))
        missing = self.variables_used() - set(point)
        if missing:
            raise ValueError(f"no value for {sorted(missing)}")
        val = self.specialize({v: point[v] for v in self.ring if v in point})
        return val.constant_value()

    def substitute(self, assignment, ring=None):
        """Simultaneous substitution of polynomials for variables.

        All images must share one ring; unassigned variables of ``self``
        are carried over into that ring and must exist there.
        """
        images = {}
        for v, p in assignment.items():
            self._index(v)
            if isinstance(p, MultiPoly):
                if ring is None:
                    ring = p.ring
                elif p.ring != ring:
                    raise RingMismatchError(f"substituted polynomials live in different rings: {ring} vs {p.ring}")
            images[v] = p
        if ring is None:
            ring = self.ring
        ring = tuple(ring)
        for v in self.ring:
            if v not in images:
                images[v] = MultiPoly.var(ring, v) if v in ring else None
            elif not isinstance(images[v], MultiPoly):
                images[v] = MultiPoly.const(ring, images[v])
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                img = images[self.ring[i]]
                if img is None:
                    raise RingMismatchError(f"variable {self.ring[i]!r} has no image in ring {ring}")
                cache[key] = img ** k
            return cache[key]

        acc = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(ring, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term.terms.items():
                s = acc.get(te, 0) + tc
                if s:
                    acc[te] = s
                else:
                    acc.pop(te, None)
        return MultiPoly._raw(ring, {e: _nc(c) for e, c in acc.items()})

    def split(self, variables):
        """Group terms by the exponents of ``variables``.

        Returns ``{exps: coefficient}`` where each coefficient is a
        polynomial in the same ring not involving ``variables``.
        """
        idx = [self._index(v) for v in variables]
        out = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: MultiPoly._raw(self.ring, t) for k, t in out.items()}

    # content and normalization

    def denominator_lcm(self):
        return reduce(lcm, (Fraction(c).denominator for c in self.terms.values()), 1)

    def integer_content(self):
        """Positive rational ``q`` with ``self / q`` integral and primitive."""
        if not self.terms:
            return Fraction(1)
        den = self.denominator_lcm()
        g = reduce(gcd, (int(Fraction(c) * den) for c in self.terms.values()), 0)
        return Fraction(g, den)

    def primitive(self):
        """Integer-primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        q = self.integer_content()
        if Fraction(self.leading_coeff()) < 0:
            q = -q
        return self.scale(1 / q)

    # printing

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = monomial_str(self.ring, e)
            if isinstance(c, ExtElem):
                body, neg = (str(c) if mono == "1" else f"{c}*{mono}"), False
            else:
                neg = c < 0
                a = -c if neg else c
                if mono == "1":
                    body = str(a)
                elif a == 1:
                    body = mono
                else:
                    body = f"{a}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"MultiPoly({','.join(self.ring)}: {self})"


def poly_ring_union(*rings):
    """Ordered union of rings, first occurrence wins."""
    out = []
    for r in rings:
        for v in r:
            if v not in out:
                out.append(v)
    return tuple(out)


def variables(ring):
    """Tuple of variable polynomials, one per name in ``ring``."""
    ring = tuple(ring)
    return tuple(MultiPoly.var(ring, v) for v in ring)
