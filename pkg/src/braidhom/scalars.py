"""Exact scalars in the rational function field Q(p), where p = q^(1/4).

Every power q^(k/4) the algebras need is an integral power of p, so a
single-variable rational function field is enough.  A Scalar keeps a
numerator and denominator in Z[p] (flint fmpz_poly) in canonical form:
the two polynomials share no common factor in Z[p] (so also no common
integer content) and the denominator has positive leading coefficient.

Two coefficient fields are exposed with the same small interface so the
algebra code does not care which one it runs over: SymbolicField works in
Q(p) and SpecializedField evaluates at a rational point p0 with gmpy2 mpq.
"""

import re
from fractions import Fraction

import flint
import gmpy2


class ScalarError(ValueError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class PoleAtPoint(ScalarError):
    """Specialisation hit a zero of the denominator."""


class SpecPoint:
    """A rational specialisation point p0 with |p0| not in {0, 1}."""

    __slots__ = ("value",)

    def __init__(self, value):
        v = gmpy2.mpq(value)
        if v == 0 or abs(v) == 1:
            raise ScalarError("p0 must satisfy |p0| not in {0, 1}")
        self.value = v

    def __repr__(self):
        return "SpecPoint(%s)" % self.value


_ZERO = flint.fmpz_poly([])
_ONE = flint.fmpz_poly([1])


def _canon(num, den):
    if den.is_zero():
        raise DivisionByZero("scalar division by zero")
    if num.is_zero():
        return _ZERO, _ONE
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


def _as_poly_pair(x):
    if isinstance(x, Scalar):
        return x.num, x.den
    if isinstance(x, int):
        return flint.fmpz_poly([x]), _ONE
    if isinstance(x, (Fraction, type(gmpy2.mpq()))):
        return flint.fmpz_poly([int(x.numerator)]), flint.fmpz_poly([int(x.denominator)])
    return None


class Scalar:
    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, int):
            num = flint.fmpz_poly([num])
        if isinstance(den, int):
            den = flint.fmpz_poly([den])
        self.num, self.den = _canon(num, den)

    @classmethod
    def _make(cls, num, den):
        s = object.__new__(cls)
        s.num, s.den = _canon(num, den)
        return s

    # arithmetic
    def __add__(self, other):
        o = _as_poly_pair(other)
        if o is None:
            return NotImplemented
        if self.den == o[1]:
            return Scalar._make(self.num + o[0], self.den)
        return Scalar._make(self.num * o[1] + o[0] * self.den, self.den * o[1])

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)
        s.num, s.den = -self.num, self.den
        return s

    def __sub__(self, other):
        o = _as_poly_pair(other)
        if o is None:
            return NotImplemented
        if self.den == o[1]:
            return Scalar._make(self.num - o[0], self.den)
        return Scalar._make(self.num * o[1] - o[0] * self.den, self.den * o[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _as_poly_pair(other)
        if o is None:
            return NotImplemented
        return Scalar._make(self.num * o[0], self.den * o[1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_poly_pair(other)
        if o is None:
            return NotImplemented
        if o[0].is_zero():
            raise DivisionByZero("scalar division by zero")
        return Scalar._make(self.num * o[1], self.den * o[0])

    def __rtruediv__(self, other):
        o = _as_poly_pair(other)
        if o is None:
            return NotImplemented
        return Scalar(o[0], o[1]) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k >= 0:
            return Scalar._make(self.num ** k, self.den ** k)
        if self.num.is_zero():
            raise DivisionByZero("zero to a negative power")
        return Scalar._make(self.den ** -k, self.num ** -k)

    def inverse(self):
        return self ** -1

    # comparison
    def __eq__(self, other):
        o = _as_poly_pair(other)
        if o is None:
            return NotImplemented
        return self.num == o[0] and self.den == o[1]

    def __hash__(self):
        return hash((tuple(int(c) for c in self.num.coeffs()),
                     tuple(int(c) for c in self.den.coeffs())))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def specialize(self, point):
        return specialize(self, point)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return "Scalar(%r)" % format_scalar(self)


def p_power(k):
    """p^k as a Scalar, for any integer k."""
    if k >= 0:
        return Scalar._make(flint.fmpz_poly([0] * k + [1]), _ONE)
    return Scalar._make(_ONE, flint.fmpz_poly([0] * (-k) + [1]))


def q_power(num, den=1):
    """q^(num/den) for den dividing 4."""
    if (4 * num) % den:
        raise ScalarError("q^(%d/%d) is not a power of p" % (num, den))
    return p_power(4 * num // den)


def _horner(poly, x):
    acc = gmpy2.mpq(0)
    for c in reversed(poly.coeffs()):
        acc = acc * x + int(c)
    return acc


def specialize(s, point):
    """Exact rational value of s at p = point."""
    x = point.value if isinstance(point, SpecPoint) else gmpy2.mpq(point)
    if not isinstance(s, Scalar):
        return gmpy2.mpq(s)
    den = _horner(s.den, x)
    if den == 0:
        raise PoleAtPoint("denominator vanishes at p = %s" % x)
    return _horner(s.num, x) / den


# string form

def _poly_str(poly):
    coeffs = [int(c) for c in poly.coeffs()]
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "p" if k == 1 else "p^%d" % k
            body = mono if a == 1 else "%d*%s" % (a, mono)
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += sign + body
    return s


def _nterms(poly):
    return sum(1 for c in poly.coeffs() if c != 0)


def format_scalar(s):
    if not isinstance(s, Scalar):
        return str(s)
    num = _poly_str(s.num)
    if s.den.is_one():
        return num
    den = _poly_str(s.den)
    if _nterms(s.num) > 1:
        num = "(" + num + ")"
    if _nterms(s.den) > 1 or "*" in den:
        den = "(" + den + ")"
    return num + "/" + den


_TERM = re.compile(r"\s*([+-]?)\s*(\d+)?\s*(\*?\s*p\s*(\^\s*\(?\s*(-?\d+)\s*\)?)?)?\s*")


def _parse_poly(text):
    """Parse a Laurent polynomial in p; returns (numerator poly, shift) meaning num / p^shift."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
        text = text[1:-1].strip()
    if not text:
        raise ScalarError("empty scalar")
    terms = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarError("cannot parse scalar %r" % text)
        sign, coef, pp, _, exp = m.groups()
        if not first and not sign:
            raise ScalarError("cannot parse scalar %r" % text)
        if coef is None and pp is None:
            raise ScalarError("cannot parse scalar %r" % text)
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        k = 0
        if pp is not None:
            k = int(exp) if exp is not None else 1
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
        first = False
    shift = max(0, -min(terms))
    coeffs = [0] * (max(terms) + shift + 1)
    for k, c in terms.items():
        coeffs[k + shift] += c
    return flint.fmpz_poly(coeffs), shift


def _balanced(text):
    depth = 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def _split_top(text, ch):
    depth = 0
    for i, c in enumerate(text):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == ch and depth == 0:
            return text[:i], text[i + 1:]
    return text, None


def parse_scalar(text):
    """Parse strings like "(p^8+1)/p^4", "-3*p^2+1", "1/2" or "p^-4"."""
    if isinstance(text, Scalar):
        return text
    if isinstance(text, int):
        return Scalar(text)
    text = str(text).strip()
    left, right = _split_top(text, "/")
    n, ns = _parse_poly(left)
    num = n
    den = flint.fmpz_poly([0] * ns + [1])
    if right is not None:
        d, ds = _parse_poly(right)
        if d.is_zero():
            raise DivisionByZero("scalar division by zero")
        num = num * flint.fmpz_poly([0] * ds + [1])
        den = den * d
    return Scalar(num, den)


# coefficient fields

class SymbolicField:
    """Q(p) with Scalar elements."""

    name = "symbolic"
    point = None

    def __init__(self):
        self.zero = Scalar(0)
        self.one = Scalar(1)
        self._pcache = {}

    def p(self, k):
        v = self._pcache.get(k)
        if v is None:
            v = self._pcache[k] = p_power(k)
        return v

    def __call__(self, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        pair = _as_poly_pair(x)
        if pair is None:
            raise ScalarError("cannot convert %r to a scalar" % (x,))
        return Scalar(*pair)

    def fmt(self, x):
        return format_scalar(x)

    def describe(self):
        return "symbolic"

    def __repr__(self):
        return "SymbolicField()"


class SpecializedField:
    """Q with p evaluated at the rational point p0 (so q = p0^4)."""

    name = "specialized"

    def __init__(self, p0=2):
        self.point = SpecPoint(p0).value
        self.zero = gmpy2.mpq(0)
        self.one = gmpy2.mpq(1)
        self._pcache = {}

    def p(self, k):
        v = self._pcache.get(k)
        if v is None:
            v = self._pcache[k] = self.point ** k
        return v

    def __call__(self, x):
        if isinstance(x, Scalar):
            return specialize(x, self.point)
        if isinstance(x, str):
            return specialize(parse_scalar(x), self.point)
        return gmpy2.mpq(x)

    def fmt(self, x):
        x = gmpy2.mpq(x)
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)

    def describe(self):
        return {"specialized_p": self.fmt(self.point)}

    def __repr__(self):
        return "SpecializedField(%s)" % self.fmt(self.point)


def make_field(p0=None):
    return SymbolicField() if p0 is None else SpecializedField(p0)
