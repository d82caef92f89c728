"""Exact ground fields: the rationals (backed by gmpy2.mpq) and prime fields F_p."""

import re

import gmpy2
from gmpy2 import mpq


class FieldError(ValueError):
    pass


class CharacteristicError(FieldError):
    """Raised when a computation needs denominators the field cannot invert."""


def _is_prime(p):
    return p >= 2 and bool(gmpy2.is_prime(p))


_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


class RationalField:
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, x):
        if isinstance(x, str):
            if not _RATIONAL_RE.match(x):
                raise FieldError("not a rational number: %r" % (x,))
            num, _, den = x.replace(" ", "").partition("/")
            den = int(den) if den else 1
            if den == 0:
                raise FieldError("zero denominator in %r" % (x,))
            return mpq(int(num), den)
        if isinstance(x, Mod):
            raise FieldError("cannot coerce a residue into the rationals")
        if isinstance(x, float):
            raise FieldError("floats are not exact; pass 'p/q' strings")
        return mpq(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"

    def spec(self):
        return "rational"

    def to_str(self, x):
        return str(x)


class Mod:
    """Residue modulo a prime. Mixes freely with Python ints."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError("mixing residues mod %d and mod %d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other
        if type(other) is type(mpq(0)):
            if other.denominator == 1:
                return int(other.numerator)
            return int(other.numerator) * pow(int(other.denominator), -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "Mod(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


class PrimeField:
    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise FieldError("%d is not prime" % p)
        self.characteristic = p
        self.zero = Mod(0, p)
        self.one = Mod(1, p)

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, Mod):
            if x.p != p:
                raise FieldError("residue mod %d given to F_%d" % (x.p, p))
            return x
        if isinstance(x, str):
            q = RationalField()(x)
        else:
            q = mpq(x)
        den = int(q.denominator)
        if den % p == 0:
            raise CharacteristicError("denominator %d is not invertible in F_%d" % (den, p))
        return Mod(int(q.numerator) * pow(den, -1, p), p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("F", self.characteristic))

    def __repr__(self):
        return "PrimeField(%d)" % self.characteristic

    def spec(self):
        return {"prime": self.characteristic}

    def to_str(self, x):
        return str(x)


QQ = RationalField()


def field_from_spec(spec):
    """Build a field from a document/CLI spec: "rational", {"prime": p}, or an int p."""
    if spec is None or spec == "rational" or spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"prime"}:
        return PrimeField(spec["prime"])
    if isinstance(spec, int) and not isinstance(spec, bool):
        return PrimeField(spec)
    if isinstance(spec, str) and spec.isdigit():
        return PrimeField(int(spec))
    raise FieldError("unknown field spec %r" % (spec,))


def check_invertible(field, n):
    """Raise CharacteristicError unless the integers 1..n are invertible in `field`."""
    p = field.characteristic
    if p and n >= p:
        raise CharacteristicError(
            "needs 1..%d invertible but the characteristic is %d" % (n, p))
