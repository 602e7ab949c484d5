# Copyright 2024 The wellfn Authors.
"""Error-free transformations and double-word accumulation.

A :class:`DoubleWord` holds an unevaluated sum ``hi + lo`` with ``|lo| <= ulp(hi)/2``, which carries roughly
twice the precision of a binary64 float. Only the handful of operations the series code needs are provided:
addition, multiplication and division by a float.
"""

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    """Error-free transformation of a sum: ``a + b == s + t`` exactly."""
    s = a + b
    bb = s - a
    t = (a - (s - bb)) + (b - bb)
    return s, t


def quick_two_sum(a, b):
    """Like :func:`two_sum`, valid only when ``|a| >= |b|``."""
    s = a + b
    t = b - (s - a)
    return s, t


def split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    """Error-free transformation of a product: ``a * b == p + e`` exactly (Dekker)."""
    p = a * b
    a_hi, a_lo = split(a)
    b_hi, b_lo = split(b)
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


class DoubleWord(object):
    __slots__ = ('hi', 'lo')

    def __init__(self, hi=0.0, lo=0.0):
        self.hi, self.lo = two_sum(float(hi), float(lo))

    def __float__(self):
        return self.hi + self.lo

    def __repr__(self):
        return 'DoubleWord({!r}, {!r})'.format(self.hi, self.lo)

    def __neg__(self):
        return DoubleWord(-self.hi, -self.lo)

    def __add__(self, other):
        if isinstance(other, DoubleWord):
            s, e = two_sum(self.hi, other.hi)
            e += self.lo + other.lo
        else:
            s, e = two_sum(self.hi, float(other))
            e += self.lo
        return DoubleWord(*quick_two_sum(s, e))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DoubleWord):
            p, e = two_prod(self.hi, other.hi)
            e += self.hi * other.lo + self.lo * other.hi
        else:
            other = float(other)
            p, e = two_prod(self.hi, other)
            e += self.lo * other
        return DoubleWord(*quick_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = float(other)
        q1 = self.hi / other
        p, e = two_prod(q1, other)
        s, f = two_sum(self.hi, -p)
        f = f - e + self.lo
        q2 = (s + f) / other
        return DoubleWord(*quick_two_sum(q1, q2))

    def __abs__(self):
        return -self if self.hi < 0 else self


class CompensatedSum(object):
    """Running sum kept in double-word precision, like :func:`math.fsum` but incremental."""

    def __init__(self, y=0.0):
        self._total = DoubleWord(y) if not isinstance(y, DoubleWord) else y

    def add(self, y):
        self._total = self._total + y
        return self

    @property
    def total(self):
        return self._total

    def __float__(self):
        return float(self._total)
