"""Exact scalars: rationals, Gaussian rationals and first-order dual numbers.

Every arithmetic operation in the package bottoms out here.  Nothing is ever
rounded; equality is decidable.  ``Fraction`` models the real case and
:class:`GaussianRational` the complex one; the two interoperate freely, so
matrices may mix them.
"""

from __future__ import annotations

import re
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class GaussianRational:
    """a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # keep hash(a + 0i) == hash(a) so mixed-type dict keys behave
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_unit(self):
        return bool(self)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


class Dual:
    """x + y*eps with eps**2 = 0; used for exact first derivatives.

    Components may be ``Fraction`` or :class:`GaussianRational`.  Division
    requires an invertible (nonzero real-part) denominator.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a
        self.b = b

    @staticmethod
    def _coerce(value):
        if isinstance(value, Dual):
            return value
        if isinstance(value, (int, Fraction, GaussianRational)):
            return Dual(value, 0)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Dual(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Dual(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Dual(other.a - self.a, other.b - self.b)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Dual(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.a:
            raise ZeroDivisionError("dual denominator has nilpotent real part")
        q = self.a / other.a
        return Dual(q, (self.b - q * other.b) / other.a)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_unit(self):
        return bool(self.a)

    def __repr__(self):
        return f"Dual({self.a!r}, {self.b!r})"


def is_unit(s):
    """True when s is invertible in its scalar ring."""
    probe = getattr(s, "is_unit", None)
    if probe is not None:
        return probe()
    return bool(s)


def sign(s):
    """Sign of an exact rational: -1, 0 or 1."""
    if isinstance(s, GaussianRational):
        if s.im != 0:
            raise ValueError("sign of a non-real scalar is undefined")
        s = s.re
    return (s > 0) - (s < 0)


class Field:
    """Tag for the active scalar field: rationals ('q') or Gaussian rationals ('qi')."""

    def __init__(self, name, complex_):
        self.name = name
        self.is_complex = complex_

    @property
    def zero(self):
        return GaussianRational(0) if self.is_complex else ZERO

    @property
    def one(self):
        return GaussianRational(1) if self.is_complex else ONE

    def random_scalar(self, rng, integral=False):
        """Deterministic draw from a small pool; integral avoids denominators."""
        num = rng.randint(-3, 3)
        den = 1 if integral else rng.choice((1, 1, 2, 3))
        if not self.is_complex:
            return Fraction(num, den)
        im_num = rng.randint(-3, 3) if rng.random() < 0.7 else 0
        return GaussianRational(Fraction(num, den), Fraction(im_num, den))

    def __repr__(self):
        return f"Field({self.name!r})"


QQ = Field("q", False)
QI = Field("qi", True)
FIELDS = {"q": QQ, "qi": QI}

_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?P<re>{_RAT})?\s*(?:(?P<sign>[+-])?\s*(?P<im>\d+(?:/\d+)?)\s*i)?\s*$"
)


def format_scalar(s) -> str:
    """Canonical string form: 'a/b' or 'a/b+c/d i'."""
    if isinstance(s, GaussianRational):
        re_part = format_scalar(s.re)
        op = "-" if s.im < 0 else "+"
        return f"{re_part}{op}{format_scalar(abs(s.im))} i"
    f = Fraction(s)
    return f"{f.numerator}/{f.denominator}"


def parse_scalar(text: str):
    """Inverse of format_scalar; tolerant of spaces and missing '/1'."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse scalar {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") is not None else ZERO
    if m.group("im") is None:
        return re_part
    im_part = Fraction(m.group("im"))
    if m.group("sign") == "-":
        im_part = -im_part
    return GaussianRational(re_part, im_part)
