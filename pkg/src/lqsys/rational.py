"""Exact arithmetic over the Gaussian rationals Q(i), polynomials in s over
that field, and reduced rational functions.

Polynomials are coefficient lists, lowest degree first; the zero polynomial
is the empty list.  Rational functions keep gcd(num, den) = 1 with a monic
denominator.  These types back every canonical-form computation (Smith and
Smith-McMillan reductions are ill-posed in floating point), so all
operations here are exact; conversion to complex floats happens only on the
way out.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ExactnessError, ParameterError

__all__ = ["GaussianRational", "Poly", "RationalFn", "GR_ZERO", "GR_ONE", "GR_I"]


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # floats are binary rationals, so this conversion is exact
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ExactnessError(f"cannot interpret {x!r} as an exact rational")


class GaussianRational:
    """An exact complex number re + im*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, *_):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def of(cls, x):
        """Coerce ints, Fractions, exact strings, floats and complex."""
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(_to_fraction(x))

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def is_imaginary(self):
        return not self.re

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ParameterError("only nonnegative integer powers")
        out = GR_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self):
        """|z|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    # -- conversions / protocol -------------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        try:
            o = GaussianRational.of(other)
        except (ExactnessError, TypeError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        # real values must hash like the numbers they equal (Fraction's
        # hash already agrees with int/float)
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = f"{abs(self.im)}i" if abs(self.im) != 1 else "i"
        sign = "+" if self.im > 0 else "-"
        if not self.re:
            return f"{'-' if sign == '-' else ''}{im}"
        return f"{self.re}{sign}{im}"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


class Poly:
    """Polynomial in s over Q(i); coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [GaussianRational.of(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c):
        return cls([GaussianRational.of(c)])

    @classmethod
    def s(cls):
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots):
        """Monic polynomial with the given exact roots."""
        p = POLY_ONE
        for r in roots:
            p = p * cls([-GaussianRational.of(r), 1])
        return p

    # -- structure --------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == GR_ONE

    def leading(self):
        if not self.coeffs:
            return GR_ZERO
        return self.coeffs[-1]

    def monic(self):
        if self.is_zero():
            return self
        lc = self.leading()
        if lc == GR_ONE:
            return self
        return Poly([c / lc for c in self.coeffs])

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = other if isinstance(other, Poly) else Poly.constant(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [GR_ZERO] * (n - len(self.coeffs))
        b = list(o.coeffs) + [GR_ZERO] * (n - len(o.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = other if isinstance(other, Poly) else Poly.constant(other)
        return self + (-o)

    def __rsub__(self, other):
        return Poly.constant(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        if self.is_zero() or other.is_zero():
            return POLY_ZERO
        out = [GR_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return POLY_ZERO, self
        rem = list(self.coeffs)
        dlc = other.leading()
        dd = other.degree
        q = [GR_ZERO] * (self.degree - dd + 1)
        for k in range(len(q) - 1, -1, -1):
            c = rem[dd + k] / dlc
            q[k] = c
            if not c.is_zero():
                for j, b in enumerate(other.coeffs):
                    rem[j + k] = rem[j + k] - c * b
        return Poly(q), Poly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        """True when self divides other exactly (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ParameterError("only nonnegative integer powers")
        out = POLY_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def gcd(self, other):
        """Monic greatest common divisor (Euclid); gcd(a, 0) = monic(a)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def ext_gcd(self, other):
        """(g, u, v) with u*self + v*other = g, g the monic gcd."""
        r0, r1 = self, other
        u0, u1 = POLY_ONE, POLY_ZERO
        v0, v1 = POLY_ZERO, POLY_ONE
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            u0, u1 = u1, u0 - q * u1
            v0, v1 = v1, v0 - q * v1
        if r0.is_zero():
            return POLY_ZERO, POLY_ZERO, POLY_ZERO
        lc = r0.leading()
        inv = GR_ONE / lc
        return r0.monic(), Poly([c * inv for c in u0.coeffs]), Poly(
            [c * inv for c in v0.coeffs]
        )

    def lcm(self, other):
        if self.is_zero() or other.is_zero():
            return POLY_ZERO
        return ((self * other) // self.gcd(other)).monic()

    def compose_neg(self):
        """p(-s): flip signs of odd-degree coefficients."""
        return Poly(
            [c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)]
        )

    def derivative(self):
        return Poly([c * i for i, c in enumerate(self.coeffs) if i > 0])

    def __call__(self, x):
        """Evaluate by Horner; exact for GaussianRational x, float otherwise."""
        if isinstance(x, GaussianRational):
            acc = GR_ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        z = complex(x)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return render_poly(self)


POLY_ZERO = Poly()
POLY_ONE = Poly([1])


def render_poly(p: Poly, var="s"):
    """Canonical text form, highest degree first: 's^2+3s+2', '0' for zero."""
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c.is_zero():
            continue
        if i == 0:
            body = str(c) if c.is_real() or c.is_imaginary() else f"({c})"
        else:
            powtxt = var if i == 1 else f"{var}^{i}"
            if c == GR_ONE:
                body = powtxt
            elif c == -GR_ONE:
                body = f"-{powtxt}"
            elif c.is_real() or (c.is_imaginary() and c.im > 0):
                body = f"{c}{powtxt}"
            else:
                body = f"({c}){powtxt}"
        terms.append(body)
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


class RationalFn:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=POLY_ONE):
        num = num if isinstance(num, Poly) else Poly.constant(num)
        den = den if isinstance(den, Poly) else Poly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", POLY_ZERO)
            object.__setattr__(self, "den", POLY_ONE)
            return
        g = num.gcd(den)
        if not g.is_one():
            num, den = num // g, den // g
        lc = den.leading()
        if lc != GR_ONE:
            num = Poly([c / lc for c in num.coeffs])
            den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RationalFn is immutable")

    @classmethod
    def of(cls, x):
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, Poly):
            return cls(x)
        return cls(Poly.constant(x))

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def __add__(self, other):
        o = RationalFn.of(other)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFn.of(other))

    def __rsub__(self, other):
        return RationalFn.of(other) + (-self)

    def __mul__(self, other):
        o = RationalFn.of(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFn.of(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFn.of(other) / self

    def reciprocal(self):
        return RationalFn(self.den, self.num)

    def compose_neg(self):
        """f(-s)."""
        return RationalFn(self.num.compose_neg(), self.den.compose_neg())

    def __call__(self, x):
        n = self.num(x)
        d = self.den(x)
        if isinstance(n, GaussianRational):
            return n / d
        return n / d

    def __eq__(self, other):
        if not isinstance(other, (RationalFn, Poly, int, GaussianRational)):
            return NotImplemented
        o = RationalFn.of(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFn({self.num!r}, {self.den!r})"

    def __str__(self):
        ntxt = render_poly(self.num)
        if self.den.is_one():
            return ntxt
        dtxt = render_poly(self.den)
        npart = ntxt if _is_atom(ntxt) else f"({ntxt})"
        dpart = dtxt if _is_atom(dtxt) else f"({dtxt})"
        return f"{npart}/{dpart}"


def _is_atom(txt):
    core = txt[1:] if txt.startswith("-") else txt
    return all(ch not in core for ch in "+-")


RF_ZERO = RationalFn(POLY_ZERO)
RF_ONE = RationalFn(POLY_ONE)
