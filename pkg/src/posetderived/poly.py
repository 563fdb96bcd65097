"""Dense univariate polynomials over Z, Q or F_p."""

from __future__ import annotations

from .fields import QQ, ZZ, Field


class Poly:
    """Immutable polynomial; ``coeffs`` is ascending (constant term first)."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, coeffs, ring=QQ):
        cs = [ring(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs, ring):
        # coeffs already coerced; only trailing zeros removed
        obj = cls.__new__(cls)
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        obj.ring = ring
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def x(cls, ring=QQ):
        return cls([0, 1], ring)

    @classmethod
    def constant(cls, c, ring=QQ):
        return cls([c], ring)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ring == other.ring

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly([other], self.ring)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        red = self.ring.reduce
        out = list(a)
        for i, c in enumerate(b):
            out[i] = red(out[i] + c)
        return Poly._raw(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.reduce
        return Poly._raw([red(-c) for c in self.coeffs], self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([], self.ring)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        red = self.ring.reduce
        return Poly._raw([red(c) for c in out], self.ring)

    __rmul__ = __mul__

    def scale(self, c):
        red = self.ring.reduce
        return Poly._raw([red(c * a) for a in self.coeffs], self.ring)

    def __divmod__(self, other):
        if not isinstance(self.ring, Field):
            raise TypeError("division needs a field")
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.ring
        rem = list(self.coeffs)
        db = other.degree
        inv = F.inv(other.lead)
        b = other.coeffs
        if len(rem) - 1 < db:
            return Poly._raw([], F), self
        quot = [F.zero] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = F.reduce(rem[k + db] * inv)
            quot[k] = c
            if c:
                for j, bj in enumerate(b):
                    rem[k + j] = F.reduce(rem[k + j] - c * bj)
        return Poly._raw(quot, F), Poly._raw(rem[:db], F)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(self.ring.inv(self.lead))

    def to_field(self, F: Field) -> Poly:
        return Poly([F(c) for c in self.coeffs], F)

    def __call__(self, value):
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = self.ring.reduce(acc * value + c)
        return acc

    def desc(self) -> list:
        """Coefficients from the leading term down."""
        return list(reversed(self.coeffs))

    def __str__(self):
        return format_poly(self.coeffs)

    def __repr__(self):
        return f"Poly({self}, {self.ring})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_prod(polys, ring=QQ) -> Poly:
    out = Poly([1], ring)
    for f in polys:
        out = out * f
    return out


def _fmt_coeff(c):
    return str(c)


def format_poly(coeffs, var="x") -> str:
    """Render in descending powers, e.g. ``x^2 - x + 1``."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        terms.append(("-" if neg else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


__all__ = ["Poly", "poly_gcd", "poly_prod", "format_poly", "ZZ", "QQ"]
