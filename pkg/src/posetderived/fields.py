"""Coefficient rings: the integers, the rationals and prime fields.

Elements are plain Python objects: ``int`` for the integers and for
``F_p`` (kept reduced into ``[0, p)``), ``fractions.Fraction`` for the
rationals.  No floating point is ever produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotPrime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(bound: int) -> list[int]:
    return [q for q in range(2, bound + 1) if is_prime(q)]


DEFAULT_PRIMES = tuple(primes_up_to(50))


@dataclass(frozen=True)
class Integers:
    """The ring Z.  Only used for matrices that must stay integral."""

    @property
    def tag(self) -> str:
        return "Z"

    is_field = False
    characteristic = 0

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.numerator)
        if isinstance(x, bool) or not isinstance(x, int):
            x = int(x)
        return x

    def reduce(self, x):
        return x

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    is_field = True

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def tag(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __str__(self):
        return self.tag

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce an int or Fraction into this field."""
        if self.p == 0:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x if self.p == 0 else x % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / x
        return pow(x, -1, self.p)

    def neg(self, x):
        return -x if self.p == 0 else (-x) % self.p


QQ = Field(0)
ZZ = Integers()


def GF(p: int) -> Field:
    return Field(p)


def parse_field(tag) -> Field:
    """Accept ``"q"``, ``"Q"``, ``"QQ"``, ``7``, ``"7"``, ``"F7"``, ``"GF7"``."""
    if isinstance(tag, Field):
        return tag
    if isinstance(tag, int):
        return Field(tag) if tag else QQ
    s = str(tag).strip()
    if s.lower() in ("q", "qq", "0"):
        return QQ
    for prefix in ("GF", "gf", "F", "f"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            s = s[len(prefix):]
            break
    if not s.isdigit():
        raise ValueError(f"unrecognised field {tag!r}")
    return Field(int(s))
