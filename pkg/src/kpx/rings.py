"""Exact coefficient rings: integers, rationals, and integers mod n.

Elements are plain Python values (int, Fraction, or ModInt); the ring
objects provide construction, parsing, and metadata.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import CoefficientNotInRing


@dataclass(frozen=True)
class ModInt:
    modulus: int
    value: int

    def _check(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise CoefficientNotInRing("mixed moduli in arithmetic")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return ModInt(self.modulus, (self.value + v) % self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return ModInt(self.modulus, (-self.value) % self.modulus)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ModInt) else ModInt(self.modulus, -other))

    def __mul__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return ModInt(self.modulus, (self.value * v) % self.modulus)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus
        return (
            isinstance(other, ModInt)
            and other.modulus == self.modulus
            and other.value == self.value
        )

    def __hash__(self):
        return hash((self.modulus, self.value))

    def __repr__(self):
        return f"{self.value}"


class Ring:
    name = "?"
    is_field = False

    def from_int(self, n):
        raise NotImplementedError

    def from_fraction(self, num, den):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "Z"

    def from_int(self, n):
        return int(n)

    def from_fraction(self, num, den):
        if den == 0:
            raise CoefficientNotInRing("zero denominator")
        if num % den != 0:
            raise CoefficientNotInRing(f"{num}/{den} is not an integer")
        return num // den


class RationalField(Ring):
    name = "Q"
    is_field = True

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, num, den):
        if den == 0:
            raise CoefficientNotInRing("zero denominator")
        return Fraction(num, den)


class IntegersMod(Ring):
    def __init__(self, n):
        if n < 2:
            raise CoefficientNotInRing(f"modulus must be >= 2, got {n}")
        self.n = n
        self.name = f"Z/{n}"
        self.is_field = _is_prime(n)

    def from_int(self, m):
        return ModInt(self.n, m % self.n)

    def from_fraction(self, num, den):
        if gcd(den, self.n) != 1:
            raise CoefficientNotInRing(f"denominator {den} not invertible mod {self.n}")
        return self.from_int(num * pow(den, -1, self.n))


def _is_prime(n):
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


ZZ = IntegerRing()
QQ = RationalField()


def parse_ring(text):
    """Parse a ring name: 'z', 'q', or 'zmod:N'."""
    t = text.strip().lower()
    if t == "z":
        return ZZ
    if t == "q":
        return QQ
    if t.startswith("zmod:"):
        try:
            return IntegersMod(int(t.split(":", 1)[1]))
        except ValueError:
            raise CoefficientNotInRing(f"bad modulus in {text!r}") from None
    raise CoefficientNotInRing(f"unknown ring {text!r}")
