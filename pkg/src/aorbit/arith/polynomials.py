"""Dense univariate polynomials over Q, lowest-degree coefficient first."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .intervals import ComplexBox, Interval

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with rational coefficients; () is the zero polynomial."""

    coeffs: Tuple[Fraction, ...]

    @staticmethod
    def of(*coeffs: Union[int, Fraction]) -> "Polynomial":
        return Polynomial(_trim([Fraction(c) for c in coeffs]))

    @staticmethod
    def from_list(coeffs: Iterable[Union[int, Fraction]]) -> "Polynomial":
        return Polynomial(_trim([Fraction(c) for c in coeffs]))

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((_ONE,))

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial((_ZERO, _ONE))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(_trim(out))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial(())
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(_trim(out))

    def scale(self, q: Fraction) -> "Polynomial":
        if q == 0:
            return Polynomial(())
        return Polynomial(tuple(c * q for c in self.coeffs))

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def divmod(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Polynomial(()), self
        quot = [_ZERO] * (dq + 1)
        inv_lead = 1 / other.leading
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * inv_lead
            quot[i] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Polynomial(_trim(quot)), Polynomial(_trim(rem))

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(
            _trim([Fraction(i) * c for i, c in enumerate(self.coeffs)][1:])
        )

    def eval(self, x: Fraction) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, x: Interval) -> Interval:
        acc = Interval.point(_ZERO)
        for c in reversed(self.coeffs):
            acc = acc * x + Interval.point(c)
        return acc

    def eval_box(self, z: ComplexBox) -> ComplexBox:
        acc = ComplexBox.point(_ZERO)
        for c in reversed(self.coeffs):
            acc = acc * z + ComplexBox.point(c)
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{i}")
        return " + ".join(parts)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def poly_xgcd(a: Polynomial, b: Polynomial) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Polynomial.one(), Polynomial.zero()
    t0, t1 = Polynomial.zero(), Polynomial.one()
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    lead = r0.leading
    return r0.scale(1 / lead), s0.scale(1 / lead), t0.scale(1 / lead)


def poly_pow_mod(base: Polynomial, n: int, mod: Polynomial) -> Polynomial:
    """base**n reduced mod `mod`, by binary exponentiation."""
    if n < 0:
        raise ValueError("negative exponent")
    result = Polynomial.one() % mod
    acc = base % mod
    while n:
        if n & 1:
            result = (result * acc) % mod
        acc = (acc * acc) % mod
        n >>= 1
    return result


def poly_pow(base: Polynomial, n: int) -> Polynomial:
    if n < 0:
        raise ValueError("negative exponent")
    result = Polynomial.one()
    acc = base
    while n:
        if n & 1:
            result = result * acc
        acc = acc * acc
        n >>= 1
    return result
