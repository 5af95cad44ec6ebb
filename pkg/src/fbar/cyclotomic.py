"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored by its coefficients on the power basis
``1, z, ..., z^(phi(N)-1)`` reduced modulo the N-th cyclotomic polynomial,
which makes the representation canonical for a fixed conductor.  Values of
different conductors are combined in the field of the lcm conductor.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coefficient vectors of z^k for k in range(n)."""
    phi = cyclotomic_polynomial(n)
    m = len(phi) - 1
    rows = []
    cur = [1] + [0] * (m - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(m):
                cur[i] -= top * phi[i]
    return tuple(rows)


class Cyclotomic:
    """An element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        m = euler_phi(conductor)
        coeffs = [_norm(Fraction(c)) if not isinstance(c, int) else c for c in coeffs]
        if len(coeffs) > m:
            coeffs = _reduce(conductor, coeffs)
        coeffs = coeffs + [0] * (m - len(coeffs))
        self.conductor = conductor
        self.coeffs: tuple = tuple(coeffs)
        self._hash = None

    @classmethod
    def rational(cls, value: Rational, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, [value])

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1, conductor: int | None = None) -> "Cyclotomic":
        """zeta_n^k, expressed in conductor ``conductor`` (a multiple of n)."""
        N = conductor or n
        if N % n:
            raise ValueError(f"conductor {N} is not a multiple of {n}")
        return cls(N, _power_table(N)[(k * (N // n)) % N])

    # -- queries ---------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- conversions -----------------------------------------------------

    def embed(self, conductor: int) -> "Cyclotomic":
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"cannot embed conductor {self.conductor} into {conductor}")
        if self.is_rational():
            return Cyclotomic(conductor, [self.coeffs[0]])
        step = conductor // self.conductor
        table = _power_table(conductor)
        out = [0] * euler_phi(conductor)
        for k, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[k * step]):
                    if t:
                        out[i] += c * t
        return Cyclotomic(conductor, out)

    def reduce_mod(self, p: int, omega: int) -> int:
        """Image under the ring map Z[zeta_N, 1/den] -> F_p sending zeta_N to omega."""
        acc = 0
        w = 1
        for c in self.coeffs:
            if c:
                if isinstance(c, Fraction):
                    acc += c.numerator * w * pow(c.denominator, -1, p)
                else:
                    acc += c * w
            w = w * omega % p
        return acc % p

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if isinstance(other, Cyclotomic):
            if other.conductor == self.conductor:
                return self, other
            n = math.lcm(self.conductor, other.conductor)
            return self.embed(n), other.embed(n)
        if isinstance(other, (int, Fraction)):
            return self, Cyclotomic(self.conductor, [other])
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, [x * other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        if b.is_rational():
            return a * b.coeffs[0]
        if a.is_rational():
            return b * a.coeffs[0]
        m = len(a.coeffs)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.conductor, _reduce(a.conductor, prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, [Fraction(x) / other for x in self.coeffs])
        return NotImplemented

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta -> zeta^(N-1)."""
        if self.is_rational():
            return self
        n = self.conductor
        table = _power_table(n)
        out = [0] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(-k) % n]):
                    if t:
                        out[i] += c * t
        return Cyclotomic(n, out)

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k, gcd(k, N) = 1."""
        n = self.conductor
        table = _power_table(n)
        out = [0] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(j * k) % n]):
                    if t:
                        out[i] += c * t
        return Cyclotomic(n, out)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        a, b = self._coerce(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            # equal values may sit in different conductors, so only the
            # rational part is a safe key
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash("Cyclotomic")
        return self._hash

    def __repr__(self):
        if self.is_rational():
            return f"Cyclotomic({self.coeffs[0]})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.conductor}^{k}")
        return "Cyclotomic(" + " + ".join(terms) + ")"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def _reduce(n: int, coeffs) -> list:
    m = euler_phi(n)
    if len(coeffs) <= m:
        return list(coeffs) + [0] * (m - len(coeffs))
    table = _power_table(n)
    out = list(coeffs[:m])
    for k in range(m, len(coeffs)):
        c = coeffs[k]
        if c:
            for i, t in enumerate(table[k % n]):
                if t:
                    out[i] += c * t
    return out


def as_cyclotomic(x, conductor: int = 1) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic(conductor, [x])
