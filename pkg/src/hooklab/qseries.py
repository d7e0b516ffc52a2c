"""Truncated formal power series in q with exact rational coefficients.

A RationalSeries represents q^e * sum_{n=0}^{N} c_n q^n where the offset
e is an exact rational (0 for ordinary series, 1/24 for eta, -1/24 for
the H_t^* normalization).  No floating point enters this module.

Multiplication is schoolbook convolution; at the desk-scale orders used
here (N <= 200) that is both fast enough and obviously correct.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rational import Rat, as_rat, rat_from_json, rat_to_json


class OffsetMismatchError(Exception):
    """Addition of series with different q-power offsets."""


@dataclass(frozen=True)
class RationalSeries:
    coeffs: tuple  # exact rationals c_0 .. c_N
    q_offset: Rat = Rat(0)

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(as_rat(c) for c in self.coeffs)
        )
        object.__setattr__(self, "q_offset", as_rat(self.q_offset))
        if not self.coeffs:
            raise ValueError("a series needs at least the q^0 coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Rat:
        if not (0 <= n <= self.order):
            raise IndexError(f"coefficient q^{n} beyond order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "RationalSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return RationalSeries(self.coeffs[: order + 1], self.q_offset)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        if self.q_offset != other.q_offset:
            raise OffsetMismatchError(
                f"offsets {self.q_offset} and {other.q_offset} differ"
            )
        n = min(self.order, other.order)
        return RationalSeries(
            tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)),
            self.q_offset,
        )

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(tuple(-c for c in self.coeffs), self.q_offset)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return self + (-other)

    def __mul__(self, other) -> "RationalSeries":
        if not isinstance(other, RationalSeries):
            c = as_rat(other)
            return RationalSeries(
                tuple(c * x for x in self.coeffs), self.q_offset
            )
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Rat(0)] * (n + 1)
        for i in range(min(len(a), n + 1)):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(min(len(b), n + 1 - i)):
                if b[j] != 0:
                    out[i + j] += ai * b[j]
        return RationalSeries(tuple(out), self.q_offset + other.q_offset)

    __rmul__ = __mul__

    def scale(self, c) -> "RationalSeries":
        return self * as_rat(c)

    def invert(self) -> "RationalSeries":
        """Multiplicative inverse up to the truncation order; offset negates."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("cannot invert a series with c_0 = 0")
        n = self.order
        inv0 = 1 / a[0]
        out = [Rat(0)] * (n + 1)
        out[0] = inv0
        for m in range(1, n + 1):
            s = Rat(0)
            for k in range(1, min(m, len(a) - 1) + 1):
                if a[k] != 0:
                    s += a[k] * out[m - k]
            out[m] = -inv0 * s
        return RationalSeries(tuple(out), -self.q_offset)

    def exp(self) -> "RationalSeries":
        """Formal exponential; requires c_0 = 0 and offset 0."""
        if self.q_offset != 0:
            raise ValueError("exp requires q_offset = 0")
        a = self.coeffs
        if a[0] != 0:
            raise ValueError("exp requires zero constant term")
        n = self.order
        out = [Rat(0)] * (n + 1)
        out[0] = Rat(1)
        for m in range(1, n + 1):
            s = Rat(0)
            for k in range(1, m + 1):
                if a[k] != 0:
                    s += k * a[k] * out[m - k]
            out[m] = s / m
        return RationalSeries(tuple(out))

    def log(self) -> "RationalSeries":
        """Formal logarithm; requires c_0 = 1 and offset 0."""
        if self.q_offset != 0:
            raise ValueError("log requires q_offset = 0")
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("log requires constant term 1")
        n = self.order
        out = [Rat(0)] * (n + 1)
        for m in range(1, n + 1):
            s = Rat(0)
            for k in range(1, m):
                if a[m - k] != 0:
                    s += k * out[k] * a[m - k]
            out[m] = a[m] - s / m
        return RationalSeries(tuple(out))

    def pow_rational(self, s) -> "RationalSeries":
        """a^s for exact rational s, as exp(s * log a); needs c_0 = 1."""
        s = as_rat(s)
        return (self.log() * s).exp()

    def substitute_qt(self, t: int) -> "RationalSeries":
        """q -> q^t, truncated at the original order; offset must be 0."""
        if self.q_offset != 0:
            raise ValueError("substitution requires q_offset = 0")
        if t < 1:
            raise ValueError("t must be >= 1")
        if t == 1:
            return self
        n = self.order
        out = [Rat(0)] * (n + 1)
        for m in range(0, n // t + 1):
            out[t * m] = self.coeffs[m]
        return RationalSeries(tuple(out))

    def substitute_scaled(self, c, t: int) -> "RationalSeries":
        """q -> c*q^t: coefficient of q^{t m} becomes c_m * c^m."""
        if self.q_offset != 0:
            raise ValueError("substitution requires q_offset = 0")
        if t < 1:
            raise ValueError("t must be >= 1")
        c = as_rat(c)
        n = self.order
        out = [Rat(0)] * (n + 1)
        pw = Rat(1)
        for m in range(0, n // t + 1):
            out[t * m] = self.coeffs[m] * pw
            pw *= c
        return RationalSeries(tuple(out))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_json(self) -> dict:
        return {
            "q_offset": rat_to_json(self.q_offset),
            "order": self.order,
            "coeffs": [rat_to_json(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RationalSeries":
        coeffs = tuple(rat_from_json(c) for c in obj["coeffs"])
        if len(coeffs) != obj["order"] + 1:
            raise ValueError("coefficient count does not match order")
        return cls(coeffs, rat_from_json(obj["q_offset"]))


def zero_series(order: int) -> RationalSeries:
    return RationalSeries((Rat(0),) * (order + 1))


def one_series(order: int) -> RationalSeries:
    return RationalSeries((Rat(1),) + (Rat(0),) * order)


def monomial(c, n: int, order: int) -> RationalSeries:
    coeffs = [Rat(0)] * (order + 1)
    coeffs[n] = as_rat(c)
    return RationalSeries(tuple(coeffs))


def pentagonal_terms(order: int):
    """(exponent, sign) pairs of prod(1-q^n) up to the order (sparse)."""
    out = []
    k = 1
    while True:
        hit = False
        for g, sign in ((k * (3 * k - 1) // 2, (-1) ** k),
                        (k * (3 * k + 1) // 2, (-1) ** k)):
            if g <= order:
                out.append((g, sign))
                hit = True
        if not hit:
            break
        k += 1
    return out


def euler_product(order: int) -> RationalSeries:
    """prod_{n>=1}(1-q^n) via the pentagonal number theorem."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [Rat(0)] * (order + 1)
    coeffs[0] = Rat(1)
    for g, sign in pentagonal_terms(order):
        coeffs[g] = Rat(sign)
    return RationalSeries(tuple(coeffs))


def sigma_series(v: int, order: int) -> RationalSeries:
    """sum_{n>=1} sigma_v(n) q^n for v in {-1, 1} (zero constant term)."""
    if v not in (-1, 1):
        raise ValueError("v must be -1 or 1")
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = [Rat(0)] * (order + 1)
    for d in range(1, order + 1):
        term = Rat(d) if v == 1 else Rat(1, d)
        for n in range(d, order + 1, d):
            coeffs[n] += term
    return RationalSeries(tuple(coeffs))


def lambert_series(t: int, order: int) -> RationalSeries:
    """sum_{n>=1} q^{tn} / (n (1 - q^{tn})), truncated."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [Rat(0)] * (order + 1)
    n = 1
    while t * n <= order:
        term = Rat(1, n)
        for e in range(t * n, order + 1, t * n):
            coeffs[e] += term
        n += 1
    return RationalSeries(tuple(coeffs))


def eta_expansion(order: int) -> RationalSeries:
    """q^{1/24} prod(1-q^n): the Euler product carrying offset 1/24."""
    return RationalSeries(euler_product(order).coeffs, Rat(1, 24))
