"""Truncated q-expansions with exact rational coefficients.

A ``QSeries`` holds coefficients of q^0 .. q^N0 for a fixed truncation N0.
Arithmetic between series truncates to the smaller N0; reading past the
truncation raises instead of silently extending with zeros.

Products route through an integer convolution based on Kronecker
substitution (pack the coefficient array into one big integer, multiply,
unpack), which keeps the large eigenform computations fast while staying
pure stdlib and exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import bernoulli

__all__ = ["QSeries", "TruncationError", "eisenstein_series", "delta_series"]


class TruncationError(ValueError):
    pass


def _pack(coeffs: list[int], width: int) -> int:
    buf = bytearray(width * len(coeffs))
    for i, c in enumerate(coeffs):
        if c:
            buf[i * width : i * width + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
    return int.from_bytes(bytes(buf), "little")


def _unpack(n: int, width: int, count: int) -> list[int]:
    nbytes = max((n.bit_length() + 7) // 8, width * count)
    raw = n.to_bytes(nbytes, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little")
        for i in range(count)
    ]


def convolve_int(a: list[int], b: list[int], n_out: int) -> list[int]:
    """Exact integer convolution, coefficients 0..n_out of (sum a_i x^i)(sum b_j x^j)."""
    a = a[: n_out + 1]
    b = b[: n_out + 1]
    max_a = max((abs(x) for x in a), default=0)
    max_b = max((abs(x) for x in b), default=0)
    if max_a == 0 or max_b == 0:
        return [0] * (n_out + 1)
    terms = min(len(a), len(b))
    # digit bound for the two summed nonnegative products below
    bound = 2 * terms * max_a * max_b
    width = (bound.bit_length() + 8) // 8 + 1
    ap = [x if x > 0 else 0 for x in a]
    an = [-x if x < 0 else 0 for x in a]
    bp = [x if x > 0 else 0 for x in b]
    bn = [-x if x < 0 else 0 for x in b]
    AP, AN = _pack(ap, width), _pack(an, width)
    BP, BN = _pack(bp, width), _pack(bn, width)
    pos = AP * BP + AN * BN
    neg = AP * BN + AN * BP
    P = _unpack(pos, width, n_out + 1)
    M = _unpack(neg, width, n_out + 1)
    return [p - m for p, m in zip(P, M)]


def _sigma_list(e: int, n: int) -> list[int]:
    """[sigma_e(0)=0, sigma_e(1), ..., sigma_e(n)] by divisor sieve."""
    s = [0] * (n + 1)
    for d in range(1, n + 1):
        dp = d**e
        for j in range(d, n + 1, d):
            s[j] += dp
    return s


class QSeries:
    """Exact truncated power series sum_{n<=N0} a(n) q^n with a weight tag."""

    __slots__ = ("weight", "truncation", "coeffs")

    def __init__(self, weight: int, truncation: int, coeffs):
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != truncation + 1:
            raise ValueError("need exactly truncation+1 coefficients")
        self.weight = weight
        self.truncation = truncation
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, weight: int, truncation: int) -> "QSeries":
        return cls(weight, truncation, [0] * (truncation + 1))

    def a(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.truncation:
            raise TruncationError(f"coefficient {n} beyond truncation {self.truncation}")
        return self.coeffs[n]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, n0: int) -> "QSeries":
        if n0 > self.truncation:
            raise TruncationError("cannot extend a series")
        return QSeries(self.weight, n0, self.coeffs[: n0 + 1])

    def _common(self, other: "QSeries") -> int:
        return min(self.truncation, other.truncation)

    def __add__(self, other: "QSeries") -> "QSeries":
        if self.weight != other.weight:
            raise ValueError("weights differ")
        n0 = self._common(other)
        return QSeries(
            self.weight, n0, [x + y for x, y in zip(self.coeffs, other.coeffs)][: n0 + 1]
        )

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __neg__(self) -> "QSeries":
        return QSeries(self.weight, self.truncation, [-c for c in self.coeffs])

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries(self.weight, self.truncation, [c * x for x in self.coeffs])

    def __mul__(self, other: "QSeries") -> "QSeries":
        n0 = self._common(other)
        da = math.lcm(*(c.denominator for c in self.coeffs[: n0 + 1]))
        db = math.lcm(*(c.denominator for c in other.coeffs[: n0 + 1]))
        ia = [int(c * da) for c in self.coeffs[: n0 + 1]]
        ib = [int(c * db) for c in other.coeffs[: n0 + 1]]
        prod = convolve_int(ia, ib, n0)
        dd = da * db
        return QSeries(self.weight + other.weight, n0, [Fraction(c, dd) for c in prod])

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise ValueError("negative powers not supported")
        result = QSeries(0, self.truncation, [1] + [0] * self.truncation)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        return (
            isinstance(other, QSeries)
            and self.weight == other.weight
            and self.truncation == other.truncation
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.weight, self.truncation, self.coeffs))

    def agrees(self, other: "QSeries", upto: int | None = None) -> bool:
        n0 = min(self.truncation, other.truncation)
        if upto is not None:
            n0 = min(n0, upto)
        return self.coeffs[: n0 + 1] == other.coeffs[: n0 + 1]

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QSeries(weight={self.weight}, N0={self.truncation}, [{head}, ...])"

    # -- serialization (bit-exact text format) --------------------------------

    def to_text(self) -> str:
        lines = ["sklift qseries v1", f"weight {self.weight}", f"truncation {self.truncation}"]
        for n, c in enumerate(self.coeffs):
            lines.append(f"{n}:{c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QSeries":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if lines[0] != "sklift qseries v1":
            raise ValueError("bad header")
        weight = int(lines[1].split()[1])
        trunc = int(lines[2].split()[1])
        coeffs = [Fraction(0)] * (trunc + 1)
        for ln in lines[3:]:
            idx, val = ln.split(":")
            num, den = val.split("/")
            coeffs[int(idx)] = Fraction(int(num), int(den))
        return cls(weight, trunc, coeffs)


def eisenstein_series(weight: int, truncation: int) -> QSeries:
    """Level-one Eisenstein series E_w = 1 - (2w/B_w) sum sigma_{w-1}(n) q^n."""
    if weight < 4 or weight % 2:
        raise ValueError("weight must be even and >= 4")
    factor = Fraction(-2 * weight) / bernoulli(weight)
    sig = _sigma_list(weight - 1, truncation)
    coeffs = [Fraction(1)] + [factor * sig[n] for n in range(1, truncation + 1)]
    return QSeries(weight, truncation, coeffs)


def delta_series(truncation: int) -> QSeries:
    """The discriminant cusp form (E_4^3 - E_6^2)/1728."""
    e4 = eisenstein_series(4, truncation)
    e6 = eisenstein_series(6, truncation)
    return (e4**3 - e6**2).scale(Fraction(1, 1728))
