"""Exact arithmetic foundation.

Bernoulli numbers, Kronecker symbols, fundamental-discriminant splitting and
Dirichlet L-values at negative integers, all over ``fractions.Fraction``.
Also hosts the small quadratic extension Q(sqrt p) used for Satake power sums
and for the half-integral powers of conductors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "bernoulli",
    "kronecker",
    "DiscriminantSplit",
    "discriminant_split",
    "dirichlet_L_neg",
    "is_fundamental_discriminant",
    "factorize",
    "divisors",
    "moebius",
    "sigma",
    "SqrtExt",
]


_BERNOULLI = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n, convention B_1 = -1/2 (so zeta(1-k) = -B_k/k)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        # recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0
        acc = Fraction(0)
        for j, bj in enumerate(_BERNOULLI):
            if bj:
                acc += math.comb(m + 1, j) * bj
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division (desk-scale inputs)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n)."""
    return sum(d**k for d in divisors(n))


def _kronecker_prime(D: int, p: int) -> int:
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = D % p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def kronecker(D: int, m: int) -> int:
    """Kronecker symbol (D/m) for a discriminant D and m >= 1.

    Requires D = 1 or D = 0, 1 mod 4; completely multiplicative in m with
    period |D|.
    """
    if m <= 0:
        raise ValueError("m must be positive")
    if D != 1 and D % 4 not in (0, 1):
        raise ValueError(f"{D} is not 1 and not = 0,1 mod 4")
    if D == 1 or m == 1:
        return 1
    out = 1
    for p, e in factorize(m).items():
        s = _kronecker_prime(D, p)
        if s == 0:
            return 0
        if e % 2:
            out *= s
    return out


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1:
        return True
    if D == 0 or D % 4 not in (0, 1):
        return False
    f = factorize(D)
    if D % 4 == 1:
        return all(e == 1 for e in f.values())
    m = D // 4
    if m % 4 not in (2, 3):
        return False
    fm = factorize(m)
    return all(e == 1 for p, e in fm.items() if p != 2) and fm.get(2, 0) <= 1


@dataclass(frozen=True)
class DiscriminantSplit:
    """Splitting (-1)^k d = fundamental * conductor**2."""

    d: int
    k_parity: int  # k mod 2
    fundamental: int
    conductor: Fraction


def discriminant_split(k: int, d: int) -> DiscriminantSplit:
    """Split (-1)^k d into a fundamental discriminant times a square.

    ``fundamental`` is 1 or the discriminant of Q(sqrt((-1)^k d)); the
    conductor is the positive rational with fundamental * conductor^2 equal
    to (-1)^k d.  (The conductor is an integer whenever (-1)^k d = 0,1 mod 4,
    a half-integer otherwise, e.g. d=2, k odd: -2 = -8 * (1/2)^2.)
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    D = -d if k % 2 else d
    sf = 1
    for p, e in factorize(D).items():
        if e % 2:
            sf *= p
    if D < 0:
        sf = -sf
    if sf == 1:
        fund = 1
    elif sf % 4 == 1:
        fund = sf
    else:
        fund = 4 * sf
    ratio = Fraction(D, fund)
    num = math.isqrt(ratio.numerator)
    den = math.isqrt(ratio.denominator)
    cond = Fraction(num, den)
    assert fund * cond * cond == D
    return DiscriminantSplit(d=d, k_parity=k % 2, fundamental=fund, conductor=cond)


@lru_cache(maxsize=None)
def dirichlet_L_neg(k: int, D: int) -> Fraction:
    """L(1-k, chi_D) for a fundamental discriminant D (or D = 1).

    Computed as -B_{k,chi}/k with the generalized Bernoulli number evaluated
    through the finite sum

        B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f),   f = |D|,

    which is exact and needs no functional equation.  Parity-violating pairs
    give 0 automatically (trivial zeros), except the classical k=1, D=1 case
    where the sum yields zeta(0) = -1/2.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if D != 1 and not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    f = abs(D)
    # chi-weighted power sums S_m = sum_a chi(a) a^m, exact integers
    S = [0] * (k + 1)
    for a in range(1, f + 1):
        ca = kronecker(D, a)
        if ca == 0:
            continue
        pw = 1
        for m in range(k + 1):
            S[m] += ca * pw
            pw *= a
    B = Fraction(0)
    for j in range(k + 1):
        bj = bernoulli(j)
        if bj:
            B += math.comb(k, j) * bj * f**j * S[k - j]
    B /= f
    return -B / k


class SqrtExt:
    """Element u + v*sqrt(p) of Q(sqrt p), exact.

    p is a fixed prime per instance; mixing primes raises.  Used for Satake
    power sums alpha^m + alpha^{-m} and for half-integral powers p^{e/2}.
    """

    __slots__ = ("p", "u", "v")

    def __init__(self, p: int, u, v=0):
        self.p = p
        self.u = Fraction(u)
        self.v = Fraction(v)

    @classmethod
    def half_power(cls, p: int, e: int) -> "SqrtExt":
        """p**(e/2) for an integer e of either sign."""
        q, r = divmod(e, 2)
        base = Fraction(p) ** q
        return cls(p, base, 0) if r == 0 else cls(p, 0, base)

    def _coerce(self, other) -> "SqrtExt":
        if isinstance(other, SqrtExt):
            if other.p != self.p:
                raise ValueError("mixed sqrt primes")
            return other
        return SqrtExt(self.p, other)

    def __add__(self, other):
        o = self._coerce(other)
        return SqrtExt(self.p, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return SqrtExt(self.p, self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        return SqrtExt(self.p, o.u - self.u, o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        return SqrtExt(
            self.p,
            self.u * o.u + self.p * self.v * o.v,
            self.u * o.v + self.v * o.u,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return SqrtExt(self.p, -self.u, -self.v)

    def __eq__(self, other):
        if isinstance(other, SqrtExt):
            return self.p == other.p and self.u == other.u and self.v == other.v
        return self.v == 0 and self.u == other

    def __hash__(self):
        return hash((self.p, self.u, self.v))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def rational(self) -> Fraction:
        if self.v != 0:
            raise ValueError(f"irrational residue: {self!r}")
        return self.u

    def __repr__(self):
        return f"SqrtExt(p={self.p}, {self.u} + {self.v}*sqrt({self.p}))"
