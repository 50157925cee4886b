"""Index-m Jacobi layer: dual cosets, theta components, Fourier-Jacobi slices.

For a scalar index S = m the relevant lattice is Z with quadratic form
sigma(x, y) = m x y; the support condition "off-diagonal entry in (1/2)Z"
admits the 2m cosets xi = j/(2m).  A Fourier-Jacobi component of a degree-2
expansion F collects the coefficients A((m, 2m xi, N)) at exponents
N - m xi^2, stored as integer multiples of 1/(4m).

Two consistency harnesses live here:

* ``theorem_eisen_check`` -- for S = 1 the two components of the weight-l
  Eisenstein expansion must be exact scalar multiples of the Cohen number
  patterns {H(l-1, 4N)} and {H(l-1, 4N-1)} (the weight l - 1/2 pattern).
* ``reconstruct_fj`` -- re-expanding components against theta series must
  reproduce every coefficient of F with first diagonal entry S; this nails
  the translation bookkeeping between cosets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .siegel import FourierIndex, SiegelExpansion, cohen_H

__all__ = [
    "dual_cosets",
    "ThetaComponent",
    "theta_series",
    "fj_component",
    "theorem_eisen_check",
    "EisenComponentReport",
    "reconstruct_fj",
    "ReconstructionReport",
    "ScopeError",
]


class ScopeError(ValueError):
    """Raised for index values outside the supported S = 1 comparison."""


def dual_cosets(S: int) -> list[Fraction]:
    """Coset representatives {j/(2m) : 0 <= j < 2m} of the index-m support."""
    if S < 1:
        raise ValueError("index must be a positive integer")
    return [Fraction(j, 2 * S) for j in range(2 * S)]


@dataclass
class ThetaComponent:
    """A q^(1/(4S))-indexed series attached to the coset xi.

    ``coeffs`` maps the integer exponent numerator over 4S to the value.
    For theta series the optional ``lattice`` table keeps the two-variable
    data {(exponent numerator, w = 2 S nu)}.
    """

    S: int
    xi: Fraction
    coeffs: dict[int, Fraction]
    truncated_at: int | None = None
    lattice: dict[tuple[int, int], Fraction] | None = None

    @property
    def offset_denominator(self) -> int:
        return 4 * self.S

    @property
    def j(self) -> int:
        return int(2 * self.S * self.xi)

    def value(self, exp_num: int) -> Fraction:
        return self.coeffs.get(exp_num, Fraction(0))

    def to_text(self) -> str:
        lines = [
            "sklift fj-component v1",
            f"S {self.S}",
            f"xi {self.xi.numerator}/{self.xi.denominator}",
            f"offset_denominator {self.offset_denominator}",
        ]
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            lines.append(f"{e} : {c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"


def theta_series(S: int, xi: Fraction, truncation: int) -> ThetaComponent:
    """Theta series of the coset xi: sum over nu in xi + Z of q^(S nu^2) u^(2 S nu).

    Exponents are S nu^2 = w^2/(4S) with w = 2 S nu = j mod 2S; every lattice
    point carries coefficient 1 (characteristic function).  Terms with
    exponent <= truncation are kept.
    """
    xi = Fraction(xi)
    if xi not in dual_cosets(S):
        raise ValueError(f"{xi} is not a dual coset representative for S={S}")
    j = int(2 * S * xi)
    lattice: dict[tuple[int, int], Fraction] = {}
    coeffs: dict[int, Fraction] = {}
    wmax = math.isqrt(4 * S * truncation)
    w = j - 2 * S * ((j + wmax) // (2 * S))  # smallest w = j mod 2S with w >= -wmax
    while w <= wmax:
        if w * w <= 4 * S * truncation:
            lattice[(w * w, w)] = Fraction(1)
            coeffs[w * w] = coeffs.get(w * w, Fraction(0)) + 1
        w += 2 * S
    return ThetaComponent(S=S, xi=xi, coeffs=coeffs, truncated_at=truncation, lattice=lattice)


def fj_component(F: SiegelExpansion, S: int, xi: Fraction) -> ThetaComponent:
    """(S, xi)-component of F: coefficient A((S, 2S xi, N)) at exponent N - S xi^2."""
    xi = Fraction(xi)
    j = int(2 * S * xi)
    if Fraction(j, 2 * S) != xi:
        raise ValueError(f"{xi} not in the coset lattice for S={S}")
    n_max = F.trace_bound - S
    coeffs = {}
    N0 = -((-j * j) // (4 * S))  # ceil(j^2 / 4S)
    for N in range(N0, n_max + 1):
        exp_num = 4 * S * N - j * j
        coeffs[exp_num] = F.coefficient(FourierIndex(S, j, N))
    return ThetaComponent(S=S, xi=xi, coeffs=coeffs, truncated_at=n_max)


@dataclass
class EisenComponentReport:
    k: int
    S: int
    bound: int
    constants: dict[Fraction, Fraction] = field(default_factory=dict)
    first_mismatch: tuple | None = None
    component_weight: Fraction = Fraction(0)

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def to_text(self) -> str:
        lines = [
            "sklift report v1",
            f"check fj-eisenstein k={self.k} S={self.S} bound={self.bound} : "
            + ("PASS" if self.passed else "FAIL"),
            f"component_weight {self.component_weight}",
        ]
        for xi in sorted(self.constants):
            c = self.constants[xi]
            lines.append(f"constant xi={xi} : {c.numerator}/{c.denominator}")
        if self.first_mismatch:
            lines.append(f"first_mismatch {self.first_mismatch}")
        return "\n".join(lines) + "\n"


def theorem_eisen_check(k: int, S: int, bound: int, expansion=None) -> EisenComponentReport:
    """Match the (S, xi)-components of the weight k+1 Eisenstein expansion
    against the Cohen number pattern of weight k + 1/2.

    Component at xi = 0 must be proportional to {H(k, 4N)}_N, at xi = 1/2 to
    {H(k, 4N-1)}_N, each with one exact scalar.  Only S = 1 is supported
    (larger indices have a nontrivial theta multiplier system).
    """
    if S != 1:
        raise ScopeError(f"S={S} unsupported: only index 1 has a trivial multiplier here")
    from .siegel import eisenstein_expansion

    if expansion is None:
        expansion = eisenstein_expansion(k, bound + S)
    report = EisenComponentReport(k=k, S=S, bound=bound)
    # l(k) - dim(X)/2, the half-integral comparison weight (= k + 1/2 here)
    from .lfactor import index_lattice_dim, lift_weight

    report.component_weight = lift_weight("Sp4n", k, 1) - Fraction(index_lattice_dim("Sp4n", 1), 2)
    for xi, pattern in ((Fraction(0), lambda N: 4 * N), (Fraction(1, 2), lambda N: 4 * N - 1)):
        comp = fj_component(expansion, S, xi)
        j = comp.j
        const = None
        for N in range(0 if xi == 0 else 1, bound + 1):
            lhs = comp.value(4 * N - j * j)
            rhs = cohen_H(k, pattern(N))
            if rhs == 0:
                if lhs != 0:
                    report.first_mismatch = (xi, N, lhs, rhs)
                    return report
                continue
            ratio = lhs / rhs
            if const is None:
                const = ratio
            elif ratio != const:
                report.first_mismatch = (xi, N, lhs, const * rhs)
                return report
        report.constants[xi] = const
    return report


@dataclass
class ReconstructionReport:
    S: int
    checked: int
    skipped: int = 0
    first_mismatch: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def to_text(self) -> str:
        status = "PASS" if self.passed else f"FAIL {self.first_mismatch}"
        return (
            "sklift report v1\n"
            f"check fj-reconstruction S={self.S} checked={self.checked} "
            f"skipped={self.skipped} : {status}\n"
        )


def reconstruct_fj(F: SiegelExpansion, S: int) -> ReconstructionReport:
    """Re-expand sum_xi (component) x (theta) and compare against F.

    Every index (S, r, N) must reproduce A_F through the coset of r: with
    j = r mod 2S the theta factor contributes q^(r^2/4S) u^r and the
    component contributes its value at (4SN - r^2)/(4S).  Pairs whose coset
    slot falls beyond the component truncation are skipped (and counted).
    For S = 1 the two cosets must also populate disjoint residues of
    4N - r^2 mod 4.
    """
    cosets = dual_cosets(S)
    comps = {xi: fj_component(F, S, xi) for xi in cosets}
    checked = 0
    skipped = 0
    seen_residues: dict[int, set] = {}
    n_max = F.trace_bound - S
    for N in range(0, n_max + 1):
        rmax = math.isqrt(4 * S * N)
        for r in range(-rmax, rmax + 1):
            T = FourierIndex(S, r, N)
            if T.disc < 0:
                continue
            expected = F.coefficient(T)
            xi = Fraction(r % (2 * S), 2 * S)
            comp = comps[xi]
            j = comp.j
            exp_num = 4 * S * N - r * r
            if exp_num > 4 * S * n_max - j * j:
                skipped += 1  # coset slot beyond the component truncation
                continue
            got = comp.value(exp_num)
            checked += 1
            if got != expected:
                return ReconstructionReport(
                    S=S, checked=checked, skipped=skipped, first_mismatch=(T, got, expected)
                )
            if S == 1 and expected != 0:
                res = exp_num % (4 * S)
                seen_residues.setdefault(res, set()).add(xi)
    if S == 1:
        for res, xis in seen_residues.items():
            assert len(xis) == 1, f"residue {res} hit by several cosets {xis}"
    return ReconstructionReport(S=S, checked=checked, skipped=skipped)
