from fractions import Fraction

import pytest

from sklift.arith import SqrtExt, dirichlet_L_neg
from sklift.eigenforms import ParityGateError, eigenform
from sklift.lift import (
    CompatibleFamilySample,
    EisensteinPoint,
    HalfPowerResidueError,
    InterpolationError,
    LiftSupportError,
    SymLaurent,
    clear_local_cache,
    default_ladder,
    hecke_ratio,
    interpolate_local_poly,
    lift_coeff,
    lift_expand,
    local_data,
    maass_check,
)
from sklift.siegel import (
    FourierIndex,
    eisenstein_coeff,
    eisenstein_coeff_arithmetic,
    eisenstein_expansion,
    eisenstein_normalizer,
    enumerate_reduced,
    hecke_Tp_degree2,
    phi_operator,
)


def reduced_by_disc(dmax):
    """All reduced positive definite T with D_T <= dmax."""
    out = []
    n = 1
    while 3 * n * n <= dmax:
        m = n
        while 4 * n * m - n * n <= dmax:
            for r in range(n + 1):
                if 4 * n * m - r * r <= dmax:
                    out.append(FourierIndex(n, r, m))
            m += 1
        n += 1
    return out


def test_local_data():
    fund, cond, loc = local_data(FourierIndex(1, 0, 3))  # D = 12 = 3 * 2^2
    assert fund == -3 and cond == 2
    assert loc[2].conductor_ord == 1 and loc[2].content_ord == 0 and loc[2].chi == -1
    fund, cond, loc = local_data(FourierIndex(3, 0, 3))  # D = 36 = 4 * 3^2
    assert fund == -4 and cond == 3
    assert loc[3].chi == -1 and loc[3].content_ord == 1


def test_trivial_local_poly():
    poly = interpolate_local_poly(FourierIndex(1, 1, 1), 7)
    assert poly.is_one()
    poly = interpolate_local_poly(FourierIndex(1, 0, 1), 3)  # 3 does not divide D=4
    assert poly.is_one()


def test_local_poly_closed_form_f1():
    # conductor valuation 1, chi = -1 at p = 2 (D = 12):
    # Ftilde = (X + 1/X) + 1/sqrt(2)
    poly = interpolate_local_poly(FourierIndex(1, 0, 3), 2)
    assert poly.coefficient(1) == SqrtExt(2, 1, 0)
    assert poly.coefficient(0) == SqrtExt(2, 0, Fraction(1, 2))
    assert poly.degree == 1


def test_local_poly_chi_zero_is_rational():
    # p | fundamental: D = 16 has fund -4, cond 2, chi_{-4}(2) = 0
    poly = interpolate_local_poly(FourierIndex(1, 0, 4), 2)
    for c in poly.coeffs.values():
        assert c.v == 0


def test_double_ladder_agreement_all_small_indices():
    clear_local_cache()
    seen = set()
    for T in reduced_by_disc(200):
        _, _, loc = local_data(T)
        for p in loc:
            key = (p, loc[p].content_ord, loc[p].conductor_ord, loc[p].chi)
            if key in seen:
                continue
            seen.add(key)
            a = interpolate_local_poly(T, p)
            b = interpolate_local_poly(T, p, ladder_start=loc[p].conductor_ord + loc[p].content_ord + 2)
            assert a == b, (T, p)


def test_interpolation_respecializes_to_eisenstein():
    for k in (9, 11):
        pt = EisensteinPoint(k)
        for T in reduced_by_disc(120):
            assert lift_coeff(pt, T) == eisenstein_coeff_arithmetic(k, T), (k, T)


def test_explicit_samples_path_multi_prime_conductor():
    # D = 144: conductor 6 = 2 * 3, exercises the divide-out-other-primes path
    T = FourierIndex(4, 4, 10)
    assert T.disc == 144 and T.content == 2
    fund, cond, loc = local_data(T)
    assert cond == 6 and set(loc) == {2, 3}
    for p in (2, 3):
        need = loc[p].conductor_ord + loc[p].content_ord + 2
        ks = default_ladder(need + 2)
        samples = CompatibleFamilySample(
            T=T, weight_samples=[(k, eisenstein_coeff_arithmetic(k, T)) for k in ks]
        )
        via_samples = interpolate_local_poly(T, p, samples=samples)
        via_aux = interpolate_local_poly(T, p)
        assert via_samples == via_aux, p


def test_sample_validation():
    T = FourierIndex(1, 0, 3)
    with pytest.raises(ValueError):
        interpolate_local_poly(
            T, 2, samples=CompatibleFamilySample(T=FourierIndex(1, 1, 1), weight_samples=[(9, Fraction(1))])
        )
    with pytest.raises(ValueError):
        CompatibleFamilySample(T=T, weight_samples=[(9, Fraction(1)), (9, Fraction(2))])


def test_inconsistent_samples_rejected():
    # corrupting one sample must break the overdetermined solve
    T = FourierIndex(1, 0, 3)
    ks = default_ladder(3)
    samples = [(k, eisenstein_coeff_arithmetic(k, T)) for k in ks]
    samples[-1] = (samples[-1][0], samples[-1][1] + 1)
    with pytest.raises(InterpolationError):
        interpolate_local_poly(T, 2, samples=CompatibleFamilySample(T=T, weight_samples=samples))


class TestLiftCoeff:
    def test_fundamental_discriminant_values(self):
        f = eigenform(18, 128)
        assert lift_coeff(f, FourierIndex(1, 1, 1)) == dirichlet_L_neg(9, -3)
        assert lift_coeff(f, FourierIndex(1, 0, 1)) == dirichlet_L_neg(9, -4)

    def test_kohnen_recursion_conductor_p(self):
        # A(T) with conductor p must be L(1-k, chi) (a(p) - chi(p) p^(k-1))
        f = eigenform(18, 128)
        k = 9
        for T, p in ((FourierIndex(1, 0, 3), 2), (FourierIndex(1, 1, 7), 3)):
            fund, cond, loc = local_data(T)
            assert cond == p
            chi = loc[p].chi
            expect = dirichlet_L_neg(k, fund) * (f.a(p) - chi * p ** (k - 1))
            assert lift_coeff(f, T) == expect

    def test_support_gate(self):
        f = eigenform(18, 128)
        with pytest.raises(LiftSupportError):
            lift_coeff(f, FourierIndex(1, 0, 0))
        with pytest.raises(LiftSupportError):
            lift_coeff(f, FourierIndex(0, 0, 0))

    def test_parity_gate_from_point(self):
        with pytest.raises(ParityGateError):
            EisensteinPoint(8)

    def test_rationality_is_asserted_not_assumed(self):
        # tamper with a cached local polynomial so recombination fails
        from sklift import lift as L

        f = eigenform(18, 128)
        T = FourierIndex(1, 0, 3)
        lift_coeff(f, T)  # populate cache
        key = (2, 0, 1, -1)
        good = L._LOCAL_CACHE[key]
        L._LOCAL_CACHE[key] = SymLaurent(2, {0: SqrtExt(2, Fraction(1, 2), 0), 1: good.coefficient(1)})
        try:
            with pytest.raises(HalfPowerResidueError):
                lift_coeff(f, T)
        finally:
            L._LOCAL_CACHE[key] = good

    def test_scaling_covariance(self):
        from sklift.eigenforms import Eigenform

        f = eigenform(18, 128)
        g = Eigenform(9, f.series.scale(Fraction(-5, 7)))
        for T in (FourierIndex(1, 1, 1), FourierIndex(2, 1, 3)):
            assert lift_coeff(g, T) == lift_coeff(f, T)


class TestLiftExpand:
    def test_weight_and_nonzero(self):
        f = eigenform(18, 128)
        F = lift_expand(f, 8)
        assert F.weight == 10
        assert not F.is_zero()
        assert phi_operator(F).is_zero()

    def test_empty_bound_rejected(self):
        f = eigenform(18, 128)
        with pytest.raises(LiftSupportError):
            lift_expand(f, 1)

    def test_s22_pipeline(self):
        f = eigenform(22, 128)
        F = lift_expand(f, 8)
        assert F.weight == 12 and not F.is_zero()

    def test_s26_pipeline(self):
        f = eigenform(26, 128)
        F = lift_expand(f, 6)
        assert F.weight == 14 and not F.is_zero()
        assert phi_operator(F).is_zero()
        assert maass_check(F, 13).passed

    def test_threads_match_serial(self):
        f = eigenform(18, 128)
        a = lift_expand(f, 7, threads=1)
        b = lift_expand(f, 7, threads=3)
        assert a.table == b.table and a.provenance == b.provenance

    def test_provenance_records_primes_and_degrees(self):
        f = eigenform(18, 128)
        F = lift_expand(f, 8)
        assert F.provenance[FourierIndex(1, 1, 1)] == ()
        assert F.provenance[FourierIndex(1, 0, 3)] == ((2, 1),)
        text = F.provenance_text()
        assert "1 0 3 2:1" in text


class TestMaass:
    def test_lift_maass_exponent_is_k(self):
        f = eigenform(18, 128)
        F = lift_expand(f, 10)
        rep = maass_check(F, 9)
        assert rep.passed and rep.exponent == 9 and rep.checked >= 10

    def test_eisenstein_is_in_spezialschar(self):
        E = eisenstein_expansion(9, 10)
        rep = maass_check(E, 9)
        assert rep.passed and rep.exponent == 9

    def test_wrong_exponent_detected(self):
        # corrupt one coefficient: no exponent in {k-1, k, k+1} can fit
        E = eisenstein_expansion(9, 10)
        E.table[FourierIndex(2, 2, 2)] += 1
        rep = maass_check(E, 9)
        assert not rep.passed and rep.exponent is None


class TestHeckeEigen:
    @pytest.mark.parametrize("two_k", [18, 22])
    def test_classical_sk_eigenvalue(self, two_k):
        f = eigenform(two_k, 128)
        k = two_k // 2
        F = lift_expand(f, 18)
        for p in (2, 3):
            img = hecke_Tp_degree2(F, p)
            lam, count = hecke_ratio(F, img)
            assert lam == f.a(p) + p**k + p ** (k - 1)
            assert count >= 20 or p == 3


def test_manual_product_assembly_content_one():
    # content-1 coefficient equals L(1-k, chi) * f^(k-1/2) * prod Ftilde_p(p^(k-1/2)),
    # assembled by hand with the sqrt parts recombining per prime
    k = 9
    for T in (FourierIndex(1, 0, 3), FourierIndex(1, 0, 9), FourierIndex(1, 0, 12)):
        fund, cond, loc = local_data(T)
        value = dirichlet_L_neg(k, fund)
        for p, ld in loc.items():
            poly = interpolate_local_poly(T, p)
            factor = SqrtExt.half_power(p, ld.conductor_ord * (2 * k - 1)) * poly.eval_half_power(k)
            assert factor.is_rational
            value *= factor.rational()
        assert value == eisenstein_coeff_arithmetic(k, T)


def test_disk_cache_roundtrip(tmp_path, monkeypatch):
    from sklift import lift as L

    monkeypatch.setenv("SKLIFT_CACHE_DIR", str(tmp_path))
    clear_local_cache()
    T = FourierIndex(1, 0, 3)
    a = interpolate_local_poly(T, 2)
    assert (tmp_path / "local-polys-v1.txt").exists()
    clear_local_cache()
    b = interpolate_local_poly(T, 2)  # reloaded from disk
    assert a == b
    clear_local_cache()


def test_eisenstein_degeneration_full_consistency():
    # criterion-5 shape: alpha -> p^(k-1/2) reproduces eisenstein_coeff after
    # multiplying the arithmetic normalization back to constant-term-1 form
    for k in (9, 11):
        C = eisenstein_normalizer(k + 1)
        pt = EisensteinPoint(k)
        for T in reduced_by_disc(200):
            assert C * lift_coeff(pt, T) == eisenstein_coeff(k, T)
