from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobi_tower import forms as F
from jacobi_tower.blocks import delta, eisenstein_E4, phi_0_1, phi_m2_1
from jacobi_tower.laurent import LaurentPoly
from jacobi_tower.operators import (
    divide_by_delta,
    hecke_T2,
    hecke_T2_three_term,
    hecke_input_trunc,
    modular_diff_H,
)
from jacobi_tower.qexpansion import JacobiFormMeta, QExpansion, qs_lincomb, qs_mul, qs_scale, qs_support_check
from jacobi_tower.relations import check_identity
from jacobi_tower.symmetry import GroupTag, is_invariant

A1 = JacobiFormMeta.jacobi(-2, 1, (Fraction(1, 2),), "A1", "O")


@st.composite
def a1_index1(draw, weight=-2, levels=5):
    """Random integral-exponent series with A1 index-1 metadata."""
    coeffs = {}
    for n in range(levels):
        terms = draw(st.dictionaries(st.integers(-3, 3).map(lambda r: (2 * r,)), st.integers(-9, 9), max_size=4))
        coeffs[24 * n] = LaurentPoly.from_dict(terms, 1)
    meta = JacobiFormMeta.jacobi(weight, 1, (Fraction(1, 2),), "A1")
    return QExpansion(1, coeffs, 24 * levels, meta)


@given(a1_index1())
def test_rule_equals_three_term_average(a):
    rule, avg = hecke_T2(a), hecke_T2_three_term(a)
    assert check_identity(rule, avg).equal
    assert rule.trunc >= avg.trunc


@given(st.sampled_from([-4, 0, 2, 6]), st.data())
def test_rule_equals_three_term_any_weight(k, data):
    a = data.draw(a1_index1(weight=k))
    rule, avg = hecke_T2(a), hecke_T2_three_term(a)
    assert check_identity(rule, avg).equal
    assert rule.trunc >= avg.trunc


def test_hecke_truncation_and_meta():
    a = phi_m2_1(hecke_input_trunc(3))
    out = hecke_T2(a)
    assert out.trunc == 72
    assert out.meta.index == 2 and out.meta.weight == -2


def test_hecke_errors():
    with pytest.raises(ValueError):
        hecke_T2(phi_m2_1(3).with_meta(None))
    with pytest.raises(ValueError):
        hecke_T2(hecke_T2(phi_m2_1(5)))
    with pytest.raises(NotImplementedError):
        hecke_T2(phi_m2_1(3), m=3)
    half = QExpansion(1, {12: LaurentPoly.constant(1, 1)}, 48, A1)
    with pytest.raises(ValueError):
        hecke_T2(half)


def test_hecke_commutes_with_group():
    th = F.theta_D8_product(hecke_input_trunc(2))
    assert is_invariant(hecke_T2(th), GroupTag("W", 8))


@given(a1_index1(), a1_index1(), st.integers(-5, 5))
def test_H_is_linear(a, b, c):
    s = qs_lincomb([(1, a), (c, b)])
    assert modular_diff_H(s) == qs_lincomb([(1, modular_diff_H(a)), (c, modular_diff_H(b))])


def test_H_raises_weight_and_keeps_index():
    h = modular_diff_H(phi_0_1(3))
    assert h.meta.weight == 2 and h.meta.index == 1 and h.trunc == phi_0_1(3).trunc


def test_H_needs_metadata():
    with pytest.raises(ValueError):
        modular_diff_H(phi_0_1(2).with_meta(None))
    with pytest.raises(ValueError):
        modular_diff_H(eisenstein_E4(2))


def test_H_leibniz_with_modular_factor():
    # H_{k+4}(E4 φ) = E4 H_k(φ) - E6 φ / 3 on weak Jacobi forms
    from jacobi_tower.blocks import eisenstein_E6

    p = phi_0_1(4)
    e4, e6 = eisenstein_E4(4), eisenstein_E6(4)
    lhs = modular_diff_H(qs_mul(e4, p))
    rhs = qs_lincomb([(1, qs_mul(e4, modular_diff_H(p)).with_meta(None)),
                      (Fraction(-1, 3), qs_mul(e6, p).with_meta(None))])
    assert lhs.with_meta(None) == rhs


def test_H_preserves_weak_support():
    for f in (phi_0_1(4), phi_m2_1(4), F.phi_m4_1_D8(3)):
        assert qs_support_check(modular_diff_H(f), "weak")


def test_H_equivariant_on_D8():
    h = modular_diff_H(F.phi_m4_1_D8(2))
    assert is_invariant(h, GroupTag("O", 8))


def test_divide_by_delta_round_trip():
    d = delta(5)
    e4 = eisenstein_E4(5)
    prod = qs_mul(d, e4)
    q = divide_by_delta(prod)
    assert q.with_meta(None) == eisenstein_E4(4).with_meta(None)
    assert q.meta.weight == 4


def test_divide_by_delta_keeps_z_divisor():
    # Θ_D8 / Δ = ω_D8 keeps the zero at z_i = 0
    q = divide_by_delta(F.theta_D8_product(3))
    assert q.with_meta(None) == F.omega_Dn(8, 2).with_meta(None)
    assert q.coefficient(0).value_at_one() == 0


def test_divide_by_delta_needs_valuation():
    with pytest.raises(ValueError):
        divide_by_delta(eisenstein_E4(3))
    with pytest.raises(ValueError):
        divide_by_delta(delta(3), power=0)


def test_minus24_H_on_phi_m2_is_phi0():
    assert qs_scale(modular_diff_H(phi_m2_1(4)), -24).with_meta(None) == phi_0_1(4).with_meta(None)
