from fractions import Fraction

import pytest

from jacobi_tower import forms as F
from jacobi_tower.blocks import eisenstein_E4
from jacobi_tower.qexpansion import qs_mul, qs_support_check
from jacobi_tower.reference import CORRECTED_DISPLAYS, LITERAL_DISPLAYS, SIGN_MISPRINTS
from jacobi_tower.relations import check_identity
from jacobi_tower.symmetry import GroupTag, in_dual_Dn, is_anti_invariant, is_invariant


@pytest.mark.parametrize("ctor, weight, index, key", [
    (F.phi_0_1_D8, 0, 1, "phi_0_1_D8.q0"),
    (F.phi_m2_1_D8, -2, 1, "phi_m2_1_D8.q0"),
    (F.phi_m4_1_D8, -4, 1, "phi_m4_1_D8.q0"),
    (F.phi_m4_1_tilde_D8, -4, 1, "phi_m4_1_tilde_D8.q0"),
    (F.psi_0_1_D8, 0, 1, "psi_0_1_D8.q0"),
])
def test_d8_form_metadata_and_display(ctor, weight, index, key):
    f = ctor(2)
    assert f.meta.weight == weight and f.meta.index == index
    assert f.meta.norm_form == (1,) * 8 and f.meta.lattice == "D8"
    assert f.coefficient(0) == LITERAL_DISPLAYS[key]


def test_d8_forms_are_weak_and_supported_on_dual_lattice():
    for ctor in (F.phi_0_1_D8, F.phi_m2_1_D8, F.phi_m4_1_D8, F.psi_0_1_D8):
        f = ctor(3)
        assert qs_support_check(f, "weak")
        for c in f.coeffs.values():
            assert all(in_dual_Dn(e) for e in c.exponents().tolist())


def test_theta_forms_are_holomorphic():
    assert qs_support_check(F.theta_E8(3), "holomorphic")
    assert qs_support_check(F.theta_D8_product(3), "holomorphic")
    assert qs_support_check(F.theta_D16plus_restricted(3), "weak")


def test_omega_weights_and_symmetry():
    for n in range(2, 9):
        w = F.omega_Dn(n, 2)
        assert w.meta.weight == -n and w.meta.symmetry == "anti"
        assert is_anti_invariant(w, GroupTag("W", n))


def test_psi_routes_agree():
    assert check_identity(F.psi_0_1_D8(3), F.psi_0_1_D8(3, route="diff")).equal


def test_hecke_prefactor_scaling():
    # the printed prefactor for φ₀,₁^{D8} gives half of the normalized form
    full = F.phi_0_1_D8(2)
    half = F.phi_0_1_D8(2, prefactor=F.PRINTED_HECKE_PREFACTORS["phi_0_1_D8"])
    assert half.coefficient(0) * 2 == full.coefficient(0)


def test_psi_minus_e4_phi_m4():
    p = F.psi_0_1_D8(2) - qs_mul(eisenstein_E4(2), F.phi_m4_1_D8(2))
    assert p.coefficient(0) == LITERAL_DISPLAYS["psi_minus_E4_phi_m4.q0"]


def test_index2_symmetric_products():
    assert F.phi_index2(3, 0, 2).meta.weight == 0
    assert F.phi_index2(3, 2, 2).meta.index == 2
    assert is_invariant(F.phi_index2(3, 1, 2), GroupTag("O", 3))
    with pytest.raises(ValueError):
        F.phi_index2(9, 0, 2)


def test_tower_form_errors():
    with pytest.raises(ValueError):
        F.tower_form("phi_0_1", 1, 2)
    with pytest.raises(ValueError):
        F.tower_form("psi", 4, 2)
    with pytest.raises(ValueError):
        F.tower_form("phi_index2", 4, 2)


def test_restriction_chain():
    r = F.restrict_to(F.phi_0_1_D8(2), 7)
    assert r.nvars == 7 and r.meta.lattice == "D7"
    assert r == F.tower_form("phi_0_1", 7, 2)


def test_d2_displays():
    f = F.d2_family(2)
    assert f["phi_hat_0_1"].coefficient(0) == LITERAL_DISPLAYS["phi_hat_0_1_D2.q0"]
    for key, name in zip(SIGN_MISPRINTS, ("phi_m4_1", "phi_m2_1")):
        assert f[name].coefficient(0) == CORRECTED_DISPLAYS[key]


def test_d2_coordinates():
    f = F.d2_family(2)
    for name in ("phi_m4_1", "phi_m2_1", "phi_0_1"):
        assert f[name].meta.norm_form == (Fraction(1), Fraction(1))
        assert is_invariant(f[name], GroupTag("O", 2))
    assert is_anti_invariant(f["omega"], GroupTag("W", 2))
