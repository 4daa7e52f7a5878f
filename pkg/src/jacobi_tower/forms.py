"""Constructors for the Dₙ weak Jacobi forms of the D₈ tower.

Truncations are exclusive q-exponents: ``trunc=4`` returns every
coefficient through q³.  Each constructor over-computes its inputs as its
operations require (Hecke halves precision, division by Δ costs one order).

Hecke quotients use the prefactors that the coefficient rule of
``hecke_T2`` actually yields (see ``HECKE_PREFACTORS``); the printed
normalizations ``2``, ``-1/2`` and ``1/2`` produce ``1/4``, ``1/2`` and
``1/1024`` times the intended forms.
"""

from fractions import Fraction
from functools import lru_cache

from .blocks import (
    A1_NORM,
    eisenstein_E4,
    eta_power,
    phi_0_1,
    phi_m2_1,
    tensor_power,
    theta_char,
    theta_odd,
    theta_over_eta3,
)
from .laurent import LaurentPoly
from .operators import divide_by_delta, hecke_T2, hecke_input_trunc, modular_diff_H
from .qexpansion import (
    JacobiFormMeta,
    QExpansion,
    qs_div,
    qs_lincomb,
    qs_mul,
    qs_pow,
    qs_restrict_last,
    qs_scale,
    qs_substitute_linear,
    qs_tensor,
    qs_truncate,
)

__all__ = [
    "HECKE_PREFACTORS",
    "PRINTED_HECKE_PREFACTORS",
    "meta_D",
    "omega_Dn",
    "theta_D8_product",
    "theta_E8",
    "theta_D16plus_restricted",
    "phi_m4_1_tilde_D8",
    "phi_m4_1_D8",
    "phi_m2_1_D8",
    "phi_0_1_D8",
    "phi_0_1_A1_hecke",
    "psi_0_1_D8",
    "phi_index2",
    "omega_sq",
    "tower_form",
    "TOWER_NAMES",
    "restrict_to",
    "d2_family",
    "D2_FROM_W",
]

HECKE_PREFACTORS = {"phi_0_1_A1": Fraction(8), "phi_0_1_D8": Fraction(-1), "psi_0_1_D8": Fraction(512)}
PRINTED_HECKE_PREFACTORS = {"phi_0_1_A1": Fraction(2), "phi_0_1_D8": Fraction(-1, 2), "psi_0_1_D8": Fraction(1, 2)}

# w = B z with w = ((z₁+z₂)/2, (z₁-z₂)/2)
D2_FROM_W = ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 2), Fraction(-1, 2)))


def meta_D(n, weight, index=1, symmetry="O", name=""):
    return JacobiFormMeta.jacobi(weight, index, (1,) * n, f"D{n}", symmetry, name)


def _t(trunc):
    return Fraction(trunc)


# theta products -----------------------------------------------------------


@lru_cache(maxsize=None)
def _omega(n, trunc):
    base = theta_over_eta3(trunc)
    return tensor_power(base, n).with_meta(meta_D(n, -n, 1, "anti", f"omega_D{n}"))


def omega_Dn(n, trunc):
    """``ω^{Dₙ}₋ₙ,₁ = ϑ(z₁)…ϑ(zₙ)/η^{3n}``."""
    if not 1 <= n <= 8:
        raise ValueError("n must be between 1 and 8")
    return _omega(n, _t(trunc))


@lru_cache(maxsize=None)
def _theta_D8(trunc):
    factor = theta_odd(trunc - Fraction(7, 8))
    return qs_truncate(tensor_power(factor, 8), int(trunc * 24)).with_meta(meta_D(8, 4, 1, "anti", "theta_D8"))


def theta_D8_product(trunc):
    """``Θ_{D₈} = ∏ ϑ(τ, z_i)``, weight 4, q-valuation 1."""
    return _theta_D8(_t(trunc))


def _char_product(kind, trunc):
    return tensor_power(theta_char(kind, trunc), 8)


@lru_cache(maxsize=None)
def _theta_E8(trunc):
    parts = [(Fraction(1, 2), _char_product(k, trunc).with_meta(None)) for k in ("t3", "t4", "t2", "t1s")]
    return qs_lincomb(parts, meta=meta_D(8, 4, 1, "W", "theta_E8"))


def theta_E8(trunc):
    """``Θ_{E₈} = ½(∏t3 + ∏t4 + ∏t2 + ∏t1s)`` in D₈ coordinates."""
    return _theta_E8(_t(trunc))


def _at_zero(series):
    """Set the only variable of a 1-variable series to 1."""
    return QExpansion(0, {k: LaurentPoly.constant(c.value_at_one()) for k, c in series.coeffs.items()},
                      series.trunc, JacobiFormMeta.modular(series.meta.weight if series.meta else 0))


@lru_cache(maxsize=None)
def _theta_D16(trunc):
    parts = []
    for kind in ("t3", "t4", "t2"):
        c = theta_char(kind, trunc)
        scalar = qs_pow(_at_zero(c), 8)
        parts.append((Fraction(1, 2), qs_mul(scalar, _char_product(kind, trunc)).with_meta(None)))
    return qs_lincomb(parts, meta=meta_D(8, 8, 1, "O", "theta_D16+|D8"))


def theta_D16plus_restricted(trunc):
    """``Θ_{D₁₆⁺}`` with the last eight variables set to 0; the t1s term vanishes there."""
    return _theta_D16(_t(trunc))


# index-1 D8 generators ------------------------------------------------------


@lru_cache(maxsize=None)
def _phi_m4_tilde(trunc):
    t1 = trunc + 1
    e4 = eisenstein_E4(t1)
    num = qs_lincomb([(1, qs_mul(e4, theta_E8(t1)).with_meta(None)),
                      (-1, theta_D16plus_restricted(t1).with_meta(None))])
    out = divide_by_delta(num.with_meta(meta_D(8, 8, 1, "W")), 1)
    return qs_truncate(out, int(trunc * 24)).with_meta(meta_D(8, -4, 1, "W", "phi~_-4,1"))


def phi_m4_1_tilde_D8(trunc):
    """``Δ⁻¹(E₄·Θ_{E₈} - Θ_{D₁₆⁺}|_{D₈})``, not O(D₈)-invariant."""
    return _phi_m4_tilde(_t(trunc))


@lru_cache(maxsize=None)
def _phi_m4(trunc):
    tilde = phi_m4_1_tilde_D8(trunc)
    e4w = qs_mul(eisenstein_E4(trunc), omega_Dn(8, trunc))
    return qs_lincomb([(2, tilde.with_meta(None)), (-1, e4w.with_meta(None))],
                      meta=meta_D(8, -4, 1, "O", "phi_-4,1^D8"))


def phi_m4_1_D8(trunc):
    """``φ^{D₈}₋₄,₁ = 2φ̃₋₄,₁ - E₄·ω^{D₈}₋₈,₁``."""
    return _phi_m4(_t(trunc))


@lru_cache(maxsize=None)
def _phi_m2(trunc):
    return qs_scale(modular_diff_H(phi_m4_1_D8(trunc)), 3).with_meta(meta_D(8, -2, 1, "O", "phi_-2,1^D8"))


def phi_m2_1_D8(trunc):
    """``φ^{D₈}₋₂,₁ = 3·H₋₄(φ^{D₈}₋₄,₁)``."""
    return _phi_m2(_t(trunc))


def hecke_quotient(form, prefactor, out_trunc):
    """``prefactor · (form | T₋(2)) / form`` known below ``q^out_trunc``."""
    image = hecke_T2(form)
    q = qs_div(image, form)
    if q.trunc < int(out_trunc * 24):
        raise AssertionError("Hecke quotient lost more precision than planned")
    return qs_scale(qs_truncate(q, int(out_trunc * 24)), prefactor)


@lru_cache(maxsize=None)
def _phi_0_1_D8(trunc, prefactor):
    # Θ has valuation 1: output below q^T needs the image below q^{T+1}
    theta = theta_D8_product(hecke_input_trunc(trunc + 1))
    return hecke_quotient(theta, prefactor, trunc).with_meta(meta_D(8, 0, 1, "O", "phi_0,1^D8"))


def phi_0_1_D8(trunc, prefactor=None):
    """``φ^{D₈}₀,₁ = c·Θ_{D₈}|T₋(2)/Θ_{D₈}`` with ``c = -1`` unless given."""
    c = HECKE_PREFACTORS["phi_0_1_D8"] if prefactor is None else Fraction(prefactor)
    return _phi_0_1_D8(_t(trunc), c)


@lru_cache(maxsize=None)
def _phi_0_1_A1_hecke(trunc, prefactor):
    base = phi_m2_1(hecke_input_trunc(trunc))
    meta = JacobiFormMeta.jacobi(0, 1, A1_NORM, "A1", "O", "phi_0,1 (Hecke)")
    return hecke_quotient(base, prefactor, trunc).with_meta(meta)


def phi_0_1_A1_hecke(trunc, prefactor=None):
    """``c·φ₋₂,₁|T₋(2)/φ₋₂,₁`` with ``c = 8`` unless given; equals φ₀,₁ for c = 8."""
    c = HECKE_PREFACTORS["phi_0_1_A1"] if prefactor is None else Fraction(prefactor)
    return _phi_0_1_A1_hecke(_t(trunc), c)


@lru_cache(maxsize=None)
def _psi(trunc, route, prefactor):
    meta = meta_D(8, 0, 1, "O", "psi_0,1^D8")
    if route == "hecke":
        omega = omega_Dn(8, hecke_input_trunc(trunc))
        return hecke_quotient(omega, prefactor, trunc).with_meta(meta)
    if route == "diff":
        return qs_scale(modular_diff_H(phi_m2_1_D8(trunc)), 2).with_meta(meta)
    raise ValueError(f"unknown route {route!r}")


def psi_0_1_D8(trunc, route="hecke", prefactor=None):
    """``ψ^{D₈}₀,₁`` via ``512·ω|T₋(2)/ω`` (``route="hecke"``) or ``2H₋₂(φ^{D₈}₋₂,₁)``."""
    c = HECKE_PREFACTORS["psi_0_1_D8"] if prefactor is None else Fraction(prefactor)
    return _psi(_t(trunc), route, c if route == "hecke" else None)


# index 2 ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _elementary(n, trunc):
    """``e[k]`` = Σ over k-subsets S of ∏_{i∈S} φ₋₂,₁(z_i) ∏_{i∉S} φ₀,₁(z_i)."""
    a = phi_m2_1(trunc).with_meta(None)
    b = phi_0_1(trunc).with_meta(None)
    if n == 1:
        return (b, a)
    prev = _elementary(n - 1, trunc)
    out = []
    for k in range(n + 1):
        parts = []
        if k < n:
            parts.append((1, qs_tensor(prev[k], b)))
        if k > 0:
            parts.append((1, qs_tensor(prev[k - 1], a)))
        out.append(qs_lincomb(parts, meta=None))
    return tuple(out)


def phi_index2(n, k, trunc):
    """``φ^{Dₙ}₋₂ₖ,₂``: the symmetrized products of k copies of φ₋₂,₁ and n-k of φ₀,₁."""
    if not 1 <= n <= 8 or not 0 <= k <= n:
        raise ValueError("need 1 <= n <= 8 and 0 <= k <= n")
    return _elementary(n, _t(trunc))[k].with_meta(meta_D(n, -2 * k, 2, "O", f"phi_{-2 * k},2^D{n}"))


def omega_sq(n, trunc):
    w = omega_Dn(n, trunc)
    return qs_mul(w, w).with_meta(meta_D(n, -2 * n, 2, "O", f"omega_D{n}^2"))


# the tower ---------------------------------------------------------------------

TOWER_NAMES = ("phi_0_1", "phi_m2_1", "phi_m4_1", "omega", "omega_sq", "phi_index2")


def restrict_to(form, n):
    """Restrict a D₈-form down to Dₙ by setting z_{n+1}, …, z₈ to 0."""
    while form.nvars > n:
        form = qs_restrict_last(form)
    return form


@lru_cache(maxsize=None)
def _tower_index1(name, n, trunc):
    if n == 8:
        return {"phi_0_1": phi_0_1_D8, "phi_m2_1": phi_m2_1_D8, "phi_m4_1": phi_m4_1_D8}[name](trunc)
    return qs_restrict_last(_tower_index1(name, n + 1, trunc))


def tower_form(name, n, trunc, k=None):
    """Generator of the Dₙ tower.

    Index-1 members ``phi_0_1``, ``phi_m2_1``, ``phi_m4_1`` are restrictions of
    the D₈ forms; ``omega``, ``omega_sq`` and ``phi_index2`` (with ``k``) are built directly.
    """
    trunc = _t(trunc)
    if not 2 <= n <= 8:
        raise ValueError("n must be between 2 and 8")
    if name in ("phi_0_1", "phi_m2_1", "phi_m4_1"):
        return _tower_index1(name, n, trunc)
    if name == "omega":
        return omega_Dn(n, trunc)
    if name == "omega_sq":
        return omega_sq(n, trunc)
    if name == "phi_index2":
        if k is None:
            raise ValueError("phi_index2 needs k")
        return phi_index2(n, k, trunc)
    raise ValueError(f"unknown tower form {name!r}; choose from {', '.join(TOWER_NAMES)}")


# D2 ------------------------------------------------------------------------------


def _to_z(series, meta):
    return qs_substitute_linear(series.with_meta(series.meta), D2_FROM_W, lattice="D2").with_meta(meta)


@lru_cache(maxsize=None)
def _d2_family(trunc):
    a = phi_m2_1(trunc)
    b = phi_0_1(trunc)
    aa = qs_tensor(a, a)
    ab = qs_tensor(a, b)
    ba = qs_tensor(b, a)
    bb = qs_tensor(b, b)
    m4 = _to_z(aa, meta_D(2, -4, 1, "O", "phi_-4,1^D2"))
    m2 = _to_z(qs_lincomb([(1, ab), (1, ba)]), meta_D(2, -2, 1, "O", "phi_-2,1^D2"))
    hat = _to_z(bb, meta_D(2, 0, 1, "O", "phi^_0,1^D2"))
    e4m4 = qs_mul(eisenstein_E4(trunc), m4)
    phi0 = qs_lincomb([(1, hat.with_meta(None)), (5, e4m4.with_meta(None))], meta=meta_D(2, 0, 1, "O", "phi_0,1^D2"))
    omega = _to_z(qs_scale(qs_lincomb([(1, ab), (-1, ba)], meta=None), Fraction(1, 12)).with_meta(
        JacobiFormMeta(-4, 1, A1_NORM * 2, "A1+A1", None)), meta_D(2, -2, 1, "anti", "omega_-2,1^D2"))
    return {"phi_m4_1": m4, "phi_m2_1": m2, "phi_hat_0_1": hat, "phi_0_1": phi0, "omega": omega}


def d2_family(trunc):
    """The D₂ forms from products of A₁ forms in ``w = ((z₁+z₂)/2, (z₁-z₂)/2)``.

    Keys: ``phi_m4_1``, ``phi_m2_1``, ``phi_hat_0_1``, ``phi_0_1`` (= φ̂ + 5E₄φ₋₄) and ``omega``
    (the antisymmetric product divided by 12).
    """
    return dict(_d2_family(_t(trunc)))
