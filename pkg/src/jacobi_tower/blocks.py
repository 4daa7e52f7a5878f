"""One-variable building blocks: η, Δ, Eisenstein series, theta functions, φ₋₂,₁ and φ₀,₁.

All constructors take the truncation as an exclusive q-exponent (int or
Fraction) and are memoized on it.  Results are shared, so treat them as
read-only.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

from .laurent import LaurentPoly
from .qexpansion import (
    JacobiFormMeta,
    QExpansion,
    qs_div,
    qs_mul,
    qs_tensor,
    qs_truncate,
    to_q24,
)

__all__ = [
    "eta",
    "eta_power",
    "delta",
    "eisenstein_E4",
    "eisenstein_E6",
    "eisenstein_G2",
    "theta_odd",
    "theta_over_eta3",
    "theta_char",
    "phi_m2_1",
    "phi_0_1",
    "sigma",
    "A1_NORM",
    "tensor_power",
]

A1_NORM = (Fraction(1, 2),)


def sigma(n, k):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def _gen_binom(e, k):
    """Coefficient of x^k in (1 - x)^e for any integer e."""
    if e >= 0:
        return (-1) ** k * comb(e, k)
    return comb(-e + k - 1, k)


def euler_power_coeffs(e, n_terms):
    """Coefficients of ∏_{n≥1}(1 - qⁿ)^e below q^n_terms."""
    out = [0] * n_terms
    if n_terms == 0:
        return out
    out[0] = 1
    for n in range(1, n_terms):
        binom = [_gen_binom(e, k) for k in range((n_terms - 1) // n + 1)]
        new = out[:]
        for i in range(n, n_terms):
            s = 0
            for k in range(1, i // n + 1):
                s += binom[k] * out[i - k * n]
            new[i] = out[i] + s
        out = new
    return out


def _trunc24(trunc):
    return to_q24(trunc) if not isinstance(trunc, int) else 24 * trunc


@lru_cache(maxsize=None)
def _eta_power24(e, t24):
    n_terms = max(0, -(-(t24 - e) // 24))
    coeffs = euler_power_coeffs(e, n_terms)
    values = {e + 24 * i: c for i, c in enumerate(coeffs) if c}
    return QExpansion.scalar(values, t24, JacobiFormMeta.modular(Fraction(e, 2), name=f"eta^{e}"))


def eta_power(e, trunc):
    """``η(τ)^e = q^{e/24} ∏(1 - qⁿ)^e`` for any integer ``e``."""
    return _eta_power24(int(e), _trunc24(trunc))


def eta(trunc):
    return eta_power(1, trunc)


def delta(trunc):
    """Ramanujan Δ = η²⁴ = q - 24q² + 252q³ - …"""
    return eta_power(24, trunc)


@lru_cache(maxsize=None)
def _eisenstein24(kind, t24):
    n_max = -(-t24 // 24)
    if kind == 4:
        values = {0: 1, **{24 * n: 240 * sigma(n, 3) for n in range(1, n_max)}}
    elif kind == 6:
        values = {0: 1, **{24 * n: -504 * sigma(n, 5) for n in range(1, n_max)}}
    else:
        values = {0: Fraction(-1, 24), **{24 * n: sigma(n, 1) for n in range(1, n_max)}}
    return QExpansion.scalar(values, t24, JacobiFormMeta.modular(kind, name=f"E{kind}" if kind != 2 else "G2"))


def eisenstein_E4(trunc):
    return _eisenstein24(4, _trunc24(trunc))


def eisenstein_E6(trunc):
    return _eisenstein24(6, _trunc24(trunc))


def eisenstein_G2(trunc):
    """Quasi-modular ``G₂ = -1/24 + Σ σ₁(n) qⁿ``."""
    return _eisenstein24(2, _trunc24(trunc))


# theta functions ----------------------------------------------------------


def _theta_meta(name):
    return JacobiFormMeta.jacobi(Fraction(1, 2), Fraction(1, 2), A1_NORM, "A1", "anti", name)


def _one_var(terms, t24, meta):
    """1-variable series from ``{q24: {doubled exponent: coeff}}``."""
    coeffs = {k: LaurentPoly.from_dict({(e,): c for e, c in d.items()}, 1) for k, d in terms.items()}
    return QExpansion(1, coeffs, t24, meta)


@lru_cache(maxsize=None)
def _theta_sum24(t24):
    terms = {}
    n = 0
    while 12 * n * (n + 1) + 3 < t24:
        for m in {n, -n - 1}:
            terms.setdefault(12 * m * (m + 1) + 3, {})[2 * m + 1] = (-1) ** m
        n += 1
    return _one_var(terms, t24, _theta_meta("theta"))


@lru_cache(maxsize=None)
def _theta_product24(t24):
    result = _one_var({3: {1: 1, -1: -1}}, t24, _theta_meta("theta"))
    n = 1
    while 24 * n + 3 < t24:
        factor = _one_var({0: {0: 1}, 24 * n: {2: -1}}, t24, None)
        factor = qs_mul(factor, _one_var({0: {0: 1}, 24 * n: {-2: -1}}, t24, None))
        factor = qs_mul(factor, _one_var({0: {0: 1}, 24 * n: {0: -1}}, t24, None))
        result = qs_mul(result, factor).with_meta(result.meta)
        n += 1
    return qs_truncate(result, t24)


def theta_odd(trunc, form="sum"):
    """Odd Jacobi theta ``ϑ(τ, z) = q^{1/8} Σ (-1)ⁿ q^{n(n+1)/2} ζ^{n+1/2}``.

    ``form="product"`` expands the triple product
    ``q^{1/8}(ζ^{1/2} - ζ^{-1/2}) ∏(1 - qⁿζ)(1 - qⁿζ⁻¹)(1 - qⁿ)`` instead.
    """
    t24 = _trunc24(trunc)
    if form == "sum":
        return _theta_sum24(t24)
    if form == "product":
        return _theta_product24(t24)
    raise ValueError(f"unknown theta form {form!r}")


@lru_cache(maxsize=None)
def _theta_over_eta3_24(t24):
    theta = theta_odd(Fraction(t24 + 3, 24))
    return qs_truncate(qs_div(theta, eta_power(3, Fraction(t24 + 3, 24))), t24).with_meta(
        JacobiFormMeta.jacobi(-1, Fraction(1, 2), A1_NORM, "A1", "anti", "theta/eta^3"))


def theta_over_eta3(trunc):
    """``ϑ(τ, z)/η(τ)³``, integral q-exponents starting at ``ζ^{1/2} - ζ^{-1/2}``."""
    return _theta_over_eta3_24(_trunc24(trunc))


@lru_cache(maxsize=None)
def _theta_char24(kind, t24):
    terms = {}
    m = 0
    half = kind in ("t2", "t1s")
    while True:
        done = True
        for r in {m, -m - 1} if half else {m, -m}:
            e2 = 2 * r + 1 if half else 2 * r
            k = 3 * e2 * e2
            if k >= t24:
                continue
            done = False
            sign = (-1) ** r if kind in ("t4", "t1s") else 1
            terms.setdefault(k, {})[e2] = sign
        if done:
            break
        m += 1
    meta = JacobiFormMeta.jacobi(Fraction(1, 2), 1, (1,), "Z", "O" if kind != "t1s" else "anti", kind)
    return _one_var(terms, t24, meta)


def theta_char(kind, trunc):
    """Characteristic theta series in one variable, lattice ``ℤ`` with ``(l,l) = l²``.

    ``t3 = Σ q^{m²/2}ζ^m``, ``t4 = Σ(-1)^m q^{m²/2}ζ^m``,
    ``t2 = Σ q^{(m+½)²/2}ζ^{m+½}``, ``t1s = Σ(-1)^m q^{(m+½)²/2}ζ^{m+½}``.
    """
    if kind not in ("t2", "t3", "t4", "t1s"):
        raise ValueError(f"unknown theta characteristic {kind!r}")
    return _theta_char24(kind, _trunc24(trunc))


# the A1 pair --------------------------------------------------------------


@lru_cache(maxsize=None)
def _phi_m2_1_24(t24):
    t = theta_over_eta3(Fraction(t24, 24))
    return qs_mul(t, t).with_meta(JacobiFormMeta.jacobi(-2, 1, A1_NORM, "A1", "O", "phi_-2,1"))


def phi_m2_1(trunc):
    """``φ₋₂,₁ = ϑ²/η⁶ = (ζ - 2 + ζ⁻¹) + q·(…)`` in Eichler-Zagier coordinates."""
    return _phi_m2_1_24(_trunc24(trunc))


@lru_cache(maxsize=None)
def _phi_0_1_24(t24):
    from .operators import modular_diff_H

    h = modular_diff_H(phi_m2_1(Fraction(t24, 24)))
    return (h * -24).with_meta(JacobiFormMeta.jacobi(0, 1, A1_NORM, "A1", "O", "phi_0,1"))


def phi_0_1(trunc):
    """``φ₀,₁ = -24·H₋₂(φ₋₂,₁) = (ζ + 10 + ζ⁻¹) + q·(…)``."""
    return _phi_0_1_24(_trunc24(trunc))


def tensor_power(series, n):
    """``series(z₁)·…·series(zₙ)`` by a balanced product tree."""
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    if n == 1:
        return series
    left = tensor_power(series, n // 2)
    right = tensor_power(series, n - n // 2)
    return qs_tensor(left, right)
