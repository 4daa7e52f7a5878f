"""The Hecke operator T₋(2) and the modular differential operator H_k.

Both act on Fourier coefficients directly.  For T₋(2) on index 1 the
three-term average over ``(a, d, b) ∈ {(2,1,0), (1,2,0), (1,2,1)}`` collapses
to the rule

    c'(n, l) = c(2n, l) + 2^{k-1} c(n/2, l/2),

the second term present only for even ``n`` (the ``b`` average kills odd
q-powers of ``φ(τ/2)``).  ``hecke_T2_three_term`` evaluates the average
literally and serves as the oracle for the rule.
"""

from fractions import Fraction
from math import lcm

import numpy as np

from .blocks import eisenstein_G2, eta_power
from .laurent import LaurentPoly, lp_lincomb, lp_scale, lp_scale_exponents
from .qexpansion import (
    JacobiFormMeta,
    PrecisionError,
    QExpansion,
    qs_apply_level_weight,
    qs_div,
    qs_lincomb,
    qs_mul,
    qs_rescale_tau,
)

__all__ = ["hecke_T2", "hecke_T2_three_term", "modular_diff_H", "divide_by_delta", "hecke_input_trunc"]


def _require_meta(a, what):
    if a.meta is None:
        raise ValueError(f"{what} needs form metadata (weight, index)")
    return a.meta


def hecke_input_trunc(out_trunc):
    """Input truncation (q units) needed for a T₋(2) output truncation."""
    return 2 * out_trunc - 1


def hecke_T2(a, m=2):
    """Apply T₋(2) to an index-1 form with integral q-exponents.

    Input known below ``q^{T}`` gives output known below ``q^{⌊(T-1)/2⌋+1}``;
    the index doubles, the weight is unchanged.
    """
    if m != 2:
        raise NotImplementedError("only T₋(2) is implemented")
    meta = _require_meta(a, "hecke_T2")
    if meta.index != 1:
        raise ValueError(f"hecke_T2 needs index 1, got {meta.index}")
    if meta.weight2 % 2:
        raise ValueError("hecke_T2 needs integral weight")
    if not a.has_integral_exponents():
        raise ValueError("hecke_T2 needs integral q-exponents")
    if a.trunc <= 0:
        raise PrecisionError("input carries no coefficients")
    known = -(-a.trunc // 24) - 1
    out_levels = known // 2 + 1
    factor = Fraction(2) ** (meta.weight - 1)
    out = {}
    for n in range(out_levels):
        parts = []
        c2n = a.coeffs.get(24 * 2 * n)
        if c2n is not None:
            parts.append((1, c2n))
        if n % 2 == 0:
            ch = a.coeffs.get(24 * (n // 2))
            if ch is not None:
                parts.append((factor, lp_scale_exponents(ch, 2)))
        if parts:
            out[24 * n] = lp_lincomb(parts, a.nvars)
    return QExpansion(a.nvars, out, 24 * out_levels, meta.with_(index=meta.index * 2, symmetry=meta.symmetry))


def hecke_T2_three_term(a):
    """Literal ``½[2^k φ(2τ, 2𝔷) + φ(τ/2, 𝔷) + φ((τ+1)/2, 𝔷)]``."""
    meta = _require_meta(a, "hecke_T2_three_term")
    k = meta.weight
    doubled = qs_rescale_tau(a, 2)
    half, shifted = {}, {}
    for q24, c in a.coeffs.items():
        if q24 % 2:
            raise ValueError("q-exponents must be multiples of 1/12")
        half[q24 // 2] = c
        n = Fraction(q24, 24)
        if n.denominator != 1:
            raise ValueError("the (τ+1)/2 term needs integral q-exponents")
        shifted[q24 // 2] = lp_scale(c, (-1) ** int(n))
    t = a.trunc // 2
    s1 = QExpansion(a.nvars, half, t, doubled.meta)
    s2 = QExpansion(a.nvars, shifted, t, doubled.meta)
    return qs_lincomb([(Fraction(2) ** k / 2, doubled), (Fraction(1, 2), s1), (Fraction(1, 2), s2)])


def modular_diff_H(a):
    """``H_k(φ) = Σ (n - (l,l)/2m) a(n,l) qⁿζ^l + (2k - n₀) G₂ φ``.

    ``(l, l)`` uses the metadata norm form; ``n₀`` is the number of variables.
    Weight goes up by 2, index and truncation are unchanged.
    """
    meta = _require_meta(a, "modular_diff_H")
    m = meta.index
    if m == 0:
        raise ValueError("modular_diff_H needs a non-zero index")
    d = meta.norm_form
    if len(d) != a.nvars:
        raise ValueError("modular_diff_H needs a norm form for every variable")
    # weight(n, L) = n - Σ d_i L_i² / (8m) for doubled exponents L
    coef = [Fraction(di) / (8 * m) for di in d]
    scale = lcm(24, *(c.denominator for c in coef))
    ci = np.array([int(c * scale) for c in coef], dtype=np.int64)

    def weights(q24, exps):
        base = q24 * (scale // 24)
        if exps.shape[1] == 0:
            return np.full(len(exps), base, dtype=np.int64), scale
        return base - (exps * exps) @ ci, scale

    laplace_part = qs_apply_level_weight(a, weights)
    g2 = eisenstein_G2(Fraction(max(a.trunc, 1), 24))
    out_meta = meta.with_(weight2=meta.weight2 + 4)
    g2_part = qs_mul(g2, a)
    c = meta.weight2 - a.nvars
    result = qs_lincomb([(1, laplace_part.with_meta(None)), (c, g2_part.with_meta(None))], meta=out_meta)
    return result


def divide_by_delta(a, power=1):
    """``a / Δ^power``; needs q-valuation at least ``power``."""
    if power < 1:
        raise ValueError("power must be a positive integer")
    if a.valuation() < 24 * power:
        raise ValueError(f"q-valuation {a.prec if a.is_zero() else Fraction(a.valuation(), 24)} is below {power}")
    den = eta_power(24 * power, Fraction(a.trunc, 24))
    return qs_div(a, den)
