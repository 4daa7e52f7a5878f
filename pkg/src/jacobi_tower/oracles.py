"""Slow independent constructions used only to cross-check the fast ones."""

from fractions import Fraction

from .laurent import LaurentPoly
from .qexpansion import JacobiFormMeta, QExpansion
from .symmetry import enumerate_lattice_vectors

__all__ = ["theta_by_enumeration", "eta_by_pentagonal", "delta_tau_values", "phi_0_1_from_thetas"]


def theta_by_enumeration(lattice, trunc, keep=None):
    """``Σ_{v∈L} q^{(v,v)/2} ζ^{v[:keep]}`` by listing lattice vectors.

    ``trunc`` is an exclusive integer q-exponent; ``keep`` restricts ``ζ`` to
    the first coordinates (the remaining ``z`` are set to 0).
    """
    if trunc < 1:
        raise ValueError("trunc must be at least 1")
    vecs = enumerate_lattice_vectors(lattice, 2 * (trunc - 1), doubled=True)
    nvars = len(vecs[0]) if keep is None else keep
    terms = {}
    for X in vecs:
        q24 = 3 * sum(x * x for x in X)  # 24 · Σ(X/2)² / 2
        key = tuple(X[:nvars])
        level = terms.setdefault(q24, {})
        level[key] = level.get(key, 0) + 1
    coeffs = {k: LaurentPoly.from_dict(d, nvars) for k, d in terms.items()}
    meta = JacobiFormMeta.jacobi(Fraction(nvars, 2) if keep is None else Fraction(len(vecs[0]), 2), 1,
                                 (1,) * nvars, str(lattice), "W", f"theta_{lattice}_enumerated")
    return QExpansion(nvars, coeffs, 24 * trunc, meta)


def eta_by_pentagonal(n_terms):
    """Coefficients of ∏(1 - qⁿ) below q^n_terms from Euler's pentagonal theorem."""
    out = [0] * n_terms
    k = 0
    while True:
        hit = False
        for m in ((k, -k) if k else (0,)):
            g = m * (3 * m - 1) // 2
            if g < n_terms:
                out[g] += (-1) ** abs(m)
                hit = True
        if not hit and k:
            break
        k += 1
    return out


# Ramanujan τ(n), n = 1..10
delta_tau_values = (1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920)


def phi_0_1_from_thetas(trunc):
    """``φ₀,₁ = 4 Σ_{i=2,3,4} ϑ_i(τ, z)² / ϑ_i(τ, 0)²``, independent of H and Hecke."""
    from .blocks import A1_NORM, theta_char
    from .qexpansion import qs_div, qs_lincomb, qs_mul, qs_truncate

    t24 = 24 * trunc
    parts = []
    for kind in ("t2", "t3", "t4"):
        th = theta_char(kind, trunc + 1).with_meta(None)
        at0 = QExpansion(0, {k: LaurentPoly.constant(c.value_at_one()) for k, c in th.coeffs.items()}, th.trunc, None)
        parts.append((4, qs_div(qs_mul(th, th), qs_mul(at0, at0))))
    meta = JacobiFormMeta.jacobi(0, 1, A1_NORM, "A1", "O", "phi_0,1 (theta quotients)")
    return qs_truncate(qs_lincomb(parts, meta=None), t24).with_meta(meta)
