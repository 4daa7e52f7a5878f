"""Orbit sums and the literature's displayed leading coefficients.

``orbit_sum(n, v, group)`` is the sum of ``ζ^w`` over the distinct images
``w`` of ``v`` under signed permutations (``"O"``) or under those with an even
number of sign changes (``"W"``).  The printed expansions below are stored
exactly as displayed, including the ones that disagree with the forms they
describe; ``LITERAL_DISPLAYS`` and ``CORRECTED_DISPLAYS`` keep both.
"""

from fractions import Fraction
from itertools import permutations, product

from .laurent import LaurentPoly, lp_lincomb

__all__ = [
    "orbit_sum",
    "sigma1",
    "sigma_pairs",
    "sigma_triples",
    "sigma_half",
    "sigma_half_even",
    "LITERAL_DISPLAYS",
    "CORRECTED_DISPLAYS",
    "display",
    "PRINTED_CONSTANTS",
]


def orbit_sum(n, v, group="O"):
    """Sum of the distinct monomials ``ζ^{g v}``; ``v`` in ordinary (not doubled) units."""
    v2 = [int(Fraction(x) * 2) for x in v] + [0] * (n - len(v))
    seen = set()
    for p in set(permutations(v2)):
        nz = [i for i, x in enumerate(p) if x]
        for signs in product((1, -1), repeat=len(nz)):
            w = list(p)
            for i, s in zip(nz, signs):
                w[i] *= s
            if group == "W" and sum(1 for x in w if x < 0) % 2 and len(nz) == n:
                # only full-support vectors can tell W from O here
                continue
            seen.add(tuple(w))
    return LaurentPoly.from_dict({w: 1 for w in seen}, n)


def sigma1(n):
    """Σ ζ_j^{±1}."""
    return orbit_sum(n, [1])


def sigma_pairs(n):
    """Σ_{j<k} ζ_j^{±1} ζ_k^{±1}."""
    return orbit_sum(n, [1, 1])


def sigma_triples(n):
    """Σ_{j<k<l} ζ_j^{±1} ζ_k^{±1} ζ_l^{±1}."""
    return orbit_sum(n, [1, 1, 1])


def sigma_half(n):
    """Σ ζ₁^{±½} … ζₙ^{±½} over all sign choices."""
    return orbit_sum(n, [Fraction(1, 2)] * n)


def sigma_half_even(n):
    """The same sum restricted to an even number of minus signs."""
    return orbit_sum(n, [Fraction(1, 2)] * n, group="W")


def _one(n):
    return LaurentPoly.constant(1, n)


def _comb(n, *pairs):
    return lp_lincomb([(c, p) for c, p in pairs], nvars=n)


def _displays(signs_as_printed):
    s8 = dict(one=_one(8), s1=sigma1(8), s2=sigma_pairs(8), s3=sigma_triples(8),
              h=sigma_half(8), he=sigma_half_even(8))
    s2 = dict(one=_one(2), s1=sigma1(2), h=sigma_half(2))
    d4_half = 2 if signs_as_printed else -2
    d2_half = -8 if signs_as_printed else 8
    return {
        "phi_0_1_D8.q0": _comb(8, (8, s8["one"]), (1, s8["s1"])),
        "phi_0_1_D8.q1": _comb(8, (128, s8["one"]), (36, s8["s1"]), (8, s8["s2"]), (-8, s8["h"]), (1, s8["s3"])),
        "psi_0_1_D8.q0": _comb(8, (512, s8["one"]), (1, s8["h"])),
        "phi_m4_1_tilde_D8.q0": _comb(8, (128, s8["one"]), (-16, s8["s1"]), (1, s8["he"])),
        "phi_m4_1_D8.q0": _comb(8, (256, s8["one"]), (-32, s8["s1"]), (1, s8["h"])),
        "phi_m2_1_D8.q0": _comb(8, (512, s8["one"]), (-16, s8["s1"]), (-1, s8["h"])),
        "psi_minus_E4_phi_m4.q0": _comb(8, (256, s8["one"]), (32, s8["s1"])),
        "H0_phi_0_1_D8.q0": _comb(8, (16, s8["one"]), (-1, s8["s1"])),
        "theta_D16plus_D8.q1": _comb(8, (112, s8["one"]), (16, s8["s1"]), (1, s8["s2"])),
        "E4_theta_E8.q1": _comb(8, (240, s8["one"]), (1, s8["s2"]), (1, s8["he"])),
        "omega_D8.q0": _comb(8, (1, s8["he"]), (-1, lp_lincomb([(1, s8["h"]), (-1, s8["he"])], 8))),
        "phi_m4_1_D2.q0": _comb(2, (4, s2["one"]), (1, s2["s1"]), (d4_half, s2["h"])),
        "phi_m2_1_D2.q0": _comb(2, (-40, s2["one"]), (2, s2["s1"]), (d2_half, s2["h"])),
        "phi_hat_0_1_D2.q0": _comb(2, (100, s2["one"]), (1, s2["s1"]), (10, s2["h"])),
        "H0_phi_0_1_A1.q0": LaurentPoly.from_dict(
            {(2,): Fraction(-5, 24), (0,): Fraction(10, 24), (-2,): Fraction(-5, 24)}, 1),
    }


LITERAL_DISPLAYS = _displays(True)
CORRECTED_DISPLAYS = _displays(False)

# the two D₂ displays whose printed half-integral coefficients carry the wrong sign
SIGN_MISPRINTS = ("phi_m4_1_D2.q0", "phi_m2_1_D2.q0")


def display(name, literal=True):
    return (LITERAL_DISPLAYS if literal else CORRECTED_DISPLAYS)[name]


# printed constants that depend on normalizations
PRINTED_CONSTANTS = {
    "weight2_c": Fraction(48),
    "a1_H0H_m2_c": Fraction(2880),
    "d2_omega_sq_E4": Fraction(5),
    "d2_omega_sq_scale": Fraction(1),
    "a1_weight6_a3": (Fraction(1, 50688), Fraction(-91, 11)),
    "a1_weight6_a4": (Fraction(1, 76032), Fraction(-115, 88)),
    "f81_a6": (Fraction(1, 27), Fraction(18, 27), Fraction(9, 27), Fraction(-27, 27), Fraction(0)),
    "f81_a7": tuple(Fraction(-x, 162) for x in (2, 36, 9, -81, 9)),
}
