"""Named verification suites.

Each check reports ``pass``, ``fail`` or ``differs``.  ``differs`` marks a
literature value (a printed constant or display) that disagrees with the exact
computation while the computed value itself passes its own consistency
checks; both values are carried in the report.  Only ``fail`` makes a suite
fail.

``prec`` is the last q-power verified, so constructors are called with
truncation ``prec + 1``.
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import forms as F
from .blocks import (
    delta,
    eisenstein_E4,
    eisenstein_E6,
    eta,
    phi_0_1,
    phi_m2_1,
    theta_odd,
)
from .laurent import LaurentPoly
from .operators import hecke_T2, hecke_T2_three_term, hecke_input_trunc, modular_diff_H
from .oracles import delta_tau_values, eta_by_pentagonal, phi_0_1_from_thetas, theta_by_enumeration
from .qexpansion import qs_lincomb, qs_mul, qs_restrict_last, qs_scale, qs_truncate
from .reference import CORRECTED_DISPLAYS, LITERAL_DISPLAYS, PRINTED_CONSTANTS
from .relations import (
    RelationProblem,
    check_identity,
    divisibility_probe,
    independence_rank,
    solve_relation,
)
from .symmetry import GroupTag, is_anti_invariant, is_invariant

__all__ = ["Check", "SuiteReport", "SUITES", "run_suite", "f81_family", "a1_weight6_family", "weight2_family",
           "a1_second_order_family", "d2_omega_family"]


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    witness: object = None
    derived: dict = field(default_factory=dict)
    printed: dict = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "witness": None if self.witness is None else [str(x) for x in self.witness],
                "derived": {k: str(v) for k, v in self.derived.items()},
                "printed": {k: str(v) for k, v in self.printed.items()}}


@dataclass
class SuiteReport:
    suite: str
    prec: int
    checks: list
    seconds: float = 0.0

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def counts(self):
        out = {"pass": 0, "fail": 0, "differs": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_dict(self):
        return {"suite": self.suite, "prec": self.prec, "ok": self.ok, "counts": self.counts(),
                "seconds": round(self.seconds, 3), "checks": [c.to_dict() for c in self.checks]}

    def to_text(self):
        lines = [f"suite {self.suite} (through q^{self.prec})"]
        for c in self.checks:
            lines.append(f"  [{c.status.upper():7}] {c.name}" + (f": {c.detail}" if c.detail else ""))
            for k, v in c.derived.items():
                p = c.printed.get(k)
                lines.append(f"            {k} = {v}" + (f"  (printed: {p})" if p is not None else ""))
        n = self.counts()
        lines.append(f"  {n['pass']} pass, {n['fail']} fail, {n['differs']} differ from printed values"
                     f" ({self.seconds:.1f}s)")
        return "\n".join(lines)


def _identity(name, lhs, rhs):
    r = check_identity(lhs, rhs)
    return Check(name, "pass" if r else "fail", r.describe(), None if r else r.witness)


def _boolean(name, value, detail=""):
    return Check(name, "pass" if value else "fail", detail)


def _display(name, got, key):
    """Compare with the printed display; fall back to the corrected one."""
    if got == LITERAL_DISPLAYS[key]:
        return Check(name, "pass", "matches the printed display")
    if got == CORRECTED_DISPLAYS[key]:
        return Check(name, "differs", "printed display has a sign misprint; computed value matches the corrected one",
                     derived={"computed": got}, printed={"computed": LITERAL_DISPLAYS[key]})
    return Check(name, "fail", f"computed {got}")


def _versus_printed(name, ok, derived, printed, detail=""):
    if not ok:
        return Check(name, "fail", detail, derived=derived, printed=printed)
    same = all(printed.get(k) == v for k, v in derived.items() if k in printed)
    return Check(name, "pass" if same else "differs", detail, derived=derived, printed=printed)


def _plain(*series):
    return [s.with_meta(None) for s in series]


# relation families ---------------------------------------------------------------


def weight2_family(trunc):
    """E₆φ₋₄ + E₄φ₋₂ - c·H₀(φ₀) on D₈."""
    e4, e6 = eisenstein_E4(trunc), eisenstein_E6(trunc)
    fs = [qs_mul(e6, F.phi_m4_1_D8(trunc)), qs_mul(e4, F.phi_m2_1_D8(trunc)),
          modular_diff_H(F.phi_0_1_D8(trunc))]
    return fs, ["E6*phi_m4", "E4*phi_m2", "H0(phi_0)"]


def f81_family(trunc):
    """The seven weight-8 expressions built from φ^{D₈}₀,₁."""
    H = modular_diff_H
    p = F.phi_0_1_D8(trunc)
    e4, e6 = eisenstein_E4(trunc), eisenstein_E6(trunc)
    h0 = H(p)
    h20 = H(h0)
    fs = [H(H(h20)), H(H(qs_mul(e4, p))), H(qs_mul(e4, h0)), H(qs_mul(e6, p)),
          qs_mul(e4, h20), qs_mul(e6, h0), qs_mul(qs_mul(e4, e4), p)]
    return fs, [f"a{i}" for i in range(1, 8)]


def a1_weight6_family(trunc):
    """Weight-6 expressions built from the A₁ form φ₀,₁."""
    H = modular_diff_H
    p = phi_0_1(trunc)
    e4, e6 = eisenstein_E4(trunc), eisenstein_E6(trunc)
    fs = [H(H(H(p))), qs_mul(e4, H(p)), H(qs_mul(e4, p)), qs_mul(e6, p)]
    return fs, ["a1", "a2", "a3", "a4"]


def a1_second_order_family(trunc):
    """H₀H₋₂(φ₋₂,₁) and E₄φ₋₂,₁."""
    p = phi_m2_1(trunc)
    return [modular_diff_H(modular_diff_H(p)), qs_mul(eisenstein_E4(trunc), p)], ["H0H-2(phi_m2)", "E4*phi_m2"]


def d2_omega_family(trunc):
    """ω², φ₋₂², φ₀φ₋₄ and E₄φ₋₄² on D₂."""
    f = F.d2_family(trunc)
    w, a, b, c = f["omega"], f["phi_m2_1"], f["phi_0_1"], f["phi_m4_1"]
    m = lambda x, y: qs_mul(x, y).with_meta(None)  # noqa: E731
    return [m(w, w), m(a, a), m(b, c), m(eisenstein_E4(trunc), m(c, c))], ["omega^2", "phi_m2^2", "phi_0*phi_m4",
                                                                           "E4*phi_m4^2"]


# suites ------------------------------------------------------------------------------


def suite_blocks(prec):
    t = prec + 1
    out = []
    pent = eta_by_pentagonal(t)
    eta_c = [eta(t).coeff24(1 + 24 * i).constant_term() for i in range(t)]
    out.append(_boolean("eta against the pentagonal number theorem", eta_c == pent))
    dl = [delta(t).coefficient(i + 1).constant_term() for i in range(t - 1)]
    out.append(_boolean("Delta coefficients tau(n)", dl == list(delta_tau_values[:t - 1])))
    out.append(_identity("E4^2 = E8 (sigma_7 series)", qs_mul(eisenstein_E4(t), eisenstein_E4(t)),
                         _e8(t)))
    out.append(_identity("odd theta: sum = triple product", theta_odd(t), theta_odd(t, form="product")))
    h = modular_diff_H(phi_m2_1(t))
    out.append(_identity("H_-2(phi_-2,1) = -1/24 phi_0,1 (A1 norm form 1/2; phi_0,1 from theta quotients)", h,
                         qs_scale(phi_0_1_from_thetas(t), Fraction(-1, 24)).with_meta(h.meta)))
    out.append(_display("H_0(phi_0,1) q^0 on A1", modular_diff_H(phi_0_1(t)).coefficient(0), "H0_phi_0_1_A1.q0"))
    th = F.theta_E8(t)
    th0 = qs_restrict_all(th)
    out.append(_identity("Theta_E8(tau, 0) = E4", th0.with_meta(None), eisenstein_E4(t).with_meta(None)))
    q1_e4t = qs_mul(eisenstein_E4(2), F.theta_E8(2)).coefficient(1)
    out.append(_display("E4*Theta_E8 q^1 (root description)", q1_e4t, "E4_theta_E8.q1"))
    d16 = F.theta_D16plus_restricted(2).coefficient(1)
    out.append(_display("Theta_D16+|D8 q^1", d16, "theta_D16plus_D8.q1"))
    out.append(_boolean("Theta_D16+|D8 q^1 at z = 0 is 480", d16.value_at_one() == 480))
    out.append(_identity("Theta_D8 = Delta * omega_D8", F.theta_D8_product(t).with_meta(None),
                         qs_mul(delta(t), F.omega_Dn(8, t)).with_meta(None)))
    out.append(_identity("(E4 Theta_E8 - Theta_D16+|D8)/Delta = phi~_-4,1 (division round trip)",
                         qs_mul(delta(t), F.phi_m4_1_tilde_D8(t)).with_meta(None),
                         qs_truncate(qs_lincomb(_pairs((1, qs_mul(eisenstein_E4(t + 1), F.theta_E8(t + 1))),
                                                       (-1, F.theta_D16plus_restricted(t + 1)))), 24 * t)))
    out += _d8_displays()
    return out


def _pairs(*cs):
    return [(c, s.with_meta(None)) for c, s in cs]


def _e8(t):
    from .qexpansion import QExpansion, JacobiFormMeta
    from .blocks import sigma
    vals = {0: 1, **{24 * n: 480 * sigma(n, 7) for n in range(1, t)}}
    return QExpansion.scalar(vals, 24 * t, JacobiFormMeta.modular(8, name="E8"))


def qs_restrict_all(a):
    while a.nvars:
        a = qs_restrict_last(a)
    return a


def _d8_displays():
    t = 2
    out = [
        _display("phi_0,1^D8 q^0", F.phi_0_1_D8(t).coefficient(0), "phi_0_1_D8.q0"),
        _display("phi_0,1^D8 q^1", F.phi_0_1_D8(t).coefficient(1), "phi_0_1_D8.q1"),
        _display("psi_0,1^D8 q^0", F.psi_0_1_D8(t).coefficient(0), "psi_0_1_D8.q0"),
        _display("phi~_-4,1 q^0", F.phi_m4_1_tilde_D8(t).coefficient(0), "phi_m4_1_tilde_D8.q0"),
        _display("phi_-4,1^D8 q^0", F.phi_m4_1_D8(t).coefficient(0), "phi_m4_1_D8.q0"),
        _display("phi_-2,1^D8 q^0", F.phi_m2_1_D8(t).coefficient(0), "phi_m2_1_D8.q0"),
        _display("omega_D8 q^0", F.omega_Dn(8, t).coefficient(0), "omega_D8.q0"),
        _display("psi_0,1 - E4 phi_-4,1 q^0",
                 (F.psi_0_1_D8(t) - qs_mul(eisenstein_E4(t), F.phi_m4_1_D8(t))).coefficient(0),
                 "psi_minus_E4_phi_m4.q0"),
    ]
    got = modular_diff_H(F.phi_0_1_D8(t)).coefficient(0)
    printed = LITERAL_DISPLAYS["H0_phi_0_1_D8.q0"]
    ratio = Fraction(got.constant_term()) / printed.constant_term()
    ok = got == printed * ratio
    out.append(_versus_printed("H_0(phi_0,1^D8) q^0 is proportional to the printed display", ok,
                               {"scale": ratio}, {"scale": 1}))
    return out


def suite_invariance(prec):
    t = min(prec, 2) + 1
    out = []
    for n in range(2, 9):
        tag = GroupTag.orthogonal(n)
        gens = [(nm, F.tower_form(nm, n, t)) for nm in ("phi_0_1", "phi_m2_1", "phi_m4_1")]
        gens += [(f"phi_{-2 * k},2", F.phi_index2(n, k, t)) for k in range(3, n)]
        if n >= 3:
            gens.append(("omega^2", F.omega_sq(n, t)))
        bad = [nm for nm, g in gens if not is_invariant(g, tag)]
        out.append(_boolean(f"D{n} generators invariant under {tag}", not bad, ", ".join(bad)))
        w = F.omega_Dn(n, t)
        out.append(_boolean(f"omega_D{n} is W-invariant and flips sign under z1 -> -z1",
                            is_anti_invariant(w, GroupTag("W", n))))
    out.append(_boolean("phi~_-4,1 is W(D8)- but not O(D8)-invariant",
                        is_invariant(F.phi_m4_1_tilde_D8(t), GroupTag("W", 8))
                        and not is_invariant(F.phi_m4_1_tilde_D8(t), GroupTag("O", 8))))
    out.append(_boolean("psi_0,1^D8 is O(D8)-invariant", is_invariant(F.psi_0_1_D8(t), GroupTag("O", 8))))
    return out


def suite_tower(prec):
    t = prec + 1
    out = []
    for n in range(3, 9):
        for k in range(0, n):
            lhs = qs_restrict_last(F.phi_index2(n, k, t))
            out.append(_identity(f"phi_{-2 * k},2^D{n} | z{n}=0 = 12 phi_{-2 * k},2^D{n - 1}", lhs,
                                 qs_scale(F.phi_index2(n - 1, k, t), 12).with_meta(lhs.meta)))
        lhs = qs_restrict_last(F.phi_index2(n, n - 1, t))
        out.append(_identity(f"phi_{-2 * (n - 1)},2^D{n} | z{n}=0 = 12 (omega_D{n - 1})^2", lhs,
                             qs_scale(F.omega_sq(n - 1, t), 12).with_meta(lhs.meta)))
    for n in (8, 4):
        lhs = qs_restrict_last(F.phi_index2(n, n - 1, t))
        r = divisibility_probe(lhs, n - 1)
        ok = bool(r) and r.quotient.coeffs.keys() <= {0} and r.quotient.coefficient(0) == LaurentPoly.constant(12, n - 1)
        out.append(_boolean(f"divisibility probe: phi_{-2 * (n - 1)},2^D{n}|z{n}=0 / (omega_D{n - 1})^2 = 12", ok,
                            r.reason))
    r = divisibility_probe(F.phi_0_1_D8(2), 8)
    out.append(_boolean("divisibility probe rejects phi_0,1^D8", not r, r.reason))
    return out


def suite_d2(prec):
    t = prec + 1
    f = F.d2_family(t)
    out = [
        _display("phi_-4,1^D2 q^0", f["phi_m4_1"].coefficient(0), "phi_m4_1_D2.q0"),
        _display("phi_-2,1^D2 q^0", f["phi_m2_1"].coefficient(0), "phi_m2_1_D2.q0"),
        _display("phi^_0,1^D2 q^0", f["phi_hat_0_1"].coefficient(0), "phi_hat_0_1_D2.q0"),
        _boolean("omega^D2 (antisymmetric product / 12) = omega_D2",
                 check_identity(f["omega"].with_meta(None), F.omega_Dn(2, t).with_meta(None)).equal),
    ]
    for key, c in (("phi_m4_1", Fraction(-1, 32)), ("phi_m2_1", Fraction(-1, 8)), ("phi_0_1", Fraction(6))):
        r = F.restrict_to(F.tower_form(key, 8, t), 2)
        out.append(_identity(f"{key}^D2 = {c} * {key}^D8|D2", f[key], qs_scale(r, c).with_meta(f[key].meta)))
    fs, names = d2_omega_family(t)
    s = solve_relation(RelationProblem(fs, names, orders=[0]))
    ok = s.dimension == 1 and s.vanishes_identically
    derived = {}
    if ok:
        v = s.normalized("phi_m2^2")
        derived = {"omega^2": -v["omega^2"], "phi_0*phi_m4": v["phi_0*phi_m4"], "E4*phi_m4^2": v["E4*phi_m4^2"]}
    out.append(_versus_printed(
        "c*omega^2 = phi_-2^2 + b*phi_0 phi_-4 + e*E4 phi_-4^2 on D2", ok, derived,
        {"omega^2": PRINTED_CONSTANTS["d2_omega_sq_scale"], "phi_0*phi_m4": -4,
         "E4*phi_m4^2": PRINTED_CONSTANTS["d2_omega_sq_E4"]},
        f"relation space dimension {s.dimension}, vanishes through q^{s.checked_below - 1}"))
    return out


def suite_mde(prec, seed=0):
    t = prec + 1
    H = modular_diff_H
    out = []
    out.append(_identity("3 H_-4(phi_-4,1^D8) = phi_-2,1^D8",
                         qs_scale(H(F.phi_m4_1_D8(t)), 3).with_meta(None), F.phi_m2_1_D8(t).with_meta(None)))
    lhs = qs_lincomb(_pairs((2, H(F.phi_m2_1_D8(t))), (-1, qs_mul(eisenstein_E4(t), F.phi_m4_1_D8(t)))))
    out.append(_identity("2 H_-2(phi_-2,1^D8) - E4 phi_-4,1^D8 = 32 phi_0,1^D8", lhs,
                         qs_scale(F.phi_0_1_D8(t), 32).with_meta(None)))
    lhs = qs_lincomb(_pairs((1, F.psi_0_1_D8(t)), (-1, qs_mul(eisenstein_E4(t), F.phi_m4_1_D8(t)))))
    out.append(_identity("psi_0,1 - E4 phi_-4,1 = 32 phi_0,1 (D8)", lhs, qs_scale(F.phi_0_1_D8(t), 32).with_meta(None)))

    fs, names = weight2_family(t)
    s = solve_relation(RelationProblem(fs, names, orders=[0]))
    ok = s.dimension == 1 and s.vanishes_identically
    c = -s.normalized("E6*phi_m4")["H0(phi_0)"] if ok else None
    out.append(_versus_printed("E6 phi_-4 + E4 phi_-2 = c H_0(phi_0) on D8", ok, {"c": c},
                               {"c": PRINTED_CONSTANTS["weight2_c"]}, f"relation space dimension {s.dimension}"))

    fs, names = f81_family(t)
    s = solve_relation(RelationProblem(fs, names, orders=[0]))
    ok = s.dimension == 5 and s.vanishes_identically
    derived, printed = {}, {}
    if s.dimension == 5:
        ex = s.express(["a6", "a7"], names[:5])
        for dep, key in (("a6", "f81_a6"), ("a7", "f81_a7")):
            derived[dep] = _linear_form(ex[dep], names[:5])
            printed[dep] = _linear_form(dict(zip(names[:5], PRINTED_CONSTANTS[key])), names[:5])
        ok = ok and _random_f81_vanish(fs, ex, names, seed)
    out.append(_versus_printed("weight-8 combinations of phi_0,1^D8 with zero q^0 vanish identically", ok,
                               derived, printed,
                               f"solution space dimension {s.dimension}, only q^0 constrained, "
                               f"zero through q^{s.checked_below - 1}"))

    fs, names = a1_weight6_family(t + 1)
    s = solve_relation(RelationProblem(fs, names, orders=[0]))
    ok = s.dimension == 2 and s.vanishes_identically
    derived, printed = {}, {}
    if s.dimension == 2:
        ex = s.express(["a3", "a4"], ["a1", "a2"])
        for dep, key in (("a3", "a1_weight6_a3"), ("a4", "a1_weight6_a4")):
            derived[dep] = _linear_form(ex[dep], ["a1", "a2"])
            printed[dep] = _linear_form(dict(zip(["a1", "a2"], PRINTED_CONSTANTS[key])), ["a1", "a2"])
    out.append(_versus_printed("weight-6 combinations of phi_0,1 on A1 with zero q^0 vanish identically", ok,
                               derived, printed, f"solution space dimension {s.dimension}"))

    fs, names = a1_second_order_family(t + 1)
    s = solve_relation(RelationProblem(fs, names, orders=[0]))
    ok = s.dimension == 1 and s.vanishes_identically
    c = -s.normalized(names[0])[names[1]] if ok else None
    out.append(_versus_printed("H_0 H_-2(phi_-2,1) = c E4 phi_-2,1 on A1", ok, {"c": c},
                               {"c": PRINTED_CONSTANTS["a1_H0H_m2_c"]}, f"relation space dimension {s.dimension}"))

    e4, e6 = eisenstein_E4(t), eisenstein_E6(t)
    s = solve_relation(RelationProblem([qs_mul(e4, F.phi_m2_1_D8(t)), qs_mul(e6, F.phi_m4_1_D8(t))],
                                       ["E4*phi_m2", "E6*phi_m4"], orders=[0]))
    out.append(_boolean("E4 phi_-2,1 and E6 phi_-4,1 alone admit no relation", s.dimension == 0))
    return out


def _linear_form(coeffs, names):
    parts = []
    for n in names:
        c = Fraction(coeffs.get(n, 0))
        if c:
            parts.append(f"{c}*{n}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _random_f81_vanish(fs, ex, names, seed):
    """Unit vectors plus five random rational choices of (a1..a5) give zero forms."""
    rng = random.Random(seed)
    choices = [[Fraction(int(i == j)) for j in range(5)] for i in range(5)]
    choices += [[Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(5)] for _ in range(5)]
    for a in choices:
        free = dict(zip(names[:5], a))
        coeffs = a + [sum(ex[d][k] * free[k] for k in free) for d in ("a6", "a7")]
        total = qs_lincomb([(c, f.with_meta(None)) for c, f in zip(coeffs, fs)])
        if not total.is_zero():
            return False
    return True


def suite_independence(prec, weights=range(-16, 17, 2)):
    t = prec + 1
    out = []
    for n in (2, 3, 4):
        for index in (1, 2):
            bad, total = [], 0
            for w in weights:
                cert = independence_rank(n, w, index, trunc=t)
                total += cert.expected
                if not cert.full_rank:
                    bad.append(f"weight {w}: rank {cert.rank} < {cert.expected}")
            out.append(_boolean(f"D{n} index {index}: generator monomials independent, weights "
                                f"{min(weights)}..{max(weights)} ({total} monomials)", not bad, "; ".join(bad)))
    dup = independence_rank(3, 0, 2, trunc=t, inject_duplicate=True)
    out.append(_boolean("control: a duplicated monomial is detected", not dup.full_rank,
                        f"rank {dup.rank} of {dup.expected}"))
    from .relations import rank_of
    th = [F.theta_E8(t), F.theta_D8_product(t)]
    r = rank_of(_plain(*th), list(range(0, 24 * t, 24)))
    out.append(_boolean("rank {Theta_E8, Theta_D8} = 2", r == 2))
    return out


def suite_hecke(prec):
    t = prec + 1
    out = []
    base = phi_m2_1(hecke_input_trunc(t))
    out.append(_identity("T_-(2) coefficient rule = three-term average on phi_-2,1",
                         hecke_T2(base), hecke_T2_three_term(base)))
    w = F.omega_Dn(8, hecke_input_trunc(t))
    out.append(_identity("T_-(2) coefficient rule = three-term average on omega_D8",
                         hecke_T2(w), hecke_T2_three_term(w)))
    th = F.theta_D8_product(hecke_input_trunc(t + 1))
    out.append(_identity("T_-(2) coefficient rule = three-term average on Theta_D8",
                         hecke_T2(th), hecke_T2_three_term(th)))
    ratio = _hecke_ratio(F.phi_0_1_A1_hecke(t, prefactor=1), phi_0_1(t))
    out.append(_versus_printed("phi_0,1 = c * phi_-2,1|T/phi_-2,1", ratio is not None,
                               {"c": ratio}, {"c": F.PRINTED_HECKE_PREFACTORS["phi_0_1_A1"]}))
    ratio = _hecke_ratio(F.phi_0_1_D8(t, prefactor=1), F.phi_0_1_D8(t))
    out.append(_versus_printed("phi_0,1^D8 = c * Theta_D8|T/Theta_D8 (c fixed by 8 + ...)", ratio is not None,
                               {"c": F.HECKE_PREFACTORS["phi_0_1_D8"]},
                               {"c": F.PRINTED_HECKE_PREFACTORS["phi_0_1_D8"]}))
    hecke = F.psi_0_1_D8(t)
    diff = F.psi_0_1_D8(t, route="diff")
    out.append(_identity("psi_0,1^D8: Hecke route = 2 H_-2(phi_-2,1^D8)", hecke, diff))
    ratio = _hecke_ratio(F.psi_0_1_D8(t, prefactor=1), diff)
    out.append(_versus_printed("psi_0,1^D8 = c * omega|T/omega", ratio is not None,
                               {"c": ratio}, {"c": F.PRINTED_HECKE_PREFACTORS["psi_0_1_D8"]}))
    out.append(_identity("phi_0,1 (A1): 8 phi_-2,1|T/phi_-2,1 = -24 H_-2(phi_-2,1)",
                         F.phi_0_1_A1_hecke(t), phi_0_1(t)))
    return out


def _hecke_ratio(unit, target):
    """``c`` with ``c·unit = target`` exactly, or None."""
    c0 = target.coefficient(0)
    u0 = unit.coefficient(0)
    if u0.is_zero():
        return None
    e = tuple(u0.exponents()[0].tolist())
    c = Fraction(c0.coefficient(e)) / Fraction(u0.coefficient(e))
    return c if check_identity(qs_scale(unit, c).with_meta(None), target.with_meta(None)).equal else None


def suite_theta(prec):
    t = min(prec, 2) + 1
    a = theta_by_enumeration("E8", t)
    b = theta_by_enumeration("D16+", t, keep=8)
    return [
        _identity("Theta_E8 coset formula = lattice enumeration", F.theta_E8(t).with_meta(None), a.with_meta(None)),
        _identity("Theta_D16+|D8 coset formula = lattice enumeration",
                  F.theta_D16plus_restricted(t).with_meta(None), b.with_meta(None)),
    ]


SUITES = {
    "blocks": suite_blocks,
    "invariance": suite_invariance,
    "tower": suite_tower,
    "d2": suite_d2,
    "mde": suite_mde,
    "independence": suite_independence,
    "hecke-oracle": suite_hecke,
    "theta-oracle": suite_theta,
}


# suites whose checks stop at q^2 regardless of the requested precision
PREC_CAP = {"invariance": 2, "theta-oracle": 2}


def run_suite(name, prec=3):
    """Run one suite (or ``"all"``) and return a list of SuiteReport."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for nm in names:
        if nm not in SUITES:
            raise KeyError(f"unknown suite {nm!r}; choose from all, {', '.join(SUITES)}")
        t0 = time.perf_counter()
        checks = SUITES[nm](prec)
        reports.append(SuiteReport(nm, min(prec, PREC_CAP.get(nm, prec)), checks, time.perf_counter() - t0))
    return reports
