"""Truncated q-series whose coefficients are Laurent polynomials in ζ.

q-exponents are stored as integers in units of 1/24 (``q24``).  Every series
carries an exclusive truncation bound ``trunc`` in the same units: all
coefficients below it are known exactly, nothing at or above it is.  Reading
at or past the bound raises ``PrecisionError``.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

import numpy as np

from .laurent import (
    LaurentPoly,
    lp_apply_weight,
    lp_dot,
    lp_exact_div,
    lp_lincomb,
    lp_restrict,
    lp_scale,
    lp_scale_exponents,
    lp_substitute_linear,
    lp_tensor,
)

__all__ = [
    "JacobiFormMeta",
    "QExpansion",
    "PrecisionError",
    "to_q24",
    "qs_add",
    "qs_sub",
    "qs_scale",
    "qs_lincomb",
    "qs_mul",
    "qs_pow",
    "qs_div",
    "qs_inverse",
    "qs_coefficient",
    "qs_support_check",
    "qs_restrict_last",
    "qs_rescale_tau",
    "qs_tensor",
    "qs_substitute_linear",
    "qs_lift",
    "qs_truncate",
]


class PrecisionError(LookupError):
    """A coefficient at or beyond the known truncation was requested."""


def to_q24(n):
    """Convert a q-exponent (int, Fraction or str) to units of 1/24."""
    v = Fraction(n) * 24
    if v.denominator != 1:
        raise ValueError(f"q-exponent {n} is not a multiple of 1/24")
    return int(v)


_SYMMETRY_PRODUCT = {
    ("O", "O"): "O",
    ("O", "anti"): "anti",
    ("anti", "O"): "anti",
    ("anti", "anti"): "O",
}


def _combine_symmetry(a, b):
    if a == "scalar":
        return b
    if b == "scalar":
        return a
    if a is None or b is None:
        return None
    if (a, b) in _SYMMETRY_PRODUCT:
        return _SYMMETRY_PRODUCT[(a, b)]
    if {a, b} <= {"O", "anti", "W"}:
        return "W"
    return None


@dataclass(frozen=True)
class JacobiFormMeta:
    """Weight (stored doubled), index, diagonal norm form and tags.

    ``norm_form`` holds ``d_i`` with ``(l, l) = Σ d_i l_i²`` on ζ-exponents.
    ``symmetry`` is one of ``"O"`` (invariant under all signed
    permutations), ``"anti"`` (Weyl-invariant, odd under one sign flip),
    ``"W"`` (Weyl-invariant), ``"scalar"`` (no ζ-variables) or ``None``.
    """

    weight2: int
    index: Fraction = Fraction(0)
    norm_form: tuple = ()
    lattice: str = ""
    symmetry: str = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", Fraction(self.index))
        object.__setattr__(self, "norm_form", tuple(Fraction(d) for d in self.norm_form))
        object.__setattr__(self, "weight2", int(self.weight2))
        if any(d <= 0 for d in self.norm_form):
            raise ValueError("norm form entries must be positive")

    @property
    def weight(self):
        return Fraction(self.weight2, 2)

    @classmethod
    def modular(cls, weight, name=""):
        return cls(weight2=int(Fraction(weight) * 2), symmetry="scalar", name=name)

    @classmethod
    def jacobi(cls, weight, index, norm_form, lattice, symmetry=None, name=""):
        return cls(int(Fraction(weight) * 2), Fraction(index), tuple(norm_form), lattice, symmetry, name)

    def with_(self, **kw):
        return replace(self, **kw)

    def _merge_lattice(self, other):
        if not self.norm_form:
            return other.norm_form, other.lattice
        if not other.norm_form:
            return self.norm_form, self.lattice
        if self.norm_form != other.norm_form:
            raise ValueError(f"norm forms differ: {self.norm_form} vs {other.norm_form}")
        return self.norm_form, self.lattice or other.lattice

    def times(self, other):
        nf, lat = self._merge_lattice(other)
        return JacobiFormMeta(self.weight2 + other.weight2, self.index + other.index, nf, lat,
                              _combine_symmetry(self.symmetry, other.symmetry))

    def over(self, other):
        nf, lat = self._merge_lattice(other)
        sym = _combine_symmetry(self.symmetry, other.symmetry)
        return JacobiFormMeta(self.weight2 - other.weight2, self.index - other.index, nf, lat, sym)

    def plus(self, other):
        if self.weight2 != other.weight2 or self.index != other.index:
            raise ValueError(
                f"cannot add forms of weight/index {self.weight}/{self.index} and {other.weight}/{other.index}")
        nf, lat = self._merge_lattice(other)
        sym = self.symmetry if self.symmetry == other.symmetry else None
        return JacobiFormMeta(self.weight2, self.index, nf, lat, sym)

    def describe(self):
        out = {"weight": str(self.weight), "index": str(self.index)}
        if self.norm_form:
            out["norm_form"] = [str(d) for d in self.norm_form]
        if self.lattice:
            out["lattice"] = self.lattice
        if self.symmetry:
            out["symmetry"] = self.symmetry
        return out


class QExpansion:
    """Immutable truncated series ``Σ_{n < trunc} c_n(ζ) q^n``."""

    __slots__ = ("nvars", "coeffs", "trunc", "meta")

    def __init__(self, nvars, coeffs, trunc, meta=None):
        self.nvars = int(nvars)
        self.trunc = int(trunc)
        clean = {}
        for k, c in coeffs.items():
            k = int(k)
            if c.nvars != self.nvars:
                raise ValueError(f"coefficient has {c.nvars} variables, series has {self.nvars}")
            if k >= self.trunc or c.is_zero():
                continue
            clean[k] = c
        self.coeffs = dict(sorted(clean.items()))
        if meta is not None and meta.norm_form and len(meta.norm_form) != self.nvars:
            raise ValueError("norm form length does not match the variable count")
        self.meta = meta

    @classmethod
    def scalar(cls, values, trunc, meta=None):
        """0-variable series from ``{q24: rational}``."""
        return cls(0, {k: LaurentPoly.constant(v) for k, v in values.items()}, trunc, meta)

    @classmethod
    def one(cls, nvars, trunc, meta=None):
        return cls(nvars, {0: LaurentPoly.constant(1, nvars)}, trunc, meta)

    def valuation(self):
        """Least stored q24 exponent; ``trunc`` for the zero series."""
        return next(iter(self.coeffs), self.trunc)

    def is_zero(self):
        return not self.coeffs

    def coeff24(self, k):
        if k >= self.trunc:
            raise PrecisionError(f"q^{Fraction(k, 24)} is at or beyond the truncation q^{Fraction(self.trunc, 24)}")
        return self.coeffs.get(k, LaurentPoly.zero(self.nvars))

    def coefficient(self, n):
        return self.coeff24(to_q24(n))

    def __getitem__(self, n):
        return self.coefficient(n)

    @property
    def prec(self):
        """Truncation as a q-exponent (Fraction)."""
        return Fraction(self.trunc, 24)

    def with_meta(self, meta):
        return QExpansion(self.nvars, self.coeffs, self.trunc, meta)

    def levels(self):
        return [(Fraction(k, 24), c) for k, c in self.coeffs.items()]

    def n_terms(self):
        return sum(len(c) for c in self.coeffs.values())

    def has_integral_exponents(self):
        return all(k % 24 == 0 for k in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self.nvars == other.nvars and self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, self.trunc, tuple(self.coeffs.items())))

    def __add__(self, other):
        return qs_add(self, other)

    def __sub__(self, other):
        return qs_sub(self, other)

    def __neg__(self):
        return qs_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return qs_scale(self, other)
        if isinstance(other, QExpansion):
            return qs_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return qs_scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return qs_scale(self, 1 / Fraction(other))
        return qs_div(self, other)

    def __repr__(self):
        name = f" {self.meta.name}" if self.meta is not None and self.meta.name else ""
        return f"<QExpansion{name} nvars={self.nvars} terms={self.n_terms()} + O(q^{self.prec})>"

    def __str__(self):
        return format_series(self)


def format_series(a, max_terms=None):
    parts = []
    for k, c in a.coeffs.items():
        e = Fraction(k, 24)
        qs = "" if e == 0 else ("q" if e == 1 else f"q^{e}" if e.denominator == 1 else f"q^({e})")
        if not qs:
            parts.append(str(c))
        elif len(c) == 1 and c.nvars == 0 or (len(c) == 1 and not c.exponents().any()):
            v = c.constant_term()
            parts.append(qs if v == 1 else f"-{qs}" if v == -1 else f"{v}·{qs}")
        else:
            body = str(c)
            parts.append(f"({body})·{qs}" if len(c) > 1 else f"{body}·{qs}")
        if max_terms and len(parts) >= max_terms:
            break
    parts.append(f"O(q^{a.prec})" if a.prec.denominator == 1 else f"O(q^({a.prec}))")
    return " + ".join(parts).replace("+ -", "- ")


# metadata helpers ---------------------------------------------------------


def _meta_times(a, b):
    if a.meta is None or b.meta is None:
        return None
    return a.meta.times(b.meta)


def _meta_plus(metas):
    metas = [m for m in metas if m is not None]
    if not metas:
        return None
    out = metas[0]
    for m in metas[1:]:
        out = out.plus(m)
    return out


def _check_nvars(a, b):
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")


# linear operations --------------------------------------------------------


def qs_lincomb(pairs, meta=...):
    """``Σ c_i a_i`` over ``(rational, QExpansion)`` pairs; trunc is the minimum."""
    pairs = [(Fraction(c), a) for c, a in pairs]
    if not pairs:
        raise ValueError("empty linear combination")
    nvars = pairs[0][1].nvars
    for _, a in pairs:
        if a.nvars != nvars:
            raise ValueError(f"variable count mismatch: {a.nvars} vs {nvars}")
    trunc = min(a.trunc for _, a in pairs)
    if meta is ...:
        meta = _meta_plus([a.meta for c, a in pairs])
    keys = sorted({k for _, a in pairs for k in a.coeffs if k < trunc})
    coeffs = {}
    for k in keys:
        coeffs[k] = lp_lincomb([(c, a.coeffs[k]) for c, a in pairs if k in a.coeffs], nvars)
    return QExpansion(nvars, coeffs, trunc, meta)


def qs_add(a, b):
    _check_nvars(a, b)
    return qs_lincomb([(1, a), (1, b)])


def qs_sub(a, b):
    _check_nvars(a, b)
    return qs_lincomb([(1, a), (-1, b)])


def qs_scale(a, c):
    c = Fraction(c)
    return QExpansion(a.nvars, {k: lp_scale(v, c) for k, v in a.coeffs.items()}, a.trunc, a.meta)


def qs_truncate(a, trunc24):
    if trunc24 > a.trunc:
        raise PrecisionError("cannot raise the truncation of a series")
    return QExpansion(a.nvars, a.coeffs, trunc24, a.meta)


def qs_lift(a, nvars, meta=None):
    """View a 0-variable series as a series in ``nvars`` variables."""
    if a.nvars != 0:
        raise ValueError("only 0-variable series can be lifted")
    coeffs = {k: LaurentPoly.constant(c.constant_term(), nvars) for k, c in a.coeffs.items()}
    return QExpansion(nvars, coeffs, a.trunc, meta if meta is not None else a.meta)


# products -----------------------------------------------------------------


def _product_trunc(a, b):
    return min(a.trunc + b.valuation(), b.trunc + a.valuation())


def qs_mul(a, b):
    """Product; a 0-variable factor acts as a scalar series."""
    if a.nvars == 0 and b.nvars > 0:
        return _scalar_mul(a, b)
    if b.nvars == 0 and a.nvars > 0:
        return _scalar_mul(b, a)
    _check_nvars(a, b)
    trunc = _product_trunc(a, b)
    meta = _meta_times(a, b)
    out = {}
    targets = {}
    for i in a.coeffs:
        for j in b.coeffs:
            if i + j < trunc:
                targets.setdefault(i + j, []).append((1, a.coeffs[i], b.coeffs[j]))
    for k in sorted(targets):
        out[k] = lp_dot(targets[k], a.nvars)
    return QExpansion(a.nvars, out, trunc, meta)


def _scalar_mul(s, b):
    trunc = _product_trunc(s, b)
    meta = _meta_times(s, b)
    targets = {}
    for i, c in s.coeffs.items():
        v = c.constant_term()
        for j, p in b.coeffs.items():
            if i + j < trunc:
                targets.setdefault(i + j, []).append((v, p))
    out = {k: lp_lincomb(t, b.nvars) for k, t in targets.items()}
    return QExpansion(b.nvars, out, trunc, meta)


def qs_pow(a, e):
    if e < 0:
        raise ValueError("use qs_inverse for negative powers")
    if e == 0:
        meta = None if a.meta is None else JacobiFormMeta(0, 0, a.meta.norm_form, a.meta.lattice, "scalar")
        return QExpansion.one(a.nvars, a.trunc - a.valuation() if a.coeffs else a.trunc, meta)
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else qs_mul(result, base)
        e >>= 1
        if e:
            base = qs_mul(base, base)
    return result


def qs_tensor(a, b):
    """Product of series in disjoint variables (``a``'s variables first)."""
    trunc = _product_trunc(a, b)
    meta = None
    if a.meta is not None and b.meta is not None:
        if a.meta.index != b.meta.index and a.nvars and b.nvars:
            raise ValueError("tensor factors must share the index")
        meta = JacobiFormMeta(a.meta.weight2 + b.meta.weight2, a.meta.index or b.meta.index,
                              a.meta.norm_form + b.meta.norm_form,
                              "+".join(t for t in (a.meta.lattice, b.meta.lattice) if t), None)
    n = a.nvars + b.nvars
    parts = {}
    for i, ca in a.coeffs.items():
        for j, cb in b.coeffs.items():
            if i + j < trunc:
                parts.setdefault(i + j, []).append((1, lp_tensor(ca, cb)))
    out = {k: lp_lincomb(v, n) for k, v in parts.items()}
    return QExpansion(n, out, trunc, meta)


# division -----------------------------------------------------------------


def _step(*series):
    g = 0
    for s in series:
        v = s.valuation()
        for k in s.coeffs:
            g = gcd(g, k - v)
    return g or 24


def qs_inverse(a):
    """Multiplicative inverse of a 0-variable series."""
    if a.nvars != 0:
        raise ValueError("only 0-variable series are inverted; use qs_div")
    one = QExpansion.scalar({0: 1}, a.trunc - a.valuation() + 0,
                            None if a.meta is None else JacobiFormMeta(0, symmetry="scalar"))
    return qs_div(one, a)


def qs_div(num, den):
    """Quotient ``num / den`` solved order by order with exact Laurent division.

    The result truncation is ``min(Tn, Td + vn - vd) - vd``.  Raises
    ``InexactDivisionError`` if some quotient coefficient is not a Laurent
    polynomial and ``ZeroDivisionError`` if ``den`` is zero to its precision.
    """
    if den.is_zero():
        raise ZeroDivisionError("divisor series vanishes to its full precision")
    if den.nvars == 0 and num.nvars > 0:
        one = QExpansion.scalar({0: 1}, den.trunc + abs(den.valuation()), JacobiFormMeta(0, symmetry="scalar"))
        return qs_mul(num, qs_div(one, den))
    _check_nvars(num, den)
    vn, vd = num.valuation(), den.valuation()
    trunc = min(num.trunc, den.trunc + vn - vd) - vd
    meta = None
    if num.meta is not None and den.meta is not None:
        meta = num.meta.over(den.meta)
    if num.is_zero():
        return QExpansion(num.nvars, {}, trunc, meta)
    step = gcd(_step(num), _step(den))
    lead = den.coeffs[vd]
    r = vn - vd
    quot = {}
    j = 0
    while r + j < trunc:
        acc = [(1, num.coeffs.get(vn + j, LaurentPoly.zero(num.nvars)), LaurentPoly.constant(1, num.nvars))]
        for qi, qc in quot.items():
            dk = vd + (r + j - qi)
            if dk != vd and dk in den.coeffs:
                acc.append((-1, qc, den.coeffs[dk]))
        rem = lp_dot(acc, num.nvars)
        if not rem.is_zero():
            quot[r + j] = lp_exact_div(rem, lead)
        j += step
    return QExpansion(num.nvars, quot, trunc, meta)


# coefficient access and support --------------------------------------------


def qs_coefficient(a, n):
    return a.coefficient(n)


def _norms8(exps, d):
    """``8 (l, l)`` as exact rationals for doubled exponents: Σ 2 d_i L_i²."""
    return [sum(2 * di * int(x) * int(x) for di, x in zip(d, row)) for row in exps.tolist()]


def qs_support_check(a, kind):
    """Check the stored support against ``weak``/``holomorphic``/``cusp``."""
    if kind not in ("weak", "holomorphic", "cusp"):
        raise ValueError(f"unknown support kind {kind!r}")
    if any(k < 0 for k in a.coeffs):
        return False
    if kind == "weak":
        return True
    if a.meta is None:
        raise ValueError("support check needs form metadata")
    m = a.meta.index
    d = a.meta.norm_form
    if a.nvars and len(d) != a.nvars:
        raise ValueError("support check needs a norm form")
    for k, c in a.coeffs.items():
        n = Fraction(k, 24)
        if a.nvars == 0:
            continue
        # (l, l) = Σ d_i L_i² / 4 with doubled exponents L
        for v in _norms8(c.exponents(), d):
            ll = Fraction(v) / 8
            if kind == "holomorphic" and 2 * m * n < ll:
                return False
            if kind == "cusp" and 2 * m * n <= ll:
                return False
    return True


# variable maps ------------------------------------------------------------


def qs_restrict_last(a):
    """Set the last ζ-variable to 1 in every coefficient."""
    if a.nvars < 1:
        raise ValueError("no variable to restrict")
    i = a.nvars - 1
    meta = a.meta
    if meta is not None and meta.norm_form:
        lat = meta.lattice
        if lat.startswith("D") and lat[1:].isdigit():
            lat = f"D{int(lat[1:]) - 1}"
        meta = replace(meta, norm_form=meta.norm_form[:-1], lattice=lat)
    return QExpansion(a.nvars - 1, {k: lp_restrict(c, i) for k, c in a.coeffs.items()}, a.trunc, meta)


def qs_rescale_tau(a, c):
    """``φ(cτ, c𝔷)``: q- and ζ-exponents and the truncation scale by ``c``."""
    c = int(c)
    if c < 1:
        raise ValueError("rescaling factor must be a positive integer")
    meta = a.meta
    if meta is not None:
        meta = replace(meta, index=meta.index * c)
    return QExpansion(a.nvars, {k * c: lp_scale_exponents(v, c) for k, v in a.coeffs.items()}, a.trunc * c, meta)


def _mat_inv(A):
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ValueError("substitution matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def pullback_norm_form(d, A):
    """Norm form after ``z = A w``: ``Q_w = A^{-1} diag(d) A^{-T}``; must stay diagonal."""
    n = len(d)
    Ai = _mat_inv(A)
    Q = [[sum(Ai[i][k] * Fraction(d[k]) * Ai[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
    if any(Q[i][j] != 0 for i in range(n) for j in range(n) if i != j):
        raise ValueError("pulled-back norm form is not diagonal")
    return tuple(Q[i][i] for i in range(n))


def qs_substitute_linear(a, A, lattice=None):
    """Change variables ``z = A w`` in every coefficient; pulls back the norm form."""
    meta = a.meta
    if meta is not None and meta.norm_form:
        meta = replace(meta, norm_form=pullback_norm_form(meta.norm_form, A),
                       lattice=lattice if lattice is not None else meta.lattice)
    return QExpansion(a.nvars, {k: lp_substitute_linear(v, A) for k, v in a.coeffs.items()}, a.trunc, meta)


def qs_apply_level_weight(a, fn, meta=None):
    """Multiply each coefficient termwise: ``fn(q24, exps) -> (int weights, den)``."""
    out = {}
    for k, c in a.coeffs.items():
        w, wd = fn(k, c.exponents())
        out[k] = lp_apply_weight(c, w, wd)
    return QExpansion(a.nvars, out, a.trunc, a.meta if meta is None else meta)


def exponent_classes_ok(a):
    """Every coefficient's exponents are all-integer or all-half-integer per monomial."""
    for c in a.coeffs.values():
        e = c.exponents()
        if e.size == 0:
            continue
        odd = (e % 2) != 0
        if not np.all(odd.all(axis=1) | (~odd).all(axis=1)):
            return False
    return True
