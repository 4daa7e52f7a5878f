"""Exact linear algebra over truncated expansions.

Expansions become rational column vectors indexed by (q-order, monomial).
Identical rows are merged before elimination; for group-invariant forms this
collapses every orbit of monomials to one row without changing the rank.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import lcm

import numpy as np

from .laurent import InexactDivisionError, lp_restrict, lp_sub
from .qexpansion import PrecisionError, qs_div, qs_lincomb, qs_mul, to_q24

__all__ = [
    "IdentityReport",
    "check_identity",
    "coefficient_rows",
    "rref",
    "nullspace",
    "RelationProblem",
    "SolutionSpace",
    "solve_relation",
    "RankCertificate",
    "rank_of",
    "independence_rank",
    "generator_list",
    "ProbeResult",
    "divisibility_probe",
]


# identities ---------------------------------------------------------------


@dataclass
class IdentityReport:
    equal: bool
    checked_below: Fraction
    witness: tuple = None  # (q-exponent, doubled exponents, lhs coeff, rhs coeff)

    def __bool__(self):
        return self.equal

    def describe(self):
        if self.equal:
            return f"equal through q^{self.checked_below - 1}" if self.checked_below.denominator == 1 \
                else f"equal below q^{self.checked_below}"
        n, e, a, b = self.witness
        return f"differ at q^{n}, exponent {list(e)} (doubled): {a} vs {b}"


def _comparable(a, b):
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if a.meta is not None and b.meta is not None:
        if a.meta.weight2 != b.meta.weight2 or a.meta.index != b.meta.index:
            raise ValueError(
                f"incomparable forms: weight/index {a.meta.weight}/{a.meta.index} vs {b.meta.weight}/{b.meta.index}")


def check_identity(lhs, rhs):
    """Exact comparison below the smaller truncation, with the first mismatch."""
    _comparable(lhs, rhs)
    t = min(lhs.trunc, rhs.trunc)
    for k in sorted(set(lhs.coeffs) | set(rhs.coeffs)):
        if k >= t:
            break
        a, b = lhs.coeff24(k), rhs.coeff24(k)
        diff = lp_sub(a, b)
        if not diff.is_zero():
            e = min(map(tuple, diff.exponents().tolist()), key=lambda x: (sum(abs(v) for v in x), x))
            return IdentityReport(False, Fraction(t, 24), (Fraction(k, 24), e, a.coefficient(e), b.coefficient(e)))
    return IdentityReport(True, Fraction(t, 24))


# vectorization and elimination ----------------------------------------------


def coefficient_rows(forms, levels24):
    """Distinct integer rows of the coefficient matrix and the column scales.

    Column ``j`` is scaled by ``scales[j]`` so every entry is an integer; a
    null vector ``y`` of the scaled matrix gives ``x_j = scales[j] · y_j``.
    """
    ncols = len(forms)
    scales = []
    for f in forms:
        dens = [f.coeff24(k).den for k in levels24]
        scales.append(lcm(*dens) if dens else 1)
    rows = set()
    for k in levels24:
        cs = [f.coeff24(k) for f in forms]
        keys = [c.keys for c in cs if len(c)]
        if not keys:
            continue
        union = np.unique(np.concatenate(keys))
        cols = []
        wide = False
        for c, s in zip(cs, scales):
            col = np.zeros(len(union), dtype=object)
            if len(c):
                pos = np.searchsorted(union, c.keys)
                mult = s // c.den
                col[pos] = [int(v) * mult for v in c.nums.tolist()]
            cols.append(col)
        mat = np.stack(cols, axis=1) if ncols else np.zeros((len(union), 0), dtype=object)
        try:
            small = mat.astype(np.int64)
            wide = not np.array_equal(small.astype(object), mat)
        except OverflowError:
            wide = True
        if not wide:
            rows.update(map(tuple, np.unique(small, axis=0).tolist()))
        else:
            rows.update(tuple(int(v) for v in r) for r in mat.tolist())
    rows.discard((0,) * ncols)
    return rows, scales


def rref(rows, ncols):
    """Reduced row echelon form over the rationals; returns (rows, pivots)."""
    basis = []  # list of (pivot, row) kept reduced
    for r in rows:
        v = [Fraction(x) for x in r]
        for p, b in basis:
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        new_basis = []
        for p, b in basis:
            if b[piv]:
                f = b[piv]
                b = [x - f * y for x, y in zip(b, v)]
            new_basis.append((p, b))
        basis = new_basis + [(piv, v)]
        if len(basis) == ncols:
            break
    basis.sort()
    return [b for _, b in basis], [p for p, _ in basis]


def nullspace(rows, ncols):
    """Canonical (reduced echelon) basis of the right nullspace."""
    R, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        vecs.append(v)
    basis, _ = rref(vecs, ncols)
    return basis


def rank_of(forms, levels24):
    rows, _ = coefficient_rows(forms, levels24)
    R, _ = rref(rows, len(forms))
    return len(R)


# relation problems ------------------------------------------------------------------


@dataclass
class RelationProblem:
    """Find all ``x`` with ``Σ x_j forms[j]`` vanishing at the constrained q-orders.

    ``orders`` lists the q-exponents that must vanish (default: only q⁰).  With
    ``full_vanishing`` each solution is then checked at every stored order.
    """

    forms: list
    names: list = None
    orders: list = field(default_factory=lambda: [0])
    full_vanishing: bool = True

    def __post_init__(self):
        if not self.forms:
            raise ValueError("a relation problem needs at least one form")
        if self.names is None:
            self.names = [f"a{i + 1}" for i in range(len(self.forms))]
        if len(self.names) != len(self.forms):
            raise ValueError("one name per form")
        first = self.forms[0]
        for f in self.forms[1:]:
            _comparable(first, f)
        t = min(f.trunc for f in self.forms)
        for o in self.orders:
            if to_q24(o) >= t:
                raise PrecisionError(f"constraint q^{o} is beyond the common truncation q^{Fraction(t, 24)}")


@dataclass
class SolutionSpace:
    names: list
    basis: list
    constrained_orders: list
    checked_below: Fraction = None
    vanishes_identically: bool = None
    witness: tuple = None

    @property
    def dimension(self):
        return len(self.basis)

    def normalized(self, name):
        """The unique solution with coefficient 1 at ``name`` (dimension 1 only)."""
        if self.dimension != 1:
            raise ValueError(f"solution space has dimension {self.dimension}, not 1")
        v = self.basis[0]
        c = v[self.names.index(name)]
        if c == 0:
            raise ValueError(f"{name} has coefficient 0 in every solution")
        return {n: x / c for n, x in zip(self.names, v)}

    def express(self, dependent, free):
        """Write each dependent coefficient as a linear form in the free ones.

        Returns ``{dep: {free_name: coefficient}}``; requires the free
        coordinates to parametrize the space.
        """
        fi = [self.names.index(n) for n in free]
        if len(fi) != self.dimension:
            raise ValueError(f"need exactly {self.dimension} free coefficients, got {len(fi)}")
        # rows of B restricted to free columns must be invertible
        B = [[v[j] for j in fi] for v in self.basis]
        n = len(fi)
        M = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(B)]
        for c in range(n):
            piv = next((r for r in range(c, n) if M[r][c] != 0), None)
            if piv is None:
                raise ValueError("the chosen free coefficients do not parametrize the solutions")
            M[c], M[piv] = M[piv], M[c]
            p = M[c][c]
            M[c] = [x / p for x in M[c]]
            for r in range(n):
                if r != c and M[r][c]:
                    f = M[r][c]
                    M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        Binv = [row[n:] for row in M]  # x = x_free · Binv · basis  (Binv = B⁻¹)
        out = {}
        for d in dependent:
            j = self.names.index(d)
            out[d] = {free[a]: sum(Binv[a][b] * self.basis[b][j] for b in range(n)) for a in range(n)}
        return out

    def to_dict(self):
        return {
            "names": list(self.names),
            "dimension": self.dimension,
            "basis": [[str(x) for x in v] for v in self.basis],
            "constrained_orders": [str(o) for o in self.constrained_orders],
            "checked_below": None if self.checked_below is None else str(self.checked_below),
            "vanishes_identically": self.vanishes_identically,
        }


def combine(forms, coeffs):
    return qs_lincomb([(c, f.with_meta(None)) for c, f in zip(coeffs, forms) if c != 0] or
                      [(0, forms[0].with_meta(None))], meta=None)


def solve_relation(problem):
    """Exact nullspace of the constrained coefficient matrix."""
    forms = problem.forms
    levels = sorted({to_q24(o) for o in problem.orders})
    rows, scales = coefficient_rows(forms, levels)
    ybasis = nullspace(rows, len(forms))
    basis = [[y * s for y, s in zip(v, scales)] for v in ybasis]
    basis, _ = rref(basis, len(forms))
    space = SolutionSpace(list(problem.names), basis, [Fraction(k, 24) for k in levels])
    if problem.full_vanishing:
        t = min(f.trunc for f in forms)
        space.checked_below = Fraction(t, 24)
        space.vanishes_identically = True
        for v in basis:
            total = combine(forms, v)
            if not total.is_zero():
                k = total.valuation()
                space.vanishes_identically = False
                space.witness = (Fraction(k, 24), str(total.coeff24(k)))
                break
    return space


# independence certificates ---------------------------------------------------------


@dataclass
class RankCertificate:
    n: int
    weight: int
    index: int
    monomials: list
    rank: int
    checked_below: Fraction

    @property
    def expected(self):
        return len(self.monomials)

    @property
    def full_rank(self):
        return self.rank == self.expected

    def to_dict(self):
        return {"n": self.n, "weight": self.weight, "index": self.index, "monomials": self.monomials,
                "rank": self.rank, "expected": self.expected, "full_rank": self.full_rank,
                "checked_below": str(self.checked_below)}


def generator_list(n):
    """``(name, weight, index)`` of the O(Dₙ) generators for 2 ≤ n ≤ 8."""
    gens = [("phi_0_1", 0, 1), ("phi_m2_1", -2, 1), ("phi_m4_1", -4, 1)]
    gens += [(f"phi_m{2 * k}_2", -2 * k, 2) for k in range(3, n)]
    if n >= 3:
        gens.append(("omega_sq", -2 * n, 2))
    return gens


def _generator_form(n, name, trunc):
    from .forms import omega_sq, phi_index2, tower_form

    if name == "omega_sq":
        return omega_sq(n, trunc)
    if name.endswith("_2"):
        k = int(name[len("phi_m"):-2]) // 2
        return phi_index2(n, k, trunc)
    return tower_form(name, n, trunc)


def modular_monomials(weight):
    """Exponent pairs (a, b) with 4a + 6b = weight."""
    if weight < 0 or weight % 2:
        return []
    return [(a, (weight - 4 * a) // 6) for a in range(weight // 4 + 1) if (weight - 4 * a) % 6 == 0]


def enumerate_monomials(n, weight, index):
    gens = generator_list(n)
    out = []
    for size in range(1, index + 1):
        for combo in combinations_with_replacement(range(len(gens)), size):
            if sum(gens[i][2] for i in combo) != index:
                continue
            wg = sum(gens[i][1] for i in combo)
            for a, b in modular_monomials(weight - wg):
                out.append((a, b, tuple(gens[i][0] for i in combo)))
    return out


def _monomial_name(a, b, names):
    parts = []
    if a:
        parts.append("E4" if a == 1 else f"E4^{a}")
    if b:
        parts.append("E6" if b == 1 else f"E6^{b}")
    return "·".join(parts + list(names))


def independence_rank(n, weight, index, trunc=4, inject_duplicate=False):
    """Rank of all generator monomials of the given weight and index.

    Full rank certifies that no relation of this bidegree is visible below
    ``q^trunc``.  ``inject_duplicate`` repeats the first monomial as a control.
    """
    from .blocks import eisenstein_E4, eisenstein_E6

    if index > 2 or index < 1:
        raise ValueError("independence certificates are limited to index 1 and 2")
    if not 2 <= n <= 8:
        raise ValueError("n must be between 2 and 8")
    monos = enumerate_monomials(n, weight, index)
    if inject_duplicate and monos:
        monos = monos + [monos[0]]
    values = []
    cache = {}
    for a, b, names in monos:
        key = names
        if key not in cache:
            prod = None
            for nm in names:
                g = _generator_form(n, nm, trunc)
                prod = g if prod is None else qs_mul(prod, g)
            cache[key] = prod
        v = cache[key]
        for _ in range(a):
            v = qs_mul(eisenstein_E4(trunc), v)
        for _ in range(b):
            v = qs_mul(eisenstein_E6(trunc), v)
        values.append(v)
    t = min((v.trunc for v in values), default=to_q24(trunc))
    levels = [k for k in range(0, t, 24)]
    rank = rank_of(values, levels) if values else 0
    return RankCertificate(n, weight, index, [_monomial_name(*m) for m in monos], rank, Fraction(t, 24))


# divisibility ---------------------------------------------------------------------------


@dataclass
class ProbeResult:
    ok: bool
    quotient: object = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def divisibility_probe(a, n=None):
    """Try to divide ``a`` by ``(ω^{Dₙ})²``; it must vanish on every ``z_i = 0`` first."""
    from .forms import omega_sq

    n = a.nvars if n is None else n
    if a.nvars != n:
        raise ValueError(f"expansion has {a.nvars} variables, expected {n}")
    for i in range(n):
        for k, c in a.coeffs.items():
            if not lp_restrict(c, i).is_zero():
                return ProbeResult(False, None, f"does not vanish on z{i + 1} = 0 (at q^{Fraction(k, 24)})")
    w2 = omega_sq(n, a.prec)
    try:
        q = qs_div(a, w2)
    except InexactDivisionError as exc:
        return ProbeResult(False, None, f"inexact division: {exc}")
    return ProbeResult(True, q, "")
