import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobi_tower import forms as F
from jacobi_tower.blocks import eisenstein_E4, eisenstein_E6, phi_0_1
from jacobi_tower.laurent import LaurentPoly
from jacobi_tower.qexpansion import (
    PrecisionError,
    QExpansion,
    qs_lift,
    qs_lincomb,
    qs_mul,
    qs_restrict_last,
    qs_scale,
)
from jacobi_tower.relations import (
    RelationProblem,
    check_identity,
    coefficient_rows,
    combine,
    divisibility_probe,
    enumerate_monomials,
    generator_list,
    independence_rank,
    modular_monomials,
    nullspace,
    rank_of,
    rref,
    solve_relation,
)
from strategies import series

small = st.integers(-4, 4)


def naive_rank(matrix):
    M = [[Fraction(x) for x in row] for row in matrix]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] / M[rank][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
        col += 1
    return rank


def test_identity_witness():
    a = QExpansion(1, {0: LaurentPoly.from_dict({(2,): 1, (0,): 3}, 1)}, 48)
    b = QExpansion(1, {0: LaurentPoly.from_dict({(2,): 1, (0,): 4}, 1)}, 48)
    r = check_identity(a, b)
    assert not r and r.witness == (0, (0,), 3, 4)
    assert "differ at q^0" in r.describe()
    assert check_identity(a, a).describe() == "equal through q^1"


def test_identity_compares_below_common_truncation():
    a = QExpansion.scalar({0: 1, 48: 5}, 72)
    b = QExpansion.scalar({0: 1}, 48)
    assert check_identity(a, b).equal


def test_identity_rejects_incomparable():
    with pytest.raises(ValueError):
        check_identity(eisenstein_E4(2), eisenstein_E6(2))
    with pytest.raises(ValueError):
        check_identity(phi_0_1(2), F.phi_0_1_D8(2))


@given(series(1, 3), series(1, 3), series(1, 3))
def test_identity_is_an_equivalence(a, b, c):
    assert check_identity(a, a).equal
    assert check_identity(a, b).equal == check_identity(b, a).equal
    if check_identity(a, b).equal and check_identity(b, c).equal:
        t = min(a.trunc, b.trunc, c.trunc)
        assert all(a.coeffs.get(k) == c.coeffs.get(k) for k in range(t))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=6))
def test_nullspace_annihilates_and_has_complementary_dimension(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    R, pivots = rref(rows, 4)
    assert len(R) == naive_rank(rows)
    N = nullspace(rows, 4)
    assert len(N) + len(R) == 4
    for v in N:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=5), st.permutations(range(5)))
def test_nullspace_is_canonical(rows, perm):
    shuffled = [rows[i] for i in perm if i < len(rows)]
    assert nullspace(rows, 3) == nullspace(shuffled, 3)


def test_trivial_nullspace():
    assert nullspace([[1, 0], [0, 1]], 2) == []


@given(st.lists(st.integers(1, 5), min_size=2, max_size=4), st.data())
def test_rank_with_dedupe_equals_naive_rank(mults, data):
    forms = []
    for m in mults:
        vals = {24 * k: data.draw(small) * m for k in range(3)}
        forms.append(QExpansion.scalar(vals, 72))
    forms.append(qs_scale(forms[0], 3))
    levels = [0, 24, 48]
    matrix = [[f.coeff24(k).constant_term() for f in forms] for k in levels]
    assert rank_of(forms, levels) == naive_rank(matrix)
    rows, scales = coefficient_rows(forms, levels)
    assert len(rows) <= len(levels) and len(scales) == len(forms)


def test_solver_recovers_planted_relation():
    t = 4
    e4, e6 = eisenstein_E4(t), eisenstein_E6(t)
    p = phi_0_1(t)
    fs = [f.with_meta(None) for f in (qs_mul(e4, p), qs_mul(e6, p), qs_scale(qs_mul(e4, p), 3))]
    s = solve_relation(RelationProblem(fs, ["x", "y", "z"], orders=[0, 1, 2, 3]))
    assert s.dimension == 1
    v = s.normalized("x")
    assert v == {"x": 1, "y": 0, "z": Fraction(-1, 3)}
    assert combine(fs, s.basis[0]).is_zero()


def test_inconsistent_constraints_give_empty_space():
    s = solve_relation(RelationProblem([eisenstein_E4(2)], orders=[0]))
    assert s.dimension == 0
    with pytest.raises(ValueError):
        s.normalized("a1")


def test_full_vanishing_reports_witness():
    a = QExpansion.scalar({0: 1, 24: 1}, 48)
    b = QExpansion.scalar({0: 1, 24: 2}, 48)
    s = solve_relation(RelationProblem([a, b], orders=[0]))
    assert s.dimension == 1 and s.vanishes_identically is False and s.witness is not None


def test_problem_validation():
    with pytest.raises(ValueError):
        RelationProblem([])
    with pytest.raises(ValueError):
        RelationProblem([eisenstein_E4(2)], names=["a", "b"])
    with pytest.raises(PrecisionError):
        RelationProblem([eisenstein_E4(2)], orders=[2])
    with pytest.raises(ValueError):
        RelationProblem([eisenstein_E4(2), eisenstein_E6(2)])


def test_express_round_trip():
    rng = random.Random(3)
    vecs = [QExpansion.scalar({0: rng.randint(-5, 5), 24: rng.randint(-5, 5)}, 48) for _ in range(4)]
    s = solve_relation(RelationProblem(vecs, orders=[0, 1]))
    assert s.dimension == 2
    ex = s.express(["a3", "a4"], ["a1", "a2"])
    for free in ((1, 0), (0, 1), (2, -3)):
        coeffs = list(free) + [sum(ex[d][n] * c for n, c in zip(["a1", "a2"], free)) for d in ("a3", "a4")]
        assert qs_lincomb(list(zip(coeffs, vecs))).is_zero()
    with pytest.raises(ValueError):
        s.express(["a3"], ["a1"])


def test_monomial_enumeration():
    assert modular_monomials(12) == [(0, 2), (3, 0)]
    assert modular_monomials(2) == [] and modular_monomials(-4) == []
    assert [g[0] for g in generator_list(4)] == ["phi_0_1", "phi_m2_1", "phi_m4_1", "phi_m6_2", "omega_sq"]
    assert len(enumerate_monomials(2, 0, 1)) == 2  # phi_0 and E4 phi_-4


def test_independence_certificate_and_control():
    cert = independence_rank(3, -4, 2, trunc=3)
    assert cert.full_rank and cert.expected > 0
    dup = independence_rank(3, -4, 2, trunc=3, inject_duplicate=True)
    assert not dup.full_rank and dup.rank == cert.rank
    with pytest.raises(ValueError):
        independence_rank(3, 0, 3)


def test_divisibility_probe_accepts_twelve_omega_squared():
    lhs = qs_restrict_last(F.phi_index2(4, 3, 3))
    r = divisibility_probe(lhs, 3)
    assert r and r.quotient.coefficient(0) == LaurentPoly.constant(12, 3)


def test_divisibility_probe_round_trip_with_e4():
    w2 = F.omega_sq(3, 3)
    r = divisibility_probe(qs_mul(eisenstein_E4(3), w2))
    assert r and r.quotient.with_meta(None) == qs_lift(eisenstein_E4(3), 3).with_meta(None)


def test_divisibility_probe_rejects_nonvanishing():
    r = divisibility_probe(F.tower_form("phi_0_1", 3, 2))
    assert not r and "does not vanish" in r.reason
