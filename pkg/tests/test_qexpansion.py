from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobi_tower.blocks import delta, eisenstein_E4, eta
from jacobi_tower.laurent import LaurentPoly
from jacobi_tower.qexpansion import (
    JacobiFormMeta,
    PrecisionError,
    QExpansion,
    format_series,
    qs_add,
    qs_div,
    qs_inverse,
    qs_lincomb,
    qs_mul,
    qs_pow,
    qs_rescale_tau,
    qs_restrict_last,
    qs_support_check,
    qs_tensor,
    to_q24,
)
from strategies import series


def scal(vals, t, meta=None):
    return QExpansion.scalar({24 * k: v for k, v in vals.items()}, 24 * t, meta)


def test_to_q24():
    assert to_q24(Fraction(1, 8)) == 3
    assert to_q24("1/2") == 12
    with pytest.raises(ValueError):
        to_q24(Fraction(1, 5))


def test_precision_error_beyond_truncation():
    a = scal({0: 1, 1: 2}, 2)
    assert a.coefficient(1) == 2
    with pytest.raises(PrecisionError):
        a.coefficient(2)
    assert a.coefficient(Fraction(1, 2)).is_zero()


def test_truncation_rules():
    a = scal({0: 1}, 3)
    b = scal({1: 1}, 2)
    assert qs_add(a, b).trunc == 48
    # (1 + O(q^3)) (q + O(q^2)) known below q^2
    assert qs_mul(a, b).trunc == 48
    assert qs_mul(b, b).trunc == 24 * 3


def test_terms_beyond_truncation_dropped():
    a = QExpansion(0, {0: LaurentPoly.constant(1), 48: LaurentPoly.constant(5)}, 48)
    assert 48 not in a.coeffs


@given(series(1, 4), series(1, 4))
def test_mul_commutes(a, b):
    assert qs_mul(a, b) == qs_mul(b, a)


@given(series(1, 3), series(1, 3), series(1, 3))
def test_mul_distributes(a, b, c):
    assert qs_mul(a, qs_add(b, c)) == qs_add(qs_mul(a, b), qs_mul(a, c))


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5), st.integers(1, 9))
def test_scalar_division_round_trip(vals, lead):
    t = len(vals)
    den = scal({0: lead, **{i + 1: v for i, v in enumerate(vals[1:])}}, t)
    num = scal({i: v for i, v in enumerate(vals)}, t)
    q = qs_div(num, den)
    assert qs_mul(q, den) == num


def test_inverse_of_eta_power():
    e = eta(5)
    inv = qs_inverse(e)
    prod = qs_mul(e, inv)
    assert prod.coefficient(0) == 1
    assert all(prod.coefficient(Fraction(k, 24)).is_zero() for k in range(1, prod.trunc))


def test_division_by_zero_series():
    with pytest.raises(ZeroDivisionError):
        qs_div(scal({0: 1}, 2), scal({}, 2))


def test_pow_matches_repeated_mul():
    e4 = eisenstein_E4(4)
    assert qs_pow(e4, 3) == qs_mul(e4, qs_mul(e4, e4))


def test_meta_propagation():
    e4 = eisenstein_E4(3)
    d = delta(3)
    m = qs_mul(e4, d).meta
    assert m.weight == 16 and m.symmetry == "scalar"
    with pytest.raises(ValueError):
        qs_add(e4, d)


def test_meta_validation():
    with pytest.raises(ValueError):
        JacobiFormMeta.jacobi(0, 1, (0,), "A1")
    with pytest.raises(ValueError):
        QExpansion(2, {}, 24, JacobiFormMeta.jacobi(0, 1, (1,), "A1"))
    with pytest.raises(ValueError):
        QExpansion(1, {0: LaurentPoly.constant(1, 2)}, 24)


def test_lincomb_drops_meta_on_request():
    e4 = eisenstein_E4(2)
    s = qs_lincomb([(1, e4), (-1, e4)], meta=None)
    assert s.is_zero() and s.meta is None


def test_restrict_last_updates_lattice():
    meta = JacobiFormMeta.jacobi(0, 1, (1, 1, 1), "D3", "O")
    a = QExpansion(3, {0: LaurentPoly.monomial((2, 0, 2), 1, 3)}, 24, meta)
    r = qs_restrict_last(a)
    assert r.meta.lattice == "D2" and r.nvars == 2
    assert r.coefficient(0) == LaurentPoly.monomial((2, 0), 1, 2)


def test_rescale_tau_doubles_index():
    meta = JacobiFormMeta.jacobi(0, 1, (Fraction(1, 2),), "A1")
    a = QExpansion(1, {24: LaurentPoly.monomial((2,), 1, 1)}, 48, meta)
    r = qs_rescale_tau(a, 2)
    assert r.meta.index == 2 and r.trunc == 96
    assert r.coefficient(2) == LaurentPoly.monomial((4,), 1, 1)


def test_tensor_variables_concatenate():
    a = QExpansion(1, {0: LaurentPoly.monomial((2,), 1, 1)}, 48)
    t = qs_tensor(a, a)
    assert t.nvars == 2
    assert t.coefficient(0) == LaurentPoly.monomial((2, 2), 1, 2)


def test_support_kinds():
    meta = JacobiFormMeta.jacobi(0, 1, (Fraction(1, 2),), "A1")
    weak = QExpansion(1, {0: LaurentPoly.monomial((2,), 1, 1)}, 48, meta)
    assert qs_support_check(weak, "weak")
    assert not qs_support_check(weak, "holomorphic")
    hol = QExpansion(1, {24: LaurentPoly.monomial((2,), 1, 1)}, 48, meta)
    assert qs_support_check(hol, "holomorphic")
    with pytest.raises(ValueError):
        qs_support_check(weak, "strong")


def test_format_series_shows_half_exponents():
    a = QExpansion(1, {0: LaurentPoly.from_dict({(1,): 1, (-1,): 1}, 1)}, 24)
    text = format_series(a)
    assert "1/2" in text and "O(q" in text
