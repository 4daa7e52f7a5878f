from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobi_tower.laurent import LaurentPoly, lp_act
from jacobi_tower.symmetry import (
    GroupTag,
    SignedPermutation,
    all_signed_permutations,
    enumerate_lattice_vectors,
    full_group,
    group_generators,
    in_dual_Dn,
    is_anti_invariant,
    is_invariant,
)
from strategies import laurent


@st.composite
def signed_perms(draw, n=3):
    perm = draw(st.permutations(range(n)))
    signs = draw(st.tuples(*[st.sampled_from((1, -1))] * n))
    return SignedPermutation(tuple(perm), signs)


@given(signed_perms(), signed_perms(), signed_perms())
def test_composition_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(signed_perms(), st.tuples(*[st.integers(-5, 5)] * 3))
def test_inverse_and_apply(g, x):
    assert (g * g.inverse()) == SignedPermutation.identity(3)
    assert g.inverse().apply(g.apply(x)) == x
    assert sum(v * v for v in g.apply(x)) == sum(v * v for v in x)


@given(signed_perms(), signed_perms(), laurent(3, 5))
def test_action_is_a_group_action(g, h, p):
    assert lp_act(g * h, p) == lp_act(g, lp_act(h, p))


@given(signed_perms(), signed_perms())
def test_parity_is_a_homomorphism(g, h):
    assert (g * h).parity == (g.parity + h.parity) % 2


def test_group_orders():
    assert len(full_group(GroupTag("W", 3))) == 24
    assert len(full_group(GroupTag("O", 3))) == 48
    assert len(full_group(GroupTag("OPrime", 4))) == 384
    assert len(full_group(GroupTag("W", 4))) == 192
    assert len(list(all_signed_permutations(3))) == 48


def test_weyl_group_is_even_sign_changes():
    assert all(g.parity == 0 for g in full_group(GroupTag("W", 3)))


def test_group_tag_errors():
    with pytest.raises(ValueError):
        GroupTag("O", 4)
    with pytest.raises(ValueError):
        GroupTag("OPrime", 5)
    with pytest.raises(ValueError):
        GroupTag("X", 3)
    assert GroupTag.orthogonal(4).kind == "OPrime"


def test_signed_permutation_validation():
    with pytest.raises(ValueError):
        SignedPermutation((0, 0), (1, 1))
    with pytest.raises(ValueError):
        SignedPermutation((0, 1), (1, 2))


def test_invariance_checks():
    n = 3
    sym = LaurentPoly.from_dict({(2, 0, 0): 1, (-2, 0, 0): 1, (0, 2, 0): 1, (0, -2, 0): 1,
                                 (0, 0, 2): 1, (0, 0, -2): 1}, n)
    assert is_invariant(sym, GroupTag("O", n))
    prod = LaurentPoly.from_dict({(1, 1, 1): 1, (-1, -1, 1): 1, (-1, 1, -1): 1, (1, -1, -1): 1,
                                  (-1, -1, -1): -1, (1, 1, -1): -1, (1, -1, 1): -1, (-1, 1, 1): -1}, n)
    assert is_anti_invariant(prod, GroupTag("W", n))
    assert not is_invariant(prod, GroupTag("O", n))
    with pytest.raises(ValueError):
        is_invariant(sym, GroupTag("O", 2))


def test_generator_count():
    for tag in (GroupTag("W", 3), GroupTag("O", 2)):
        assert len(group_generators(tag)) == tag.n


def test_lattice_counts():
    e8 = Counter(sum(x * x for x in v) for v in enumerate_lattice_vectors("E8", 4))
    assert e8[0] == 1 and e8[2] == 240 and e8[4] == 2160
    d16 = Counter(sum(x * x for x in v) for v in enumerate_lattice_vectors("D16+", 2))
    assert d16[2] == 480
    d4 = Counter(sum(x * x for x in v) for v in enumerate_lattice_vectors("D4", 2))
    assert d4[2] == 24


def test_enumeration_doubled_matches():
    a = enumerate_lattice_vectors("D3", 2)
    b = enumerate_lattice_vectors("D3", 2, doubled=True)
    assert sorted(tuple(2 * x for x in v) for v in a) == sorted(b)
    with pytest.raises(ValueError):
        enumerate_lattice_vectors("Q7", 2)
    with pytest.raises(ValueError):
        enumerate_lattice_vectors("D3", -1)


def test_dual_lattice_membership():
    assert in_dual_Dn((2, 0, -2)) and in_dual_Dn((1, -1, 1))
    assert not in_dual_Dn((1, 0, 0))
