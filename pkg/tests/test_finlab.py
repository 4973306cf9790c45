import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_subgroups, determinantal_invariants, int_det, quotient_order_oracle
from tbtop.circle import CirclePoint, ZERO, normalize
from tbtop.finlab import (
    BudgetExceeded,
    FiniteAbelianGroup,
    FiniteAbelianPresentation,
    FiniteCharacter,
    InvariantFactors,
    NotAHomomorphism,
    Subgroup,
    character_basis,
    character_lifts,
    determinant,
    diagonal,
    dual_group,
    enumerate_intermediate_subgroups,
    extend_character,
    matmul,
    p_component,
    pairing_matrix,
    quotient_decomposition,
    ranks,
    separation_is_density_check,
    smith_normal_form,
    thm17_injection,
)


def check_snf(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    d = diagonal(D)
    for i, row in enumerate(D):
        for j, a in enumerate(row):
            if i != j:
                assert a == 0
    assert all(a >= 0 for a in d)
    for a, b in zip(d, d[1:]):
        assert (b % a == 0) if a else b == 0
    return d


def test_snf_examples():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]
    assert check_snf([[0]]) == [0]
    assert check_snf([[2, 4], [6, 8]]) == [2, 4]


def test_determinant_matches_laplace():
    M = [[3, -1, 2], [0, 5, 7], [4, 4, -2]]
    assert determinant(M) == int_det(M)


matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_snf_properties(M):
    d = check_snf(M)
    assert d == determinantal_invariants(M)


@given(matrices, st.randoms(use_true_random=False))
def test_snf_permutation_invariant(M, rnd):
    rows = list(M)
    rnd.shuffle(rows)
    perm = list(range(len(M[0])))
    rnd.shuffle(perm)
    P = [[r[j] for j in perm] for r in rows]
    assert diagonal(smith_normal_form(P)[1]) == diagonal(smith_normal_form(M)[1])


@given(matrices)
def test_quotient_matches_coset_oracle(M):
    f = quotient_decomposition(FiniteAbelianPresentation.from_matrix(M))
    brute = quotient_order_oracle(M)
    if brute is None:
        assert f.free_rank > 0
    elif brute != "big":
        assert f.free_rank == 0 and f.order() == brute


def test_quotient_examples():
    q = quotient_decomposition(FiniteAbelianPresentation.from_matrix([[2, 0], [0, 2]]))
    assert q == InvariantFactors((2, 2), 0)
    assert quotient_decomposition(FiniteAbelianPresentation.from_matrix([[1]])) == InvariantFactors()
    assert quotient_decomposition(FiniteAbelianPresentation.from_matrix([[2, 0]])) == InvariantFactors((2,), 1)


def test_invariant_factor_validation():
    with pytest.raises(ValueError):
        InvariantFactors((2, 3))
    with pytest.raises(ValueError):
        InvariantFactors((1, 2))
    assert InvariantFactors.of_orders([2, 4, 3]) == InvariantFactors((2, 12))


def test_ranks_examples():
    r = ranks([2, 4, 3])
    assert r.rp == {2: 2, 3: 1} and r.r0 == 0 and r.r_total == 3
    assert ranks(InvariantFactors.of_orders([2, 4, 3])).rp == {2: 2, 3: 1}
    assert ranks(InvariantFactors()).r_total == 0
    r = ranks(InvariantFactors((), 2))
    assert r.r0 == 2 and r.r_total == 2


@settings(max_examples=40)
@given(st.lists(st.integers(2, 12), min_size=1, max_size=3).filter(lambda o: math.prod(o) <= 512))
def test_ranks_count_p_torsion(orders):
    G = FiniteAbelianGroup(tuple(orders))
    r = ranks(orders)
    for p in (2, 3, 5, 7, 11):
        killed = sum(1 for x in G.elements() if not any(G.scale(p, x)))
        assert killed == p ** r.rp.get(p, 0)


def test_p_component_examples():
    assert p_component(InvariantFactors((12,)), 2) == InvariantFactors((4,))
    assert p_component(InvariantFactors((12,)), 3) == InvariantFactors((3,))
    assert p_component(InvariantFactors((5,)), 2) == InvariantFactors()


@given(st.lists(st.integers(2, 30), min_size=1, max_size=3).filter(lambda o: math.prod(o) <= 600),
       st.sampled_from([2, 3, 5]))
def test_p_component_order_filter(orders, p):
    G = FiniteAbelianGroup(tuple(orders))
    f = p_component(InvariantFactors.of_orders(orders), p)
    # elements of p-power order
    count = 0
    for x in G.elements():
        y, k = x, 0
        while any(y) and k < 12:
            y, k = G.scale(p, y), k + 1
        count += not any(y)
    assert f.order() == count


def test_subgroup_enumeration_examples():
    K = FiniteAbelianGroup.of(2, 2)
    subs = enumerate_intermediate_subgroups(K, Subgroup.trivial(K))
    assert len(subs) == 4
    Z4 = FiniteAbelianGroup.of(4)
    assert enumerate_intermediate_subgroups(Z4, Subgroup.generated(Z4, [(1,)])) == []
    Z7 = FiniteAbelianGroup.of(7)
    subs = enumerate_intermediate_subgroups(Z7, Subgroup.trivial(Z7))
    assert [s.order for s in subs] == [1]


@pytest.mark.parametrize("orders", [(2, 2), (2, 4), (3, 3), (2, 2, 2), (4, 4), (2, 6), (8,)])
def test_subgroups_match_brute_force(orders):
    K = FiniteAbelianGroup(orders)
    ours = {s.elements for s in enumerate_intermediate_subgroups(K, Subgroup.trivial(K))}
    full = frozenset(K.elements())
    brute = {S for S in brute_subgroups(orders) if S != full}
    assert ours == brute


def test_budget_gate(monkeypatch):
    monkeypatch.setenv("TBTOP_BUDGET", "16")
    K = FiniteAbelianGroup.of(4, 8)
    with pytest.raises(BudgetExceeded):
        enumerate_intermediate_subgroups(K, Subgroup.trivial(K))


def test_thm17_examples():
    K = FiniteAbelianGroup.of(2, 2)
    members = thm17_injection(K, Subgroup.trivial(K))
    assert len(members) == 3
    Z8 = FiniteAbelianGroup.of(8)
    H = Subgroup.generated(Z8, [(2,)])
    members = thm17_injection(Z8, H)
    assert len(members) == 1 and members[0].subgroup == H
    K3 = FiniteAbelianGroup.of(2, 2, 2)
    members = thm17_injection(K3, Subgroup.trivial(K3))
    assert len(members) == 7
    family = {s.elements for s in enumerate_intermediate_subgroups(K3, Subgroup.trivial(K3))}
    assert all(m.subgroup.elements in family for m in members)


def test_dual_examples():
    assert dual_group(InvariantFactors((2, 4))) == InvariantFactors((2, 4))
    Z4 = FiniteAbelianGroup.of(4)
    assert character_basis(Z4)[0]((1,)) == CirclePoint(1, 4)
    G = FiniteAbelianGroup.of(2, 4, 6)
    P = pairing_matrix(G, character_basis(G))
    for i, row in enumerate(P):
        for j, v in enumerate(row):
            assert v == (normalize(1, G.orders[i]) if i == j else ZERO)


def test_density_examples():
    G = FiniteAbelianGroup.of(2, 2)
    chk = separation_is_density_check(G, [FiniteCharacter(G, (1, 0))])
    assert (chk.separates, chk.equals_dual) == (False, False)
    chk = separation_is_density_check(G, character_basis(G))
    assert (chk.separates, chk.equals_dual) == (True, True)
    T = FiniteAbelianGroup(())
    chk = separation_is_density_check(T, [])
    assert (chk.separates, chk.equals_dual) == (True, True)


def test_extend_examples():
    Z4 = FiniteAbelianGroup.of(4)
    k = extend_character(Z4, [(2,)], [CirclePoint(1, 2)])
    assert k((1,)) == CirclePoint(1, 4)
    assert extend_character(Z4, [(2,)], [ZERO]).coeffs == (0,)
    G = FiniteAbelianGroup.of(2, 4)
    k = extend_character(G, [(1, 0), (0, 1)], [CirclePoint(1, 2), CirclePoint(3, 4)])
    assert k((1, 0)) == CirclePoint(1, 2) and k((0, 1)) == CirclePoint(3, 4)
    with pytest.raises(NotAHomomorphism):
        extend_character(Z4, [(2,)], [CirclePoint(1, 4)])


@settings(max_examples=40)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=3).filter(lambda o: math.prod(o) <= 64),
       st.data())
def test_extension_restricts_and_counts(orders, data):
    G = FiniteAbelianGroup(tuple(orders))
    gens = data.draw(st.lists(st.tuples(*(st.integers(0, n - 1) for n in orders)), max_size=2))
    source = FiniteCharacter(G, data.draw(st.tuples(*(st.integers(0, n - 1) for n in orders))))
    values = [source(g) for g in gens]
    A = Subgroup.generated(G, gens)
    k = extend_character(G, gens, values)
    assert all(k(a) == source(a) for a in A.elements)
    assert len(list(character_lifts(G, gens, values))) == G.size // A.order
