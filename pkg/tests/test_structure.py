import random

import pytest

from permsol import groupio, kernel, structure
from permsol.budgets import BudgetExceededError, Budgets
from permsol.permcore import Permutation, build_group
from permsol.structure import (
    all_two_generated_soluble,
    commutator_of_subgroups,
    core_of_subgroup,
    coset_action,
    cyclic_subgroup_reps,
    derived_series,
    find_insoluble_conjugate_pair,
    is_p_closed,
    is_soluble,
    non_mersenne_prime_in_range,
    normal_closure,
    soluble_radical,
    subgroup_intersection,
)


def P(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


def test_derived_series_examples():
    assert derived_series(groupio.builtin("S4")).orders == [24, 12, 4, 1]
    assert derived_series(groupio.builtin("A5")).orders == [60, 60]
    assert derived_series(groupio.builtin("C1")).orders == [1]


def test_derived_series_invariants():
    for name in ["S4", "A5", "D12", "S6", "psl2_7", "C30"]:
        series = derived_series(groupio.builtin(name))
        for bigger, smaller in zip(series.terms, series.terms[1:]):
            assert smaller.is_subgroup_of(bigger)
        tail = series.terms[-1]
        assert structure.derived_subgroup(tail).order() == tail.order()


def test_is_soluble():
    assert is_soluble(groupio.builtin("S4"))
    assert not is_soluble(groupio.builtin("A5"))
    assert is_soluble(groupio.builtin("C1"))
    # agreement with the derived series route
    for name, G in groupio.builtin_corpus(720):
        assert is_soluble(G) == (derived_series(G).orders[-1] == 1), name


def test_normal_closure_examples():
    A5 = groupio.builtin("A5")
    S4 = groupio.builtin("S4")
    assert normal_closure(A5, [P(5, (0, 1, 2))]).order() == 60
    V4 = normal_closure(S4, [P(4, (0, 1), (2, 3))])
    assert V4.order() == 4
    assert normal_closure(S4, [Permutation.identity(4)]).order() == 1
    with pytest.raises(ValueError):
        normal_closure(A5, [P(5, (0, 1))])  # odd permutation not in A5


def test_commutator_of_subgroups():
    A5 = groupio.builtin("A5")
    A4 = groupio.builtin("A4_in_A5")
    C5 = groupio.builtin("C5_in_A5")
    assert commutator_of_subgroups(A4, C5, A5).order() == 60
    S3xC5 = groupio.builtin("S3xC5")
    S3part = build_group([P(8, (0, 1)), P(8, (0, 1, 2))])
    C5part = build_group([P(8, (3, 4, 5, 6, 7))])
    assert commutator_of_subgroups(S3part, C5part, S3xC5).order() == 1
    S4 = groupio.builtin("S4")
    assert commutator_of_subgroups(S4, S4, S4).order() == 12


def test_commutator_contains_sampled_commutators():
    A5 = groupio.builtin("A5")
    A4 = groupio.builtin("A4_in_A5")
    C5 = groupio.builtin("C5_in_A5")
    com = commutator_of_subgroups(A4, C5, A5)
    rng = random.Random(23)
    a_elems = [p for p in A4.elements()]
    b_elems = [p for p in C5.elements()]
    for _ in range(100):
        a = rng.choice(a_elems)
        b = rng.choice(b_elems)
        assert a.commutator_with(b) in com


def test_soluble_radical_examples():
    S4xA5 = groupio.builtin("S4xA5")
    for method in ("gkps", "bruteforce", "both"):
        assert soluble_radical(S4xA5, method).order() == 24
    A5 = groupio.builtin("A5")
    assert soluble_radical(A5, "both").order() == 1
    S4 = groupio.builtin("S4")
    assert soluble_radical(S4, "both").order() == 24
    with pytest.raises(ValueError):
        soluble_radical(S4, "montecarlo")


def test_radical_agreement_small_corpus():
    for name, G in groupio.builtin_corpus(720):
        R1 = soluble_radical(G, "gkps")
        R2 = soluble_radical(G, "bruteforce")
        assert R1 == R2, name


def test_radical_is_maximal():
    for name in ["S4xA5", "A5xC2", "S4", "A5", "D12", "psl2_7", "S3xS3"]:
        G = groupio.builtin(name)
        R = soluble_radical(G, "gkps")
        assert is_soluble(R)
        for g in G.generators:
            assert R.conjugated_by(g) == R
        assert structure.radical_quotient_is_reduced(G, R)


def test_radical_elementwise_contract():
    # every element of the radical generates a soluble subgroup with every y
    G = groupio.builtin("A5xC2")
    R = soluble_radical(G, "gkps")
    rng = random.Random(31)
    ys = G.random_elements(25, seed=8)
    for x in R.elements():
        for y in ys:
            assert kernel.two_gen_order_soluble(x.raw, y.raw, G.degree)[1]


def test_is_p_closed_examples():
    assert is_p_closed(groupio.builtin("D10"), 5)
    assert not is_p_closed(groupio.builtin("A4"), 3)
    assert is_p_closed(groupio.builtin("S3"), 3)
    with pytest.warns(UserWarning):
        assert is_p_closed(groupio.builtin("S3"), 5)


def test_non_mersenne_prime_in_range():
    assert non_mersenne_prime_in_range(10) is None
    assert non_mersenne_prime_in_range(5) == 5
    assert non_mersenne_prime_in_range(16) == 11
    with pytest.raises(ValueError):
        non_mersenne_prime_in_range(4)
    # brute-force oracle over a range
    def oracle(n):
        for p in range(n // 2 + 1, n + 1):
            if p > 1 and all(p % d for d in range(2, p)) and (p + 1) & p != 0:
                return p
        return None

    for n in range(5, 120):
        got = non_mersenne_prime_in_range(n)
        expected = oracle(n)
        assert got == expected, n


def test_core_of_subgroup():
    S4 = groupio.builtin("S4")
    D8 = groupio.builtin("D8_in_S4")
    V4 = groupio.builtin("V4_in_S4")
    core = core_of_subgroup(S4, D8)
    assert core == V4
    assert core_of_subgroup(S4, S4) == S4
    A5 = groupio.builtin("A5")
    assert core_of_subgroup(A5, groupio.builtin("A4_in_A5")).order() == 1


def test_subgroup_intersection():
    A5 = groupio.builtin("A5")
    A4 = groupio.builtin("A4_in_A5")
    C5 = groupio.builtin("C5_in_A5")
    assert subgroup_intersection(A4, C5).order() == 1
    assert subgroup_intersection(A5, A5) == A5
    S3 = groupio.builtin("S3_in_S4")
    swap23 = build_group([P(4, (2, 3))])
    assert subgroup_intersection(S3, swap23).order() == 1


def test_cyclic_subgroup_reps_counts():
    # oracle: distinct cyclic subgroups via full enumeration of element sets
    for name in ["S4", "A5", "D12", "C30"]:
        G = groupio.builtin(name)
        seen = set()
        for p in G.elements():
            members = []
            x = p
            while True:
                members.append(x.raw)
                x = x * p
                if x == p:
                    break
            seen.add(frozenset(members))
        seen.discard(frozenset({Permutation.identity(G.degree).raw}))
        assert len(cyclic_subgroup_reps(G)) == len(seen), name


def test_all_two_generated_soluble_vs_naive():
    # dual route: literal double loop over all element pairs
    for name in ["S4", "A5", "C12", "D12", "A4", "S3xC5"]:
        G = groupio.builtin(name)
        els = [p.raw for p in G.elements()]
        naive = all(
            kernel.two_gen_order_soluble(a, b, G.degree)[1]
            for i, a in enumerate(els)
            for b in els[i:]
        )
        assert all_two_generated_soluble(G) == naive == is_soluble(G), name


def test_solubility_subgroup_closed_sampling():
    rng = random.Random(77)
    for name in ["S4", "D12", "C30", "S3xS3"]:
        G = groupio.builtin(name)
        assert is_soluble(G)
        sample = G.random_elements(10, seed=13)
        for a in sample:
            for b in sample:
                assert kernel.two_gen_order_soluble(a.raw, b.raw, G.degree)[1]


def test_coset_action():
    S4 = groupio.builtin("S4")
    V4 = groupio.builtin("V4_in_S4")
    Q, reps = coset_action(S4, V4)
    assert Q.degree == 6
    assert Q.order() == 6  # S4/V4 = S3
    A5 = groupio.builtin("A5")
    A4 = groupio.builtin("A4_in_A5")
    Q, _ = coset_action(A5, A4)
    assert Q.degree == 5
    assert Q.order() == 60  # faithful: A5 simple


def test_find_insoluble_conjugate_pair():
    A5 = groupio.builtin("A5")
    pair = find_insoluble_conjugate_pair(A5, 5)
    assert pair is not None
    x, y = pair
    assert x.order() == 5 and y.order() == 5
    assert not kernel.two_gen_order_soluble(x.raw, y.raw, 5)[1]
    assert find_insoluble_conjugate_pair(groupio.builtin("S4"), 2) is None


def test_budget_guards():
    A10 = groupio.builtin("A10")
    with pytest.raises(BudgetExceededError):
        soluble_radical(A10, "bruteforce")  # order 1814400 > subgroup budget
    with pytest.raises(BudgetExceededError):
        cyclic_subgroup_reps(groupio.builtin("A5"), Budgets(order_limit=3))
