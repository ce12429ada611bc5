"""Unit and parity tests for the permutation kernels.

Both backends (compiled and pure Python) must produce bit-identical results;
every test here runs against each importable backend.
"""

import random

import pytest

from permsol import _kernels_py

BACKENDS = [_kernels_py]
try:
    from permsol import _kernels

    BACKENDS.append(_kernels)
except ImportError:
    pass


def _cyc(degree, *cycles):
    img = list(range(degree))
    for c in cycles:
        for a, b in zip(c, c[1:]):
            img[a] = b
        img[c[-1]] = c[0]
    return bytes(img)


A5 = [_cyc(5, (0, 1, 2, 3, 4)), _cyc(5, (0, 1, 2))]
S4 = [_cyc(4, (0, 1)), _cyc(4, (0, 1, 2, 3))]
S6 = [_cyc(6, (0, 1)), _cyc(6, (0, 1, 2, 3, 4, 5))]
A10 = [_cyc(10, (0, 1, 2)), _cyc(10, (1, 2, 3, 4, 5, 6, 7, 8, 9))]
D12 = [_cyc(6, (0, 1, 2, 3, 4, 5)), bytes([(6 - i) % 6 for i in range(6)])]


def _random_perm(rng, degree):
    img = list(range(degree))
    rng.shuffle(img)
    return bytes(img)


@pytest.fixture(params=BACKENDS, ids=lambda m: m.BACKEND)
def K(request):
    return request.param


def test_compose_inverse_roundtrip(K):
    rng = random.Random(7)
    for _ in range(50):
        degree = rng.randrange(1, 30)
        p = _random_perm(rng, degree)
        q = _random_perm(rng, degree)
        assert K.compose(p, K.inverse(p)) == K.identity_perm(degree)
        assert K.inverse(K.inverse(p)) == p
        # (pq)^-1 = q^-1 p^-1
        assert K.inverse(K.compose(p, q)) == K.compose(K.inverse(q), K.inverse(p))


def test_compose_applies_left_first(K):
    p = _cyc(3, (0, 1))
    q = _cyc(3, (1, 2))
    # 0 -p-> 1 -q-> 2
    assert K.compose(p, q)[0] == 2


def test_conjugate_matches_definition(K):
    rng = random.Random(11)
    for _ in range(30):
        degree = rng.randrange(2, 20)
        p = _random_perm(rng, degree)
        g = _random_perm(rng, degree)
        direct = K.compose(K.compose(K.inverse(g), p), g)
        assert K.conjugate(p, g) == direct


def test_perm_order_and_power(K):
    assert K.perm_order(_cyc(5, (0, 1, 2), (3, 4))) == 6
    assert K.perm_order(K.identity_perm(4)) == 1
    assert K.perm_order(_cyc(10, (0, 1, 2, 3, 4, 5, 6))) == 7
    rng = random.Random(3)
    for _ in range(20):
        p = _random_perm(rng, 12)
        o = K.perm_order(p)
        assert K.perm_power(p, o) == K.identity_perm(12)
        assert K.perm_power(p, -1) == K.inverse(p)


def test_group_orders(K):
    assert K.group_order(A5, 5) == 60
    assert K.group_order(S4, 4) == 24
    assert K.group_order(S6, 6) == 720
    assert K.group_order(A10, 10) == 1814400
    assert K.group_order([], 7) == 1


def test_chain_membership(K):
    chain = K.build_chain(A5, 5)
    assert K.chain_contains(chain, _cyc(5, (0, 1, 2)))
    assert not K.chain_contains(chain, _cyc(5, (0, 1)))
    assert K.chain_contains(chain, K.identity_perm(5))


def test_elements_lex_sorted_unique(K):
    for gens, degree, order in [(S4, 4, 24), (A5, 5, 60), (D12, 6, 12)]:
        chain = K.build_chain(gens, degree)
        els = list(K.elements_lex(chain, degree))
        assert len(els) == order
        assert els == sorted(els)
        assert len(set(els)) == order


def test_elements_match_bruteforce_closure(K):
    # independent oracle: naive closure by repeated multiplication
    for gens, degree in [(S4, 4), (A5, 5), (D12, 6)]:
        closure = {K.identity_perm(degree)}
        frontier = list(closure)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = K.compose(x, g)
                    if y not in closure:
                        closure.add(y)
                        nxt.append(y)
            frontier = nxt
        chain = K.build_chain(gens, degree)
        assert sorted(closure) == list(K.elements_lex(chain, degree))


def test_is_soluble(K):
    assert K.is_soluble_gens(S4, 4)
    assert not K.is_soluble_gens(A5, 5)
    assert not K.is_soluble_gens(A10, 10)
    assert K.is_soluble_gens(D12, 6)
    assert K.is_soluble_gens([], 3)


def test_two_gen_order_soluble(K):
    order, soluble = K.two_gen_order_soluble(A5[0], A5[1], 5)
    assert (order, soluble) == (60, False)
    order, soluble = K.two_gen_order_soluble(S4[0], S4[1], 4)
    assert (order, soluble) == (24, True)


def test_normal_closure(K):
    gens = K.normal_closure_gens(S4, [_cyc(4, (0, 1), (2, 3))], 4)
    assert K.group_order(gens, 4) == 4
    gens = K.normal_closure_gens(A5, [_cyc(5, (0, 1, 2))], 5)
    assert K.group_order(gens, 5) == 60


def test_derived_gens(K):
    assert K.group_order(K.derived_gens(S4, 4), 4) == 12
    assert K.group_order(K.derived_gens(A5, 5), 5) == 60


def test_mult_table_closure(K):
    chain = K.build_chain(S4, 4)
    elements = list(K.elements_lex(chain, 4))
    table = K.mult_table(elements)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    ident = index[K.identity_perm(4)]
    # closure of the 4-cycle is the C4 it generates
    sub = K.closure_table(table, n, [index[_cyc(4, (0, 1, 2, 3))]], ident)
    assert len(sub) == 4
    packed = K.closure_table_packed(table, n, [index[_cyc(4, (0, 1, 2, 3))]], ident)
    assert list(memoryview(packed).cast("H")) == sub
    # the table agrees with direct composition
    rng = random.Random(5)
    for _ in range(50):
        i, j = rng.randrange(n), rng.randrange(n)
        assert elements[table[i * n + j]] == K.compose(elements[i], elements[j])


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backend_parity():
    pure, fast = _kernels_py, BACKENDS[1]
    rng = random.Random(42)
    for gens, degree in [(A5, 5), (S4, 4), (S6, 6), (A10, 10), (D12, 6)]:
        assert pure.build_chain(gens, degree) == fast.build_chain(gens, degree)
        assert pure.group_order(gens, degree) == fast.group_order(gens, degree)
        assert pure.is_soluble_gens(gens, degree) == fast.is_soluble_gens(gens, degree)
        assert pure.derived_gens(gens, degree) == fast.derived_gens(gens, degree)
    for _ in range(200):
        degree = rng.randrange(1, 16)
        p, q = _random_perm(rng, degree), _random_perm(rng, degree)
        assert pure.compose(p, q) == fast.compose(p, q)
        assert pure.inverse(p) == fast.inverse(p)
        assert pure.conjugate(p, q) == fast.conjugate(p, q)
        assert pure.perm_order(p) == fast.perm_order(p)
        assert pure.first_moved(p) == fast.first_moved(p)
    for _ in range(50):
        x, y = _random_perm(rng, 8), _random_perm(rng, 8)
        assert pure.two_gen_order_soluble(x, y, 8) == fast.two_gen_order_soluble(x, y, 8)
