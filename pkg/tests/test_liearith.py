import pytest

from permsol import groupio
from permsol.budgets import BudgetExceededError
from permsol.graphs import are_independent
from permsol.liearith import (
    LieSpec,
    ack_certificate,
    cyclotomic_value,
    factorize,
    family_primes,
    independence_sets_exclude,
    is_prime,
    l1_bound,
    simple_group_order,
    smallest_prime_factor,
    valuation,
    zsigmondy,
    zsigmondy_exists,
)

MERSENNE_PRIMES = {3, 7, 31, 127, 8191, 131071, 524287}


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}
    for n in range(2, 43):
        assert is_prime(n) == (n in primes)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)


def test_factorize_and_valuation():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}
    assert valuation(360, 2) == 3
    assert valuation(360, 7) == 0
    assert smallest_prime_factor(91) == 7
    assert smallest_prime_factor(2**31 - 1) == 2**31 - 1


def test_cyclotomic_values():
    assert cyclotomic_value(1, 5) == 4
    assert cyclotomic_value(2, 7) == 8
    assert cyclotomic_value(6, 2) == 3
    assert cyclotomic_value(12, 2) == 13
    # Phi_k(x) multiply to x^k - 1 over divisors of k
    for k in (6, 12, 20, 36):
        prod = 1
        for d in range(1, k + 1):
            if k % d == 0:
                prod *= cyclotomic_value(d, 3)
        assert prod == 3**k - 1


def test_zsigmondy_examples():
    assert zsigmondy(2, 6) is None
    assert zsigmondy(7, 2) is None
    assert zsigmondy(2, 10) == 11
    assert zsigmondy(2, 4) == 5
    assert zsigmondy(2, 5) == 31
    assert zsigmondy(3, 3) == 13
    assert zsigmondy(2, 12) == 13
    with pytest.raises(ValueError):
        zsigmondy(4, 3)
    with pytest.raises(ValueError):
        zsigmondy(2, 1)


def test_zsigmondy_defining_properties():
    for p in (2, 3, 5, 7, 11, 13):
        for k in range(2, 13):
            r = zsigmondy(p, k)
            exists = zsigmondy_exists(p, k)
            assert (r is not None) == exists
            if r is None:
                assert (k == 2 and p in MERSENNE_PRIMES) or (p, k) == (2, 6)
                continue
            assert is_prime(r)
            assert (p**k - 1) % r == 0
            for i in range(1, k):
                assert (p**i - 1) % r, (p, k, i)
            assert (r - 1) % k == 0
            assert r >= k + 1


def test_zsigmondy_smallest():
    # oracle: trial-divide p^k - 1 completely and pick the least primitive prime
    for p in (2, 3, 5):
        for k in range(2, 11):
            n = p**k - 1
            primes = sorted(factorize(n))
            least = None
            for r in primes:
                if all((p**i - 1) % r for i in range(1, k)):
                    least = r
                    break
            assert zsigmondy(p, k) == least


def test_zsigmondy_shallow_budget():
    # an input whose primitive part resists the bounded tiers
    with pytest.raises(BudgetExceededError):
        zsigmondy(163, 37, deep=False)
    assert zsigmondy_exists(163, 37)


def test_simple_group_order_examples():
    assert simple_group_order(LieSpec("linear", 2, 7)) == (168, 2)
    assert simple_group_order(LieSpec("linear", 6, 2)) == (20158709760, 2)
    assert simple_group_order(LieSpec("linear", 2, 4)) == (60, 2)


def test_simple_group_order_matches_enumerated_psl2():
    for q in groupio.SUPPORTED_PSL2_Q:
        order, _ = simple_group_order(LieSpec("linear", 2, q))
        assert order == groupio.builtin(f"psl2_{q}").order(), q


def test_out_orders_against_atlas():
    table = [
        (("linear", 2, 9), 4),
        (("linear", 3, 4), 12),
        (("linear", 5, 2), 2),
        (("unitary", 4, 2), 2),
        (("unitary", 4, 3), 8),
        (("unitary", 6, 2), 6),
        (("symplectic", 3, 2), 1),
        (("symplectic", 2, 4), 4),
        (("symplectic", 4, 2), 1),
        (("odd_orthogonal", 3, 3), 2),
        (("plus_orthogonal", 4, 2), 6),
        (("plus_orthogonal", 4, 3), 24),
        (("minus_orthogonal", 4, 2), 2),
        (("minus_orthogonal", 4, 3), 4),
    ]
    for (family, dim, q), expected in table:
        assert simple_group_order(LieSpec(family, dim, q))[1] == expected, (family, dim, q)


def test_lie_spec_validation():
    with pytest.raises(ValueError):
        LieSpec("linear", 1, 5)
    with pytest.raises(ValueError):
        LieSpec("odd_orthogonal", 3, 4)  # q must be odd
    with pytest.raises(ValueError):
        LieSpec("linear", 2, 6)  # not a prime power
    with pytest.raises(ValueError):
        LieSpec("linear", 2, 2)  # L2(2) is not simple
    with pytest.raises(ValueError):
        LieSpec("cheese", 4, 2)


def test_family_primes_examples():
    fp = family_primes(LieSpec("linear", 6, 2))
    assert (fp.r, fp.s, fp.t) == (None, 31, 5)
    fp = family_primes(LieSpec("linear", 3, 3))
    assert (fp.r, fp.s, fp.t) == (13, None, None)
    fp = family_primes(LieSpec("symplectic", 2, 8))
    assert (fp.r, fp.s, fp.t) == (13, None, None)


def _mersenne_q(p, e):
    return e == 1 and p in MERSENNE_PRIMES


def test_linear_notation_exception_lists():
    # r undefined exactly at (2, Mersenne, 1), (2,2,3), (3,2,2), (6,2,1)
    for n in range(2, 9):
        for p in (2, 3, 5, 7, 31):
            for e in (1, 2, 3):
                if (n, p, e) in {("x",)}:
                    continue
                try:
                    spec = LieSpec("linear", n, p**e)
                except ValueError:
                    continue  # non-simple parameter combinations
                fp = family_primes(spec)
                r_missing = (
                    (n == 2 and _mersenne_q(p, e))
                    or (n, p, e) in {(2, 2, 3), (3, 2, 2), (6, 2, 1)}
                )
                assert (fp.r is None) == r_missing, ("r", n, p, e)
                s_missing = (
                    (n == 2 and e == 1)
                    or (n == 2 and p in MERSENNE_PRIMES and e == 2)
                    or (n == 3 and _mersenne_q(p, e))
                    or (n, p, e) in {(2, 2, 6), (4, 2, 2), (7, 2, 1), (3, 2, 3)}
                )
                assert (fp.s is None) == s_missing, ("s", n, p, e)
                t_missing = (
                    n < 4
                    or (n == 4 and _mersenne_q(p, e))
                    or (n, p, e) in {(4, 2, 3), (5, 2, 2), (8, 2, 1)}
                )
                assert (fp.t is None) == t_missing, ("t", n, p, e)


def test_symplectic_notation_exception_lists():
    for m in range(2, 8):
        for p in (2, 3, 5, 7):
            for e in (1, 2, 3):
                try:
                    spec = LieSpec("symplectic", m, p**e)
                except ValueError:
                    continue
                fp = family_primes(spec)
                r_missing = (m, p, e) == (3, 2, 1)
                assert (fp.r is None) == r_missing, ("r", m, p, e)
                s_missing = (
                    (m == 2 and _mersenne_q(p, e))
                    or (m, p, e) in {(2, 2, 3), (3, 2, 2), (6, 2, 1)}
                )
                assert (fp.s is None) == s_missing, ("s", m, p, e)
                t_missing = (
                    (m == 2 and _mersenne_q(p, e))
                    or (m, p, e) in {(2, 2, 3), (4, 2, 1)}
                )
                assert (fp.t is None) == t_missing, ("t", m, p, e)


def test_unitary_notation_exception_lists():
    # the unitary notation lives on even n >= 4 (its factorization families
    # only exist there); odd n falls back to plain Zsigmondy availability
    for n in (4, 6):
        for p in (2, 3, 5):
            for e in (1, 2):
                try:
                    spec = LieSpec("unitary", n, p**e)
                except ValueError:
                    continue
                fp = family_primes(spec)
                assert (fp.r is None) == ((n, p, e) == (4, 2, 1)), ("r", n, p, e)
                assert (fp.s is None) == ((n, p, e) == (6, 2, 1)), ("s", n, p, e)
                assert fp.t is None
    for n in (3, 5, 7):
        for p in (2, 3):
            for e in (1, 2):
                try:
                    spec = LieSpec("unitary", n, p**e)
                except ValueError:
                    continue
                fp = family_primes(spec)
                assert (fp.r is None) == (zsigmondy(p, 2 * e * (n - 1)) is None)
                assert (fp.s is None) == (zsigmondy(p, e * n) is None)


def test_plus_orthogonal_notation_exception_lists():
    for m in range(4, 9):
        for p in (2, 3):
            for e in (1, 2):
                spec = LieSpec("plus_orthogonal", m, p**e)
                fp = family_primes(spec)
                assert (fp.r is None) == ((m, p, e) == (4, 2, 1)), ("r", m, p, e)
                assert (fp.s is None) == ((m, p, e) == (6, 2, 1)), ("s", m, p, e)
                assert (fp.t is None) == ((m, p, e) in {(4, 2, 2), (7, 2, 1)}), (
                    "t",
                    m,
                    p,
                    e,
                )


def test_family_primes_do_not_divide_out():
    # reduced parameter box (kept fast; larger boxes hit heavy factoring)
    families = [
        ("linear", range(2, 7)),
        ("unitary", range(3, 7)),
        ("symplectic", range(2, 6)),
        ("odd_orthogonal", range(3, 6)),
        ("minus_orthogonal", range(4, 7)),
        ("plus_orthogonal", range(4, 7)),
    ]
    for family, dims in families:
        for dim in dims:
            for q in (2, 3, 4, 5, 8, 9):
                try:
                    spec = LieSpec(family, dim, q)
                except ValueError:
                    continue
                _, out = simple_group_order(spec)
                fp = family_primes(spec)
                for prime in (fp.r, fp.s, fp.t):
                    if prime is not None:
                        assert out % prime, (family, dim, q, prime)


def test_l1_bound_examples():
    order_l62 = 20158709760
    b = l1_bound(7, order_l62, order_l62 // 63, 2)
    assert (b.n_exp, b.b_exp, b.out_exp) == (2, 1, 0)
    assert b.guaranteed_exp == 1
    b = l1_bound(2, 8, 8, 2)
    assert (b.n_exp, b.b_exp, b.out_exp) == (3, 3, 1)
    assert b.guaranteed_exp == 0
    b = l1_bound(5, 25, 1, 1)
    assert (b.n_exp, b.b_exp, b.out_exp) == (2, 0, 0)
    assert b.guaranteed_exp == 2
    with pytest.raises(ValueError):
        l1_bound(5, 0, 1, 1)


def test_ack_certificate_examples():
    cert = ack_certificate(LieSpec("linear", 5, 2), 31, 7)
    assert cert.certified
    cert = ack_certificate(LieSpec("symplectic", 3, 3), 7, 13)
    assert cert.certified
    with pytest.raises(ValueError, match="undefined"):
        ack_certificate(LieSpec("linear", 3, 4), 7, 5)  # r is a Zsigmondy exception
    with pytest.raises(ValueError, match="mismatch"):
        ack_certificate(LieSpec("linear", 5, 2), 11, 7)
    with pytest.raises(ValueError):
        ack_certificate(LieSpec("linear", 5, 2), 31, 31)


def test_ack_certificate_not_certified_cases():
    # s inside pi(q^n - 1) must not be certified
    cert = ack_certificate(LieSpec("linear", 5, 2), 31, 5)
    assert not cert.certified  # 5 divides n = 5
    cert = ack_certificate(LieSpec("linear", 2, 16), 17, 5)
    assert not cert.certified  # 5 divides q^2 - 1 = 255


def test_ack_conservative_against_group_oracle():
    # the certificate must never certify a pair the group shows dependent
    for q in (11, 16, 19):
        G = groupio.builtin(f"psl2_{q}")
        spec = LieSpec("linear", 2, q)
        fp = family_primes(spec)
        if fp.r is None:
            continue
        order = G.order()
        for s in sorted(factorize(order)):
            if s == fp.r:
                continue
            cert = ack_certificate(spec, fp.r, s)
            if cert.certified:
                assert are_independent(G, fp.r, s), (q, fp.r, s)


def test_independence_sets_fixture_primes():
    # substituted fixture primes for the (6,2,1) exceptional row
    assert independence_sets_exclude(LieSpec("linear", 6, 2), 7, 31)
    assert not independence_sets_exclude(LieSpec("linear", 6, 2), 7, 3)
