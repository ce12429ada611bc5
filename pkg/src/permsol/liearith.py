"""Arithmetic for the classical simple groups: orders and outer automorphism
group orders, Zsigmondy primitive prime divisors, the per-family primes
r/s/t, p-part divisibility bounds, and independence certificates for pairs
(r, s) built from the prime sets a maximal soluble subgroup containing an
r-element can meet.

Everything here is exact big-integer arithmetic; q = p^e is accepted up to
2^64 and orders are unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import gmpy2

# ---------------------------------------------------------------------------
# primes and factoring

_MR_BASES_SMALL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_BASES_BIG = _MR_BASES_SMALL + (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, fixed extended bases above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = _MR_BASES_SMALL if n < _MR_LIMIT else _MR_BASES_BIG
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIME_LIST_BOUND = 2_000_000
_prime_list_cache: list[int] | None = None


def _primes_below_bound() -> list[int]:
    global _prime_list_cache
    if _prime_list_cache is None:
        sieve = bytearray([1]) * _PRIME_LIST_BOUND
        sieve[0] = sieve[1] = 0
        for i in range(2, isqrt(_PRIME_LIST_BOUND) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytes(len(sieve[i * i :: i]))
        _prime_list_cache = [i for i in range(_PRIME_LIST_BOUND) if sieve[i]]
    return _prime_list_cache


def _brent_rho(n: int, max_iter: int = 20_000_000) -> int | None:
    """A non-trivial factor of odd composite n (Brent with batched gcds,
    deterministic parameter sequence); None when the iteration cap is hit."""
    nz = gmpy2.mpz(n)
    if nz % 2 == 0:
        return 2
    c = gmpy2.mpz(1)
    while True:
        y, m, g, r, q = gmpy2.mpz(2), 128, gmpy2.mpz(1), 1, gmpy2.mpz(1)
        total = 0
        ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % nz
            j = 0
            while j < r and g == 1:
                ys = y
                for _ in range(min(m, r - j)):
                    y = (y * y + c) % nz
                    q = q * abs(x - y) % nz
                g = gmpy2.gcd(q, nz)
                j += m
            r *= 2
            total += r
            if total > max_iter:
                return None
        if g == nz:
            g = gmpy2.mpz(1)
            while g == 1:
                ys = (ys * ys + c) % nz
                g = gmpy2.gcd(abs(x - ys), nz)
        if g != nz:
            return int(g)
        c += 1


def _pminus1(n: int, extra_exponent: int, bound: int = 2_000_000) -> int | None:
    """Pollard p-1 with the exponent boosted by ``extra_exponent`` (useful
    when every prime factor is known to be 1 mod that number)."""
    nz = gmpy2.mpz(n)
    a = gmpy2.powmod(2, extra_exponent, nz)
    count = 0
    for q in _primes_below_bound():
        if q >= bound:
            break
        qe = q
        while qe * q <= bound:
            qe *= q
        a = gmpy2.powmod(a, qe, nz)
        count += 1
        if count % 8192 == 0:
            g = gmpy2.gcd(a - 1, nz)
            if 1 < g < nz:
                return int(g)
            if g == nz:
                return None
    g = gmpy2.gcd(a - 1, nz)
    if 1 < g < nz:
        return int(g)
    return None


def _prime_factors_hard(n: int, hint_modulus: int = 1, deep: bool = True) -> list[int]:
    """All prime factors of n (n having no factor below ~2e6).

    Deterministic output (factorisations are unique); the search is tiered:
    p-1, then Brent rho, then sympy's factorint with ECM for the survivors.
    With deep=False the ECM tier raises BudgetExceededError instead; callers
    never get a wrong or non-minimal answer either way.
    """
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    f = _pminus1(n, hint_modulus, bound=2_000_000 if deep else 500_000)
    if f is None:
        f = _brent_rho(n, max_iter=20_000_000 if deep else 4_000_000)
    if f is None:
        if not deep:
            from permsol.budgets import BudgetExceededError

            raise BudgetExceededError(
                f"factoring a {len(str(n))}-digit cofactor needs the deep (ECM) tier",
                budget="factoring",
                limit=20_000_000,
            )
        from sympy import factorint  # heavy-factorisation fallback only

        return sorted(factorint(n, use_ecm=True))
    return sorted(
        set(_prime_factors_hard(f, hint_modulus, deep))
        | set(_prime_factors_hard(n // f, hint_modulus, deep))
    )


def smallest_prime_factor(n: int, trial_bound: int = 100_000) -> int:
    """Smallest prime factor of n >= 2."""
    if n % 2 == 0:
        return 2
    d = 3
    while d <= trial_bound and d * d <= n:
        if n % d == 0:
            return d
        d += 2
    if d * d > n or is_prime(n):
        return n
    return _prime_factors_hard(n)[0]


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division plus Pollard rho."""
    out: dict[int, int] = {}
    while n > 1:
        p = smallest_prime_factor(n)
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def valuation(n: int, p: int) -> int:
    """p-adic valuation of n."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def _moebius(n: int) -> int:
    mu = 1
    for _, e in factorize(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu


def cyclotomic_value(k: int, x: int) -> int:
    """Phi_k(x) via Phi_k(x) = prod_{d | k} (x^d - 1)^mu(k/d)."""
    num = 1
    den = 1
    for d in _divisors(k):
        mu = _moebius(k // d)
        if mu == 1:
            num *= x**d - 1
        elif mu == -1:
            den *= x**d - 1
    return num // den


# ---------------------------------------------------------------------------
# Zsigmondy primitive prime divisors


def _primitive_part(p: int, k: int) -> int:
    """Product of the primitive prime powers of p^k - 1.

    A prime dividing Phi_k(p) either has order k mod p (primitive, and then
    congruent to 1 mod k) or divides k, so stripping the prime factors of k
    from Phi_k(p) leaves exactly the primitive part.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 2:
        raise ValueError("zsigmondy is defined for k >= 2")
    part = cyclotomic_value(k, p)
    for f in factorize(k):
        while part % f == 0:
            part //= f
    return part


def zsigmondy_exists(p: int, k: int) -> bool:
    """Does p^k - 1 have a primitive prime divisor?  (No factoring needed.)"""
    return _primitive_part(p, k) != 1


def zsigmondy(p: int, k: int, deep: bool = True) -> int | None:
    """Smallest primitive prime divisor of p^k - 1, or None in the exceptional
    cases (k = 2 with p a Mersenne prime, and (p, k) = (2, 6)).

    Exact and deterministic.  Finding the smallest prime factor of the
    primitive part can require serious factoring for large parameters; with
    deep=False such inputs raise BudgetExceededError instead of entering the
    ECM tier.
    """
    primitive_part = _primitive_part(p, k)
    if primitive_part == 1:
        return None
    r = _smallest_factor_one_mod_k(primitive_part, k, deep)
    assert pow(p, k, r) == 1
    assert (r - 1) % k == 0
    return r


def _smallest_factor_one_mod_k(n: int, k: int, deep: bool = True) -> int:
    """Smallest prime factor of n, all of whose prime factors are 1 mod k."""
    c = k + 1
    limit = isqrt(n)
    trial_cap = 2_000_000
    nz = gmpy2.mpz(n)
    while c <= limit and c <= trial_cap:
        if nz % c == 0:
            return c  # ascending order: a composite divisor's factors come first
        c += k
    if c > limit or is_prime(n):
        return n
    return _prime_factors_hard(n, hint_modulus=k, deep=deep)[0]


# ---------------------------------------------------------------------------
# classical group parameters


_FAMILIES = (
    "linear",
    "unitary",
    "symplectic",
    "odd_orthogonal",
    "minus_orthogonal",
    "plus_orthogonal",
)

# small parameter sets where the "simple group" formulas do not give a simple
# group; callers must use the concrete group instead
_NON_SIMPLE = {
    ("linear", 2, 2),
    ("linear", 2, 3),
    ("unitary", 3, 2),
    ("symplectic", 2, 2),
}


@dataclass(frozen=True)
class LieSpec:
    """(family, dimension parameter, q) naming a classical simple group."""

    family: str
    dim_param: int
    q: int

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        p, e = _prime_power(self.q)
        n = self.dim_param
        limits = {
            "linear": 2,
            "unitary": 3,
            "symplectic": 2,
            "odd_orthogonal": 3,
            "minus_orthogonal": 4,
            "plus_orthogonal": 4,
        }
        if n < limits[self.family]:
            raise ValueError(
                f"{self.family} needs dimension parameter >= {limits[self.family]}"
            )
        if self.family == "odd_orthogonal" and p == 2:
            raise ValueError("odd-dimensional orthogonal groups need odd q")
        if (self.family, n, self.q) in _NON_SIMPLE:
            raise ValueError(
                f"({self.family}, {n}, {self.q}) does not define a simple group"
            )

    @property
    def p(self) -> int:
        return _prime_power(self.q)[0]

    @property
    def e(self) -> int:
        return _prime_power(self.q)[1]


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2 or q > 2**64:
        raise ValueError("q must be a prime power in [2, 2^64]")
    p = smallest_prime_factor(q)
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def simple_group_order(spec: LieSpec) -> tuple[int, int]:
    """(|N|, |Out N|) from the standard product formulas.

    |Out| is d*f*g for the diagonal, field and graph parts; the field part is
    2e for the twisted families (unitary, minus-orthogonal).
    """
    q, n, e = spec.q, spec.dim_param, spec.e
    family = spec.family
    if family == "linear":
        d = gcd(n, q - 1)
        order = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            order *= q**i - 1
        out = d * e * (2 if n >= 3 else 1)
        return order // d, out
    if family == "unitary":
        d = gcd(n, q + 1)
        order = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            order *= q**i - (-1) ** i
        return order // d, d * 2 * e
    if family == "symplectic":
        d = gcd(2, q - 1)
        order = q ** (n * n)
        for i in range(1, n + 1):
            order *= q ** (2 * i) - 1
        out = d * e * (2 if (n == 2 and spec.p == 2) else 1)
        return order // d, out
    if family == "odd_orthogonal":
        d = 2  # q is odd here
        order = q ** (n * n)
        for i in range(1, n + 1):
            order *= q ** (2 * i) - 1
        return order // d, d * e
    if family == "minus_orthogonal":
        d = gcd(4, q**n + 1)
        order = q ** (n * (n - 1)) * (q**n + 1)
        for i in range(1, n):
            order *= q ** (2 * i) - 1
        return order // d, d * 2 * e
    if family == "plus_orthogonal":
        d = gcd(4, q**n - 1)
        order = q ** (n * (n - 1)) * (q**n - 1)
        for i in range(1, n):
            order *= q ** (2 * i) - 1
        return order // d, d * e * (6 if n == 4 else 2)
    raise AssertionError(family)


@dataclass(frozen=True)
class FamilyPrimes:
    """The family's primitive primes r, s, t (absent where not defined)."""

    r: int | None
    s: int | None
    t: int | None


def _family_exponents(spec: LieSpec) -> dict[str, int | None]:
    n, e = spec.dim_param, spec.e
    if spec.family == "linear":
        return {"r": e * n, "s": e * (n - 1), "t": e * (n - 2) if n >= 4 else None}
    if spec.family == "unitary":
        return {"r": 2 * e * (n - 1), "s": e * n, "t": None}
    if spec.family in ("symplectic", "odd_orthogonal"):
        return {"r": 2 * e * n, "s": e * n, "t": 2 * e * (n - 1)}
    if spec.family == "minus_orthogonal":
        return {"r": 2 * e * n, "s": None, "t": 2 * e * (n - 1)}
    if spec.family == "plus_orthogonal":
        return {"r": 2 * e * (n - 1), "s": e * n, "t": e * (n - 1)}
    raise AssertionError(spec.family)


def family_primes(spec: LieSpec) -> FamilyPrimes:
    """The primes r, s, t for the family, via Zsigmondy at the prescribed
    exponents; a slot is absent exactly when its exponent is undefined, below
    2, or hits a Zsigmondy exception."""
    exps = _family_exponents(spec)
    values: dict[str, int | None] = {}
    for slot, k in exps.items():
        values[slot] = zsigmondy(spec.p, k) if k is not None and k >= 2 else None
    return FamilyPrimes(**values)


# ---------------------------------------------------------------------------
# order-bound bookkeeping (p-parts)


@dataclass(frozen=True)
class PPartBound:
    """p-part bookkeeping: p^guaranteed_exp is forced into |A n N|."""

    p: int
    n_exp: int
    b_exp: int
    out_exp: int

    @property
    def guaranteed_exp(self) -> int:
        return max(0, self.n_exp - self.b_exp - self.out_exp)


def l1_bound(p: int, order_N: int, order_Bcap: int, order_Out: int) -> PPartBound:
    """Exact p-adic valuations of |N|, |B~ n N|, |Out N|; the guaranteed
    exponent is what survives dividing the p-parts out of |N|."""
    if order_N <= 0 or order_Bcap <= 0 or order_Out <= 0:
        raise ValueError("orders must be positive")
    return PPartBound(
        p=p,
        n_exp=valuation(order_N, p),
        b_exp=valuation(order_Bcap, p),
        out_exp=valuation(order_Out, p),
    )


# ---------------------------------------------------------------------------
# independence certificates


@dataclass(frozen=True)
class AckCertificate:
    certified: bool
    reason: str | None = None
    sets: tuple[str, ...] = ()


def _is_power_of_two(n: int) -> int | None:
    """log2(n) when n is a power of two with n >= 2, else None."""
    if n < 2 or n & (n - 1):
        return None
    return n.bit_length() - 1


def _in_pi(s: int, n: int) -> bool:
    return n % s == 0


def _divides_power_minus_1(s: int, q: int, k: int) -> bool:
    return pow(q, k, s) == 1 % s


def _divides_power_plus_1(s: int, q: int, k: int) -> bool:
    return pow(q, k, s) == (s - 1) % s


def membership_cases(spec: LieSpec, r: int):
    """The prime-set membership tests for a maximal soluble subgroup (of the
    relevant classical group) whose order is divisible by r: one predicate
    and description per case of the applicable containment lemma.

    Each predicate decides whether a prime s can divide such a subgroup's
    order according to that case; a case with an unsatisfied side condition
    is omitted.
    """
    n, q, p, e = spec.dim_param, spec.q, spec.p, spec.e
    cases = []
    if spec.family == "linear":
        cases.append(
            (
                "pi(n) u pi(q^n - 1)",
                lambda s: _in_pi(s, n) or _divides_power_minus_1(s, q, n),
            )
        )
        l = _is_power_of_two(n)
        if l is not None and r == n + 1 and e == 1:
            cases.append(
                (
                    "pi(q-1) u pi(l) u {2, r}",
                    lambda s: _divides_power_minus_1(s, q, 1)
                    or (l > 1 and _in_pi(s, l))
                    or s == 2
                    or s == r,
                )
            )
        return cases
    if spec.family == "unitary":
        if n % 2 or n < 4:
            return None  # the containment lemma covers even n >= 4 only
        cases.append(
            (
                "pi(n-1) u pi(q^(n-1) + 1)",
                lambda s: _in_pi(s, n - 1) or _divides_power_plus_1(s, q, n - 1),
            )
        )
        return cases
    if spec.family in ("symplectic", "odd_orthogonal", "minus_orthogonal"):
        m = n
        cases.append(
            (
                "pi(m) u pi(q^m + 1) u {2}",
                lambda s: _in_pi(s, m) or _divides_power_plus_1(s, q, m) or s == 2,
            )
        )
        l = _is_power_of_two(m)
        if l is not None and r == 2 * m + 1 and e == 1:
            cases.append(
                (
                    "pi(q-1) u pi(l+1) u {2, r}",
                    lambda s: _divides_power_minus_1(s, q, 1)
                    or _in_pi(s, l + 1)
                    or s == 2
                    or s == r,
                )
            )
        return cases
    if spec.family == "plus_orthogonal":
        m = n
        cases.append(
            (
                "pi(m-1) u pi(q^(m-1) + 1) u pi(q+1) u {2}",
                lambda s: _in_pi(s, m - 1)
                or _divides_power_plus_1(s, q, m - 1)
                or _divides_power_plus_1(s, q, 1)
                or s == 2,
            )
        )
        l = _is_power_of_two(m - 1)
        if l is not None and r == 2 * m - 1 and e == 1:
            cases.append(
                (
                    "pi(q^2-1) u pi(l+1) u {2, r}",
                    lambda s: _divides_power_minus_1(s, q, 2)
                    or _in_pi(s, l + 1)
                    or s == 2
                    or s == r,
                )
            )
        l = _is_power_of_two(m)
        if l is not None and r == 2 * m - 1 and e == 1:
            cases.append(
                (
                    "pi(q-1) u pi(l+1) u {2, r}",
                    lambda s: _divides_power_minus_1(s, q, 1)
                    or _in_pi(s, l + 1)
                    or s == 2
                    or s == r,
                )
            )
        return cases
    raise AssertionError(spec.family)


def ack_certificate(spec: LieSpec, r: int, s: int) -> AckCertificate:
    """Certify that r and s are independent for the group named by spec.

    Requires r to be the family's prescribed prime (checked); certification
    means s avoids every prime set allowed by the applicable containment
    lemma, so no soluble subgroup can contain both an r-element and an
    s-element.  Conservative: cases are combined as a union and equalities in
    the source lemmas are weakened to containments.
    """
    if s == r:
        raise ValueError("the certificate needs two distinct primes")
    expected = family_primes(spec).r
    if expected is None:
        raise ValueError(
            f"the family prime r is undefined for {spec}; "
            "this exceptional case needs group-level treatment"
        )
    if expected != r:
        raise ValueError(f"r mismatch: expected {expected}, got {r}")
    cases = membership_cases(spec, r)
    if cases is None:
        return AckCertificate(
            certified=False,
            reason="no containment lemma applies to these parameters",
        )
    names = tuple(name for name, _ in cases)
    for name, allows in cases:
        if allows(s):
            return AckCertificate(
                certified=False,
                reason=f"s = {s} may divide a soluble subgroup of type {name}",
                sets=names,
            )
    return AckCertificate(certified=True, sets=names)


def independence_sets_exclude(spec: LieSpec, r: int, s: int) -> bool:
    """Fixture-prime variant: does s avoid every case set evaluated at a
    *given* r (without requiring r to be the family's Zsigmondy prime)?

    Used for the handful of table rows where the sources substitute an
    ad-hoc prime at a Zsigmondy exception.
    """
    cases = membership_cases(spec, r)
    if cases is None:
        return False
    return all(not allows(s) for _, allows in cases)
