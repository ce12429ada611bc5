"""Structural algorithms: derived series, solubility, normal closure,
commutators of subgroups, soluble radicals, p-closure.

The recurring primitive is the *cyclic join*: for elements a, b of a common
ambient group, <a, b> equals the join of the cyclic subgroups <a> and <b>,
so any "for all pairs (a, b)" solubility scan reduces exactly to a scan over
pairs of distinct cyclic subgroups, memoised by their lex-least generators.
This keeps the exhaustive checks (Thompson scans, radical loops, connection
conditions) at desk scale without weakening them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from permsol import kernel
from permsol.budgets import (
    DEFAULT_BUDGETS,
    Budgets,
    check_order_budget,
    check_subgroup_budget,
    BudgetExceededError,
)
from permsol.permcore import (
    ClassReps,
    PermGroup,
    Permutation,
    conjugacy_class_reps,
)


# ---------------------------------------------------------------------------
# cyclic-join machinery


def cyclic_min_generator(raw: bytes) -> bytes:
    """Lex-least generator of the cyclic group <raw>."""
    order = kernel.perm_order(raw)
    best = raw
    power = raw
    for k in range(2, order):
        power = kernel.compose(power, raw)
        if gcd(k, order) == 1 and power < best:
            best = power
    return best


_JOIN_CACHE: dict[int, dict[tuple[bytes, bytes], bool]] = {}


def clear_join_cache() -> None:
    _JOIN_CACHE.clear()


def join_soluble(a: bytes, b: bytes, degree: int) -> bool:
    """Is <a, b> soluble?  Memoised per degree.

    The key (min(a,b), max(a,b)) identifies the generated subgroup exactly
    when callers pass cyclic min-generators, so hits cannot collide.
    """
    cache = _JOIN_CACHE.setdefault(degree, {})
    key = (a, b) if a <= b else (b, a)
    hit = cache.get(key)
    if hit is None:
        hit = kernel.two_gen_order_soluble(key[0], key[1], degree)[1]
        cache[key] = hit
    return hit


def cyclic_subgroup_reps(
    G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> list[tuple[bytes, int]]:
    """All distinct non-trivial cyclic subgroups of G as (lex-least generator, order).

    Sorted by generator; requires full element enumeration (budgeted).
    """
    check_order_budget(G.order(), budgets, "cyclic subgroup enumeration")
    seen: set[bytes] = set()
    out = []
    for raw in G.raw_elements():
        if kernel.first_moved(raw) == -1:
            continue
        rep = cyclic_min_generator(raw)
        if rep not in seen:
            seen.add(rep)
            out.append((rep, kernel.perm_order(rep)))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# derived series and solubility


@dataclass
class DerivedSeries:
    """Successive derived subgroups of a group, down to the stable term."""

    terms: list[PermGroup]

    @property
    def orders(self) -> list[int]:
        return [t.order() for t in self.terms]

    @property
    def derived_length(self) -> int | None:
        """Number of strict steps down to 1, or None if insoluble."""
        if self.terms[-1].order() != 1:
            return None
        return len(self.terms) - 1


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = kernel.derived_gens(G.raw_generators, G.degree)
    return PermGroup.from_raw(gens, G.degree)


def derived_series(G: PermGroup) -> DerivedSeries:
    terms = [G]
    while terms[-1].order() > 1:
        nxt = derived_subgroup(terms[-1])
        stable = nxt.order() == terms[-1].order()
        terms.append(nxt)
        if stable or nxt.order() == 1:
            break
    return DerivedSeries(terms)


def is_soluble(G: PermGroup) -> bool:
    return kernel.is_soluble_gens(G.raw_generators, G.degree)


def normal_closure(ambient: PermGroup, S: Sequence[Permutation]) -> PermGroup:
    """Smallest subgroup containing S that is conjugation-stable under ambient."""
    for s in S:
        if not ambient.contains(s):
            raise ValueError("normal_closure: seed element is not in the ambient group")
    gens = kernel.normal_closure_gens(
        ambient.raw_generators, [s.raw for s in S], ambient.degree
    )
    return PermGroup.from_raw(gens, ambient.degree)


def commutator_of_subgroups(A: PermGroup, B: PermGroup, ambient: PermGroup) -> PermGroup:
    """[A, B]: normal closure under <A u B> of the generator commutators."""
    for H in (A, B):
        if not H.is_subgroup_of(ambient):
            raise ValueError("commutator_of_subgroups: factor is not inside the ambient group")
    join_gens = A.raw_generators + B.raw_generators
    seeds = [
        kernel.commutator(a, b) for a in A.raw_generators for b in B.raw_generators
    ]
    gens = kernel.normal_closure_gens(join_gens, seeds, ambient.degree)
    return PermGroup.from_raw(gens, ambient.degree)


# ---------------------------------------------------------------------------
# exhaustive two-generated scan (Thompson-style)


def all_two_generated_soluble(
    G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS, jobs: int = 1
) -> bool:
    """Is <a, b> soluble for *all* a, b in G?

    Exact: <a, b> = <a> v <b>, so the scan runs over unordered pairs of
    distinct cyclic subgroups (pairs inside one cyclic subgroup are soluble).
    Pairs are tried largest-first so that insoluble groups short-circuit
    quickly; a soluble verdict always means every pair was checked.
    """
    reps = cyclic_subgroup_reps(G, budgets)
    order = sorted(reps, key=lambda t: (-t[1], t[0]))
    degree = G.degree
    if jobs > 1:
        from permsol.parallel import pair_scan_exists

        pairs = (
            (order[i][0], order[j][0])
            for i in range(len(order))
            for j in range(i + 1, len(order))
        )
        return not pair_scan_exists(pairs, degree, want_soluble=False, jobs=jobs)
    for i in range(len(order)):
        a = order[i][0]
        for j in range(i + 1, len(order)):
            if not join_soluble(a, order[j][0], degree):
                return False
    return True


def find_insoluble_conjugate_pair(
    G: PermGroup, q: int, budgets: Budgets = DEFAULT_BUDGETS
) -> tuple[Permutation, Permutation] | None:
    """Search for conjugate elements x, x^g of order q with <x, x^g> insoluble.

    Existence is not guaranteed for every input; returns None when the search
    over class representatives and their conjugacy orbits finds nothing.
    """
    reps = conjugacy_class_reps(G, budgets)
    gens = G.raw_generators
    for rep in reps.reps:
        if rep.order() != q:
            continue
        x = rep.raw
        orbit = {x}
        queue = [x]
        head = 0
        while head < len(queue):
            z = queue[head]
            head += 1
            for g in gens:
                y = kernel.conjugate(z, g)
                if y in orbit:
                    continue
                orbit.add(y)
                queue.append(y)
                if not kernel.two_gen_order_soluble(x, y, G.degree)[1]:
                    return Permutation._wrap(x), Permutation._wrap(y)
    return None


# ---------------------------------------------------------------------------
# soluble radical


def _group_from_raw_elements(raws, degree: int) -> PermGroup:
    """Greedy generating set for the subgroup consisting of exactly ``raws``."""
    gens: list[bytes] = []
    chain: list = []
    for raw in raws:
        if not kernel.chain_contains(chain, raw):
            gens.append(raw)
            chain = kernel.build_chain(gens, degree)
    G = PermGroup.from_raw(gens, degree)
    G._chain = chain
    return G


def _radical_bruteforce(G: PermGroup, budgets: Budgets) -> PermGroup:
    """Join of the soluble ones among the normal closures of the classes.

    Every soluble normal subgroup is a join of soluble class closures, and a
    join of soluble normal subgroups is soluble and normal, so this join is
    the radical.
    """
    check_subgroup_budget(G.order(), budgets, "bruteforce radical")
    reps = conjugacy_class_reps(G, budgets)
    degree = G.degree
    gens: list[bytes] = []
    for rep in reps.reps:
        if rep.is_identity():
            continue
        atom = kernel.normal_closure_gens(G.raw_generators, [rep.raw], degree)
        if kernel.is_soluble_gens(atom, degree):
            gens.extend(atom)
    if not gens:
        return PermGroup.trivial(degree)
    R = PermGroup.from_raw(gens, degree)
    assert kernel.is_soluble_gens(R.raw_generators, degree)
    return R


def _accepts_all(x: bytes, partners: Sequence[bytes], degree: int) -> bool:
    xrep = cyclic_min_generator(x)
    return all(join_soluble(xrep, y, degree) for y in partners)


def _radical_gkps(G: PermGroup, budgets: Budgets) -> PermGroup:
    """Radical via the two-generation criterion: x lies in the radical iff
    <x, y> is soluble for every y in G.

    For orders within the subgroup budget the quantifier over y runs in full
    (as cyclic subgroups).  For larger groups, class representatives are
    screened against representatives and a deterministic conjugate sample
    first, and every survivor is then verified against all y by streaming.
    """
    check_order_budget(G.order(), budgets, "gkps radical")
    degree = G.degree
    reps = conjugacy_class_reps(G, budgets)
    accepted: list[bytes] = []
    if G.order() <= budgets.subgroup_order_limit:
        partners = [rep for rep, _ in cyclic_subgroup_reps(G, budgets)]
        for rep in reps.reps:
            if rep.is_identity():
                continue
            if _accepts_all(rep.raw, partners, degree):
                accepted.append(rep.raw)
    else:
        # cheap screening: class reps plus conjugates by a transversal sample
        sample: list[bytes] = []
        if G.chain:
            _, trans, _ = G.chain[0]
            sample = [trans[k] for k in sorted(trans)[:8]]
        screen_partners = []
        seen = set()
        for r in reps.reps:
            if r.is_identity():
                continue
            for t in [kernel.identity_perm(degree)] + sample:
                c = cyclic_min_generator(kernel.conjugate(r.raw, t))
                if c not in seen:
                    seen.add(c)
                    screen_partners.append(c)
        for rep in reps.reps:
            if rep.is_identity():
                continue
            if not _accepts_all(rep.raw, screen_partners, degree):
                continue
            # mandatory full verification of the survivor
            xrep = cyclic_min_generator(rep.raw)
            ok = True
            for raw in G.raw_elements():
                if kernel.first_moved(raw) == -1:
                    continue
                if not join_soluble(xrep, cyclic_min_generator(raw), degree):
                    ok = False
                    break
            if ok:
                accepted.append(rep.raw)
    if not accepted:
        return PermGroup.trivial(degree)
    gens = kernel.normal_closure_gens(G.raw_generators, accepted, degree)
    R = PermGroup.from_raw(gens, degree)
    # the result must be a soluble normal subgroup; anything else is a bug
    assert kernel.is_soluble_gens(R.raw_generators, degree)
    for g in G.raw_generators:
        for r in R.raw_generators:
            assert R.contains_raw(kernel.conjugate(r, g))
    return R


def soluble_radical(
    G: PermGroup, method: str = "gkps", budgets: Budgets = DEFAULT_BUDGETS
) -> PermGroup:
    """Largest soluble normal subgroup of G.

    method: "gkps" (two-generation criterion), "bruteforce" (normal-subgroup
    scan) or "both" (compute both and assert they agree).
    """
    if method == "bruteforce":
        return _radical_bruteforce(G, budgets)
    if method == "gkps":
        return _radical_gkps(G, budgets)
    if method == "both":
        R1 = _radical_gkps(G, budgets)
        R2 = _radical_bruteforce(G, budgets)
        if R1 != R2:
            raise AssertionError(
                f"radical methods disagree: gkps order {R1.order()}, "
                f"bruteforce order {R2.order()}"
            )
        return R1
    raise ValueError(f"unknown radical method {method!r}")


def radical_quotient_is_reduced(
    G: PermGroup, R: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> bool:
    """Does G/R have trivial soluble radical?  (Maximality check for R.)"""
    if R.order() == G.order():
        return True
    Q, _ = coset_action(G, R, budgets)
    return soluble_radical(Q, "bruteforce", budgets).order() == 1


def coset_action(
    G: PermGroup, H: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> tuple[PermGroup, list[bytes]]:
    """Action of G on the right cosets of H, with the canonical coset reps.

    Cosets are named by their lexicographically least element.
    """
    index = G.order() // H.order()
    if index > budgets.degree_limit:
        raise BudgetExceededError(
            f"coset action degree {index} exceeds degree budget",
            budget="degree_limit",
            limit=budgets.degree_limit,
            needed=index,
        )
    hchain = H.chain

    def min_rep(x: bytes) -> bytes:
        cur = x
        for point, trans, _ in hchain:
            beta = min(trans, key=cur.__getitem__)
            if beta != point:
                cur = kernel.compose(trans[beta], cur)
        return cur

    start = min_rep(kernel.identity_perm(G.degree))
    rep_index = {start: 0}
    reps = [start]
    head = 0
    images = {g: [] for g in G.raw_generators}
    while head < len(reps):
        r = reps[head]
        head += 1
        for g in G.raw_generators:
            s = min_rep(kernel.compose(r, g))
            k = rep_index.get(s)
            if k is None:
                k = len(reps)
                rep_index[s] = k
                reps.append(s)
            images[g].append(k)
    perms = [Permutation(img) for img in images.values()]
    return PermGroup(perms, index), reps


def subgroup_intersection(
    A: PermGroup, B: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> PermGroup:
    """Elements of the smaller group that lie in the other one."""
    if A.degree != B.degree:
        raise ValueError("intersection across different degrees")
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    check_order_budget(small.order(), budgets, "subgroup intersection")
    members = [raw for raw in small.raw_elements() if big.contains_raw(raw)]
    return _group_from_raw_elements(members, A.degree)


def core_of_subgroup(
    G: PermGroup, A: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> PermGroup:
    """Largest normal subgroup of G contained in A (intersection of conjugates)."""
    if not A.is_subgroup_of(G):
        raise ValueError("core_of_subgroup: A is not a subgroup of G")
    check_order_budget(A.order(), budgets, "core computation")
    K = A
    while True:
        changed = False
        for g in G.generators:
            Kg = K.conjugated_by(g)
            if Kg != K:
                K = subgroup_intersection(K, Kg, budgets)
                changed = True
        if not changed:
            return K


# ---------------------------------------------------------------------------
# p-closure and the Ramanujan-range prime search


def is_p_closed(H: PermGroup, p: int, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """Does H have a normal Sylow p-subgroup?

    Computed as: the subgroup generated by all p-elements is a p-group.
    When p does not divide |H| the answer is vacuously true (with a warning).
    """
    order = H.order()
    if order % p:
        warnings.warn(
            f"is_p_closed: {p} does not divide the group order {order}; vacuously true",
            stacklevel=2,
        )
        return True
    check_order_budget(order, budgets, "p-closure scan")
    degree = H.degree
    gens: list[bytes] = []
    chain: list = []
    for raw in H.raw_elements():
        o = kernel.perm_order(raw)
        if o % p:
            continue
        m = o
        while m % p == 0:
            m //= p
        part = kernel.perm_power(raw, m)  # the p-part, a p-element
        if kernel.chain_contains(chain, part):
            continue
        gens.append(part)
        chain = kernel.build_chain(gens, degree)
    korder = kernel.chain_order(chain)
    while korder % p == 0:
        korder //= p
    return korder == 1


def is_mersenne_prime(p: int) -> bool:
    """Is p prime of the form 2^k - 1?"""
    if not _is_prime(p):
        return False
    q = p + 1
    return q & (q - 1) == 0


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def non_mersenne_prime_in_range(n: int) -> int | None:
    """Smallest non-Mersenne prime p with n/2 < p <= n, if one exists."""
    if n < 5:
        raise ValueError("defined for n >= 5")
    for p in range(n // 2 + 1, n + 1):
        if _is_prime(p) and not is_mersenne_prime(p):
            return p
    return None
