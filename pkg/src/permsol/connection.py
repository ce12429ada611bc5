"""Factorized groups G = AB and the three equivalent connection conditions.

condition 1: <a, b> soluble for every a in A, b in B ("S-connected")
condition 2: the same restricted to p-elements a and q-elements b, p != q
condition 3: [A, B] lies in the soluble radical of G

``verify_main_theorem`` computes all three and treats any disagreement as a
fatal diagnostic: the equivalence is a theorem, so a mismatch can only mean
an implementation bug.
"""

from __future__ import annotations

from dataclasses import dataclass

from permsol import structure
from permsol.budgets import (
    DEFAULT_BUDGETS,
    Budgets,
    BudgetExceededError,
    DegreeMismatchError,
    NotSConnectedError,
    TheoremViolationError,
)
from permsol.permcore import PermGroup, Permutation


@dataclass
class FactorizedGroup:
    """A verified product G = AB with the cached intersection order."""

    G: PermGroup
    A: PermGroup
    B: PermGroup
    intersection_order: int

    def __repr__(self) -> str:
        return (
            f"<FactorizedGroup |G|={self.G.order()} |A|={self.A.order()} "
            f"|B|={self.B.order()} |A^B|={self.intersection_order}>"
        )


@dataclass
class ConnectionReport:
    condition1: bool
    condition2: bool
    condition3: bool
    witness: tuple[Permutation, Permutation] | None
    radical_order: int


def make_factorized(
    G: PermGroup, A: PermGroup, B: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> FactorizedGroup:
    """Verify subgroup containment and the product property |A||B| = |G||A n B|."""
    if not (G.degree == A.degree == B.degree):
        raise DegreeMismatchError("factorization parts must share one degree")
    if not A.is_subgroup_of(G):
        raise ValueError("A is not a subgroup of G")
    if not B.is_subgroup_of(G):
        raise ValueError("B is not a subgroup of G")
    inter = structure.subgroup_intersection(A, B, budgets).order()
    if A.order() * B.order() != G.order() * inter:
        raise ValueError(
            "product property fails: |A||B|/|AnB| = "
            f"{A.order() * B.order() // inter} != |G| = {G.order()}"
        )
    return FactorizedGroup(G=G, A=A, B=B, intersection_order=inter)


def _prime_of_prime_power(n: int) -> int | None:
    """The prime p with n = p^k (k >= 1), or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
        p += 1
    return n


def _cyclic_reps(H: PermGroup, budgets: Budgets) -> list[tuple[bytes, int]]:
    cached = H._caches.get("cyclic_reps")
    if cached is None:
        cached = structure.cyclic_subgroup_reps(H, budgets)
        H._caches["cyclic_reps"] = cached
    return cached


def _radical_cached(G: PermGroup, budgets: Budgets) -> PermGroup:
    cached = G._caches.get("radical")
    if cached is None:
        cached = structure.soluble_radical(G, "gkps", budgets)
        G._caches["radical"] = cached
    return cached


def check_condition(
    F: FactorizedGroup, mode: str = "full", budgets: Budgets = DEFAULT_BUDGETS
) -> tuple[bool, tuple[Permutation, Permutation] | None]:
    """Evaluate condition (1) (``full``) or condition (2) (``prime_pairs``).

    The pair loop is exact: <a, b> depends only on the cyclic subgroups <a>
    and <b>, so pairs of cyclic subgroups are scanned with memoisation, which
    covers every element pair.  On failure the witness is the
    lexicographically least failing pair (a, b).
    """
    if mode not in ("full", "prime_pairs"):
        raise ValueError(f"unknown mode {mode!r}")
    if F.A.order() * F.B.order() > budgets.pair_limit:
        raise BudgetExceededError(
            "pair scan |A||B| exceeds the pair budget",
            budget="pair_limit",
            limit=budgets.pair_limit,
            needed=F.A.order() * F.B.order(),
        )
    degree = F.G.degree
    reps_a = _cyclic_reps(F.A, budgets)
    reps_b = _cyclic_reps(F.B, budgets)
    if mode == "prime_pairs":
        reps_a = [(r, _prime_of_prime_power(o)) for r, o in reps_a]
        reps_a = [(r, p) for r, p in reps_a if p is not None]
        reps_b = [(r, _prime_of_prime_power(o)) for r, o in reps_b]
        reps_b = [(r, p) for r, p in reps_b if p is not None]
    else:
        reps_a = [(r, None) for r, _ in reps_a]
        reps_b = [(r, None) for r, _ in reps_b]

    # reps are lex-sorted, and the lex-least element of A generating a given
    # cyclic subgroup is its stored min-generator, so scanning reps in order
    # and returning the first failure yields the lex-least failing pair.
    for a_rep, a_p in reps_a:
        partners = [
            b_rep
            for b_rep, b_p in reps_b
            if a_p is None or b_p != a_p
        ]
        failing = [
            b_rep
            for b_rep in partners
            if not structure.join_soluble(a_rep, b_rep, degree)
        ]
        if failing:
            witness = (Permutation._wrap(a_rep), Permutation._wrap(min(failing)))
            return False, witness
    return True, None


def check_condition3(F: FactorizedGroup, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """[A, B] <= soluble radical of G?"""
    com = structure.commutator_of_subgroups(F.A, F.B, F.G)
    return com.is_subgroup_of(_radical_cached(F.G, budgets))


def verify_main_theorem(
    F: FactorizedGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> ConnectionReport:
    """Compute all three conditions; any disagreement raises TheoremViolationError."""
    c1, witness = check_condition(F, "full", budgets)
    c2, _ = check_condition(F, "prime_pairs", budgets)
    radical = _radical_cached(F.G, budgets)
    c3 = structure.commutator_of_subgroups(F.A, F.B, F.G).is_subgroup_of(radical)
    report = ConnectionReport(
        condition1=c1,
        condition2=c2,
        condition3=c3,
        witness=witness,
        radical_order=radical.order(),
    )
    if not (c1 == c2 == c3):
        raise TheoremViolationError(
            f"main-theorem conditions disagree: (1)={c1} (2)={c2} (3)={c3} "
            f"on |G|={F.G.order()}, |A|={F.A.order()}, |B|={F.B.order()}",
            report=report,
        )
    return report


def verify_conjugation_lemma(
    F: FactorizedGroup,
    g: Permutation,
    h: Permutation,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    """G = A^g B^h must again be a factorization with the same condition-(2) verdict."""
    if g not in F.G or h not in F.G:
        raise ValueError("conjugation lemma requires g, h in G")
    conjugated = make_factorized(
        F.G, F.A.conjugated_by(g), F.B.conjugated_by(h), budgets
    )
    before, _ = check_condition(F, "prime_pairs", budgets)
    after, _ = check_condition(conjugated, "prime_pairs", budgets)
    return before == after


def radical_intersection_check(
    F: FactorizedGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> bool:
    """For S-connected factorizations: A_S = A n G_S and B_S = B n G_S."""
    connected, _ = check_condition(F, "full", budgets)
    if not connected:
        raise NotSConnectedError("radical_intersection_check requires condition (1)")
    GS = _radical_cached(F.G, budgets)
    for X in (F.A, F.B):
        XS = _radical_cached(X, budgets)
        if XS != structure.subgroup_intersection(X, GS, budgets):
            return False
    return True
