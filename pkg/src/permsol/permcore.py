"""Permutations and permutation groups with stabilizer-chain machinery.

Points are 0-based.  A ``Permutation`` is an immutable bijection of
``{0, ..., degree-1}``; products apply the left factor first (right action),
so ``(p * q)(i) == q(p(i))``.  A ``PermGroup`` carries its generators and a
deterministic stabilizer chain (base points in natural order 0, 1, 2, ...),
giving exact order and membership answers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from permsol import kernel
from permsol.budgets import (
    DEFAULT_BUDGETS,
    BudgetExceededError,
    Budgets,
    DegreeMismatchError,
    check_order_budget,
)


class Permutation:
    """A permutation of {0, ..., degree-1}, stored as its image sequence."""

    __slots__ = ("_img",)

    def __init__(self, images: Iterable[int] | bytes):
        vals = images if isinstance(images, bytes) else list(images)
        n = len(vals)
        if n > DEFAULT_BUDGETS.degree_limit:
            raise BudgetExceededError(
                f"degree {n} exceeds the degree budget {DEFAULT_BUDGETS.degree_limit}",
                budget="degree_limit",
                limit=DEFAULT_BUDGETS.degree_limit,
                needed=n,
            )
        img = bytes(vals)
        seen = bytearray(n)
        for x in img:
            if x >= n or seen[x]:
                raise ValueError("image sequence is not a bijection of {0..%d}" % (n - 1))
            seen[x] = 1
        self._img = img

    # -- construction helpers

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(kernel.identity_perm(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Product of the given (0-based, disjoint or not) cycles."""
        img = list(range(degree))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {cycle!r}")
            for a, b in zip(cycle, cycle[1:]):
                img[a] = b
            if cycle:
                img[cycle[-1]] = cycle[0]
        return cls(img)

    @classmethod
    def _wrap(cls, raw: bytes) -> "Permutation":
        p = object.__new__(cls)
        p._img = raw
        return p

    # -- basic queries

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self._img)

    @property
    def raw(self) -> bytes:
        return self._img

    def __call__(self, point: int) -> int:
        return self._img[point]

    def is_identity(self) -> bool:
        return kernel.first_moved(self._img) == -1

    def order(self) -> int:
        return kernel.perm_order(self._img)

    def is_p_element(self, p: int) -> bool:
        o = self.order()
        while o % p == 0:
            o //= p
        return o == 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint non-trivial cycles, each starting at its least point."""
        img = self._img
        seen = bytearray(len(img))
        out = []
        for i in range(len(img)):
            if seen[i] or img[i] == i:
                seen[i] = 1
                continue
            cyc = [i]
            j = img[i]
            seen[i] = 1
            while j != i:
                seen[j] = 1
                cyc.append(j)
                j = img[j]
            out.append(tuple(cyc))
        return out

    # -- arithmetic

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatchError(f"degrees {self.degree} and {other.degree} differ")
        return Permutation._wrap(kernel.compose(self._img, other._img))

    def inverse(self) -> "Permutation":
        return Permutation._wrap(kernel.inverse(self._img))

    def __pow__(self, n: int) -> "Permutation":
        return Permutation._wrap(kernel.perm_power(self._img, n))

    def conjugated_by(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        if self.degree != g.degree:
            raise DegreeMismatchError(f"degrees {self.degree} and {g.degree} differ")
        return Permutation._wrap(kernel.conjugate(self._img, g._img))

    def commutator_with(self, other: "Permutation") -> "Permutation":
        return Permutation._wrap(kernel.commutator(self._img, other._img))

    # -- comparisons

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return f"Permutation.identity({self.degree})"
        text = "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)
        return f"<perm deg={self.degree} {text}>"


class PermGroup:
    """A permutation group with a lazily built deterministic stabilizer chain."""

    __slots__ = ("degree", "generators", "_chain", "_order", "_caches")

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group with no generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatchError(
                    f"generator degree {g.degree} does not match group degree {degree}"
                )
        self.degree = degree
        self.generators = gens
        self._chain = None
        self._order = None
        self._caches: dict = {}

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls((), degree)

    @classmethod
    def from_raw(cls, raw_gens: Sequence[bytes], degree: int) -> "PermGroup":
        return cls([Permutation._wrap(bytes(r)) for r in raw_gens], degree)

    @property
    def raw_generators(self) -> list[bytes]:
        return [g.raw for g in self.generators]

    @property
    def chain(self):
        if self._chain is None:
            self._chain = kernel.build_chain(self.raw_generators, self.degree)
        return self._chain

    def order(self) -> int:
        if self._order is None:
            self._order = kernel.chain_order(self.chain)
        return self._order

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatchError(
                f"element degree {g.degree} does not match group degree {self.degree}"
            )
        return kernel.chain_contains(self.chain, g.raw)

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def contains_raw(self, raw: bytes) -> bool:
        return kernel.chain_contains(self.chain, raw)

    def raw_elements(self) -> Iterator[bytes]:
        """All elements in lexicographic image-sequence order (streaming)."""
        return kernel.elements_lex(self.chain, self.degree)

    def elements(self, budgets: Budgets = DEFAULT_BUDGETS) -> Iterator[Permutation]:
        check_order_budget(self.order(), budgets, "element enumeration")
        for raw in self.raw_elements():
            yield Permutation._wrap(raw)

    def is_trivial(self) -> bool:
        return self.order() == 1

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if self.degree != other.degree:
            raise DegreeMismatchError("subgroup test across different degrees")
        return all(other.contains_raw(r) for r in self.raw_generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def __hash__(self):
        raise TypeError("PermGroup is not hashable; compare by element set instead")

    def conjugated_by(self, g: Permutation) -> "PermGroup":
        if g.degree != self.degree:
            raise DegreeMismatchError("conjugating element degree mismatch")
        return PermGroup(
            [Permutation._wrap(kernel.conjugate(r, g.raw)) for r in self.raw_generators],
            self.degree,
        )

    def random_elements(self, count: int, seed: int) -> list[Permutation]:
        """Seeded pseudo-random members (word sampling; for property tests)."""
        rng = random.Random(seed)
        gens = self.raw_generators
        out = []
        ident = kernel.identity_perm(self.degree)
        for _ in range(count):
            w = ident
            for _ in range(rng.randrange(1, 12)):
                g = rng.choice(gens) if gens else ident
                if rng.randrange(2):
                    g = kernel.inverse(g)
                w = kernel.compose(w, g)
            out.append(Permutation._wrap(w))
        return out

    def __repr__(self) -> str:
        return f"<PermGroup deg={self.degree} gens={len(self.generators)} order={self.order()}>"


@dataclass
class ClassReps:
    """Deterministic conjugacy-class data: lex-least representative per class."""

    reps: list[Permutation]
    class_sizes: list[int]


def build_group(
    generators: Sequence[Permutation],
    *,
    randomized_seed: int | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> PermGroup:
    """Build a group from a non-empty generator list and validate its chain.

    With ``randomized_seed`` the chain is pre-seeded with random words before
    the deterministic completion pass runs; the pass verifies and completes
    the chain, so answers are exact either way.
    """
    if not generators:
        raise ValueError(
            "empty generator list: construct the identity group with PermGroup.trivial(degree)"
        )
    degrees = {g.degree for g in generators}
    if len(degrees) != 1:
        raise DegreeMismatchError(f"generators of mixed degrees {sorted(degrees)}")
    G = PermGroup(generators)
    if randomized_seed is not None:
        rng = random.Random(randomized_seed)
        raw = G.raw_generators
        words = []
        for _ in range(max(2, len(raw))):
            w = rng.choice(raw)
            for _ in range(rng.randrange(1, 6)):
                w = kernel.compose(w, rng.choice(raw))
            words.append(w)
        # deterministic completion over the enlarged generating set of the
        # same group; the Schreier-Sims pass is itself the verification
        G._chain = kernel.build_chain(raw + words, G.degree)
    # building the chain validates it; every generator must sift to identity
    for g in generators:
        assert G.contains(g)
    assert Permutation.identity(G.degree) in G
    return G


def group_order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, g: Permutation) -> bool:
    return G.contains(g)


def element_order(g: Permutation) -> int:
    return g.order()


def is_p_element(g: Permutation, p: int) -> bool:
    return g.is_p_element(p)


def conjugate_subgroup(G: PermGroup, g: Permutation) -> PermGroup:
    return G.conjugated_by(g)


def conjugacy_class_reps(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> ClassReps:
    """One lex-least representative per conjugacy class, with class sizes."""
    check_order_budget(G.order(), budgets, "conjugacy class enumeration")
    gens = G.raw_generators
    assigned: set[bytes] = set()
    reps: list[Permutation] = []
    sizes: list[int] = []
    for raw in G.raw_elements():
        if raw in assigned:
            continue
        orbit = {raw}
        queue = [raw]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for g in gens:
                y = kernel.conjugate(x, g)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        assigned |= orbit
        reps.append(Permutation._wrap(raw))
        sizes.append(len(orbit))
    return ClassReps(reps=reps, class_sizes=sizes)


def elements_of_prime_power_order(
    G: PermGroup, p: int, budgets: Budgets = DEFAULT_BUDGETS
) -> list[bytes]:
    """All non-trivial p-elements of G, lex-sorted (streaming filter)."""
    check_order_budget(G.order(), budgets, "p-element enumeration")
    out = []
    for raw in G.raw_elements():
        o = kernel.perm_order(raw)
        if o == 1 or o % p:
            continue
        while o % p == 0:
            o //= p
        if o == 1:
            out.append(raw)
    return out


def p_element_class_reps(
    G: PermGroup, p: int, budgets: Budgets = DEFAULT_BUDGETS
) -> list[bytes]:
    """Lex-least representatives of the conjugacy classes of non-trivial p-elements."""
    pool = elements_of_prime_power_order(G, p, budgets)
    pool_set = set(pool)
    gens = G.raw_generators
    reps = []
    assigned: set[bytes] = set()
    for raw in pool:  # pool is lex-sorted
        if raw in assigned:
            continue
        reps.append(raw)
        queue = [raw]
        assigned.add(raw)
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for g in gens:
                y = kernel.conjugate(x, g)
                if y not in assigned:
                    if y not in pool_set:
                        raise AssertionError("conjugate of a p-element escaped the pool")
                    assigned.add(y)
                    queue.append(y)
    return reps
