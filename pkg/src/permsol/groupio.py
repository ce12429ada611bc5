"""Group ingestion, the built-in library, product constructors and the
desk-scale oracles (complete subgroup catalogue, factorization enumeration).

Generator files are plain text: a ``degree N`` header, then one generator per
line as a product of disjoint cycles, 1-based, ``#`` comments allowed.
In-memory points are 0-based throughout.
"""

from __future__ import annotations

import json
from array import array
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from permsol import kernel, structure
from permsol.budgets import (
    DEFAULT_BUDGETS,
    BudgetExceededError,
    Budgets,
    check_subgroup_budget,
)
from permsol.connection import FactorizedGroup
from permsol.gf import GF
from permsol.permcore import PermGroup, Permutation

SUPPORTED_PSL2_Q = (4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32)


# ---------------------------------------------------------------------------
# generator files


class GeneratorParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _parse_cycle_line(text: str, lineno: int, degree: int) -> Permutation:
    images = list(range(degree))
    used: set[int] = set()
    col = 0
    n = len(text)
    any_cycle = False
    while col < n:
        ch = text[col]
        if ch.isspace():
            col += 1
            continue
        if ch != "(":
            raise GeneratorParseError(f"expected '(' but found {ch!r}", lineno, col + 1)
        col += 1
        points: list[int] = []
        current = ""
        while col < n:
            ch = text[col]
            if ch.isdigit():
                current += ch
                col += 1
                continue
            if ch in ",)":
                if current:
                    point = int(current)
                    if point < 1 or point > degree:
                        raise GeneratorParseError(
                            f"point {point} out of range 1..{degree}", lineno, col
                        )
                    if point - 1 in used:
                        raise GeneratorParseError(
                            f"repeated point {point}", lineno, col
                        )
                    used.add(point - 1)
                    points.append(point - 1)
                    current = ""
                elif ch == ",":
                    raise GeneratorParseError("empty entry in cycle", lineno, col + 1)
                if ch == ")":
                    break
                col += 1
                continue
            if ch.isspace():
                col += 1
                continue
            raise GeneratorParseError(f"unexpected character {ch!r}", lineno, col + 1)
        else:
            raise GeneratorParseError("unterminated cycle", lineno, n)
        col += 1  # past ')'
        any_cycle = True
        for a, b in zip(points, points[1:]):
            images[a] = b
        if points:
            images[points[-1]] = points[0]
    if not any_cycle:
        raise GeneratorParseError("expected a cycle product", lineno, 1)
    return Permutation(images)


@dataclass
class GeneratorFile:
    """Structured form of a generator file: 1-based cycle strings plus degree."""

    degree: int
    generators: list[str]
    label: str = ""
    line_numbers: list[int] | None = None


def read_generator_file(text: str) -> GeneratorFile:
    """Split a generator file into its header and raw cycle lines."""
    degree: int | None = None
    lines: list[str] = []
    numbers: list[int] = []
    label = ""
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        if degree is None and raw_line.lstrip().startswith("#") and not label:
            label = raw_line.lstrip()[1:].strip()
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit():
                raise GeneratorParseError("expected 'degree N' header", lineno, 1)
            degree = int(parts[1])
            if degree < 1:
                raise GeneratorParseError("degree must be positive", lineno, 1)
            continue
        lines.append(line)
        numbers.append(lineno)
    if degree is None:
        raise GeneratorParseError("missing 'degree N' header", 1, 1)
    return GeneratorFile(degree=degree, generators=lines, label=label, line_numbers=numbers)


def parse_generators(text: str) -> list[Permutation]:
    """Parse a generator file body into permutations (see module docstring)."""
    gf = read_generator_file(text)
    numbers = gf.line_numbers or range(1, len(gf.generators) + 1)
    return [
        _parse_cycle_line(line, lineno, gf.degree)
        for line, lineno in zip(gf.generators, numbers)
    ]


def render_permutation(p: Permutation) -> str:
    """One generator line: product of disjoint cycles, 1-based."""
    cycs = p.cycles()
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycs)


def render_generators(
    perms: Sequence[Permutation], label: str | None = None, degree: int | None = None
) -> str:
    if not perms and degree is None:
        raise ValueError("an empty generator list needs an explicit degree")
    head = [] if label is None else [f"# {label}"]
    head.append(f"degree {perms[0].degree if perms else degree}")
    head.extend(render_permutation(p) for p in perms)
    return "\n".join(head) + "\n"


# ---------------------------------------------------------------------------
# built-in library


def _cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    return PermGroup([Permutation.from_cycles(n, [tuple(range(n))])])


def _dihedral(order: int) -> PermGroup:
    if order < 6 or order % 2:
        raise ValueError("dihedral groups are supported for even order >= 6")
    n = order // 2
    rot = Permutation.from_cycles(n, [tuple(range(n))])
    refl = Permutation([(n - i) % n for i in range(n)])
    return PermGroup([rot, refl])


def _symmetric(n: int) -> PermGroup:
    if n < 2 or n > 12:
        raise ValueError("symmetric groups are supported for 2 <= n <= 12")
    if n == 2:
        return PermGroup([Permutation.from_cycles(2, [(0, 1)])])
    return PermGroup(
        [
            Permutation.from_cycles(n, [(0, 1)]),
            Permutation.from_cycles(n, [tuple(range(n))]),
        ]
    )


def _alternating(n: int) -> PermGroup:
    if n < 3 or n > 12:
        raise ValueError("alternating groups are supported for 3 <= n <= 12")
    if n == 3:
        return PermGroup([Permutation.from_cycles(3, [(0, 1, 2)])])
    cycle = tuple(range(n)) if n % 2 else tuple(range(1, n))
    return PermGroup(
        [Permutation.from_cycles(n, [(0, 1, 2)]), Permutation.from_cycles(n, [cycle])]
    )


def _projective_line_gens(q: int, include_diagonal: bool) -> list[Permutation]:
    """Generators of PSL2(q) (or PGL2(q)) acting on GF(q) u {infinity}.

    Points 0..q-1 are the field elements in their integer encoding; point q
    is infinity.  Matrices act by Moebius transformations.
    """
    F = GF(q)
    INF = q

    def moebius(a: int, b: int, c: int, d: int) -> Permutation:
        img = []
        for x in range(q):
            den = F.add(F.mul(c, x), d)
            num = F.add(F.mul(a, x), b)
            img.append(INF if den == 0 else F.mul(num, F.inv(den)))
        img.append(F.mul(a, F.inv(c)) if c != 0 else INF)
        return Permutation(img)

    minus_one = F.neg(1)
    gens = [moebius(0, minus_one, 1, 0)]  # x -> -1/x
    for i in range(F.e):
        # x -> x + t^i for the defining root t; t^i is encoded as p^i
        gens.append(moebius(1, F.p**i, 0, 1))
    if include_diagonal and F.p != 2:
        gens.append(moebius(F.generator(), 0, 0, 1))
    return gens


def psl2(q: int) -> PermGroup:
    if q not in SUPPORTED_PSL2_Q:
        raise ValueError(f"psl2 is supported for q in {SUPPORTED_PSL2_Q}")
    return PermGroup(_projective_line_gens(q, include_diagonal=False))


def pgl2(q: int) -> PermGroup:
    if q not in SUPPORTED_PSL2_Q:
        raise ValueError(f"pgl2 is supported for q in {SUPPORTED_PSL2_Q}")
    return PermGroup(_projective_line_gens(q, include_diagonal=True))


def direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    """Product acting on the disjoint union of the two point sets."""
    dg, dh = G.degree, H.degree
    gens = [
        Permutation(list(g.images) + list(range(dg, dg + dh))) for g in G.generators
    ]
    gens += [
        Permutation(list(range(dg)) + [dg + x for x in h.images]) for h in H.generators
    ]
    if not gens:
        return PermGroup.trivial(dg + dh)
    return PermGroup(gens, dg + dh)


_EMBEDDED_FIXTURES = {
    "A4_in_A5": lambda: PermGroup(
        [Permutation.from_cycles(5, [(0, 1, 2)]), Permutation.from_cycles(5, [(1, 2, 3)])]
    ),
    "C5_in_A5": lambda: PermGroup([Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])]),
    "A4_in_S4": lambda: PermGroup(
        [Permutation.from_cycles(4, [(0, 1, 2)]), Permutation.from_cycles(4, [(1, 2, 3)])]
    ),
    "S3_in_S4": lambda: PermGroup(
        [Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(0, 1, 2)])]
    ),
    "C2_in_S4": lambda: PermGroup([Permutation.from_cycles(4, [(0, 1)])]),
    "D8_in_S4": lambda: PermGroup(
        [Permutation.from_cycles(4, [(0, 1, 2, 3)]), Permutation.from_cycles(4, [(0, 2)])]
    ),
    "V4_in_S4": lambda: PermGroup(
        [
            Permutation.from_cycles(4, [(0, 1), (2, 3)]),
            Permutation.from_cycles(4, [(0, 2), (1, 3)]),
        ]
    ),
}


def builtin(name: str) -> PermGroup:
    """Look up a library group: C*, D*, S*, A*, psl2_q, pgl2_q, embedded
    fixtures like A4_in_A5, and x-products of any of these (e.g. S4xA5)."""
    if name in _EMBEDDED_FIXTURES:
        return _EMBEDDED_FIXTURES[name]()
    if "x" in name:
        left, _, right = name.partition("x")
        return direct_product(builtin(left), builtin(right))
    try:
        if name.startswith("psl2_"):
            return psl2(int(name[5:]))
        if name.startswith("pgl2_"):
            return pgl2(int(name[5:]))
        kind, param = name[0], name[1:]
        n = int(param)
        if kind == "C":
            return _cyclic(n)
        if kind == "D":
            return _dihedral(n)
        if kind == "S":
            return _symmetric(n)
        if kind == "A":
            return _alternating(n)
    except ValueError as exc:
        raise ValueError(f"unknown builtin group {name!r}: {exc}") from None
    raise ValueError(f"unknown builtin group {name!r}")


def builtin_corpus(max_order: int | None = None) -> list[tuple[str, PermGroup]]:
    """The named library sample used by the verification suites."""
    names = [
        "C1", "C2", "C3", "C4", "C6", "C8", "C12", "C15", "C16", "C20",
        "C24", "C30", "C36", "C60", "C100", "C128", "C210",
        "D6", "D8", "D10", "D12", "D16", "D20", "D24", "D32", "D60", "D128", "D200",
        "S3", "S4", "S5", "S6",
        "A4", "A5", "A6", "A7",
        "psl2_4", "psl2_5", "psl2_7", "psl2_8", "psl2_9", "psl2_11", "psl2_13",
        "pgl2_7",
        "S3xC5", "A4xC2", "S3xS3", "A5xC2", "S4xA5", "C2xC2", "D10xC3",
    ]
    out = []
    for name in names:
        G = builtin(name)
        if max_order is None or G.order() <= max_order:
            out.append((name, G))
    return out


# ---------------------------------------------------------------------------
# complete subgroup catalogue (the desk-scale oracle)


@dataclass
class _Entry:
    members: bytes          # sorted uint16 element indices, packed
    mask: int               # bitmask over ambient element indices
    gens: tuple[int, ...]   # generating element indices
    order: int
    top: int = -1           # largest seed index used to build this entry

    def member_indices(self) -> list[int]:
        return list(memoryview(self.members).cast("H"))


@dataclass
class SubgroupCatalog:
    """All subgroups of a small ambient group, as verified element sets."""

    subgroups: list[PermGroup]
    complete: bool
    elements: list[bytes] = field(repr=False, default_factory=list)
    entries: list[_Entry] = field(repr=False, default_factory=list)
    degree: int = 0


def _pack(indices: Iterable[int]) -> bytes:
    return array("H", sorted(indices)).tobytes()


def enumerate_subgroups(
    G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS, partial: bool = False
) -> SubgroupCatalog:
    """Complete subgroup catalogue by cyclic-seed join saturation.

    Seeds are the distinct cyclic subgroups; joining entries with seeds until
    a fixed point reaches every subgroup (each subgroup is the join of its
    own cyclic subgroups).  ``partial=True`` downgrades a blown budget to an
    incomplete catalogue of the cyclic subgroups only.
    """
    order = G.order()
    try:
        check_subgroup_budget(order, budgets, "subgroup enumeration")
        complete = True
    except BudgetExceededError:
        if not partial:
            raise
        complete = False

    degree = G.degree
    elements = list(G.raw_elements())
    index = {e: k for k, e in enumerate(elements)}
    id_idx = index[kernel.identity_perm(degree)]
    table = kernel.mult_table(elements)
    n = len(elements)

    def mask_of(indices: Iterable[int]) -> int:
        m = 0
        for i in indices:
            m |= 1 << i
        return m

    entries: dict[bytes, _Entry] = {}
    trivial = _Entry(members=_pack([id_idx]), mask=1 << id_idx, gens=(), order=1)
    entries[trivial.members] = trivial

    seeds: list[_Entry] = []
    seen_cyclic: set[bytes] = set()
    for i in range(n):
        if i == id_idx:
            continue
        key = kernel.closure_table_packed(table, n, [i], id_idx)
        if key in seen_cyclic:
            continue
        seen_cyclic.add(key)
        members = memoryview(key).cast("H")
        # elements are lex-sorted, so the first index reaching a given cyclic
        # subgroup is its lex-least generator
        entry = _Entry(
            members=key, mask=mask_of(members), gens=(i,), order=len(members),
            top=len(seeds),
        )
        seeds.append(entry)
        if key not in entries:
            entries[key] = entry

    if not complete:
        return _finish_catalog(entries, elements, degree, complete=False)

    # Join saturation over ascending seed sequences: every subgroup is the
    # join of its own cyclic subgroups taken in seed order, so restricting
    # joins to seed indices above the entry's build level loses nothing as
    # long as rediscovering an entry at a lower level re-opens it.
    queue: list[_Entry] = sorted(entries.values(), key=lambda e: (e.order, e.members))
    head = 0
    nseeds = len(seeds)
    while head < len(queue):
        H = queue[head]
        head += 1
        for j in range(H.top + 1, nseeds):
            C = seeds[j]
            if C.mask & ~H.mask == 0:
                continue  # C inside H: join is H
            if H.mask & ~C.mask == 0:
                continue  # H inside C: join is C, already catalogued
            gens = list(dict.fromkeys(H.gens + C.gens))
            key = kernel.closure_table_packed(table, n, gens, id_idx)
            known = entries.get(key)
            if known is not None:
                if known.top > j:
                    known.top = j
                    queue.append(known)
                continue
            members = memoryview(key).cast("H")
            entry = _Entry(
                members=key,
                mask=mask_of(members),
                gens=_reduce_gens(members, table, n, id_idx),
                order=len(members),
                top=j,
            )
            entries[key] = entry
            queue.append(entry)
    return _finish_catalog(entries, elements, degree, complete=True)


def _reduce_gens(members, table, n: int, id_idx: int) -> tuple[int, ...]:
    """Small generating set for the subgroup with the given member indices."""
    target = len(members)
    gens: list[int] = []
    covered = {id_idx}
    for idx in members:
        if idx in covered:
            continue
        gens.append(idx)
        covered = set(kernel.closure_table(table, n, gens, id_idx))
        if len(covered) == target:
            break
    return tuple(gens)


def _entry_group(entry: _Entry, elements: list[bytes], degree: int) -> PermGroup:
    gens = [elements[i] for i in entry.gens]
    G = PermGroup.from_raw(gens, degree) if gens else PermGroup.trivial(degree)
    return G


def _finish_catalog(
    entries: dict[bytes, _Entry], elements: list[bytes], degree: int, complete: bool
) -> SubgroupCatalog:
    ordered = sorted(entries.values(), key=lambda e: (e.order, e.members))
    groups = [_entry_group(e, elements, degree) for e in ordered]
    return SubgroupCatalog(
        subgroups=groups,
        complete=complete,
        elements=elements,
        entries=ordered,
        degree=degree,
    )


def subgroup_intersection(
    A: PermGroup, B: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> PermGroup:
    """Group on the elements of the smaller input that lie in the other."""
    return structure.subgroup_intersection(A, B, budgets)


def enumerate_factorizations(
    G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> list[FactorizedGroup]:
    """All ordered subgroup pairs (A, B) with |A||B| = |G||A n B|.

    The product property is verified on exact element bitmasks from the
    complete catalogue, so every returned value satisfies the FactorizedGroup
    invariants by construction.
    """
    catalog = enumerate_subgroups(G, budgets)
    order = G.order()
    out: list[FactorizedGroup] = []
    groups = catalog.subgroups
    entries = catalog.entries
    for i, A in enumerate(entries):
        for j, B in enumerate(entries):
            inter = (A.mask & B.mask).bit_count()
            if A.order * B.order == order * inter:
                out.append(
                    FactorizedGroup(
                        G=G, A=groups[i], B=groups[j], intersection_order=inter
                    )
                )
    return out


def catalog_to_json(catalog: SubgroupCatalog) -> str:
    """JSON export: list of {order, generators: [cycle strings]}."""
    payload = []
    for entry, group in zip(catalog.entries, catalog.subgroups):
        payload.append(
            {
                "order": entry.order,
                "generators": [render_permutation(g) for g in group.generators],
            }
        )
    return json.dumps(payload, separators=(",", ":"), sort_keys=True)
