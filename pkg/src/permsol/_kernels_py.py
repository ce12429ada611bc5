"""Pure-Python implementations of the hot permutation kernels.

Permutations are stored as ``bytes`` of length ``degree``: position ``i``
holds the image of point ``i``.  This caps the degree at 256, which is also
the configured degree budget, and makes permutations hashable, compact and
lexicographically comparable (byte order == image-sequence order).

Composition convention: ``compose(p, q)`` applies ``p`` first, then ``q``
(right action), i.e. ``compose(p, q)[i] == q[p[i]]``.

A stabilizer chain is a list of levels ``(point, transversal, gens)`` with
base points strictly ascending (the base is the natural order 0, 1, 2, ...
with trivial levels dropped).  ``transversal[x]`` is a permutation mapping
``point`` to ``x``.

The compiled extension ``permsol._kernels`` exports the same names; see
``permsol.kernel`` for backend selection.
"""

from __future__ import annotations

from array import array
from math import gcd
from typing import Iterator, Sequence

BACKEND = "python"


# ---------------------------------------------------------------------------
# elementary permutation arithmetic


def identity_perm(degree: int) -> bytes:
    return bytes(range(degree))


def compose(p: bytes, q: bytes) -> bytes:
    """Apply p, then q."""
    return bytes([q[x] for x in p])


def inverse(p: bytes) -> bytes:
    out = bytearray(len(p))
    for i, x in enumerate(p):
        out[x] = i
    return bytes(out)


def conjugate(p: bytes, g: bytes) -> bytes:
    """g^-1 * p * g (maps g[i] to g[p[i]])."""
    out = bytearray(len(p))
    for i, x in enumerate(p):
        out[g[i]] = g[x]
    return bytes(out)


def commutator(g: bytes, h: bytes) -> bytes:
    """[g, h] = g^-1 h^-1 g h."""
    return compose(compose(compose(inverse(g), inverse(h)), g), h)


def perm_power(p: bytes, n: int) -> bytes:
    deg = len(p)
    if n < 0:
        return perm_power(inverse(p), -n)
    out = identity_perm(deg)
    base = p
    while n:
        if n & 1:
            out = compose(out, base)
        base = compose(base, base)
        n >>= 1
    return out


def perm_order(p: bytes) -> int:
    """lcm of cycle lengths."""
    seen = bytearray(len(p))
    order = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = p[j]
            length += 1
        order = order * length // gcd(order, length)
    return order


def first_moved(p: bytes) -> int:
    """Smallest moved point, or -1 for the identity."""
    for i, x in enumerate(p):
        if x != i:
            return i
    return -1


# ---------------------------------------------------------------------------
# stabilizer chains (deterministic Schreier-Sims)


def _rebuild_orbit(point: int, gens: list[bytes], ident: bytes) -> dict[int, bytes]:
    trans = {point: ident}
    queue = [point]
    head = 0
    while head < len(queue):
        a = queue[head]
        head += 1
        ua = trans[a]
        for g in gens:
            b = g[a]
            if b not in trans:
                trans[b] = compose(ua, g)
                queue.append(b)
    return trans


def build_chain(gens: Sequence[bytes], degree: int) -> list[tuple[int, dict[int, bytes], list[bytes]]]:
    """Deterministic Schreier-Sims with base 0, 1, 2, ... (trivial levels skipped).

    Returns the list of non-trivial levels in ascending base-point order.
    """
    ident = identity_perm(degree)
    distr: list[list[bytes]] = [[] for _ in range(degree)]
    trans: list[dict[int, bytes] | None] = [None] * degree

    seen = set()
    maxlevel = -1
    for g in gens:
        g = bytes(g)
        if g == ident or g in seen:
            continue
        seen.add(g)
        fm = first_moved(g)
        for lvl in range(fm + 1):
            distr[lvl].append(g)
        maxlevel = max(maxlevel, fm)

    def strip(p: bytes, start: int) -> tuple[bytes, int]:
        lvl = start
        while lvl < degree:
            x = p[lvl]
            t = trans[lvl]
            if t is None:
                if x != lvl:
                    return p, lvl
            elif x != lvl:
                u = t.get(x)
                if u is None:
                    return p, lvl
                p = compose(p, inverse(u))
            lvl += 1
        return p, degree

    for lvl in range(maxlevel + 1):
        if distr[lvl]:
            trans[lvl] = _rebuild_orbit(lvl, distr[lvl], ident)

    i = maxlevel
    while i >= 0:
        t = trans[i]
        if t is None:
            i -= 1
            continue
        restart = False
        for beta in sorted(t):
            ub = t[beta]
            for g in distr[i]:
                u2 = t[g[beta]]
                sg = compose(ub, g)
                if sg == u2:
                    continue
                sg = compose(sg, inverse(u2))
                if sg == ident:
                    continue
                r, j = strip(sg, i + 1)
                if r == ident:
                    continue
                # new strong generator fixing 0..j-1 and moving j
                for lvl in range(i + 1, j + 1):
                    distr[lvl].append(r)
                    trans[lvl] = _rebuild_orbit(lvl, distr[lvl], ident)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    return [
        (lvl, t, list(distr[lvl]))
        for lvl, t in enumerate(trans)
        if t is not None and len(t) > 1
    ]


def chain_order(chain) -> int:
    order = 1
    for _, trans, _ in chain:
        order *= len(trans)
    return order


def chain_sift(chain, p: bytes) -> bytes:
    """Residue of p after sifting; identity iff p is a member."""
    for point, trans, _ in chain:
        x = p[point]
        if x == point:
            continue
        u = trans.get(x)
        if u is None:
            return p
        p = compose(p, inverse(u))
    return p


def chain_contains(chain, p: bytes) -> bool:
    return first_moved(chain_sift(chain, p)) == -1


def group_order(gens: Sequence[bytes], degree: int) -> int:
    return chain_order(build_chain(gens, degree))


def elements_lex(chain, degree: int) -> Iterator[bytes]:
    """All group elements in lexicographic image-sequence order.

    Every element factors uniquely as u_L ... u_1 u_0 (deepest transversal
    element applied first); at level k the image of the base point under the
    already-chosen outer part orders the branches, which yields exact
    lexicographic order because skipped base points are determined by the
    chosen ones.
    """
    ident = identity_perm(degree)
    if not chain:
        yield ident
        return
    n_levels = len(chain)

    def rec(k: int, outer: bytes) -> Iterator[bytes]:
        if k == n_levels:
            yield outer
            return
        _, trans, _ = chain[k]
        for beta in sorted(trans, key=outer.__getitem__):
            yield from rec(k + 1, compose(trans[beta], outer))

    yield from rec(0, ident)


def normal_closure_gens(
    ambient_gens: Sequence[bytes], seeds: Sequence[bytes], degree: int
) -> list[bytes]:
    """Generators of the normal closure of <seeds> under conjugation by ambient_gens."""
    ident = identity_perm(degree)
    closure: list[bytes] = []
    chain: list = []
    queue = [bytes(s) for s in seeds if bytes(s) != ident]
    head = 0
    while head < len(queue):
        c = queue[head]
        head += 1
        if chain_contains(chain, c):
            continue
        closure.append(c)
        chain = build_chain(closure, degree)
        for g in ambient_gens:
            queue.append(conjugate(c, g))
    return closure


def derived_gens(gens: Sequence[bytes], degree: int) -> list[bytes]:
    """Generators of the derived subgroup (normal closure of generator commutators)."""
    seeds = []
    gl = list(gens)
    for i in range(len(gl)):
        for j in range(i + 1, len(gl)):
            seeds.append(commutator(gl[i], gl[j]))
    return normal_closure_gens(gl, seeds, degree)


def is_soluble_gens(gens: Sequence[bytes], degree: int) -> bool:
    """Derived series test: terminates at the trivial group iff soluble."""
    current = [bytes(g) for g in gens if first_moved(bytes(g)) != -1]
    order = group_order(current, degree)
    while order > 1:
        nxt = derived_gens(current, degree)
        nxt_order = group_order(nxt, degree)
        if nxt_order == order:
            return False
        current, order = nxt, nxt_order
    return True


def two_gen_order_soluble(x: bytes, y: bytes, degree: int) -> tuple[int, bool]:
    """(order, soluble?) of the subgroup generated by two permutations."""
    gens = [x, y]
    order = group_order(gens, degree)
    return order, is_soluble_gens(gens, degree)


# ---------------------------------------------------------------------------
# fully enumerated ("index plane") helpers for small ambient groups


def mult_table(elements: Sequence[bytes]) -> "array":
    """Flat n*n multiplication table: entry i*n+j = index of elements[i]*elements[j]."""
    index = {e: k for k, e in enumerate(elements)}
    n = len(elements)
    flat = array("i", bytes(4 * n * n))
    pos = 0
    for p in elements:
        for q in elements:
            flat[pos] = index[compose(p, q)]
            pos += 1
    return flat


def closure_table(table: "array", n: int, seeds: Sequence[int], identity_index: int) -> list[int]:
    """Sorted indices of the subgroup generated by ``seeds`` (via the table)."""
    member = _closure_flags(table, n, seeds, identity_index)
    return [i for i in range(n) if member[i]]


def closure_table_packed(table: "array", n: int, seeds: Sequence[int], identity_index: int) -> bytes:
    """Like closure_table, but returns the sorted indices packed as uint16 bytes."""
    member = _closure_flags(table, n, seeds, identity_index)
    return array("H", (i for i in range(n) if member[i])).tobytes()


def _closure_flags(table, n, seeds, identity_index) -> bytearray:
    member = bytearray(n)
    member[identity_index] = 1
    queue = [identity_index]
    head = 0
    seeds = list(dict.fromkeys(seeds))
    while head < len(queue):
        base = queue[head] * n
        head += 1
        for s in seeds:
            y = table[base + s]
            if not member[y]:
                member[y] = 1
                queue.append(y)
    return member
