"""Prime graph and soluble graph of a finite group, and independent primes.

Vertices are the primes dividing the group order.  The prime graph joins p
and q when some element has order divisible by pq; the soluble graph joins
them when some soluble subgroup has order divisible by pq.  Independence of
p and q means the soluble graph has no p-q edge.

Soluble-graph edges use the pair criterion: an edge exists iff some
non-trivial p-element x and q-element y generate a soluble subgroup.  A
soluble subgroup of order divisible by pq contains a Hall {p,q}-subgroup,
hence such a pair; conversely <x, y> itself is the witness subgroup.  The
scan normalises x to class representatives (the existential is invariant
under simultaneous conjugation) and y to distinct cyclic subgroups
(<x, y> depends on <y> only), which loses nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from permsol import kernel, structure
from permsol.budgets import DEFAULT_BUDGETS, Budgets, check_order_budget
from permsol.permcore import PermGroup, p_element_class_reps
from permsol.structure import cyclic_min_generator, join_soluble


@dataclass
class PrimeGraph:
    group_label: str
    vertices: list[int]
    edges: list[tuple[int, int]]
    kind: str  # "prime" | "soluble"


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_graph(
    G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS, label: str = ""
) -> PrimeGraph:
    """Edge p-q iff some element of G has order divisible by pq."""
    order = G.order()
    check_order_budget(order, budgets, "prime graph")
    vertices = _prime_factors(order)
    orders = set()
    for raw in G.raw_elements():
        orders.add(kernel.perm_order(raw))
    edges = []
    for i, p in enumerate(vertices):
        for q in vertices[i + 1 :]:
            if any(o % (p * q) == 0 for o in orders):
                edges.append((p, q))
    return PrimeGraph(group_label=label, vertices=vertices, edges=edges, kind="prime")


def _distinct_prime_power_cyclic(G: PermGroup, p: int, budgets: Budgets) -> list[bytes]:
    """Lex-least generators of the distinct non-trivial cyclic p-subgroups."""
    check_order_budget(G.order(), budgets, "p-element cyclic enumeration")
    seen: set[bytes] = set()
    out = []
    for raw in G.raw_elements():
        o = kernel.perm_order(raw)
        if o == 1 or o % p:
            continue
        m = o
        while m % p == 0:
            m //= p
        if m != 1:
            continue
        rep = cyclic_min_generator(raw)
        if rep not in seen:
            seen.add(rep)
            out.append(rep)
    return out


def _has_soluble_pair(
    G: PermGroup, p: int, q: int, budgets: Budgets, jobs: int = 1
) -> bool:
    """Is there a soluble <x, y> with x a p-element and y a q-element (both != 1)?

    Chooses the cheaper orientation; a negative answer always means the full
    scan ran (edges may short-circuit, independence may not).
    """
    reps_p = p_element_class_reps(G, p, budgets)
    reps_q = p_element_class_reps(G, q, budgets)
    cyc_p = _distinct_prime_power_cyclic(G, p, budgets)
    cyc_q = _distinct_prime_power_cyclic(G, q, budgets)
    if len(reps_p) * len(cyc_q) <= len(reps_q) * len(cyc_p):
        xs, ys = reps_p, cyc_q
    else:
        xs, ys = reps_q, cyc_p
    degree = G.degree
    if jobs > 1 and len(xs) * len(ys) >= 2048:  # pool startup must pay off
        from permsol.parallel import pair_scan_exists

        pairs = ((x, y) for x in xs for y in ys)
        return pair_scan_exists(pairs, degree, want_soluble=True, jobs=jobs)
    for x in xs:
        xrep = cyclic_min_generator(x)
        for y in ys:
            if join_soluble(xrep, y, degree):
                return True
    return False


def soluble_graph(
    G: PermGroup,
    budgets: Budgets = DEFAULT_BUDGETS,
    label: str = "",
    jobs: int = 1,
) -> PrimeGraph:
    """Edge p-q iff G contains a soluble subgroup of order divisible by pq."""
    order = G.order()
    check_order_budget(order, budgets, "soluble graph")
    vertices = _prime_factors(order)
    edges = []
    for i, p in enumerate(vertices):
        for q in vertices[i + 1 :]:
            if _has_soluble_pair(G, p, q, budgets, jobs):
                edges.append((p, q))
    return PrimeGraph(group_label=label, vertices=vertices, edges=edges, kind="soluble")


def are_independent(
    G: PermGroup, p: int, q: int, budgets: Budgets = DEFAULT_BUDGETS, jobs: int = 1
) -> bool:
    """No soluble subgroup of G has order divisible by pq."""
    if p == q:
        raise ValueError("independence is defined for distinct primes")
    order = G.order()
    for prime in (p, q):
        if prime < 2 or _prime_factors(prime) != [prime]:
            raise ValueError(f"{prime} is not prime")
        if order % prime:
            raise ValueError(f"{prime} does not divide the group order {order}")
    return not _has_soluble_pair(G, p, q, budgets, jobs)


def soluble_edges_by_subgroup_enumeration(
    G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS
) -> list[tuple[int, int]]:
    """Oracle route: soluble-graph edges read off a complete subgroup catalogue."""
    from permsol import groupio

    catalog = groupio.enumerate_subgroups(G, budgets)
    soluble_orders = set()
    for group, entry in zip(catalog.subgroups, catalog.entries):
        if entry.order in soluble_orders:
            continue
        if structure.is_soluble(group):
            soluble_orders.add(entry.order)
    vertices = _prime_factors(G.order())
    edges = []
    for i, p in enumerate(vertices):
        for q in vertices[i + 1 :]:
            if any(o % (p * q) == 0 for o in soluble_orders):
                edges.append((p, q))
    return edges


def export_graph(graph: PrimeGraph, format: str = "json") -> str:
    """Render as DOT (undirected) or as the fixed JSON schema."""
    if format == "json":
        return json.dumps(
            {
                "group": graph.group_label,
                "kind": graph.kind,
                "vertices": list(graph.vertices),
                "edges": [list(e) for e in graph.edges],
            },
            separators=(",", ":"),
        )
    if format == "dot":
        lines = ["graph G {"]
        for v in graph.vertices:
            lines.append(f'  "{v}";')
        for a, b in graph.edges:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}")
