# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot permutation kernels.

Mirrors ``permsol._kernels_py`` exactly (same functions, same deterministic
results); see that module for the representation and conventions.  Only the
inner loops differ: permutation arithmetic runs on raw byte buffers.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING, PyBytes_GET_SIZE
from libc.stdlib cimport free, malloc

from array import array

BACKEND = "cython"


# ---------------------------------------------------------------------------
# elementary permutation arithmetic


def identity_perm(int degree):
    cdef bytes r = PyBytes_FromStringAndSize(NULL, degree)
    cdef unsigned char* rp = <unsigned char*> PyBytes_AS_STRING(r)
    cdef int i
    for i in range(degree):
        rp[i] = <unsigned char> i
    return r


cdef inline bytes _compose(bytes p, bytes q):
    cdef Py_ssize_t n = PyBytes_GET_SIZE(p)
    cdef bytes r = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* rp = <unsigned char*> PyBytes_AS_STRING(r)
    cdef const unsigned char* pp = <const unsigned char*> PyBytes_AS_STRING(p)
    cdef const unsigned char* qp = <const unsigned char*> PyBytes_AS_STRING(q)
    cdef Py_ssize_t i
    for i in range(n):
        rp[i] = qp[pp[i]]
    return r


cdef inline bytes _inverse(bytes p):
    cdef Py_ssize_t n = PyBytes_GET_SIZE(p)
    cdef bytes r = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* rp = <unsigned char*> PyBytes_AS_STRING(r)
    cdef const unsigned char* pp = <const unsigned char*> PyBytes_AS_STRING(p)
    cdef Py_ssize_t i
    for i in range(n):
        rp[pp[i]] = <unsigned char> i
    return r


cdef inline int _first_moved(bytes p):
    cdef const unsigned char* pp = <const unsigned char*> PyBytes_AS_STRING(p)
    cdef Py_ssize_t n = PyBytes_GET_SIZE(p)
    cdef Py_ssize_t i
    for i in range(n):
        if pp[i] != i:
            return <int> i
    return -1


cdef inline bint _is_identity(bytes p):
    return _first_moved(p) == -1


def compose(bytes p, bytes q):
    """Apply p, then q."""
    return _compose(p, q)


def inverse(bytes p):
    return _inverse(p)


def conjugate(bytes p, bytes g):
    """g^-1 * p * g (maps g[i] to g[p[i]])."""
    cdef Py_ssize_t n = PyBytes_GET_SIZE(p)
    cdef bytes r = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* rp = <unsigned char*> PyBytes_AS_STRING(r)
    cdef const unsigned char* pp = <const unsigned char*> PyBytes_AS_STRING(p)
    cdef const unsigned char* gp = <const unsigned char*> PyBytes_AS_STRING(g)
    cdef Py_ssize_t i
    for i in range(n):
        rp[gp[i]] = gp[pp[i]]
    return r


def commutator(bytes g, bytes h):
    """[g, h] = g^-1 h^-1 g h."""
    return _compose(_compose(_compose(_inverse(g), _inverse(h)), g), h)


def perm_power(bytes p, long long n):
    cdef int deg = <int> PyBytes_GET_SIZE(p)
    if n < 0:
        return perm_power(_inverse(p), -n)
    cdef bytes out = identity_perm(deg)
    cdef bytes base = p
    while n:
        if n & 1:
            out = _compose(out, base)
        base = _compose(base, base)
        n >>= 1
    return out


cdef inline long long _gcd(long long a, long long b):
    while b:
        a, b = b, a % b
    return a


def perm_order(bytes p):
    """lcm of cycle lengths."""
    cdef const unsigned char* pp = <const unsigned char*> PyBytes_AS_STRING(p)
    cdef Py_ssize_t n = PyBytes_GET_SIZE(p)
    cdef unsigned char seen[256]
    cdef Py_ssize_t i, j
    cdef long long order = 1, length
    for i in range(n):
        seen[i] = 0
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = pp[j]
            length += 1
        order = order // _gcd(order, length) * length
    return order


def first_moved(bytes p):
    """Smallest moved point, or -1 for the identity."""
    return _first_moved(p)


# ---------------------------------------------------------------------------
# stabilizer chains (deterministic Schreier-Sims)


cdef dict _rebuild_orbit(int point, list gens, bytes ident):
    cdef dict trans = {point: ident}
    cdef list queue = [point]
    cdef Py_ssize_t head = 0
    cdef int a, b
    cdef bytes ua, g
    while head < len(queue):
        a = <int> queue[head]
        head += 1
        ua = <bytes> trans[a]
        for g in gens:
            b = (<const unsigned char*> PyBytes_AS_STRING(g))[a]
            if b not in trans:
                trans[b] = _compose(ua, g)
                queue.append(b)
    return trans


cdef tuple _strip(list trans, bytes p, int start, int degree):
    cdef int lvl = start
    cdef int x
    cdef object t, u
    while lvl < degree:
        x = (<const unsigned char*> PyBytes_AS_STRING(p))[lvl]
        t = trans[lvl]
        if t is None:
            if x != lvl:
                return p, lvl
        elif x != lvl:
            u = (<dict> t).get(x)
            if u is None:
                return p, lvl
            p = _compose(p, _inverse(<bytes> u))
        lvl += 1
    return p, degree


def build_chain(gens, int degree):
    """Deterministic Schreier-Sims with base 0, 1, 2, ... (trivial levels skipped)."""
    cdef bytes ident = identity_perm(degree)
    cdef list distr = [[] for _ in range(degree)]
    cdef list trans = [None] * degree

    cdef set seen = set()
    cdef int maxlevel = -1
    cdef int fm, lvl, i, j
    cdef bytes g, r, gb, ub, u2, sg
    for gobj in gens:
        gb = bytes(gobj)
        if _is_identity(gb) or gb in seen:
            continue
        seen.add(gb)
        fm = _first_moved(gb)
        for lvl in range(fm + 1):
            (<list> distr[lvl]).append(gb)
        if fm > maxlevel:
            maxlevel = fm

    for lvl in range(maxlevel + 1):
        if <list> distr[lvl]:
            trans[lvl] = _rebuild_orbit(lvl, <list> distr[lvl], ident)

    cdef bint restart
    cdef dict t
    i = maxlevel
    while i >= 0:
        if trans[i] is None:
            i -= 1
            continue
        t = <dict> trans[i]
        restart = False
        for beta in sorted(t):
            ub = <bytes> t[beta]
            for gobj in <list> distr[i]:
                g = <bytes> gobj
                u2 = <bytes> t[(<const unsigned char*> PyBytes_AS_STRING(g))[<int> beta]]
                sg = _compose(ub, g)
                if sg == u2:
                    continue
                sg = _compose(sg, _inverse(u2))
                if _is_identity(sg):
                    continue
                r, j = _strip(trans, sg, i + 1, degree)
                if _is_identity(r):
                    continue
                for lvl in range(i + 1, j + 1):
                    (<list> distr[lvl]).append(r)
                    trans[lvl] = _rebuild_orbit(lvl, <list> distr[lvl], ident)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    return [
        (lvl, trans[lvl], list(<list> distr[lvl]))
        for lvl in range(degree)
        if trans[lvl] is not None and len(<dict> trans[lvl]) > 1
    ]


def chain_order(chain):
    order = 1
    for _, trans, _ in chain:
        order *= len(trans)
    return order


def chain_sift(chain, bytes p):
    """Residue of p after sifting; identity iff p is a member."""
    cdef int point, x
    cdef dict trans
    cdef object u
    for level in chain:
        point = <int> (<tuple> level)[0]
        trans = <dict> (<tuple> level)[1]
        x = (<const unsigned char*> PyBytes_AS_STRING(p))[point]
        if x == point:
            continue
        u = trans.get(x)
        if u is None:
            return p
        p = _compose(p, _inverse(<bytes> u))
    return p


def chain_contains(chain, bytes p):
    return _is_identity(chain_sift(chain, p))


def group_order(gens, int degree):
    return chain_order(build_chain(gens, degree))


def elements_lex(chain, int degree):
    """All group elements in lexicographic image-sequence order."""
    ident = identity_perm(degree)
    if not chain:
        yield ident
        return
    n_levels = len(chain)

    def rec(k, outer):
        if k == n_levels:
            yield outer
            return
        _, trans, _ = chain[k]
        for beta in sorted(trans, key=outer.__getitem__):
            yield from rec(k + 1, _compose(trans[beta], outer))

    yield from rec(0, ident)


def normal_closure_gens(ambient_gens, seeds, int degree):
    """Generators of the normal closure of <seeds> under conjugation by ambient_gens."""
    cdef bytes ident = identity_perm(degree)
    cdef list closure = []
    cdef list chain = []
    cdef list queue = [bytes(s) for s in seeds if bytes(s) != ident]
    cdef Py_ssize_t head = 0
    cdef bytes c
    cdef list amb = [bytes(g) for g in ambient_gens]
    while head < len(queue):
        c = <bytes> queue[head]
        head += 1
        if chain_contains(chain, c):
            continue
        closure.append(c)
        chain = build_chain(closure, degree)
        for g in amb:
            queue.append(conjugate(c, <bytes> g))
    return closure


def derived_gens(gens, int degree):
    """Generators of the derived subgroup (normal closure of generator commutators)."""
    cdef list gl = [bytes(g) for g in gens]
    cdef list seeds = []
    cdef Py_ssize_t i, j
    for i in range(len(gl)):
        for j in range(i + 1, len(gl)):
            seeds.append(commutator(<bytes> gl[i], <bytes> gl[j]))
    return normal_closure_gens(gl, seeds, degree)


def is_soluble_gens(gens, int degree):
    """Derived series test: terminates at the trivial group iff soluble."""
    cdef list current = [bytes(g) for g in gens if _first_moved(bytes(g)) != -1]
    order = group_order(current, degree)
    while order > 1:
        nxt = derived_gens(current, degree)
        nxt_order = group_order(nxt, degree)
        if nxt_order == order:
            return False
        current, order = nxt, nxt_order
    return True


def two_gen_order_soluble(bytes x, bytes y, int degree):
    """(order, soluble?) of the subgroup generated by two permutations."""
    gens = [x, y]
    order = group_order(gens, degree)
    return order, is_soluble_gens(gens, degree)


# ---------------------------------------------------------------------------
# fully enumerated ("index plane") helpers for small ambient groups


def mult_table(elements):
    """Flat n*n multiplication table: entry i*n+j = index of elements[i]*elements[j]."""
    cdef dict index = {e: k for k, e in enumerate(elements)}
    cdef Py_ssize_t n = len(elements)
    flat = array("i", bytes(4 * n * n))
    cdef int[::1] view = flat
    cdef Py_ssize_t pos = 0
    cdef bytes p, q
    for pobj in elements:
        p = <bytes> pobj
        for qobj in elements:
            q = <bytes> qobj
            view[pos] = <int> index[_compose(p, q)]
            pos += 1
    return flat


cdef bytearray _closure_flags(table, Py_ssize_t n, seeds, Py_ssize_t identity_index):
    cdef int[::1] view = table
    cdef bytearray member = bytearray(n)
    cdef unsigned char* mem = member
    cdef list seedlist = list(dict.fromkeys(seeds))
    cdef Py_ssize_t nseeds = len(seedlist)
    cdef int* queue = <int*> malloc(n * sizeof(int))
    cdef int* seedarr = <int*> malloc((nseeds if nseeds else 1) * sizeof(int))
    if queue == NULL or seedarr == NULL:
        free(queue)
        free(seedarr)
        raise MemoryError()
    cdef Py_ssize_t head = 0, tail = 0, base, k
    cdef int y
    try:
        for k in range(nseeds):
            seedarr[k] = <int> seedlist[k]
        mem[identity_index] = 1
        queue[tail] = <int> identity_index
        tail += 1
        while head < tail:
            base = <Py_ssize_t> queue[head] * n
            head += 1
            for k in range(nseeds):
                y = view[base + seedarr[k]]
                if not mem[y]:
                    mem[y] = 1
                    queue[tail] = y
                    tail += 1
    finally:
        free(queue)
        free(seedarr)
    return member


def closure_table(table, Py_ssize_t n, seeds, Py_ssize_t identity_index):
    """Sorted indices of the subgroup generated by ``seeds`` (via the table)."""
    cdef bytearray member = _closure_flags(table, n, seeds, identity_index)
    cdef unsigned char* mem = member
    cdef list out = []
    cdef Py_ssize_t i
    for i in range(n):
        if mem[i]:
            out.append(i)
    return out


def closure_table_packed(table, Py_ssize_t n, seeds, Py_ssize_t identity_index):
    """Like closure_table, but returns the sorted indices packed as uint16 bytes."""
    cdef bytearray member = _closure_flags(table, n, seeds, identity_index)
    cdef unsigned char* mem = member
    cdef Py_ssize_t count = 0, i
    for i in range(n):
        if mem[i]:
            count += 1
    cdef bytes out = PyBytes_FromStringAndSize(NULL, 2 * count)
    cdef unsigned short* op = <unsigned short*> PyBytes_AS_STRING(out)
    cdef Py_ssize_t w = 0
    for i in range(n):
        if mem[i]:
            op[w] = <unsigned short> i
            w += 1
    return out
