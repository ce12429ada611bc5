"""Kernel backend selection.

The hot loops (permutation arithmetic, stabilizer chains, closure scans) have
two interchangeable implementations: a compiled Cython extension
(``permsol._kernels``) and a pure-Python fallback (``permsol._kernels_py``).
The compiled one is used when importable; set ``PERMSOL_PURE=1`` to force the
fallback.  Both produce bit-identical results (see tests/test_kernel_parity).
"""

from __future__ import annotations

import os

if os.environ.get("PERMSOL_PURE"):
    from permsol import _kernels_py as _impl
else:
    try:
        from permsol import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from permsol import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND

identity_perm = _impl.identity_perm
compose = _impl.compose
inverse = _impl.inverse
conjugate = _impl.conjugate
commutator = _impl.commutator
perm_power = _impl.perm_power
perm_order = _impl.perm_order
first_moved = _impl.first_moved
build_chain = _impl.build_chain
chain_order = _impl.chain_order
chain_sift = _impl.chain_sift
chain_contains = _impl.chain_contains
group_order = _impl.group_order
elements_lex = _impl.elements_lex
normal_closure_gens = _impl.normal_closure_gens
derived_gens = _impl.derived_gens
is_soluble_gens = _impl.is_soluble_gens
two_gen_order_soluble = _impl.two_gen_order_soluble
mult_table = _impl.mult_table
closure_table = _impl.closure_table
closure_table_packed = _impl.closure_table_packed
