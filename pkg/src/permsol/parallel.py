"""Multiprocess pair scans.

The exhaustive loops are embarrassingly parallel over (x, y) pairs; workers
share nothing and the combined answer (does a pair with the wanted solubility
exist?) is schedule-independent, so results do not depend on the worker count.
"""

from __future__ import annotations

from itertools import islice
from multiprocessing import get_context
from typing import Iterable, Iterator

from permsol import kernel


def _batched(items: Iterable, size: int) -> Iterator[list]:
    it = iter(items)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def _scan_worker(args) -> bool:
    degree, pairs, want_soluble = args
    for x, y in pairs:
        if kernel.two_gen_order_soluble(x, y, degree)[1] == want_soluble:
            return True
    return False


def pair_scan_exists(
    pairs: Iterable[tuple[bytes, bytes]],
    degree: int,
    want_soluble: bool,
    jobs: int = 1,
    chunk_size: int = 512,
) -> bool:
    """Is there a pair (x, y) whose generated subgroup has the wanted solubility?

    Short-circuits on the first hit; a negative answer means every pair was
    scanned.
    """
    if jobs <= 1:
        for x, y in pairs:
            if kernel.two_gen_order_soluble(x, y, degree)[1] == want_soluble:
                return True
        return False
    ctx = get_context()
    work = ((degree, batch, want_soluble) for batch in _batched(pairs, chunk_size))
    with ctx.Pool(jobs) as pool:
        for found in pool.imap_unordered(_scan_worker, work):
            if found:
                pool.terminate()
                return True
    return False
