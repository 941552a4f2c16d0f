"""Hot search kernels with two interchangeable backends.

The numba backend JIT-compiles the depth-first search and coverage loops
over uint64 bit-vector words; the numpy backend runs the same algorithms
over boolean arrays in plain Python. Both enumerate candidates in exactly
the same order, so node counts and returned sequences are identical.

Selection: set ZSWC_BACKEND to "numba" or "numpy"; the default ("auto")
uses numba when it imports and falls back to numpy otherwise.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

STATUS_COMPLETE = 0  # subtree fully explored
STATUS_REACHED_MAX = 1  # found a blocking sequence of length max_len
STATUS_BUDGET = 2  # node budget exhausted
STATUS_STOPPED = 3  # another worker raised the stop flag

KIND_DAVENPORT = 0  # multisets: non-decreasing sequences, subsequence zero-sums
KIND_CONSECUTIVE = 1  # ordered sequences, consecutive-window zero-sums

_KIND_CODES = {"davenport": KIND_DAVENPORT, "consecutive": KIND_CONSECUTIVE}

# Refuse consecutive searches whose window-stack state would not fit in RAM.
MAX_STATE_BYTES = 512 * 1024**2


def _load_backend():
    choice = os.environ.get("ZSWC_BACKEND", "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"ZSWC_BACKEND must be auto, numba or numpy, not {choice!r}")
    if choice == "numpy":
        from . import _numpy_backend

        return _numpy_backend, "numpy"
    try:
        from . import _numba_backend

        return _numba_backend, "numba"
    except ImportError:
        if choice == "numba":
            raise
        from . import _numpy_backend

        return _numpy_backend, "numpy"


_impl, _impl_name = _load_backend()


def backend_name() -> str:
    return _impl_name


def get_backend(name: str):
    """Load a backend module by name, bypassing the env selection (for benchmarks)."""
    if name == "numba":
        from . import _numba_backend

        return _numba_backend
    if name == "numpy":
        from . import _numpy_backend

        return _numpy_backend
    raise ValueError(f"unknown backend {name!r}")


class SearchTables:
    """Per-(n, weight set) precomputation shared by every kernel call."""

    def __init__(self, n: int, weight_values, impl=None):
        weights = np.array(sorted(set(weight_values)), dtype=np.int64)
        if len(weights) == 0:
            raise ValueError("weight set must be nonempty")
        if weights[0] < 0 or weights[-1] >= n:
            raise ValueError("weights out of range")
        self.n = n
        self.weight_values = weights
        self._impl = impl if impl is not None else _impl
        self._tables = self._impl.prepare(n, weights)


def prepare(n: int, weight_values, backend=None) -> SearchTables:
    impl = get_backend(backend) if backend is not None else None
    return SearchTables(n, weight_values, impl=impl)


@dataclass
class SearchOutcome:
    best_depth: int
    best_seq: tuple[int, ...]
    nodes: int
    status: int


def _kind_code(kind: str) -> int:
    try:
        return _KIND_CODES[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {tuple(_KIND_CODES)}, not {kind!r}")


def run_search(
    tables: SearchTables,
    kind: str,
    first_values,
    prefix=(),
    max_len: int = 0,
    stop_flag: np.ndarray | None = None,
    node_budget: int = 0,
) -> SearchOutcome:
    """Explore blocking sequences extending `prefix`, up to length max_len.

    Candidates are enumerated ascending (davenport: non-decreasing overall);
    the deepest blocking sequence found first in DFS order is returned. The
    search stops early when a blocking sequence of length max_len is found
    (status REACHED_MAX), when node_budget > 0 is exhausted (BUDGET), or when
    stop_flag[0] becomes nonzero (STOPPED).
    """
    code = _kind_code(kind)
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    if len(prefix) >= max_len and len(prefix) > 0:
        raise ValueError("prefix must be shorter than max_len")
    nwords = (tables.n + 63) // 64
    if code == KIND_CONSECUTIVE:
        state_bytes = 8 * (max_len + 1) * max_len * nwords
        if state_bytes > MAX_STATE_BYTES:
            raise ValueError(
                f"consecutive search state for n={tables.n}, cap={max_len} needs "
                f"{state_bytes} bytes; lower the cap"
            )
    if stop_flag is None:
        stop_flag = np.zeros(1, dtype=np.uint8)
    fv = np.array(list(first_values), dtype=np.int64)
    pf = np.array(list(prefix), dtype=np.int64)
    best_depth, best_seq, nodes, status = tables._impl.run(
        tables._tables, code, fv, pf, max_len, stop_flag, int(node_budget)
    )
    if best_depth < 0:
        raise RuntimeError(f"prefix {tuple(prefix)} already admits a zero-sum")
    return SearchOutcome(
        best_depth, tuple(int(v) for v in best_seq[:best_depth]), int(nodes), int(status)
    )


def sequence_blocks(tables: SearchTables, values, kind: str) -> bool:
    """True iff the sequence has no zero-sum of the given kind (it "blocks")."""
    arr = np.array(list(values), dtype=np.int64)
    return bool(tables._impl.blocks(tables._tables, arr, _kind_code(kind)))


def consecutive_blocking_batch(tables: SearchTables, seqs: np.ndarray) -> np.ndarray:
    """Row-wise sequence_blocks for the consecutive kind; returns a bool array."""
    arr = np.ascontiguousarray(seqs, dtype=np.int64)
    return tables._impl.batch_consecutive_blocks(tables._tables, arr).astype(bool)


def coverage_violation(
    n: int, square_values, unit_values, arity: int, augment: bool, backend=None
):
    """Search unit tuples whose translated square-set sumset misses part of Z_n.

    Checks U2*1 + U2*y2 + ... (+ {0} unions on the later sets when augment)
    against all of Z_n for every tuple of units (y2, ..., y_arity). Returns the
    first failing tuple, or None when coverage holds everywhere.
    """
    if arity not in (3, 4):
        raise ValueError(f"arity must be 3 or 4, got {arity}")
    impl = get_backend(backend) if backend is not None else _impl
    sq = np.array(sorted(square_values), dtype=np.int64)
    un = np.array(sorted(unit_values), dtype=np.int64)
    out = impl.coverage(n, sq, un, arity, augment)
    if out[0] < 0:
        return None
    return tuple(int(v) for v in out)
