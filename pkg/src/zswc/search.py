"""Exact computation of the weighted constants D_A(n) and C_A(n).

A blocking sequence is one with no weighted zero-sum of the relevant kind;
the constant equals (longest blocking length) + 1. Because prefixes of
blocking sequences block, the blocking sequences form a tree, which is
explored depth-first with sum-set pruning:

* davenport kind: order does not matter, so only non-decreasing sequences
  are enumerated;
* consecutive kind: fully ordered enumeration over window sum-sets.

In both kinds the first term is canonicalized to the minimum of its orbit
under multiplication by U(n) (scaling a sequence by a unit preserves
blocking). Fan-out over the first two tree levels gives thread parallelism;
results are merged deterministically, preferring the lexicographically
smallest deepest sequence.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .engine import Sequence, WeightSet, brute_force_has_zero_sum, \
    has_zero_sum_consecutive, has_zero_sum_subsequence
from .modcore import Modulus

KIND_DAVENPORT = "davenport"
KIND_CONSECUTIVE = "consecutive"
KINDS = (KIND_DAVENPORT, KIND_CONSECUTIVE)

DEFAULT_NODE_BUDGET = 10**9

# Fan out over two DFS levels while the prefix grid stays small, else one.
_TWO_LEVEL_FANOUT_LIMIT = 10**5


class BudgetExceeded(RuntimeError):
    """A search ran out of its node budget before reaching an answer."""


@dataclass(frozen=True)
class ConstantQuery:
    modulus: Modulus
    weights: WeightSet
    kind: str
    cap: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, not {self.kind!r}")
        if not 1 <= self.cap <= self.modulus.n:
            raise ValueError(f"cap must be in [1, {self.modulus.n}], got {self.cap}")
        if self.weights.modulus != self.modulus:
            raise ValueError("weights carry a different modulus")


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    millis: float


@dataclass(frozen=True)
class ConstantResult:
    """Outcome of a constant computation.

    value is None when the search stopped before resolving (cap reached or
    budget exhausted); lower_bound then carries what was still established.
    extremal is a longest blocking sequence found (length value - 1 when
    determined; absent iff value == 1).
    """

    query: ConstantQuery
    value: int | None
    extremal: Sequence | None
    stats: SearchStats
    lower_bound: int
    reason: str | None = None

    @property
    def determined(self) -> bool:
        return self.value is not None


def default_weights(n: int) -> WeightSet:
    """The nonzero squares S(n)*, the weight set the constants table is about."""
    return WeightSet.from_family(n, "nonzero-squares")


def canonical_first_values(n: int) -> tuple[int, ...]:
    """Values x in [1, n-1] that are minimal in their orbit {u*x : u in U(n)}."""
    us = [u for u in range(1, n) if math.gcd(u, n) == 1]
    out = []
    for x in range(1, n):
        if all((x * u) % n >= x for u in us):
            out.append(x)
    return tuple(out)


def _resolve(n, weights, cap, kind) -> ConstantQuery:
    mod = Modulus(n)
    ws = default_weights(n) if weights is None else weights
    if isinstance(ws, (list, tuple, set, frozenset)):
        ws = WeightSet.from_values(n, ws)
    return ConstantQuery(mod, ws, kind, n if cap is None else cap)


def _first_values(n, canonicalize):
    return canonical_first_values(n) if canonicalize else tuple(range(1, n))


def _fan_out(tables, kind, first_values, n, cap):
    """Blocking prefixes of depth <= 2, in DFS order, covering the whole tree."""
    prefixes = []
    second_range = range(1, n)
    two_level = cap > 2 and len(first_values) * (n - 1) <= _TWO_LEVEL_FANOUT_LIMIT
    checked = 0
    for x1 in first_values:
        checked += 1
        if not kernels.sequence_blocks(tables, (x1,), kind):
            continue
        if not two_level:
            prefixes.append((x1,))
            continue
        start = x1 if kind == KIND_DAVENPORT else 1
        children = []
        for x2 in second_range:
            if x2 < start:
                continue
            checked += 1
            if kernels.sequence_blocks(tables, (x1, x2), kind):
                children.append((x1, x2))
        # a childless depth-1 node still contributes its own depth
        prefixes.extend(children if children else [(x1,)])
    return prefixes, checked


def _search(query: ConstantQuery, threads, node_budget, canonicalize):
    n = query.modulus.n
    tables = kernels.prepare(n, query.weights.values)
    first_values = _first_values(n, canonicalize)
    t0 = time.perf_counter()
    if threads <= 1 or query.cap <= 2:  # fan-out prefixes must stay below the cap
        outcome = kernels.run_search(
            tables, query.kind, first_values, (), query.cap, node_budget=node_budget
        )
        outcomes = [outcome]
        nodes = outcome.nodes
    else:
        prefixes, checked = _fan_out(tables, query.kind, first_values, n, query.cap)
        stop = np.zeros(1, dtype=np.uint8)

        def job(prefix):
            return kernels.run_search(
                tables, query.kind, first_values, prefix, query.cap,
                stop_flag=stop, node_budget=node_budget,
            )

        if prefixes:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                outcomes = list(pool.map(job, prefixes))
        else:
            outcomes = []
        nodes = checked + sum(o.nodes for o in outcomes)
    millis = (time.perf_counter() - t0) * 1000.0
    if not outcomes:
        return 0, (), SearchStats(nodes, millis), kernels.STATUS_COMPLETE
    best = max(o.best_depth for o in outcomes)
    # earliest prefix wins: outcomes are in DFS order of their prefixes
    winner = next(o for o in outcomes if o.best_depth == best)
    resolved = all(o.status == kernels.STATUS_COMPLETE for o in outcomes)
    if any(o.status == kernels.STATUS_REACHED_MAX for o in outcomes):
        status = kernels.STATUS_REACHED_MAX
    elif resolved:
        status = kernels.STATUS_COMPLETE
    else:
        status = kernels.STATUS_BUDGET
    return best, winner.best_seq, SearchStats(nodes, millis), status


def _verify_extremal(query: ConstantQuery, seq_values):
    seq = Sequence.from_values(query.modulus, seq_values)
    decide = (
        has_zero_sum_subsequence if query.kind == KIND_DAVENPORT
        else has_zero_sum_consecutive
    )
    found, _ = decide(seq, query.weights)
    if found:
        raise RuntimeError(
            f"search returned a non-blocking extremal {seq_values} for {query}"
        )
    if len(seq_values) <= 4 and query.modulus.n <= 15:
        if brute_force_has_zero_sum(seq, query.weights,
                                    consecutive=query.kind == KIND_CONSECUTIVE):
            raise RuntimeError(
                f"brute-force oracle rejects extremal {seq_values} for {query}"
            )
    return seq


def _constant(n, weights, kind, cap, threads, node_budget, canonicalize):
    query = _resolve(n, weights, cap, kind)
    best, best_seq, stats, status = _search(query, threads, node_budget, canonicalize)
    if status == kernels.STATUS_REACHED_MAX:
        extremal = _verify_extremal(query, best_seq) if best_seq else None
        return ConstantResult(query, None, extremal, stats, query.cap + 1, "cap")
    if status != kernels.STATUS_COMPLETE:
        extremal = _verify_extremal(query, best_seq) if best_seq else None
        return ConstantResult(query, None, extremal, stats, best + 1, "budget")
    extremal = _verify_extremal(query, best_seq) if best else None
    return ConstantResult(query, best + 1, extremal, stats, best + 1)


def davenport_constant(
    n: int,
    weights: WeightSet | None = None,
    cap: int | None = None,
    *,
    threads: int = 1,
    node_budget: int = DEFAULT_NODE_BUDGET,
    canonicalize: bool = True,
) -> ConstantResult:
    """Smallest k such that every length-k sequence over Z_n has an A-weighted
    zero-sum subsequence (A defaults to the nonzero squares)."""
    return _constant(n, weights, KIND_DAVENPORT, cap, threads, node_budget, canonicalize)


def consecutive_constant(
    n: int,
    weights: WeightSet | None = None,
    cap: int | None = None,
    *,
    threads: int = 1,
    node_budget: int = DEFAULT_NODE_BUDGET,
    canonicalize: bool = True,
) -> ConstantResult:
    """Same as davenport_constant but the zero-sum must use consecutive terms."""
    return _constant(n, weights, KIND_CONSECUTIVE, cap, threads, node_budget, canonicalize)


def exists_blocking_sequence(
    n: int,
    weights: WeightSet | None = None,
    length: int = 1,
    kind: str = KIND_DAVENPORT,
    *,
    threads: int = 1,
    node_budget: int = DEFAULT_NODE_BUDGET,
    canonicalize: bool = True,
) -> Sequence | None:
    """A length-`length` sequence with no zero-sum of the given kind, or None.

    The first term of the returned sequence is orbit-canonical when
    canonicalize is set (every blocking sequence is a unit multiple of one
    found this way). Raises BudgetExceeded when the search cannot resolve.
    """
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    query = _resolve(n, weights, None, kind)
    if length == 0:
        return Sequence.from_values(query.modulus, ())
    if length > n:
        return None
    best, best_seq, stats, status = _search(
        ConstantQuery(query.modulus, query.weights, kind, length),
        threads, node_budget, canonicalize,
    )
    if status == kernels.STATUS_REACHED_MAX:
        return _verify_extremal(query, best_seq)
    if status != kernels.STATUS_COMPLETE:
        raise BudgetExceeded(
            f"no length-{length} blocking sequence found within {node_budget} nodes"
        )
    return None


@dataclass(frozen=True)
class TableEntry:
    n: int
    result: ConstantResult | None
    error: str | None = None


def constant_table(
    n_values,
    family: str = "nonzero-squares",
    kind: str = KIND_DAVENPORT,
    *,
    custom_values=None,
    cap: int | None = None,
    threads: int = 1,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[TableEntry]:
    """One constant per n; per-entry failures are recorded, the batch continues.

    family "custom" takes the weight list from custom_values (reduced mod n).
    """
    entries = []
    for n in n_values:
        try:
            if family == "custom":
                if not custom_values:
                    raise ValueError("family 'custom' needs custom_values")
                ws = WeightSet.from_values(n, sorted({v % n for v in custom_values}))
            else:
                ws = WeightSet.from_family(n, family)
            res = _constant(n, ws, kind, cap, threads, node_budget, True)
            entries.append(TableEntry(n, res))
        except Exception as exc:  # noqa: BLE001 - per-entry error reporting
            entries.append(TableEntry(n, None, f"{type(exc).__name__}: {exc}"))
    return entries
