"""Weighted zero-sum subsequence decisions over Z_n, with witnesses.

Two questions are answered for a sequence S and a weight set A:

* general mode: is there a nonempty index set I and coefficients a_i in A
  with sum(a_i * x_i) == 0 mod n?
* consecutive mode: same, but I must be a contiguous range of positions.

Both run an incremental sum-set DP over bit-vector states and return a
Witness on success. A slow independent oracle (full enumeration of index
sets and coefficient assignments) is provided for cross-checking; it shares
no code with the DP path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .modcore import Modulus, Residue, ResidueSet, family_set


@dataclass(frozen=True)
class WeightSet:
    """A nonempty set of coefficients A over Z_n."""

    modulus: Modulus
    members: ResidueSet

    def __post_init__(self):
        if self.members.modulus != self.modulus:
            raise ValueError("weight set members carry a different modulus")
        if len(self.members) == 0:
            raise ValueError("weight set must be nonempty")

    @classmethod
    def from_values(cls, n: int | Modulus, values) -> "WeightSet":
        mod = n if isinstance(n, Modulus) else Modulus(n)
        return cls(mod, ResidueSet.from_values(mod, values))

    @classmethod
    def from_family(cls, n: int, family: str) -> "WeightSet":
        rs = family_set(n, family)
        return cls(rs.modulus, rs)

    @property
    def values(self) -> tuple[int, ...]:
        return self.members.values()


@dataclass(frozen=True)
class Sequence:
    """An ordered finite sequence of residues sharing one modulus."""

    modulus: Modulus
    values: tuple[int, ...]

    def __post_init__(self):
        for v in self.values:
            if not 0 <= v < self.modulus.n:
                raise ValueError(f"term {v} out of range for modulus {self.modulus.n}")

    @classmethod
    def from_values(cls, n: int | Modulus, values) -> "Sequence":
        mod = n if isinstance(n, Modulus) else Modulus(n)
        return cls(mod, tuple(values))

    def __len__(self) -> int:
        return len(self.values)

    def residues(self) -> tuple[Residue, ...]:
        return tuple(Residue(v, self.modulus) for v in self.values)


@dataclass(frozen=True)
class SumSet:
    """Set of weighted sums achievable from some family of index choices."""

    modulus: Modulus
    achievable: ResidueSet


@dataclass(frozen=True)
class Witness:
    """Certificate of a weighted zero-sum: positions (0-based) and coefficients.

    sum(coefficients[j] * S[indices[j]]) == 0 mod n, with every coefficient a
    member of the weight set. In consecutive mode the indices are contiguous.
    """

    indices: tuple[int, ...]
    coefficients: tuple[int, ...]


def _require_same_modulus(*moduli: Modulus):
    if len({m.n for m in moduli}) > 1:
        raise ValueError(f"modulus mismatch: {[m.n for m in moduli]}")


def _rotate(mask: int, d: int, n: int, full: int) -> int:
    # add d (mod n) to every member of the set encoded by mask
    return ((mask << d) | (mask >> (n - d))) & full if d else mask


def weight_multiples(x: Residue | int, weights: WeightSet) -> SumSet:
    """The set A*x = {a*x mod n : a in A}."""
    n = weights.modulus.n
    if isinstance(x, Residue):
        _require_same_modulus(x.modulus, weights.modulus)
        xv = x.value
    else:
        if not 0 <= x < n:
            raise ValueError(f"term {x} out of range for modulus {n}")
        xv = x
    mask = 0
    for a in weights.values:
        mask |= 1 << (a * xv % n)
    return SumSet(weights.modulus, ResidueSet(weights.modulus, mask))


def extend_reachable(reached: SumSet, x: Residue | int, weights: WeightSet) -> SumSet:
    """One DP step: sums achievable from nonempty subsets of the prefix plus x.

    new = R | (R (+) A*x) | A*x, where (+) is the Minkowski sum mod n.
    """
    _require_same_modulus(reached.modulus, weights.modulus)
    n = weights.modulus.n
    full = (1 << n) - 1
    r = reached.achievable.mask
    ax = weight_multiples(x, weights).achievable
    out = r | ax.mask
    for d in ax.values():
        out |= _rotate(r, d, n, full)
    return SumSet(weights.modulus, ResidueSet(weights.modulus, out))


def _strip_zero_coefficients(indices, coeffs, consecutive: bool):
    """Drop indices carrying coefficient 0 (kept only if nothing would remain).

    In consecutive mode only the ends are trimmed so the range stays contiguous.
    """
    if all(c == 0 for c in coeffs):
        return (indices[0],), (coeffs[0],)
    if consecutive:
        lo, hi = 0, len(coeffs) - 1
        while coeffs[lo] == 0:
            lo += 1
        while coeffs[hi] == 0:
            hi -= 1
        return tuple(indices[lo : hi + 1]), tuple(coeffs[lo : hi + 1])
    kept = [(i, c) for i, c in zip(indices, coeffs) if c != 0]
    return tuple(i for i, _ in kept), tuple(c for _, c in kept)


def has_zero_sum_subsequence(seq: Sequence, weights: WeightSet):
    """Decide the general-subsequence question; returns (answer, witness or None).

    Backlinks make the witness deterministic: a sum keeps the first
    (index, coefficient) pair that reached it, scanning indices in order and
    coefficients in ascending value.
    """
    _require_same_modulus(seq.modulus, weights.modulus)
    n = seq.modulus.n
    coeffs = weights.values
    # back[s] = (previous sum or None, index, coefficient)
    back: dict[int, tuple[int | None, int, int]] = {}
    for i, x in enumerate(seq.values):
        sources = sorted(back)
        for a in coeffs:
            t = a * x % n
            for s in (None, *sources):
                u = t if s is None else (s + t) % n
                if u not in back:
                    back[u] = (s, i, a)
                    if u == 0:
                        return True, _extract_witness(back)
    return False, None


def _extract_witness(back) -> Witness:
    indices, coeffs = [], []
    s: int | None = 0
    while s is not None:
        prev, i, a = back[s]
        indices.append(i)
        coeffs.append(a)
        s = prev
    indices.reverse()
    coeffs.reverse()
    idx, cfs = _strip_zero_coefficients(indices, coeffs, consecutive=False)
    return Witness(idx, cfs)


def has_zero_sum_consecutive(seq: Sequence, weights: WeightSet):
    """Decide the consecutive-terms question; returns (answer, witness or None).

    Window sum-sets are maintained incrementally: appending x maps each open
    window W to W (+) A*x and opens the new window A*x. The witness covers the
    earliest window start that first reaches 0.
    """
    _require_same_modulus(seq.modulus, weights.modulus)
    n = seq.modulus.n
    full = (1 << n) - 1
    mults = [weight_multiples(x, weights).achievable.values() for x in seq.values]
    masks = [sum(1 << d for d in m) for m in mults]
    windows: list[int] = []  # windows[s] = sums over seq[s..e], all terms used
    for e, x in enumerate(seq.values):
        for s in range(e):
            w = windows[s]
            nw = 0
            for d in mults[e]:
                nw |= _rotate(w, d, n, full)
            windows[s] = nw
        windows.append(masks[e])
        for s in range(e + 1):
            if windows[s] & 1:
                return True, _window_witness(seq, weights, s, e)
    return False, None


def _window_witness(seq: Sequence, weights: WeightSet, start: int, end: int) -> Witness:
    # regenerate coefficients for the window [start, end]: every index takes a
    # coefficient, layer by layer, with one backlink per achievable sum
    n = seq.modulus.n
    levels: list[dict[int, tuple[int | None, int]]] = []
    sums: list[int | None] = [None]  # sentinel: empty partial sum
    for i in range(start, end + 1):
        x = seq.values[i]
        layer: dict[int, tuple[int | None, int]] = {}
        for a in weights.values:
            t = a * x % n
            for s in sums:
                u = t if s is None else (s + t) % n
                if u not in layer:
                    layer[u] = (s, a)
        levels.append(layer)
        sums = sorted(layer)
    if 0 not in levels[-1]:
        raise AssertionError(f"window [{start}, {end}] lost its zero-sum")
    coeffs = []
    u: int | None = 0
    for layer in reversed(levels):
        prev, a = layer[u]
        coeffs.append(a)
        u = prev
    coeffs.reverse()
    idx, cfs = _strip_zero_coefficients(
        tuple(range(start, end + 1)), tuple(coeffs), consecutive=True
    )
    return Witness(idx, cfs)


def verify_witness(
    seq: Sequence, weights: WeightSet, witness: Witness, consecutive: bool = False
) -> bool:
    """True iff the witness is well-formed and certifies a zero-sum."""
    return witness_error(seq, weights, witness, consecutive) is None


def witness_error(
    seq: Sequence, weights: WeightSet, witness: Witness, consecutive: bool = False
) -> str | None:
    """None when the witness verifies, else a human-readable diagnostic."""
    try:
        _require_same_modulus(seq.modulus, weights.modulus)
    except ValueError as exc:
        return str(exc)
    n = seq.modulus.n
    idx, cfs = witness.indices, witness.coefficients
    if len(idx) == 0:
        return "witness has no indices"
    if len(idx) != len(cfs):
        return f"{len(idx)} indices but {len(cfs)} coefficients"
    if list(idx) != sorted(set(idx)):
        return "indices must be strictly increasing"
    if idx[0] < 0 or idx[-1] >= len(seq):
        return f"index out of range for a length-{len(seq)} sequence"
    for a in cfs:
        if a not in weights.members:
            return f"coefficient {a} is not in the weight set"
    if consecutive and idx[-1] - idx[0] + 1 != len(idx):
        return f"indices {idx} are not contiguous"
    total = sum(a * seq.values[i] for i, a in zip(idx, cfs)) % n
    if total != 0:
        return f"weighted sum is {total}, not 0 mod {n}"
    return None


def brute_force_has_zero_sum(
    seq: Sequence, weights: WeightSet, consecutive: bool = False
) -> bool:
    """Independent oracle: enumerate every index set and coefficient assignment.

    Exponential (|A|^k per index set); for cross-checking small instances only.
    """
    _require_same_modulus(seq.modulus, weights.modulus)
    n = seq.modulus.n
    k = len(seq)
    coeffs = weights.values
    if consecutive:
        index_sets = [
            tuple(range(s, e + 1)) for s in range(k) for e in range(s, k)
        ]
    else:
        index_sets = [
            combo
            for size in range(1, k + 1)
            for combo in itertools.combinations(range(k), size)
        ]
    for index_set in index_sets:
        terms = [seq.values[i] for i in index_set]
        for assign in itertools.product(coeffs, repeat=len(index_set)):
            if sum(a * x for a, x in zip(assign, terms)) % n == 0:
                return True
    return False
