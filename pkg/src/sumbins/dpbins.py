"""Residue-bin counting tables with indexed access to their subsets.

For items ``a_1..a_n`` and a modulus p, bin k is the family of subsets S of
{1..n} whose sum is congruent to k mod p. The table built here stores, for
every prefix length i and residue j, the exact number of subsets of the first
i items with sum = j (mod p):

    rows[0][j]  = 1 if j == 0 else 0
    rows[i][j]  = rows[i-1][j] + rows[i-1][(j - a_i) mod p]

so ``rows[n][k]`` is the size of bin k and each row i sums to 2^i. Counts are
exact (arbitrary precision); a fast path keeps rows in 64-bit machine words
whenever n <= 62, where no entry can exceed 2^62.

On top of the table, :func:`unrank` gives random access into a bin under a
fixed total order on subsets: S1 < S2 iff the largest index where they differ
belongs to S2, equivalently chi(S1) < chi(S2) for chi(S) = sum(2^i, i in S).
The walk resolves one index per step from n down to 1, so a query costs
O(n) table lookups and O(n)-word arithmetic: O(n^2) bit operations total.
Enumeration of a bin simply unranks index 1, 2, 3, ... so it needs no
per-bin cursor state and any slice of a bin can be streamed independently.
"""

from __future__ import annotations

import struct
from array import array
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import Subset

__all__ = [
    "DEFAULT_MEMORY_CAP_BYTES",
    "ResourceLimitError",
    "CountTable",
    "BinRef",
    "build_table",
    "compare_chi",
    "unrank",
    "enumerate_bin",
    "dump_table",
    "load_table",
]

DEFAULT_MEMORY_CAP_BYTES = 8 << 30

# Largest n for which every table entry (<= 2^n) fits a signed 64-bit word.
_INT64_SAFE_N = 62

_MAGIC = b"SBT1"


class ResourceLimitError(RuntimeError):
    """The requested work would exceed a configured resource cap."""


@dataclass
class CountTable:
    """The (n+1) x p count table plus the item data needed to walk it."""

    items: tuple[int, ...]
    p: int
    rows: list  # rows[i] is indexable by residue; int64 ndarray or list[int]
    mods: tuple[int, ...]  # items reduced mod p, aligned with items

    @property
    def n(self) -> int:
        return len(self.items)

    def count(self, i: int, j: int) -> int:
        """Number of subsets of the first i items with sum = j (mod p)."""
        return int(self.rows[i][j])

    def bin_size(self, k: int) -> int:
        return int(self.rows[self.n][k])

    def bin_sizes(self) -> list[int]:
        return [int(c) for c in self.rows[self.n]]


def estimate_table_bytes(n: int, p: int) -> int:
    """Planning estimate used for the memory cap check.

    Entries are bounded by 2^n, i.e. up to n/8 bytes each, and the fast path
    stores 8-byte words; the estimate takes the larger of the two.
    """
    return (n + 1) * p * max(8, n // 8)


def build_table(
    items: Sequence[int],
    p: int,
    memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES,
) -> CountTable:
    """Build the full count table in O(n^2 p) bit operations.

    p may be any positive integer (primality is never required; random primes
    are only a property of how callers pick p). p = 1 degenerates to a single
    bin holding all 2^n subsets.
    """
    items = tuple(int(a) for a in items)
    n = len(items)
    if not items:
        raise ValueError("items must be nonempty")
    if p < 1:
        raise ValueError(f"modulus must be positive, got {p}")
    if any(a < 1 for a in items):
        raise ValueError("items must be positive integers")
    if estimate_table_bytes(n, p) > memory_cap_bytes:
        raise ResourceLimitError(
            f"table for n={n}, p={p} needs about {estimate_table_bytes(n, p)} bytes, "
            f"cap is {memory_cap_bytes}"
        )
    mods = tuple(a % p for a in items)

    if n <= _INT64_SAFE_N:
        rows: list = []
        row = np.zeros(p, dtype=np.int64)
        row[0] = 1
        for i in range(n + 1):
            rows.append(row)
            if i < n:
                sh = mods[i]
                nxt = np.empty_like(row)
                nxt[:sh] = row[p - sh :]
                nxt[sh:] = row[: p - sh]
                nxt += row
                row = nxt
        return CountTable(items, p, rows, mods)

    row_big = [0] * p
    row_big[0] = 1
    rows = [list(row_big)]
    for i in range(n):
        sh = mods[i]
        rotated = row_big[-sh:] + row_big[:-sh] if sh else row_big
        row_big = [x + y for x, y in zip(row_big, rotated)]
        rows.append(list(row_big))
    return CountTable(items, p, rows, mods)


def compare_chi(s1: Subset, s2: Subset) -> int:
    """Three-way comparison in the enumeration order: -1, 0, or 1.

    The order is by chi(S) = sum(2^i for i in S); equivalently the largest
    index in the symmetric difference decides, and it favors the set that
    contains it.
    """
    a, b = s1.chi(), s2.chi()
    return (a > b) - (a < b)


def _unrank_mask(table: CountTable, k: int, index: int) -> tuple[int, int]:
    """Core walk: return (bit mask, exact item sum) of the index-th subset.

    ``index`` is 1-based within bin k. At step i the count of continuations
    that exclude item i is rows[i-1][j]; an index beyond them takes item i
    and retargets the residue j by -a_i.
    """
    rows = table.rows
    mods = table.mods
    items = table.items
    p = table.p
    mask = 0
    value = 0
    j = k
    for i in range(table.n, 0, -1):
        without = rows[i - 1][j]
        if index > without:
            index -= without
            mask |= 1 << (i - 1)
            value += items[i - 1]
            j = (j - mods[i - 1]) % p
    return mask, value


_WORD_MASK = (1 << 64) - 1


def _has_word_rows(table: CountTable) -> bool:
    """True when the table stores machine-word rows (the n <= 62 fast path)."""
    return isinstance(table.rows[0], (np.ndarray, array))


def _bin_sums_batch(table: CountTable, k: int, start: int, count: int) -> np.ndarray:
    """Subset sums mod 2^64 of ranks start .. start+count-1 of bin k.

    The same walk as :func:`_unrank_mask`, run level by level over the whole
    rank vector with preallocated scratch. Only the running sums are kept;
    callers that need the subsets themselves re-unrank the few ranks they
    care about. Sums wrap mod 2^64, so exact-valued callers must confirm
    candidates with exact arithmetic (for item sums below 2^64 they are
    exact as is). Valid only on tables with machine-word rows.
    """
    idx = np.arange(start, start + count, dtype=np.int64)
    j = np.full(count, k, dtype=np.int64)
    sums = np.zeros(count, dtype=np.uint64)
    scratch = np.empty(count, dtype=np.int64)
    take = np.empty(count, dtype=bool)
    neg = np.empty(count, dtype=bool)
    contrib = np.empty(count, dtype=np.uint64)
    rows = table.rows
    mods = table.mods
    items = table.items
    p = table.p
    for i in range(table.n, 0, -1):
        row = np.asarray(rows[i - 1])
        np.take(row, j, out=scratch)
        np.greater(idx, scratch, out=take)
        np.subtract(idx, scratch, out=idx, where=take)
        np.subtract(j, mods[i - 1], out=scratch)
        np.less(scratch, 0, out=neg)
        np.add(scratch, p, out=scratch, where=neg)
        np.copyto(j, scratch, where=take)
        np.copyto(contrib, take, casting="unsafe")
        np.multiply(contrib, np.uint64(items[i - 1] & _WORD_MASK), out=contrib)
        np.add(sums, contrib, out=sums)
    return sums


def unrank(table: CountTable, k: int, index: int) -> Subset:
    """The index-th subset (1-based) of bin k in the chi order; O(n^2)."""
    if not 0 <= k < table.p:
        raise ValueError(f"residue k must be in [0, {table.p}), got {k}")
    size = table.bin_size(k)
    if not 1 <= index <= size:
        raise IndexError(f"index must be in [1, {size}] for this bin, got {index}")
    mask, _ = _unrank_mask(table, k, index)
    return Subset.from_mask(mask)


def enumerate_bin(
    table: CountTable,
    k: int,
    start: int = 1,
    count: int | None = None,
) -> Iterator[Subset]:
    """Stream bin k in chi order, re-running the unrank walk per index.

    Stateless by design: the cost is O(n^2) per yielded subset, and any
    window [start, start+count) can be produced without touching the rest
    of the bin.
    """
    if start < 1:
        raise IndexError(f"start must be at least 1, got {start}")
    size = table.bin_size(k)
    stop = size if count is None else min(size, start + count - 1)
    for index in range(start, stop + 1):
        mask, _ = _unrank_mask(table, k, index)
        yield Subset.from_mask(mask)


@dataclass
class BinRef:
    """A handle on one bin of a table."""

    table: CountTable
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k < self.table.p:
            raise ValueError(f"residue k must be in [0, {self.table.p})")

    @property
    def size(self) -> int:
        return self.table.bin_size(self.k)

    def __len__(self) -> int:
        return self.size

    def subset_at(self, index: int) -> Subset:
        return unrank(self.table, self.k, index)

    def __iter__(self) -> Iterator[Subset]:
        return enumerate_bin(self.table, self.k)


# ---------------------------------------------------------------------------
# Debug dump format (round-trips a table; not a stability contract)
# ---------------------------------------------------------------------------


def dump_table(table: CountTable, path: str) -> None:
    """Binary dump: magic, n, p, items, then length-prefixed count entries.

    All integers little-endian; counts and items serialize as a u32 byte
    length followed by that many magnitude bytes.
    """

    def write_int(fh, value: int) -> None:
        blob = value.to_bytes((value.bit_length() + 7) // 8 or 1, "little")
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)

    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<IQ", table.n, table.p))
        for a in table.items:
            write_int(fh, a)
        for i in range(table.n + 1):
            row = table.rows[i]
            for j in range(table.p):
                write_int(fh, int(row[j]))


def load_table(path: str) -> CountTable:
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise ValueError(f"{path} is not a count table dump")
        n, p = struct.unpack("<IQ", fh.read(12))

        def read_int() -> int:
            (length,) = struct.unpack("<I", fh.read(4))
            return int.from_bytes(fh.read(length), "little")

        items = tuple(read_int() for _ in range(n))
        rows: list = []
        for _ in range(n + 1):
            vals = [read_int() for _ in range(p)]
            rows.append(np.array(vals, dtype=np.int64) if n <= _INT64_SAFE_N else vals)
        table = CountTable(items, int(p), rows, tuple(a % p for a in items))
        return table
