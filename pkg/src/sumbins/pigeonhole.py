"""Pigeonhole collision finders: equal sums, and equal sums mod q.

Both problems are total once their promises hold. With item sum W < 2^n - 1
two of the 2^n subsets must share a value, and with q <= 2^n - 1 two must
share a residue mod q. The point of this module is finding such pairs in
roughly 2^(n/2) operations instead of 2^n.

Equal sums: build the count table mod p = 2^(ceil(n/2)) and walk one
residue bin. A bin holding more subsets than there are values compatible
with that residue class must repeat a value. Strictly-heavy bins qualify
outright; if every bin is exactly average, bin p-1 still qualifies because
residue p-1 owns the fewest values in [0, W].

Modular: reduce items mod q, split q = q1 * 2^h + q2 at h = ceil(n/2), and
group residues into q1 quotient classes of width 2^h (the leftover partial
class folds into class q1-1, which therefore owns 2^h + q2 residues). A
count table over the quotient items a_i' = floor((a_i mod q) / 2^h) mod q1
counts subsets per approximate class: a subset whose true class is jj has
table index within n of jj, because dropping the low halves and wrapping
mod q misplaces the quotient sum by less than n. A dichotomic search then
maintains an interval of classes where subsets outnumber residues; interval
counts come from the table's inner bins plus direct enumeration of at most
4n boundary bins. Boundary bins too large to enumerate already certify an
overfull single class (returned as a marked index). Either way the search
ends on a class window of width <= 4n whose covering table bins hold more
subsets than residues, and bucketing those subsets by true residue mod q
exhibits the collision.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import Pair, Subset
from .dpbins import (
    DEFAULT_MEMORY_CAP_BYTES,
    CountTable,
    _bin_sums_batch,
    _has_word_rows,
    _unrank_mask,
    build_table,
)

__all__ = [
    "QuotientDecomposition",
    "BClassCount",
    "find_heavy_bin",
    "solve_pigeonhole_equal",
    "count_b_interval",
    "solve_pigeonhole_modular",
]


# ---------------------------------------------------------------------------
# Equal sums
# ---------------------------------------------------------------------------


def find_heavy_bin(items: Sequence[int], p: int, table: CountTable | None = None) -> int:
    """First residue whose bin exceeds the average 2^n / p, else p - 1."""
    n = len(items)
    if table is None:
        table = build_table(items, p)
    row = table.rows[n]
    threshold = (1 << n) // p
    if isinstance(row, (np.ndarray, array)):
        arr = np.asarray(row)
        heavy = np.nonzero(arr > threshold)[0]
        return int(heavy[0]) if heavy.size else p - 1
    for k in range(p):
        if row[k] > threshold:
            return k
    return p - 1


def solve_pigeonhole_equal(
    items: Sequence[int], memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES
) -> Pair:
    """Two distinct subsets with the same sum, given sum(items) < 2^n - 1.

    Walks one bin of the table mod p = 2^(ceil(n/2)). The chosen bin holds
    more subsets than distinct values: a strictly-heavy bin has at least
    2^n/p + 1 subsets against at most 2^n/p values, and the fallback bin
    p - 1 has 2^n/p subsets against at most 2^n/p - 1 values, since values
    congruent to p - 1 start at p - 1 and W <= 2^n - 2 caps the range.
    """
    items = tuple(int(a) for a in items)
    n = len(items)
    total = sum(items)
    if any(a < 1 for a in items):
        raise ValueError("items must be positive")
    if total >= (1 << n) - 1:
        raise ValueError(f"need sum(items) < 2^n - 1 = {(1 << n) - 1}, got {total}")
    p = 1 << ((n + 1) // 2)
    table = build_table(items, p, memory_cap_bytes)
    k = find_heavy_bin(items, p, table)
    if _has_word_rows(table):
        # Vectorized scan in doubling chunks: sums here are exact in a word
        # (W < 2^n - 1 <= 2^62), and a stable sort of the scanned prefix
        # exposes the earliest repeat, i.e. the same pair the sequential
        # walk returns. Chunks double so a repeat near the front costs only
        # a prefix of the bin, like the early exit of the scalar loop.
        size = table.bin_size(k)
        parts_s: list[np.ndarray] = []
        done = 0
        chunk = 1024
        while done < size:
            take = min(size - done, chunk)
            parts_s.append(_bin_sums_batch(table, k, done + 1, take))
            done += take
            chunk *= 2
            sums = parts_s[0] if len(parts_s) == 1 else np.concatenate(parts_s)
            order = np.argsort(sums, kind="stable")
            sv = sums[order]
            dup = sv[1:] == sv[:-1]
            if not dup.any():
                continue
            run_start = dup & ~np.concatenate(([False], dup[:-1]))
            starts = np.nonzero(run_start)[0]
            g = int(starts[int(np.argmin(order[starts + 1]))])
            first, _ = _unrank_mask(table, k, int(order[g]) + 1)
            second, _ = _unrank_mask(table, k, int(order[g + 1]) + 1)
            return Pair(Subset.from_mask(first), Subset.from_mask(second))
        raise AssertionError("bin guaranteed to repeat a value did not")
    seen: dict[int, int] = {}
    for index in range(1, table.bin_size(k) + 1):
        mask, value = _unrank_mask(table, k, index)
        if value in seen:
            return Pair(Subset.from_mask(seen[value]), Subset.from_mask(mask))
        seen[value] = mask
    raise AssertionError("bin guaranteed to repeat a value did not")


# ---------------------------------------------------------------------------
# Equal sums modulo q
# ---------------------------------------------------------------------------


@dataclass
class QuotientDecomposition:
    """q = q1 * 2^h + q2 with h = ceil(n/2); classes fold the tail into q1-1."""

    q: int
    h: int
    q1: int
    q2: int

    @classmethod
    def compute(cls, n: int, q: int) -> "QuotientDecomposition":
        h = (n + 1) // 2
        return cls(q=q, h=h, q1=q >> h, q2=q & ((1 << h) - 1))

    def fold(self, residue: int) -> int:
        """Quotient class of a residue in [0, q): the last class is wider."""
        return min(residue >> self.h, self.q1 - 1)

    def beta_single(self, jj: int) -> int:
        """Number of residues in class jj."""
        if jj == self.q1 - 1:
            return (1 << self.h) + self.q2
        return 1 << self.h

    def beta_interval(self, i: int, j: int) -> int:
        """Number of residues with class in the circular interval [i, j]."""
        width = (j - i) % self.q1 + 1
        total = width << self.h
        if (self.q1 - 1 - i) % self.q1 <= (j - i) % self.q1:
            total += self.q2
        return total


@dataclass
class BClassCount:
    """Result of a class-interval count: exact, or an overfull class index."""

    count: int | None
    marked: int | None


class _ModularContext:
    """Shared state for the dichotomic search over quotient classes."""

    def __init__(self, residues: Sequence[int], q: int, memory_cap_bytes: int):
        self.n = len(residues)
        self.q = q
        self.residues = tuple(residues)
        self.decomp = QuotientDecomposition.compute(self.n, q)
        d = self.decomp
        if d.q1 < 1:
            raise ValueError("quotient table needs q >= 2^h")
        # Positive stand-ins keep the table builder happy: q1 = 0 mod q1.
        c_items = tuple(((r >> d.h) % d.q1) or d.q1 for r in self.residues)
        self.table = build_table(c_items, d.q1, memory_cap_bytes)
        row = self.table.rows[self.n]
        prefix = [0]
        for c in range(d.q1):
            prefix.append(prefix[-1] + int(row[c]))
        self.prefix = prefix
        n = self.n
        self.boundary_bin_cap = (4 * n + 2) * (1 << d.h) + 1
        self.marked_extract_cap = (4 * n + 2) * (1 << d.h) + 1
        self.final_extract_cap = (8 * n + 2) * (1 << d.h) + 1

    def c_count(self, c: int) -> int:
        return int(self.table.rows[self.n][c % self.decomp.q1])

    def c_interval_count(self, x: int, y: int) -> int:
        """Total table count over circular C-bin interval [x, y]."""
        q1 = self.decomp.q1
        x %= q1
        y %= q1
        if x <= y:
            return self.prefix[y + 1] - self.prefix[x]
        return self.prefix[q1] - self.prefix[x] + self.prefix[y + 1]

    def iter_bin(self, c: int) -> Iterator[int]:
        """Masks of the subsets in C-bin c, in chi order."""
        c %= self.decomp.q1
        for index in range(1, self.c_count(c) + 1):
            mask, _ = _unrank_mask(self.table, c, index)
            yield mask

    def residue_of_mask(self, mask: int) -> int:
        total = 0
        m = mask
        while m:
            low = m & -m
            total += self.residues[low.bit_length() - 1]
            m ^= low
        return total % self.q

    def count_b(self, i: int, j: int) -> BClassCount:
        """Exact number of subsets with quotient class in [i, j] (circular),
        or a marked class that provably exceeds its residue supply.

        Preconditions: interval width w satisfies 2n <= w and w + 2n <= q1,
        so the boundary windows around i and j do not collide.
        """
        d = self.decomp
        n = self.n
        q1 = d.q1
        w = (j - i) % q1 + 1
        if w < 2 * n or w + 2 * n > q1:
            raise ValueError("interval width must be in [2n, q1 - 2n]")
        count = 0
        if w > 2 * n:
            count += self.c_interval_count(i + n, j - n)
        for c in self._boundary_bins(i, j):
            size = self.c_count(c)
            if size > self.boundary_bin_cap:
                marked = self._mark_overfull_class(c)
                return BClassCount(None, marked)
            for mask in self.iter_bin(c):
                jj = d.fold(self.residue_of_mask(mask))
                if (jj - i) % q1 <= (j - i) % q1:
                    count += 1
        return BClassCount(count, None)

    def _boundary_bins(self, i: int, j: int) -> Iterator[int]:
        d = self.decomp
        n = self.n
        q1 = d.q1
        for off in range(-n + 1, n):  # [i - n + 1, i + n - 1]
            yield (i + off) % q1
        for off in range(-n + 1, n + 1):  # [j - n + 1, j + n]
            yield (j + off) % q1

    def _mark_overfull_class(self, c: int) -> int:
        """Classify a capped slice of an oversized C-bin by true class.

        The slice holds (4n+2) * 2^h + 1 subsets spread over at most 2n
        classes, so some class collects more than 2^(h+1) > beta of them.
        """
        d = self.decomp
        counts: dict[int, int] = {}
        for index in range(1, self.boundary_bin_cap + 1):
            mask, _ = _unrank_mask(self.table, c % d.q1, index)
            jj = d.fold(self.residue_of_mask(mask))
            counts[jj] = counts.get(jj, 0) + 1
            if counts[jj] > d.beta_single(jj):
                return jj
        raise AssertionError("overfull bin produced no overfull class")

    def extract(self, lo: int, hi: int, cap: int) -> Pair:
        """Find a residue collision among subsets with C-index in [lo, hi].

        Sound whenever the classes feeding [lo, hi] hold more subsets than
        residues; the cap just bounds work, since cap many subsets drawn
        from these bins cannot all have distinct residues either.
        """
        d = self.decomp
        q1 = d.q1
        seen: dict[int, int] = {}
        scanned = 0
        width = (hi - lo) % q1 + 1
        for step in range(width):
            c = (lo + step) % q1
            for mask in self.iter_bin(c):
                r = self.residue_of_mask(mask)
                if r in seen and seen[r] != mask:
                    return Pair(Subset.from_mask(seen[r]), Subset.from_mask(mask))
                seen[r] = mask
                scanned += 1
                if scanned >= cap:
                    raise AssertionError("extraction cap hit without a collision")
        raise AssertionError("extraction interval held no collision")


def count_b_interval(
    items: Sequence[int],
    q: int,
    i: int,
    j: int,
    memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES,
) -> BClassCount:
    """Count subsets whose quotient class falls in the circular interval
    [i, j], or mark a class that certifiably exceeds its residue count.

    Test hook into the machinery of :func:`solve_pigeonhole_modular`; the
    interval width w must satisfy 2n <= w <= q1 - 2n.
    """
    residues = [a % q for a in items]
    if any(r == 0 for r in residues):
        raise ValueError("count_b_interval expects items nonzero mod q")
    ctx = _ModularContext(residues, q, memory_cap_bytes)
    return ctx.count_b(i, j)


def solve_pigeonhole_modular(
    items: Sequence[int],
    q: int,
    memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES,
) -> Pair:
    """Two distinct subsets with equal sums mod q, for any q <= 2^n - 1.

    Cheap exits first: an item divisible by q collides with the empty set,
    and a small q (q1 <= 8n + 4 quotient classes) admits a direct count
    table mod q, where some bin of size >= 2 must exist and its first two
    subsets collide. Otherwise the quotient-class dichotomy runs: keep
    halving a class interval whose subset count exceeds its residue count
    until it is 4n classes wide or a marked class appears, then bucket the
    covering table bins by true residue.
    """
    items = tuple(int(a) for a in items)
    n = len(items)
    if any(a < 1 for a in items):
        raise ValueError("items must be positive")
    if not 1 <= q <= (1 << n) - 1:
        raise ValueError(f"need 1 <= q <= 2^n - 1 = {(1 << n) - 1}, got {q}")

    residues = [a % q for a in items]
    for i, r in enumerate(residues):
        if r == 0:
            return Pair(Subset.of((i + 1,)), Subset.of(()))

    d = QuotientDecomposition.compute(n, q)
    if d.q1 <= 8 * n + 4:
        table = build_table(residues, q, memory_cap_bytes)
        row = table.rows[n]
        if isinstance(row, (np.ndarray, array)):
            arr = np.asarray(row)
            k = int(np.nonzero(arr >= 2)[0][0])
        else:
            k = next(c for c in range(q) if row[c] >= 2)
        m1, _ = _unrank_mask(table, k, 1)
        m2, _ = _unrank_mask(table, k, 2)
        return Pair(Subset.from_mask(m1), Subset.from_mask(m2))

    ctx = _ModularContext(residues, q, memory_cap_bytes)
    q1 = d.q1
    i, j = 0, q1 - 1
    b = 1 << n
    beta = q
    while (j - i) % q1 + 1 > 4 * n:
        w = (j - i) % q1 + 1
        wl = w // 2
        mid = (i + wl - 1) % q1
        left = ctx.count_b(i, mid)
        if left.marked is not None:
            jj = left.marked
            return ctx.extract(jj - n + 1, jj + n, ctx.marked_extract_cap)
        beta_left = d.beta_interval(i, mid)
        if left.count > beta_left:
            j = mid
            b = left.count
            beta = beta_left
        else:
            b = b - left.count
            beta = beta - beta_left
            i = (mid + 1) % q1
        assert b > beta, "dichotomy invariant lost"
    return ctx.extract(i - n, j + n, ctx.final_extract_cap)
