"""Solvers for the subset-sum variants.

Two algorithm families:

* meet-in-the-middle ("mitm"): split the indices in half, enumerate one
  half into a dictionary, scan the other half. Deterministic; complete for
  the plain and modular target problems. For shifted sums it enumerates one
  size class per split, so a miss is only evidence, not a proof: the result
  is Inconclusive unless the exhaustive variant ran.

* residue binning ("rep"): pick a random prime p, build the count table,
  and walk the one bin (or pair of bins) that must contain a solution. For
  subset_sum the target pins the bin, so fully enumerating it proves
  NotFound; for shifted sums the bin pair only covers one residue class of
  solutions and a miss is Inconclusive.

``solve_shifted`` combines both: a sweep over solution-size ratios picks
mitm or rep per ratio by their cost exponents, and a final folklore
exhaustive pass (all sizes at once) settles NotFound for small n.

All witnesses are re-verified against the instance before being returned.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import costmodel, pigeonhole
from .core import (
    Pair,
    ProblemInstance,
    Subset,
    TwoSubsetReduction,
    reduce_two_subset_to_shifted,
    verify,
)
from .dpbins import (
    DEFAULT_MEMORY_CAP_BYTES,
    ResourceLimitError,
    _bin_sums_batch,
    _has_word_rows,
    _unrank_mask,
    build_table,
)
from .numtheory import random_prime, random_residue
from .rng import as_rng, derive_seed

__all__ = [
    "SolveStatus",
    "SolveOutcome",
    "SolverBudget",
    "solve_subset_sum_mitm",
    "solve_modular_subset_sum_mitm",
    "solve_subset_sum_rep",
    "solve_shifted_mitm",
    "solve_shifted_rep",
    "solve_shifted_exhaustive",
    "solve_shifted",
    "solve_equal_sums",
    "solve_two_subset_sum",
    "solve_instance",
]

_EXHAUSTIVE_CAP_N = 24  # 3^(n/2) pair states per half
_TRACE_DRAWS = 24  # keep at most this many per-draw records in a trace
_BATCH_CHUNK = 1 << 15  # bin ranks unranked per vector call
_JOIN_CAP = 1 << 22  # largest bin held in memory for the vectorized join
_MITM_VEC_HALF = 24  # vectorized mitm half size cap (8 * 2^24 bytes per array)
_WORD_MASK = (1 << 64) - 1


class SolveStatus(Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    INCONCLUSIVE = "inconclusive"


@dataclass
class SolveOutcome:
    status: SolveStatus
    witness: object | None
    seed: int | None
    elapsed_ms: float
    trace: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status is SolveStatus.FOUND


def _ceil_half_pow(n: int) -> int:
    """ceil(2^(n/2)) exactly (odd n is never a perfect square)."""
    if n % 2 == 0:
        return 1 << (n // 2)
    return math.isqrt(1 << n) + 1


@dataclass
class SolverBudget:
    """Knobs every randomized solver takes; None means the default formula."""

    sample_cap: int | None = None  # random-sampling step, default ceil(2^(n/2))
    repeat_cap: int | None = None  # independent redraws, default 4n
    time_cap_ms: float | None = None
    memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES
    prefilter: bool = True  # sampling pre-filter in the shifted rep solver

    def resolved_sample_cap(self, n: int) -> int:
        if self.sample_cap is not None:
            return max(0, self.sample_cap)
        return _ceil_half_pow(n)

    def resolved_repeat_cap(self, n: int) -> int:
        if self.repeat_cap is not None:
            return max(1, self.repeat_cap)
        return 4 * n


class _Deadline:
    def __init__(self, cap_ms: float | None):
        self.start = time.perf_counter()
        self.cap_ms = cap_ms

    def expired(self) -> bool:
        if self.cap_ms is None:
            return False
        return (time.perf_counter() - self.start) * 1000.0 >= self.cap_ms

    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.start) * 1000.0


def _outcome(
    status: SolveStatus,
    witness,
    seed: int | None,
    deadline: _Deadline,
    trace: dict,
) -> SolveOutcome:
    return SolveOutcome(status, witness, seed, deadline.elapsed_ms(), trace)


def _half_sums(items: Sequence[int], positions: Sequence[int]) -> list[int]:
    """Subset sums of the given positions, indexed by local mask (doubling)."""
    sums = [0]
    for pos in positions:
        a = items[pos]
        sums += [v + a for v in sums]
    return sums


def _half_sums_vec(items: Sequence[int], positions: Sequence[int]) -> np.ndarray:
    """The same doubling as :func:`_half_sums`, as an int64 vector.

    Callers must ensure sum(items) < 2^62 so no entry can overflow.
    """
    sums = np.zeros(1, dtype=np.int64)
    for pos in positions:
        sums = np.concatenate((sums, sums + np.int64(items[pos])))
    return sums


def _mask_value(items: Sequence[int], mask: int) -> int:
    """Exact sum of the items selected by a bit mask."""
    v = 0
    while mask:
        low = mask & -mask
        v += items[low.bit_length() - 1]
        mask ^= low
    return v


# ---------------------------------------------------------------------------
# Meet-in-the-middle for a plain or modular target
# ---------------------------------------------------------------------------


def solve_subset_sum_mitm(
    items: Sequence[int], target: int, budget: SolverBudget | None = None
) -> SolveOutcome:
    """Deterministic complete search in O(2^(n/2)) time and space."""
    budget = budget or SolverBudget()
    deadline = _Deadline(budget.time_cap_ms)
    items = tuple(items)
    n = len(items)
    h1 = n - n // 2
    trace = {"algorithm": "subset-sum-mitm", "halves": [h1, n - h1], "scanned": 0}

    # Word-sized sums admit a join over sorted numpy halves. Probing with
    # needles that are themselves sorted keeps the binary searches cache
    # friendly, and the witness is the one the dictionary path below finds:
    # the first second-half mask with a partner, paired with the lowest
    # first-half mask holding the needed value.
    if h1 <= _MITM_VEC_HALF and 0 <= target <= sum(items) < (1 << 62):
        sums1 = _half_sums_vec(items, range(h1))
        sv1 = np.sort(sums1, kind="stable")
        if deadline.expired():
            trace["timed_out"] = True
            return _outcome(SolveStatus.INCONCLUSIVE, None, None, deadline, trace)
        sums2 = _half_sums_vec(items, range(h1, n))
        needles = target - np.sort(sums2, kind="stable")[::-1]  # ascending
        pos = np.searchsorted(sv1, needles)
        ok = pos < sv1.size
        ok[ok] = sv1[pos[ok]] == needles[ok]
        if not ok.any():
            trace["scanned"] = int(sums2.size)
            return _outcome(SolveStatus.NOT_FOUND, None, None, deadline, trace)
        # Values of sums2 that have a partner, then the first second-half
        # mask in natural order carrying one of them.
        matched = np.unique(target - needles[ok])
        pos2 = np.searchsorted(matched, sums2)
        hit2 = pos2 < matched.size
        hit2[hit2] = matched[pos2[hit2]] == sums2[hit2]
        mask2 = int(np.argmax(hit2))
        needed = target - int(sums2[mask2])
        mask1 = int(np.nonzero(sums1 == needed)[0][0])
        trace["scanned"] = mask2 + 1
        witness = Subset.from_mask(mask1 | (mask2 << h1))
        assert sum(items[i - 1] for i in witness.indices) == target
        return _outcome(SolveStatus.FOUND, witness, None, deadline, trace)

    sums1 = _half_sums(items, range(h1))
    first: dict[int, int] = {}
    for mask, v in enumerate(sums1):
        if v not in first:
            first[v] = mask
    sums2 = _half_sums(items, range(h1, n))
    for mask2, v2 in enumerate(sums2):
        mask1 = first.get(target - v2)
        if mask1 is not None:
            trace["scanned"] = mask2 + 1
            witness = Subset.from_mask(mask1 | (mask2 << h1))
            assert sum(items[i - 1] for i in witness.indices) == target
            return _outcome(SolveStatus.FOUND, witness, None, deadline, trace)
        if mask2 % 4096 == 0 and deadline.expired():
            trace["scanned"] = mask2 + 1
            trace["timed_out"] = True
            return _outcome(SolveStatus.INCONCLUSIVE, None, None, deadline, trace)
    trace["scanned"] = len(sums2)
    return _outcome(SolveStatus.NOT_FOUND, None, None, deadline, trace)


def solve_modular_subset_sum_mitm(
    items: Sequence[int],
    target: int,
    modulus: int,
    budget: SolverBudget | None = None,
) -> SolveOutcome:
    """Same strategy with sums reduced mod the modulus; still complete."""
    budget = budget or SolverBudget()
    deadline = _Deadline(budget.time_cap_ms)
    items = tuple(items)
    n = len(items)
    q = modulus
    h1 = n - n // 2
    first: dict[int, int] = {}
    for mask, v in enumerate(_half_sums(items, range(h1))):
        r = v % q
        if r not in first:
            first[r] = mask
    trace = {"algorithm": "modular-mitm", "halves": [h1, n - h1], "scanned": 0}
    sums2 = _half_sums(items, range(h1, n))
    for mask2, v2 in enumerate(sums2):
        mask1 = first.get((target - v2) % q)
        if mask1 is not None:
            trace["scanned"] = mask2 + 1
            witness = Subset.from_mask(mask1 | (mask2 << h1))
            return _outcome(SolveStatus.FOUND, witness, None, deadline, trace)
        if mask2 % 4096 == 0 and deadline.expired():
            trace["scanned"] = mask2 + 1
            trace["timed_out"] = True
            return _outcome(SolveStatus.INCONCLUSIVE, None, None, deadline, trace)
    trace["scanned"] = len(sums2)
    return _outcome(SolveStatus.NOT_FOUND, None, None, deadline, trace)


# ---------------------------------------------------------------------------
# Residue binning for a plain target
# ---------------------------------------------------------------------------


def _sample_random_subsets(
    items: Sequence[int],
    target: int,
    rng,
    count: int,
    deadline: _Deadline,
) -> tuple[int | None, int]:
    """Try ``count`` uniform random subsets; return (hit mask or None, tried)."""
    n = len(items)
    total = sum(items)
    if total < (1 << 62) and count >= 256:
        # Per-bit accumulation of the chunk's subset sums; with the total
        # below 2^62 the word sums are exact, so a hit is a hit.
        gen = np.random.Generator(np.random.PCG64(rng.getrandbits(64)))
        tgt = np.uint64(target & _WORD_MASK) if 0 <= target <= total else None
        one = np.uint64(1)
        tried = 0
        while tried < count:
            chunk = min(count - tried, 1 << 16)
            masks = gen.integers(0, 1 << n, size=chunk, dtype=np.uint64)
            if tgt is not None:
                acc = np.zeros(chunk, dtype=np.uint64)
                buf = np.empty(chunk, dtype=np.uint64)
                for i in range(n):
                    np.right_shift(masks, np.uint64(i), out=buf)
                    np.bitwise_and(buf, one, out=buf)
                    np.multiply(buf, np.uint64(items[i]), out=buf)
                    np.add(acc, buf, out=acc)
                hits = np.nonzero(acc == tgt)[0]
                if hits.size:
                    return int(masks[hits[0]]), tried + int(hits[0]) + 1
            tried += chunk
            if deadline.expired():
                return None, tried
        return None, tried
    for i in range(count):
        mask = rng.getrandbits(n)
        if _mask_value(items, mask) == target:
            return mask, i + 1
        if i % 1024 == 0 and deadline.expired():
            return None, i + 1
    return None, count


def solve_subset_sum_rep(
    items: Sequence[int],
    target: int,
    seed: int = 0,
    budget: SolverBudget | None = None,
) -> SolveOutcome:
    """Random sampling, then prime draws with target-bin enumeration.

    Every solution lies in bin (target mod p), so a draw that exhausts that
    bin without a hit settles NOT_FOUND. Draws that overflow the enumeration
    cap n^2 * 2^(ceil(n/2)) only ever yield INCONCLUSIVE.
    """
    budget = budget or SolverBudget()
    deadline = _Deadline(budget.time_cap_ms)
    items = tuple(items)
    n = len(items)
    rng = as_rng(seed, "subset-rep")
    trace: dict = {"algorithm": "subset-sum-rep", "samples": 0, "draws": []}

    sample_cap = min(budget.resolved_sample_cap(n), _ceil_half_pow(n))
    hit, tried = _sample_random_subsets(items, target, rng, sample_cap, deadline)
    trace["samples"] = tried
    if hit is not None:
        witness = Subset.from_mask(hit)
        return _outcome(SolveStatus.FOUND, witness, seed, deadline, trace)

    half_bits = (n + 1) // 2
    enum_cap = n * n * (1 << half_bits)
    repeats = budget.resolved_repeat_cap(n)
    draws_done = 0
    for r in range(repeats):
        if deadline.expired():
            trace["timed_out"] = True
            break
        p = random_prime(1 << half_bits, 1 << (half_bits + 1), derive_seed(seed, "subset-rep-prime", r))
        k = target % p
        table = build_table(items, p, budget.memory_cap_bytes)
        size = table.bin_size(k)
        scan = min(size, enum_cap)
        record = {"p": p, "k": k, "bin_size": size, "enumerated": scan}
        if len(trace["draws"]) < _TRACE_DRAWS:
            trace["draws"].append(record)
        draws_done += 1
        if _has_word_rows(table):
            # Chunked vector scan; candidate sums match mod 2^64, and each
            # candidate rank is re-unranked and confirmed exactly, so the
            # first confirmed rank is the same index the scalar walk stops at.
            tgt = np.uint64(target & _WORD_MASK)
            done = 0
            while done < scan:
                chunk = min(scan - done, _BATCH_CHUNK)
                sums_c = _bin_sums_batch(table, k, done + 1, chunk)
                for off in np.nonzero(sums_c == tgt)[0]:
                    rank = done + int(off) + 1
                    mask, value = _unrank_mask(table, k, rank)
                    if value == target:
                        record["enumerated"] = rank
                        witness = Subset.from_mask(mask)
                        trace["draw_count"] = draws_done
                        return _outcome(SolveStatus.FOUND, witness, seed, deadline, trace)
                done += chunk
                if done < scan and deadline.expired():
                    record["enumerated"] = done
                    trace["timed_out"] = True
                    trace["draw_count"] = draws_done
                    return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)
        else:
            for index in range(1, scan + 1):
                mask, value = _unrank_mask(table, k, index)
                if value == target:
                    record["enumerated"] = index
                    witness = Subset.from_mask(mask)
                    trace["draw_count"] = draws_done
                    return _outcome(SolveStatus.FOUND, witness, seed, deadline, trace)
                if index % 4096 == 0 and deadline.expired():
                    record["enumerated"] = index
                    trace["timed_out"] = True
                    trace["draw_count"] = draws_done
                    return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)
        if scan == size:
            # The whole bin holding every possible solution was checked.
            trace["draw_count"] = draws_done
            trace["definitive_draw"] = r
            return _outcome(SolveStatus.NOT_FOUND, None, seed, deadline, trace)
    trace["draw_count"] = draws_done
    return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)


# ---------------------------------------------------------------------------
# Shifted pairs: meet-in-the-middle over one size class
# ---------------------------------------------------------------------------


def _pairs_of_total_size(
    items: Sequence[int], positions: Sequence[int], size: int
) -> Iterator[tuple[int, int, int]]:
    """Disjoint (S1, S2) with |S1| + |S2| = size: (mask1, mask2, sum diff)."""
    if size > len(positions):
        return
    for union in combinations(positions, size):
        masks = [0]
        vals = [0]
        for pos in union:
            bit = 1 << pos
            a = items[pos]
            masks += [m | bit for m in masks]
            vals += [v + a for v in vals]
        full_mask = masks[-1]
        full_val = vals[-1]
        for m1, v1 in zip(masks, vals):
            yield m1, full_mask ^ m1, 2 * v1 - full_val


def _all_disjoint_pairs(
    items: Sequence[int], positions: Sequence[int]
) -> list[tuple[int, int, int, int]]:
    """All 3^len disjoint pairs as (mask1, mask2, sum diff, total size)."""
    entries = [(0, 0, 0, 0)]
    for pos in positions:
        bit = 1 << pos
        a = items[pos]
        nxt = []
        for m1, m2, d, sz in entries:
            nxt.append((m1, m2, d, sz))
            nxt.append((m1 | bit, m2, d + a, sz + 1))
            nxt.append((m1, m2 | bit, d - a, sz + 1))
        entries = nxt
    return entries


def _verify_pair(items: Sequence[int], pair: Pair, s: int) -> bool:
    d = sum(items[i - 1] for i in pair.s1.indices) - sum(
        items[i - 1] for i in pair.s2.indices
    )
    return d == s and pair.s1 != pair.s2


def solve_shifted_mitm(
    items: Sequence[int],
    shift: int,
    ratio: float,
    seed: int = 0,
    budget: SolverBudget | None = None,
    exhaustive: bool = False,
) -> SolveOutcome:
    """Search for disjoint (S1, S2) with sum(S1) - sum(S2) = shift and
    |S1| + |S2| = round(ratio * n), across random balanced splits.

    Per split the left half contributes floor(t/2) of the pair and the right
    half the rest, so a miss is INCONCLUSIVE: the random split may simply
    have cut the solution unevenly. ``exhaustive`` instead admits every
    left/right size distribution across one fixed split, which covers the
    whole size class; a miss then proves no disjoint solution pair of total
    size round(ratio * n) exists and returns NOT_FOUND scoped to that class
    (other size classes were never looked at).
    """
    budget = budget or SolverBudget()
    deadline = _Deadline(budget.time_cap_ms)
    items = tuple(items)
    n = len(items)
    t = max(1, min(n, round(ratio * n)))
    rng = as_rng(seed, "shifted-mitm", t)
    repeats = budget.resolved_repeat_cap(n) if not exhaustive else 1
    trace: dict = {
        "algorithm": "shifted-mitm",
        "class_size": t,
        "splits": 0,
        "exhaustive_class": exhaustive,
    }
    for _ in range(repeats):
        if deadline.expired():
            trace["timed_out"] = True
            break
        perm = rng.sample(range(n), n)
        left = sorted(perm[: n // 2])
        right = sorted(perm[n // 2 :])
        trace["splits"] += 1
        if exhaustive:
            table: dict[tuple[int, int], tuple[int, int]] = {}
            for m1, m2, d, sz in _all_disjoint_pairs(items, left):
                table.setdefault((sz, d), (m1, m2))
            for m1, m2, d, sz in _all_disjoint_pairs(items, right):
                got = table.get((t - sz, shift - d))
                if got is not None:
                    g1, g2 = got
                    pair = Pair(Subset.from_mask(g1 | m1), Subset.from_mask(g2 | m2))
                    if _verify_pair(items, pair, shift):
                        return _outcome(SolveStatus.FOUND, pair, seed, deadline, trace)
            # both halves fully enumerated: the class has no solution
            return _outcome(SolveStatus.NOT_FOUND, None, seed, deadline, trace)
        else:
            t1 = t // 2
            t2 = t - t1
            if t1 > len(left) or t2 > len(right):
                continue
            first: dict[int, tuple[int, int]] = {}
            states = 0
            for m1, m2, d in _pairs_of_total_size(items, left, t1):
                first.setdefault(d, (m1, m2))
                states += 1
                if states % 8192 == 0 and deadline.expired():
                    trace["timed_out"] = True
                    return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)
            for m1, m2, d in _pairs_of_total_size(items, right, t2):
                got = first.get(shift - d)
                if got is not None:
                    g1, g2 = got
                    pair = Pair(Subset.from_mask(g1 | m1), Subset.from_mask(g2 | m2))
                    if _verify_pair(items, pair, shift):
                        return _outcome(SolveStatus.FOUND, pair, seed, deadline, trace)
                states += 1
                if states % 8192 == 0 and deadline.expired():
                    trace["timed_out"] = True
                    return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)
    return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)


# ---------------------------------------------------------------------------
# Shifted pairs: residue binning
# ---------------------------------------------------------------------------


def _shifted_rep_join(
    table,
    items: Sequence[int],
    shift: int,
    k: int,
    k2: int,
    scan1: int,
    scan2: int,
    deadline: _Deadline,
) -> tuple[Pair | None, bool]:
    """Vectorized bin-pair matching for :func:`solve_shifted_rep`.

    Enumerates bin k2 once (sums reduced mod 2^64), stable-sorts it, then
    streams bin k against it. Wrapped matches are confirmed with exact
    arithmetic before acceptance, so the returned pair is the one the
    dictionary path finds: lowest bin-k rank first, ties broken by bin-k2
    rank. Returns (pair or None, timed out).
    """
    parts_s: list[np.ndarray] = []
    done = 0
    while done < scan2:
        chunk = min(scan2 - done, _BATCH_CHUNK)
        parts_s.append(_bin_sums_batch(table, k2, done + 1, chunk))
        done += chunk
        if deadline.expired():
            return None, True
    if not parts_s:
        return None, False
    sums2 = parts_s[0] if len(parts_s) == 1 else np.concatenate(parts_s)
    order = np.argsort(sums2, kind="stable")
    sv = sums2[order]
    shift_w = np.uint64(shift & _WORD_MASK)
    done = 0
    while done < scan1:
        chunk = min(scan1 - done, _BATCH_CHUNK)
        s_c = _bin_sums_batch(table, k, done + 1, chunk)
        want = s_c - shift_w
        pos = np.searchsorted(sv, want)
        ok = pos < sv.size
        ok[ok] = sv[pos[ok]] == want[ok]
        for off in np.nonzero(ok)[0]:
            mask, value = _unrank_mask(table, k, done + int(off) + 1)
            g = int(pos[off])
            w = want[off]
            while g < sv.size and sv[g] == w:
                rank2 = int(order[g]) + 1
                g += 1
                other, other_value = _unrank_mask(table, k2, rank2)
                if other != mask and value - other_value == shift:
                    return Pair(Subset.from_mask(mask), Subset.from_mask(other)), False
        done += chunk
        if deadline.expired():
            return None, True
    return None, False


def solve_shifted_rep(
    items: Sequence[int],
    shift: int,
    ratio: float,
    seed: int = 0,
    budget: SolverBudget | None = None,
) -> SolveOutcome:
    """Bin-pair search tuned for solutions of total size about ratio * n.

    The prime scale is 2^(b n) with b = 1 - ratio for ratio > 1/2 and
    b = 1/2 otherwise. Each draw picks a random residue k and looks for
    sum(S1) = k, sum(S2) = k - shift (mod p) with sum(S1) - sum(S2) = shift
    over the two bins, enumerating at most n^2 * 2^((1-b) n) entries per
    bin. Optionally a sampling pre-filter tries random pairs first.
    """
    budget = budget or SolverBudget()
    deadline = _Deadline(budget.time_cap_ms)
    items = tuple(items)
    n = len(items)
    t = max(1, min(n - 1, round(ratio * n)))
    rng = as_rng(seed, "shifted-rep", t)
    if t > n // 2:
        bn_bits = n - t
        heavy_ceil = 1 << t
    else:
        bn_bits = (n + 1) // 2
        heavy_ceil = _ceil_half_pow(n)
    enum_cap = n * n * heavy_ceil
    trace: dict = {
        "algorithm": "shifted-rep",
        "class_size": t,
        "prime_bits": bn_bits,
        "prefilter_samples": 0,
        "draws": [],
    }

    if budget.prefilter:
        cap = min(budget.resolved_sample_cap(n), 1 << bn_bits)
        for i in range(cap):
            ma = rng.getrandbits(n)
            mb = rng.getrandbits(n)
            trace["prefilter_samples"] = i + 1
            if ma == mb:
                continue
            va = _mask_value(items, ma)
            vb = _mask_value(items, mb)
            if va - vb == shift:
                pair = Pair(Subset.from_mask(ma), Subset.from_mask(mb))
                return _outcome(SolveStatus.FOUND, pair, seed, deadline, trace)
            if i % 1024 == 0 and deadline.expired():
                trace["timed_out"] = True
                return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)

    repeats = budget.resolved_repeat_cap(n)
    draws_done = 0
    for r in range(repeats):
        if deadline.expired():
            trace["timed_out"] = True
            break
        p = random_prime(1 << bn_bits, 1 << (bn_bits + 1), derive_seed(seed, "shifted-rep-prime", t, r))
        k = random_residue(p, derive_seed(seed, "shifted-rep-residue", t, r))
        k2 = (k - shift) % p
        table = build_table(items, p, budget.memory_cap_bytes)
        size1 = table.bin_size(k)
        size2 = table.bin_size(k2)
        record = {
            "p": p,
            "k": k,
            "bins": [size1, size2],
            "enumerated": [min(size1, enum_cap), min(size2, enum_cap)],
        }
        if len(trace["draws"]) < _TRACE_DRAWS:
            trace["draws"].append(record)
        draws_done += 1
        scan1 = min(size1, enum_cap)
        scan2 = min(size2, enum_cap)
        if _has_word_rows(table) and scan2 <= _JOIN_CAP:
            pair, timed_out = _shifted_rep_join(
                table, items, shift, k, k2, scan1, scan2, deadline
            )
            if timed_out:
                trace["timed_out"] = True
                trace["draw_count"] = draws_done
                return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)
            if pair is not None:
                trace["draw_count"] = draws_done
                return _outcome(SolveStatus.FOUND, pair, seed, deadline, trace)
            continue
        by_value: dict[int, list[int]] = {}
        for index in range(1, scan2 + 1):
            mask, value = _unrank_mask(table, k2, index)
            slot = by_value.setdefault(value, [])
            if len(slot) < 2:
                slot.append(mask)
            if index % 4096 == 0 and deadline.expired():
                trace["timed_out"] = True
                trace["draw_count"] = draws_done
                return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)
        for index in range(1, scan1 + 1):
            mask, value = _unrank_mask(table, k, index)
            for other in by_value.get(value - shift, ()):
                if other != mask:
                    pair = Pair(Subset.from_mask(mask), Subset.from_mask(other))
                    trace["draw_count"] = draws_done
                    return _outcome(SolveStatus.FOUND, pair, seed, deadline, trace)
            if index % 4096 == 0 and deadline.expired():
                trace["timed_out"] = True
                trace["draw_count"] = draws_done
                return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)
    trace["draw_count"] = draws_done
    return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)


# ---------------------------------------------------------------------------
# Shifted pairs: folklore exhaustive meet-in-the-middle, and the dispatcher
# ---------------------------------------------------------------------------


def solve_shifted_exhaustive(
    items: Sequence[int], shift: int, budget: SolverBudget | None = None
) -> SolveOutcome:
    """Complete O(3^(n/2)) search over all disjoint pairs; NotFound is final.

    One fixed split suffices: any solution decomposes into a left disjoint
    pair and a right disjoint pair, the dictionary keeps up to two left
    representatives per value (the second one nonempty), and recombination
    preserves the difference. The only degenerate recombination is
    empty-with-empty, which the second representative rescues.
    """
    budget = budget or SolverBudget()
    deadline = _Deadline(budget.time_cap_ms)
    items = tuple(items)
    n = len(items)
    if n > _EXHAUSTIVE_CAP_N:
        raise ResourceLimitError(
            f"exhaustive pair search is capped at n <= {_EXHAUSTIVE_CAP_N}"
        )
    trace: dict = {"algorithm": "shifted-exhaustive", "pair_states": 2 * 3 ** (n - n // 2)}
    left = list(range(n // 2))
    right = list(range(n // 2, n))
    reps: dict[int, list[tuple[int, int]]] = {}
    for m1, m2, d, sz in _all_disjoint_pairs(items, left):
        slot = reps.setdefault(d, [])
        if not slot:
            slot.append((m1, m2))
        elif len(slot) == 1 and slot[0] == (0, 0) and sz > 0:
            slot.append((m1, m2))
    for m1, m2, d, _sz in _all_disjoint_pairs(items, right):
        for g1, g2 in reps.get(shift - d, ()):
            c1 = g1 | m1
            c2 = g2 | m2
            if c1 != c2:
                pair = Pair(Subset.from_mask(c1), Subset.from_mask(c2))
                assert _verify_pair(items, pair, shift)
                return _outcome(SolveStatus.FOUND, pair, None, deadline, trace)
    return _outcome(SolveStatus.NOT_FOUND, None, None, deadline, trace)


def solve_shifted(
    items: Sequence[int],
    shift: int,
    seed: int = 0,
    budget: SolverBudget | None = None,
) -> SolveOutcome:
    """Two-phase shifted-sums driver.

    Phase 1 sweeps solution-size classes t = n-1 .. 1 (largest first) and
    picks the residue-binning solver where its cost exponent beats
    meet-in-the-middle (between the classical crossover ratios), and the
    single-class mitm otherwise. Phase 2 falls back to the exhaustive pair
    search so a miss becomes a definitive NOT_FOUND for n small enough to
    afford it; perfect-partition pairs (total size n) are only reachable by
    phase 2, since phase 1 classes stop at n-1.
    """
    budget = budget or SolverBudget()
    deadline = _Deadline(budget.time_cap_ms)
    items = tuple(items)
    n = len(items)
    cx = costmodel.crossovers()
    lo, hi = cx["classical_l1"], cx["classical_l2"]

    def phase_budget() -> SolverBudget:
        # Each phase inherits whatever of the overall cap is left, so a
        # single size class cannot blow through the caller's deadline.
        remaining = None
        if budget.time_cap_ms is not None:
            remaining = max(1.0, budget.time_cap_ms - deadline.elapsed_ms())
        return SolverBudget(
            sample_cap=budget.sample_cap,
            repeat_cap=budget.repeat_cap,
            time_cap_ms=remaining,
            memory_cap_bytes=budget.memory_cap_bytes,
            prefilter=budget.prefilter,
        )

    trace: dict = {"algorithm": "shifted-dispatch", "phases": []}
    for t in range(n - 1, 0, -1):
        if deadline.expired():
            trace["timed_out"] = True
            return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)
        ratio = t / n
        child_seed = derive_seed(seed, "dispatch", t)
        if lo <= ratio < hi:
            sub = solve_shifted_rep(items, shift, ratio, child_seed, phase_budget())
        else:
            sub = solve_shifted_mitm(items, shift, ratio, child_seed, phase_budget())
        trace["phases"].append(
            {"t": t, "algorithm": sub.trace.get("algorithm"), "status": sub.status.value}
        )
        if sub.found and _verify_pair(items, sub.witness, shift):
            trace["found_at_class"] = t
            return _outcome(SolveStatus.FOUND, sub.witness, seed, deadline, trace)
    if n <= _EXHAUSTIVE_CAP_N and not deadline.expired():
        final = solve_shifted_exhaustive(items, shift, phase_budget())
        trace["phases"].append({"t": "all", "algorithm": "shifted-exhaustive", "status": final.status.value})
        return _outcome(final.status, final.witness, seed, deadline, trace)
    trace["exhaustive_skipped"] = True
    return _outcome(SolveStatus.INCONCLUSIVE, None, seed, deadline, trace)


def solve_equal_sums(
    items: Sequence[int], seed: int = 0, budget: SolverBudget | None = None
) -> SolveOutcome:
    """Equal-sums is the shifted problem at shift 0."""
    return solve_shifted(items, 0, seed, budget)


def solve_two_subset_sum(
    items: Sequence[int],
    target: int,
    seed: int = 0,
    budget: SolverBudget | None = None,
) -> SolveOutcome:
    """Coefficient vectors in {0,1,2}^n via the shifted-sums reduction.

    The reduction is an equivalence, so the inner verdict carries over:
    lifted witnesses for FOUND, and NOT_FOUND stays definitive.
    """
    deadline = _Deadline(budget.time_cap_ms if budget else None)
    red = reduce_two_subset_to_shifted(items, target)
    if red.all_ones:
        witness = red.lift(Pair(Subset.of(()), Subset.of(())))
        trace = {"algorithm": "two-subset-reduction", "case": "all-ones"}
        return _outcome(SolveStatus.FOUND, witness, seed, deadline, trace)
    inner = solve_shifted(items, red.shifted.shift, seed, budget)
    trace = {
        "algorithm": "two-subset-reduction",
        "case": "complemented" if red.complemented else "direct",
        "inner": inner.trace,
    }
    if inner.found:
        witness = red.lift(inner.witness)
        assert sum(a * e for a, e in zip(items, witness)) == target
        return _outcome(SolveStatus.FOUND, witness, seed, deadline, trace)
    return _outcome(inner.status, None, seed, deadline, trace)


# ---------------------------------------------------------------------------
# Instance-level entry point
# ---------------------------------------------------------------------------


def solve_instance(
    instance: ProblemInstance,
    seed: int = 0,
    budget: SolverBudget | None = None,
    algo: str = "auto",
    ratio: float | None = None,
) -> SolveOutcome:
    """Route an instance to a solver and re-verify any witness.

    ``algo`` narrows the choice: "mitm", "rep", "exhaustive", "brute"
    (small-n oracle, refuses above its cap), or "auto".
    ``ratio`` pins the size class for the shifted single-class solvers.
    """
    v = instance.variant
    items = instance.items
    if algo == "brute":
        # Oracle dispatch; the oracle caps surface as ResourceLimitError.
        from . import oracles

        deadline = _Deadline(budget.time_cap_ms if budget else None)
        res = oracles.brute_solve(instance)
        status = SolveStatus.FOUND if res.solvable else SolveStatus.NOT_FOUND
        out = _outcome(status, res.witness, seed, deadline, {"algorithm": "brute-force"})
    elif v == "subset_sum":
        if algo == "rep":
            out = solve_subset_sum_rep(items, instance.target, seed, budget)
        else:
            out = solve_subset_sum_mitm(items, instance.target, budget)
    elif v == "modular_subset_sum":
        out = solve_modular_subset_sum_mitm(items, instance.target, instance.modulus, budget)
    elif v in ("equal_sums", "shifted_sums", "shifted_sums_modular"):
        if v == "shifted_sums_modular":
            raise ValueError("modular shifted instances are solved via their original instance")
        s = 0 if v == "equal_sums" else instance.shift
        if algo == "exhaustive":
            out = solve_shifted_exhaustive(items, s, budget)
        elif algo == "mitm" and ratio is not None:
            out = solve_shifted_mitm(items, s, ratio, seed, budget)
        elif algo == "rep" and ratio is not None:
            out = solve_shifted_rep(items, s, ratio, seed, budget)
        else:
            out = solve_shifted(items, s, seed, budget)
    elif v == "two_subset_sum":
        out = solve_two_subset_sum(items, instance.target, seed, budget)
    elif v == "pigeonhole_equal":
        deadline = _Deadline(budget.time_cap_ms if budget else None)
        pair = pigeonhole.solve_pigeonhole_equal(items)
        out = _outcome(SolveStatus.FOUND, pair, seed, deadline, {"algorithm": "pigeonhole-equal"})
    elif v == "pigeonhole_modular":
        deadline = _Deadline(budget.time_cap_ms if budget else None)
        pair = pigeonhole.solve_pigeonhole_modular(items, instance.modulus)
        out = _outcome(SolveStatus.FOUND, pair, seed, deadline, {"algorithm": "pigeonhole-modular"})
    else:
        raise ValueError(f"no solver for variant {v!r}")
    if out.found and not verify(instance, out.witness):
        raise RuntimeError(f"solver produced an invalid witness for {v}")
    out.seed = seed
    return out
