"""Random access into residue bins without enumerating them.

Builds the counting table for a small item list, then pulls subsets out of
one bin by index: first, last, and a few spots in between. The point is
that position i of a bin costs one O(n) walk, not an enumeration of the
i - 1 subsets before it.

Run:  python3 demos/indexed_bins.py
"""

import tempfile

from sumbins.dpbins import BinRef, build_table, dump_table, enumerate_bin, load_table, unrank


def main() -> None:
    items = [3, 14, 15, 92, 65, 35, 89, 79, 32, 38]
    p = 7
    table = build_table(items, p)

    print(f"items = {items}")
    print(f"sums taken mod p = {p}")
    print()
    print("bin sizes (all 2^10 subsets, split by residue):")
    total = 0
    for k in range(p):
        size = table.bin_size(k)
        total += size
        print(f"  residue {k}: {size:4d} subsets")
    print(f"  total     {total:5d} = 2^{total.bit_length() - 1}")
    print()

    k = 3
    size = table.bin_size(k)
    print(f"indexed access into bin {k} (size {size}):")
    for index in (1, 2, size // 2, size):
        s = unrank(table, k, index)
        value = sum(items[i - 1] for i in s.indices)
        print(f"  #{index:4d}: indices {list(s.indices)}  sum {value}  ({value} % {p} = {value % p})")
    print()

    # The same bin as a lazy sequence; both views agree element by element.
    ref = BinRef(table, k)
    first_five = [s for s, _ in zip(enumerate_bin(table, k), range(5))]
    assert [ref.subset_at(i + 1) for i in range(5)] == first_five
    assert len(ref) == size
    print(f"first five via enumerate_bin match BinRef: {[list(s.indices) for s in first_five]}")

    # Tables round-trip through a file, so a big build can be paid once.
    with tempfile.NamedTemporaryFile(suffix=".json", delete=False) as fh:
        path = fh.name
    dump_table(table, path)
    again = load_table(path)
    assert [s.mask() for s in enumerate_bin(again, k)] == [s.mask() for s in enumerate_bin(table, k)]
    print(f"dump/load round trip ok ({path})")


if __name__ == "__main__":
    main()
