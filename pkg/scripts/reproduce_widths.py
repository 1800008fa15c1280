"""Print exact palindromic widths and length spectra of the class-1 and class-2
quotients, with the run time of each table."""
import argparse
import time

from palwidth.width import build_length_table, spectrum
from palwidth.words import GroupSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-rank", type=int, default=6)
    ap.add_argument("--max-rank-class1", type=int, default=16)
    args = ap.parse_args()

    print("class 2: n  width  2(n-1)  seconds  spectrum")
    for n in range(1, args.max_rank + 1):
        spec = GroupSpec(n, 2, True)
        t0 = time.perf_counter()
        table = build_length_table(spec, max_rank=args.max_rank)
        dt = time.perf_counter() - t0
        print(f"  {n:2d}  {table.width:5d}  {2 * (n - 1):6d}  {dt:7.2f}  {spectrum(spec, max_rank=args.max_rank)}")

    print("class 1: n  width")
    for n in range(1, args.max_rank_class1 + 1):
        table = build_length_table(GroupSpec(n, 1, True), max_rank=args.max_rank_class1)
        print(f"  {n:2d}  {table.width:5d}")


if __name__ == "__main__":
    main()
