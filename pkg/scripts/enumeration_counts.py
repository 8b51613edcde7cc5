"""Count isomorphism classes per order and time each level."""
import argparse
import time

from autdel.search import KNOWN_COUNTS, Enumerator


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()

    enum = Enumerator()
    print(f"{'n':>2} {'classes':>9} {'expected':>9} {'seconds':>8}")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        count = len(enum.level(n))
        dt = time.perf_counter() - t0
        expected = KNOWN_COUNTS.get(n, "?")
        flag = "" if expected == count else "  MISMATCH"
        print(f"{n:>2} {count:>9} {expected:>9} {dt:>8.2f}{flag}")


if __name__ == "__main__":
    main()
