"""Independent counting oracles used by the enumeration tests."""
import itertools
import math
from collections import Counter
from fractions import Fraction


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def burnside_graph_count(n: int) -> int:
    """Number of unlabelled graphs on n vertices: average of 2^(edge cycles) over S_n."""
    total = Fraction(0)
    for lam in partitions(n):
        mult = Counter(lam)
        size = math.factorial(n)
        for length, m in mult.items():
            size //= length ** m * math.factorial(m)
        cycles = sum(length // 2 for length in lam)
        cycles += sum(math.gcd(a, b) for a, b in itertools.combinations(lam, 2))
        total += size * 2 ** cycles
    return int(total / math.factorial(n))
