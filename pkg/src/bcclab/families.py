"""One-cycle and two-cycle instance families, with exact closed-form counts.

Families are enumerated at the graph level over the fixed vertex set
{0..n-1} with canonical ids and ports: port assignments multiply every
family size by the same factor, so ratios and per-instance degree
statistics are unaffected while exhaustive runs stay small. Members are
stored as canonical keys; a key is the cycle vertex sequence rotated to
its lexicographically minimal rotation/reflection (two-cycle keys sort
their two cycles by length, then lexicographically).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial, log

import numpy as np

from .errors import ResourceLimitError
from .sim import KT0, make_instance

FAMILY_LIMIT = 11
EXACT_COUNT_LIMIT = 2000
EXACT_RATIO_LIMIT = 2000


def canonical_cycle(seq):
    """Lexicographically minimal rotation/reflection of a cycle sequence."""
    seq = tuple(seq)
    if len(seq) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    best = None
    for s in (seq, seq[::-1]):
        k = s.index(min(s))
        rot = s[k:] + s[:k]
        if best is None or rot < best:
            best = rot
    return best


def cycle_edges(seq):
    n = len(seq)
    return [tuple(sorted((seq[i], seq[(i + 1) % n]))) for i in range(n)]


def instance_from_cycles(cycles, mode=KT0, b=1, n=None):
    """Canonical-port instance whose input graph is the given cycles."""
    cycles = [tuple(c) for c in cycles]
    covered = [v for c in cycles for v in c]
    size = n if n is not None else len(covered)
    edges = [e for c in cycles for e in cycle_edges(c)]
    return make_instance(size, edges, mode=mode, b=b)


def cycles_of_instance(instance):
    """Canonical key of a disjoint-cycles input graph (any cycle count)."""
    nbr = instance.input_neighbors
    seen = [False] * instance.n
    out = []
    for start in range(instance.n):
        if seen[start] or not nbr[start]:
            continue
        if len(nbr[start]) != 2:
            raise ValueError("input graph is not a disjoint union of cycles")
        seq = [start, nbr[start][0]]
        seen[start] = True
        while seq[-1] != start:
            prev, cur = seq[-2], seq[-1]
            seen[cur] = True
            a, b = nbr[cur]
            seq.append(b if a == prev else a)
        out.append(canonical_cycle(seq[:-1]))
    return tuple(sorted(out, key=lambda c: (len(c), c)))


def one_cycle_keys(n):
    """All (n-1)!/2 distinct cycles on {0..n-1}, canonically keyed."""
    for perm in permutations(range(1, n)):
        if perm[0] < perm[-1]:  # reflection representative
            yield (0,) + perm


def _cycles_on(vertices):
    vertices = tuple(sorted(vertices))
    first, rest = vertices[0], vertices[1:]
    if len(vertices) == 3:
        yield vertices
        return
    for perm in permutations(rest):
        if perm[0] < perm[-1]:
            yield (first,) + perm


def two_cycle_keys(n, min_cycle_len=3):
    """All splits into two disjoint cycles, smaller length first.

    Yields (i, key) with i the smaller cycle length; for even n the
    i = n/2 class drops the complement duplicates by keeping only the
    splits whose first cycle contains vertex 0.
    """
    for i in range(min_cycle_len, n // 2 + 1):
        if n - i < max(i, min_cycle_len):
            continue
        for subset in combinations(range(n), i):
            if 2 * i == n and 0 not in subset:
                continue
            complement = tuple(v for v in range(n) if v not in subset)
            for ca in _cycles_on(subset):
                for cb in _cycles_on(complement):
                    key = tuple(sorted((ca, cb), key=lambda c: (len(c), c)))
                    yield i, key


@dataclass(frozen=True)
class CycleFamily:
    """Enumerated one-cycle members V1 and two-cycle classes T_i."""

    n: int
    min_cycle_len: int
    one_cycles: tuple  # canonical cycle keys
    two_cycles: dict  # i -> tuple of two-cycle keys

    @property
    def v1_size(self):
        return len(self.one_cycles)

    @property
    def v2_size(self):
        return sum(len(v) for v in self.two_cycles.values())

    def t_sizes(self):
        return {i: len(v) for i, v in self.two_cycles.items()}

    def all_two_cycle_keys(self):
        for i in sorted(self.two_cycles):
            yield from self.two_cycles[i]

    def one_cycle_instance(self, key, mode=KT0, b=1):
        return instance_from_cycles([key], mode=mode, b=b, n=self.n)

    def two_cycle_instance(self, key, mode=KT0, b=1):
        return instance_from_cycles(list(key), mode=mode, b=b, n=self.n)


def enumerate_family(n, min_cycle_len=3, limit=FAMILY_LIMIT):
    """Complete duplicate-free families for 5 <= n <= limit."""
    if n < 5:
        raise ValueError("family enumeration needs n >= 5")
    if n > limit:
        raise ResourceLimitError(
            f"family enumeration for n={n} exceeds the limit n<={limit}"
        )
    ones = tuple(one_cycle_keys(n))
    twos = {}
    for i, key in two_cycle_keys(n, min_cycle_len):
        twos.setdefault(i, []).append(key)
    twos = {i: tuple(v) for i, v in sorted(twos.items())}
    return CycleFamily(n, min_cycle_len, ones, twos)


def one_cycle_count(n):
    return factorial(n - 1) // 2


def _cycles_on_count(m):
    # distinct cycles on a fixed m-element vertex set
    return max(1, factorial(m - 1) // 2)


def t_class_count(n, i):
    """Closed form |T_i|: splits with the smaller cycle of length i."""
    if i < 3 or n - i < i:
        raise ValueError("need 3 <= i <= n/2")
    count = comb(n, i) * _cycles_on_count(i) * _cycles_on_count(n - i)
    if 2 * i == n:
        count //= 2
    return count


@dataclass(frozen=True)
class FamilyCounts:
    """Closed-form family sizes and the two-cycle/one-cycle ratio."""

    n: int
    min_cycle_len: int
    v1: int
    t_counts: dict  # i -> |T_i|
    v2: int
    ratio: object  # Fraction, or None when past the exact-ratio limit
    ratio_float: float


def family_ratio_terms(n, min_cycle_len=3):
    """|T_i|/|V1| simplifies to n/(2 i (n-i)), halved at i = n/2."""
    terms = {}
    for i in range(min_cycle_len, n // 2 + 1):
        if n - i < max(i, min_cycle_len):
            continue
        term = Fraction(n, 2 * i * (n - i))
        if 2 * i == n:
            term /= 2
        terms[i] = term
    return terms


def family_ratio_float(n, min_cycle_len=3):
    """Float |V2|/|V1| from the simplified per-class terms (any n)."""
    lo, hi = min_cycle_len, n // 2
    if hi < lo:
        return 0.0
    i = np.arange(lo, hi + 1, dtype=np.float64)
    total = float(np.sum(n / (2.0 * i * (n - i))))
    if n == 2 * hi:  # the balanced class is half the unordered-form count
        total -= n / (2.0 * hi * hi) / 2.0
    return total


def family_ratio_exact(n, min_cycle_len=3, limit=EXACT_RATIO_LIMIT):
    if n > limit:
        raise ResourceLimitError(
            f"exact ratio for n={n} exceeds the limit n<={limit}"
        )
    return sum(family_ratio_terms(n, min_cycle_len).values(), Fraction(0))


def family_counts(n, min_cycle_len=3, limit=EXACT_COUNT_LIMIT):
    """Exact closed-form counts; enumeration-free, so n can be large."""
    if n < 6:
        raise ValueError("closed forms are for n >= 6")
    if n > limit:
        raise ResourceLimitError(
            f"exact closed-form counts for n={n} exceed the limit n<={limit}"
        )
    v1 = one_cycle_count(n)
    t_counts = {}
    for i in range(min_cycle_len, n // 2 + 1):
        if n - i < max(i, min_cycle_len):
            continue
        t_counts[i] = t_class_count(n, i)
    v2 = sum(t_counts.values())
    return FamilyCounts(
        n, min_cycle_len, v1, t_counts, v2,
        Fraction(v2, v1), family_ratio_float(n, min_cycle_len),
    )


def ratio_over_log(n, min_cycle_len=3):
    """ratio(n) / ln(n): the finite shadow of the log-factor size law."""
    return family_ratio_float(n, min_cycle_len) / log(n)
