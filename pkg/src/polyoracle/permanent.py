"""Binary permanent via coverage-constrained mapping counts.

The permanent of a 0/1 matrix equals the number of perfect matchings of the
bipartite graph G(L, R, E) with (u, v) an edge iff a[u][v] = 1, which in turn
equals F(S1, {}, R \\ S1) for any S1 -- the number of edge-respecting mappings
L -> R covering S1 exactly once and the rest at least once.  Everything here
counts mappings; sets of right-hand vertices are bitmasks (bit v-1 for
column v).

Pipeline (desk scale throughout):

  f_expand        -- eliminate the at-least-once constraints through
                     |F(.., S>=1)| = |F(.., S>=1 - v)| - |F(S0+v, S>=1 - v)|,
                     yielding 2**(n - |S1|) signed terms with empty S>=1;
  f_count_traces  -- count each term by splitting L into consecutive
                     segments, each owning a fixed quota of S1-preimages;
                     a trace (segment breakpoints + preimage block
                     assignment) classifies every mapping uniquely, and the
                     per-trace count is a product of segment DP counts;
  g_count_dp      -- the segment count: subset DP over covered S1-elements,
                     with an optional flag forcing the segment's last vertex
                     to be a preimage (which is what pins the greedy
                     breakpoints and makes traces disjoint).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import ceil
from typing import Iterator, Sequence

from .errors import TooLarge, ValueOutOfRange

PERMANENT_BRUTE_CAP = 10
F_BRUTE_CAP = 6
G_TARGET_CAP = 20


@dataclass(frozen=True)
class BinaryMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueOutOfRange("matrix must be square")
            for value in row:
                if value not in (0, 1):
                    raise ValueOutOfRange("entries must be 0/1")

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        """Neighborhood of each left vertex as a column bitmask."""
        return tuple(
            sum(1 << (v - 1) for v in range(1, self.n + 1) if row[v - 1])
            for row in self.entries
        )


def matrix_from_rows(rows: Sequence[Sequence[int]]) -> BinaryMatrix:
    return BinaryMatrix(tuple(tuple(int(x) for x in row) for row in rows))


def matrix_from_text(text: str) -> BinaryMatrix:
    """Parse the n-lines-of-n-characters format."""
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    return matrix_from_rows([[int(c) for c in line] for line in lines])


@dataclass(frozen=True)
class FSpec:
    """Coverage constraints: exactly-once, never, at-least-once (disjoint masks)."""

    eq1: int
    eq0: int
    ge1: int

    def __post_init__(self) -> None:
        if self.eq1 & self.eq0 or self.eq1 & self.ge1 or self.eq0 & self.ge1:
            raise ValueOutOfRange("constraint masks must be pairwise disjoint")


def permanent_brute(matrix: BinaryMatrix) -> int:
    """Permutation enumeration with dead-branch pruning; the reference oracle."""
    n = matrix.n
    if n > PERMANENT_BRUTE_CAP:
        raise TooLarge(f"permanent_brute capped at n <= {PERMANENT_BRUTE_CAP}")
    masks = matrix.row_masks

    def count(u: int, used: int) -> int:
        if u == n:
            return 1
        total = 0
        free = masks[u] & ~used
        while free:
            bit = free & -free
            total += count(u + 1, used | bit)
            free ^= bit
        return total

    return count(0, 0)


def _mappings(matrix: BinaryMatrix, rows: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Yield (covered_once, covered_multi) masks over all edge-respecting mappings."""
    masks = matrix.row_masks
    choices = [masks[u - 1] for u in rows]

    def rec(i: int, once: int, multi: int) -> Iterator[tuple[int, int]]:
        if i == len(choices):
            yield once, multi
            return
        free = choices[i]
        while free:
            bit = free & -free
            free ^= bit
            if bit & once:
                yield from rec(i + 1, once ^ bit, multi | bit)
            elif bit & multi:
                yield from rec(i + 1, once, multi)
            else:
                yield from rec(i + 1, once | bit, multi)

    yield from rec(0, 0, 0)


def f_count_brute(matrix: BinaryMatrix, spec: FSpec) -> int:
    """Enumerate all mappings L -> R and count those meeting the constraints."""
    if matrix.n > F_BRUTE_CAP:
        raise TooLarge(f"f_count_brute capped at n <= {F_BRUTE_CAP}")
    count = 0
    for once, multi in _mappings(matrix, range(1, matrix.n + 1)):
        covered = once | multi
        if spec.eq1 & ~once:
            continue
        if spec.eq0 & covered:
            continue
        if spec.ge1 & ~covered:
            continue
        count += 1
    return count


def f_expand(matrix: BinaryMatrix, s_eq1: int, alpha: float) -> list[tuple[int, FSpec]]:
    """Expand F(S1, {}, R - S1) into 2**(n - |S1|) signed terms with empty S>=1.

    Repeated application of the elimination identity turns the at-least-once
    set into a signed sum over its subsets T moved into the never-covered
    position, with sign (-1)**|T|.
    """
    n = matrix.n
    expected = ceil(alpha * n)
    if bin(s_eq1).count("1") != expected:
        raise ValueOutOfRange(f"|S1| must be ceil(alpha * n) = {expected}")
    rest = ((1 << n) - 1) & ~s_eq1
    terms: list[tuple[int, FSpec]] = []
    t = rest
    while True:
        sign = -1 if bin(t).count("1") % 2 else 1
        terms.append((sign, FSpec(eq1=s_eq1, eq0=t, ge1=0)))
        if t == 0:
            break
        t = (t - 1) & rest
    terms.reverse()
    return terms


def g_count_dp(
    matrix: BinaryMatrix, rows: Sequence[int], s_eq1: int, s_eq0: int, flag: int
) -> int:
    """Segment count G_K: mappings from ``rows`` covering s_eq1 exactly once,
    avoiding s_eq0 and everything else in S1, with the flag forcing the last
    (maximum) row to map into s_eq1.

    Subset DP over covered S1-elements: O(2**|S1|) states per row.
    """
    if s_eq1 & s_eq0:
        raise ValueOutOfRange("constraint masks must be disjoint")
    bits = [b for b in range(matrix.n) if s_eq1 >> b & 1]
    t = len(bits)
    if t > G_TARGET_CAP:
        raise TooLarge(f"g_count_dp capped at |S1| <= {G_TARGET_CAP}")
    if not rows:
        if flag:
            return 0
        return 1 if t == 0 else 0
    position = {b: i for i, b in enumerate(bits)}
    full = (1 << t) - 1
    masks = matrix.row_masks
    blocked = s_eq1 | s_eq0

    dp = [0] * (full + 1)
    dp[0] = 1
    last = rows[-1]
    for u in rows[:-1]:
        nbr = masks[u - 1]
        free = bin(nbr & ~blocked).count("1")
        cov = [position[b] for b in range(matrix.n) if (nbr & s_eq1) >> b & 1]
        new = [free * value for value in dp]
        for cm in range(full + 1):
            value = dp[cm]
            if not value:
                continue
            for p in cov:
                bit = 1 << p
                if not cm & bit:
                    new[cm | bit] += value
        dp = new
    nbr = masks[last - 1]
    cov = [position[b] for b in range(matrix.n) if (nbr & s_eq1) >> b & 1]
    flagged = sum(dp[full ^ (1 << p)] for p in cov if full >> p & 1)
    if flag:
        return flagged
    free = bin(nbr & ~blocked).count("1")
    return flagged + free * dp[full]


def preimage_quotas(size: int, theta: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-segment preimage quotas and flags for splitting |S1| = size.

    Non-final segments take ceil(size / theta) preimages and carry the
    endpoint flag; the final segment takes the remainder unflagged.  Flagged
    segments with a zero quota are dropped (they would admit no mapping), so
    size = 0 degenerates to a single unflagged segment.
    """
    if theta < 1:
        raise ValueOutOfRange("theta must be >= 1")
    if size == 0 or theta == 1:
        return (size,), (0,)
    quota = -(-size // theta)
    flagged: list[int] = []
    remaining = size
    for _ in range(theta - 1):
        take = min(quota, remaining)
        if take == 0:
            break
        flagged.append(take)
        remaining -= take
    return tuple(flagged) + (remaining,), (1,) * len(flagged) + (0,)


def _ordered_partitions(bits: tuple[int, ...], sizes: Sequence[int]) -> Iterator[list[int]]:
    """Ordered partitions of ``bits`` into parts of the given sizes, as masks."""
    if not sizes:
        yield []
        return
    head, *tail = sizes
    pool = set(bits)
    for chosen in combinations(bits, head):
        mask = sum(1 << b for b in chosen)
        rest = tuple(sorted(pool - set(chosen)))
        for others in _ordered_partitions(rest, tail):
            yield [mask] + others


def f_count_traces(matrix: BinaryMatrix, s_eq1: int, s_eq0: int, theta: int) -> int:
    """|F(S1, S0, {})| as a sum over traces of products of segment counts.

    A trace fixes segment breakpoints p_1 < ... < p_{g-1} in L and an
    assignment of S1 into per-segment blocks W(j) matching the quotas.  Each
    mapping has exactly one trace (greedy minimal breakpoints, enforced by
    the endpoint flag), so the per-trace products sum to the total.
    """
    if s_eq1 & s_eq0:
        raise ValueOutOfRange("constraint masks must be disjoint")
    n = matrix.n
    bits = tuple(b for b in range(n) if s_eq1 >> b & 1)
    quotas, flags = preimage_quotas(len(bits), theta)
    segments = len(quotas)
    cache: dict[tuple[int, int, int, int], int] = {}

    def segment_count(start: int, end: int, w_mask: int, flag: int) -> int:
        key = (start, end, w_mask, flag)
        if key not in cache:
            rows = range(start + 1, end + 1)
            cache[key] = g_count_dp(matrix, rows, w_mask, s_eq0 | (s_eq1 & ~w_mask), flag)
        return cache[key]

    total = 0
    for cuts in combinations(range(1, n + 1), segments - 1):
        bounds = (0, *cuts, n)
        if any(bounds[j + 1] - bounds[j] < quotas[j] for j in range(segments)):
            continue
        for blocks in _ordered_partitions(bits, quotas):
            product = 1
            for j in range(segments):
                product *= segment_count(bounds[j], bounds[j + 1], blocks[j], flags[j])
                if not product:
                    break
            total += product
    return total


def permanent_via_fsets(matrix: BinaryMatrix, alpha: float = 0.5) -> int:
    """Permanent as the signed sum of direct segment-DP counts (no traces)."""
    n = matrix.n
    if n > PERMANENT_BRUTE_CAP:
        raise TooLarge(f"permanent_via_fsets capped at n <= {PERMANENT_BRUTE_CAP}")
    if n == 0:
        return 1
    s_eq1 = (1 << ceil(alpha * n)) - 1
    total = 0
    for sign, spec in f_expand(matrix, s_eq1, alpha):
        total += sign * g_count_dp(matrix, range(1, n + 1), spec.eq1, spec.eq0, 0)
    if total < 0:
        raise AssertionError("signed permanent chain produced a negative total")
    return total


def permanent_via_formulation(matrix: BinaryMatrix, alpha: float = 0.5, theta: int = 2) -> int:
    """Permanent as the signed sum of trace-decomposed mapping counts."""
    n = matrix.n
    if n > PERMANENT_BRUTE_CAP:
        raise TooLarge(f"permanent_via_formulation capped at n <= {PERMANENT_BRUTE_CAP}")
    if n == 0:
        return 1
    s_eq1 = (1 << ceil(alpha * n)) - 1
    total = 0
    for sign, spec in f_expand(matrix, s_eq1, alpha):
        total += sign * f_count_traces(matrix, spec.eq1, spec.eq0, theta)
    if total < 0:
        raise AssertionError("signed permanent chain produced a negative total")
    return total
