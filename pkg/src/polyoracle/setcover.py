"""Set Cover through exact counting: expansion, branching, trace-counted
set partitions.

Universe elements are 1..n, sets are bitmasks (bit e-1 for element e), and a
family is an index-distinguishable sequence: repeated set values count
separately, so sub-collections are index subsets.

The decision chain for "is there a k-cover?":

  hcv_expand_setcover -- replace each set S with all S - T, T inside
                         S intersect [m]; covering becomes hybrid counting:
                         the expanded family has a k-collection covering [n]
                         with [m] covered exactly once iff the original has
                         a k-cover;
  hcv_branch          -- eliminate elements m+1..n one at a time via
                         #HCV(S) = #HCV(S with e dropped) - #HCV(S without
                         the sets containing e), leaving 2**(n-m) signed
                         #Set Partition instances over [m];
  setpartition_via_traces -- count partitions by the trace of their sorted
                         set sequence: greedy blocks A_1 B_1 ... A_q B_q,
                         where each B_j is the family set that pushes the
                         running union past n/theta (the final block may
                         fall short).  Per block, y counts indices equal to
                         B_j and a min-pivot subset DP counts partitions of
                         A_j by sets whose minima precede min(B_j).

Counts are exact big integers; signed intermediate sums must come out
nonnegative and are asserted to.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .errors import PreconditionViolated, TooLarge, ValueOutOfRange

SETPARTITION_BRUTE_CAP = 20
SETPARTITION_UNIVERSE_CAP = 12
SETPARTITION_THETAS = (1, 2, 3)
Z_UNIVERSE_CAP = 20
HCV_BRUTE_CAP = 18
HCV_BRANCH_CAP = 20


@dataclass(frozen=True)
class SetFamily:
    """Universe size plus an index-distinguishable sequence of subset masks."""

    n: int
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueOutOfRange("universe size must be nonnegative")
        full = (1 << self.n) - 1
        for mask in self.sets:
            if mask & ~full:
                raise ValueOutOfRange("set exceeds the universe")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


def family_from_lists(n: int, lists: Sequence[Sequence[int]]) -> SetFamily:
    masks = []
    for elements in lists:
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueOutOfRange(f"element {e} outside [1, {n}]")
            mask |= 1 << (e - 1)
        masks.append(mask)
    return SetFamily(n, tuple(masks))


def family_to_lists(family: SetFamily) -> list[list[int]]:
    return [
        [e for e in range(1, family.n + 1) if mask >> (e - 1) & 1] for mask in family.sets
    ]


def setpartition_brute(family: SetFamily, k: int) -> int:
    """Count k-index-subsets of pairwise disjoint sets with union [n]."""
    if len(family.sets) > SETPARTITION_BRUTE_CAP:
        raise TooLarge(f"setpartition_brute capped at {SETPARTITION_BRUTE_CAP} sets")
    sets = family.sets
    full = family.full_mask

    def rec(index: int, used: int, left: int) -> int:
        if left == 0:
            return 1 if used == full else 0
        if len(sets) - index < left:
            return 0
        total = rec(index + 1, used, left)
        mask = sets[index]
        if not mask & used:
            total += rec(index + 1, used | mask, left - 1)
        return total

    return 0 if k < 0 else rec(0, 0, k)


class _PartitionCounter:
    """Shared memo tables for the z-variable DP over one family."""

    def __init__(self, family: SetFamily):
        self.nonempty = [mask for mask in family.sets if mask]
        self.by_pivot: dict[int, list[int]] = {}
        for mask in self.nonempty:
            pivot = mask & -mask
            self.by_pivot.setdefault(pivot, []).append(mask)
        self.memo: dict[tuple[int, int, int], int] = {}

    def z(self, a_mask: int, b_min_bit: int, count: int) -> int:
        """Partitions of A into ``count`` nonempty family sets (by index),
        each with minimum element below B's minimum."""
        key = (a_mask, b_min_bit, count)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        if a_mask == 0:
            result = 1 if count == 0 else 0
        elif count == 0:
            result = 0
        else:
            pivot = a_mask & -a_mask
            if pivot >= b_min_bit:
                result = 0
            else:
                result = 0
                for mask in self.by_pivot.get(pivot, ()):
                    if mask & ~a_mask:
                        continue
                    result += self.z(a_mask ^ mask, b_min_bit, count - 1)
        self.memo[key] = result
        return result


def z_var_dp(family: SetFamily, a_mask: int, b_mask: int, count: int) -> int:
    """The z variable: partitions of A into ``count`` family sets whose minima
    precede min(B).  Empty family sets are never usable here."""
    if b_mask == 0:
        raise ValueOutOfRange("B must be nonempty")
    if a_mask & b_mask:
        raise ValueOutOfRange("A and B must be disjoint")
    if bin(a_mask).count("1") > Z_UNIVERSE_CAP:
        raise TooLarge(f"z_var_dp capped at |A| <= {Z_UNIVERSE_CAP}")
    return _PartitionCounter(family).z(a_mask, b_mask & -b_mask, count)


def setpartition_via_traces(family: SetFamily, k: int, theta: int) -> int:
    """#Set Partition by summing per-trace products.

    Enumerates the greedy block structure directly: blocks are built in
    increasing order of minimum element; a non-final block must overshoot
    n/theta once its pivot set B is added while its prefix A stays within
    n/theta; the final block only needs its prefix within n/theta.  Each
    block contributes y(B) * z(A, B, k_j - 1) and leftover multiplicity
    chooses empty sets, C(#empties, k - sum k_j).
    """
    n = family.n
    if n > SETPARTITION_UNIVERSE_CAP:
        raise TooLarge(f"setpartition_via_traces capped at n <= {SETPARTITION_UNIVERSE_CAP}")
    if theta not in SETPARTITION_THETAS:
        raise ValueOutOfRange(f"theta must be one of {SETPARTITION_THETAS}")
    if k < 0:
        return 0
    empties = sum(1 for mask in family.sets if mask == 0)
    if n == 0:
        return comb(empties, k)
    size_cap = n // (2 * theta)
    for mask in family.sets:
        if mask and bin(mask).count("1") > size_cap:
            raise PreconditionViolated(
                f"nonempty sets must have size <= floor(n / (2*theta)) = {size_cap}"
            )
    a_cap = n // theta
    counter = _PartitionCounter(family)
    value_counts: dict[int, int] = {}
    for mask in counter.nonempty:
        value_counts[mask] = value_counts.get(mask, 0) + 1
    max_blocks = 2 * theta
    memo: dict[tuple[int, int, int], int] = {}

    def rec(remaining: int, blocks_used: int, k_left: int) -> int:
        if remaining == 0:
            return comb(empties, k_left)
        if blocks_used >= max_blocks or k_left <= 0:
            return 0
        key = (remaining, blocks_used, k_left)
        cached = memo.get(key)
        if cached is not None:
            return cached
        pivot = remaining & -remaining
        total = 0
        # Tail block with empty prefix: B alone consumes everything left.
        count = value_counts.get(remaining)
        if count:
            total += count * comb(empties, k_left - 1)
        # Blocks with a nonempty prefix A containing the pivot element.
        rest = remaining ^ pivot
        sub = rest
        while True:
            a_mask = sub | pivot
            if bin(a_mask).count("1") <= a_cap:
                outside = remaining ^ a_mask
                for b_mask, count in value_counts.items():
                    if b_mask & ~outside:
                        continue
                    after = outside ^ b_mask
                    if after:
                        # Non-final block: must overshoot n/theta, and the
                        # next block's elements must all follow min(B).
                        if theta * bin(a_mask | b_mask).count("1") <= n:
                            continue
                        if (b_mask & -b_mask) > (after & -after):
                            continue
                    max_parts = min(k_left - 1, bin(a_mask).count("1"))
                    for parts in range(1, max_parts + 1):
                        z = counter.z(a_mask, b_mask & -b_mask, parts)
                        if z:
                            total += count * z * rec(after, blocks_used + 1, k_left - parts - 1)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        memo[key] = total
        return total

    return rec(family.full_mask, 0, k)


def hcv_brute(family: SetFamily, n: int, m: int, k: int) -> int:
    """#HCV reference: k-index-subsets covering [n] with [m] covered exactly once."""
    if len(family.sets) > HCV_BRUTE_CAP:
        raise TooLarge(f"hcv_brute capped at {HCV_BRUTE_CAP} sets")
    if not 0 <= m <= n or family.n != n:
        raise ValueOutOfRange("need 0 <= m <= n = family.n")
    sets = family.sets
    full = (1 << n) - 1
    m_mask = (1 << m) - 1

    def rec(index: int, union: int, once: int, multi: int, left: int) -> int:
        if multi & m_mask:
            return 0
        if left == 0:
            return 1 if union == full and (m_mask & ~once) == 0 else 0
        if len(sets) - index < left:
            return 0
        total = rec(index + 1, union, once, multi, left)
        mask = sets[index]
        total += rec(
            index + 1, union | mask, (once ^ mask) & ~multi, multi | (once & mask), left - 1
        )
        return total

    return 0 if k < 0 else rec(0, 0, 0, 0, k)


def hcv_branch(family: SetFamily, n: int, m: int, k: int) -> list[tuple[int, SetFamily]]:
    """Reduce #HCV_{n,m,k} to 2**(n-m) signed #Set Partition instances over [m].

    Branching on the top element e: dropping e from every set keeps all
    collections but forgets e's coverage; subtracting the count over sets
    free of e leaves exactly the collections that do cover e.
    """
    if not 0 <= m <= n or family.n != n:
        raise ValueOutOfRange("need 0 <= m <= n = family.n")
    if n - m > HCV_BRANCH_CAP:
        raise TooLarge(f"hcv_branch capped at n - m <= {HCV_BRANCH_CAP}")

    def rec(level: int, sign: int, sets: tuple[int, ...]) -> Iterator[tuple[int, SetFamily]]:
        if level == m:
            yield sign, SetFamily(m, sets)
            return
        bit = 1 << (level - 1)
        yield from rec(level - 1, sign, tuple(mask & ~bit for mask in sets))
        yield from rec(level - 1, -sign, tuple(mask for mask in sets if not mask & bit))

    return list(rec(n, 1, family.sets))


def hcv_expand_setcover(family: SetFamily, m: int) -> SetFamily:
    """Expansion making covers countable: each set S becomes {S - T : T in S cap [m]}."""
    if not 0 <= m <= family.n:
        raise ValueOutOfRange("need 0 <= m <= n")
    m_mask = (1 << m) - 1
    out: list[int] = []
    for mask in family.sets:
        overlap = mask & m_mask
        if bin(overlap).count("1") > HCV_BRANCH_CAP:
            raise TooLarge("set overlaps [m] in more than the expandable number of elements")
        sub = 0
        while True:
            out.append(mask & ~sub)
            if sub == overlap:
                break
            sub = (sub - overlap) & overlap
    return SetFamily(family.n, tuple(out))


def _has_cover(sets: Sequence[int], full: int, k: int) -> bool:
    def rec(index: int, union: int, left: int) -> bool:
        if union == full:
            return True
        if left == 0 or index == len(sets):
            return False
        rest = union
        for mask in sets[index:]:
            rest |= mask
        if rest != full:
            return False
        if rec(index + 1, union | sets[index], left - 1):
            return True
        return rec(index + 1, union, left)

    return rec(0, 0, k)


def setcover_min(
    family: SetFamily,
    method: str = "brute",
    theta: int = 1,
    max_branch: int = 6,
) -> int | None:
    """Minimum number of sets covering [n]; None when [n] is not coverable.

    The reduction route tests k = 1, 2, ... through the full chain:
    expansion, branching down to m = max(2*theta*maxsize, n - max_branch)
    elements, and trace-counted set partitions; the first k with a positive
    signed total is the minimum.
    """
    n = family.n
    if n == 0:
        return 0
    full = family.full_mask
    union = 0
    for mask in family.sets:
        union |= mask
    if union != full:
        return None
    if method == "brute":
        for k in range(1, len(family.sets) + 1):
            if _has_cover(family.sets, full, k):
                return k
        return None
    if method != "reduction":
        raise ValueOutOfRange(f"unknown method {method!r}")
    maxsize = max((bin(mask).count("1") for mask in family.sets), default=0)
    m = max(2 * theta * maxsize, n - max_branch)
    if m > n:
        raise PreconditionViolated(
            f"reduction needs a universe of at least 2*theta*maxsize = {2 * theta * maxsize}"
        )
    expanded = hcv_expand_setcover(family, m)
    for k in range(1, len(family.sets) + 1):
        total = 0
        for sign, instance in hcv_branch(expanded, n, m, k):
            total += sign * setpartition_via_traces(instance, k, theta)
        if total < 0:
            raise AssertionError("signed #HCV total came out negative")
        if total > 0:
            return k
    return None
