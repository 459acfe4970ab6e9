"""Set-cover chain: partition counting, z-variable DP, HCV branching, minima."""

import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import polyoracle.setcover as sc
from polyoracle.errors import PreconditionViolated, ValueOutOfRange


def random_family(rng, n, max_sets, size_cap, empty_rate=0.15):
    sets = []
    for _ in range(rng.randint(0, max_sets)):
        if rng.random() < empty_rate:
            sets.append(0)
        else:
            size = rng.randint(1, max(1, size_cap))
            mask = sum(1 << (e - 1) for e in rng.sample(range(1, n + 1), min(size, n)))
            sets.append(mask)
    return sc.SetFamily(n, tuple(sets))


def partition_reference(family, k):
    count = 0
    for indices in combinations(range(len(family.sets)), k):
        union = 0
        ok = True
        for i in indices:
            if family.sets[i] & union:
                ok = False
                break
            union |= family.sets[i]
        if ok and union == family.full_mask:
            count += 1
    return count


def test_setpartition_brute_known_values():
    assert sc.setpartition_brute(sc.family_from_lists(2, [[1], [2]]), 2) == 1
    assert sc.setpartition_brute(sc.family_from_lists(2, [[1, 2]]), 1) == 1
    # duplicate values are distinct indices
    assert sc.setpartition_brute(sc.family_from_lists(2, [[1], [1], [2]]), 2) == 2


def test_setpartition_brute_vs_reference():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(1, 6)
        family = random_family(rng, n, 8, n)
        k = rng.randint(0, len(family.sets))
        assert sc.setpartition_brute(family, k) == partition_reference(family, k)


def test_z_var_dp_base_cases():
    family = sc.family_from_lists(3, [[1], [2]])
    b = 0b100  # B = {3}
    assert sc.z_var_dp(family, 0, b, 0) == 1
    assert sc.z_var_dp(family, 0, b, 1) == 0
    with pytest.raises(ValueOutOfRange):
        sc.z_var_dp(family, 0b001, 0, 0)


def test_z_var_dp_vs_direct_enumeration():
    rng = random.Random(1)
    for _ in range(150):
        n = rng.randint(2, 6)
        family = random_family(rng, n, 8, max(1, n // 2))
        full = family.full_mask
        a_mask = rng.randint(0, full)
        rest = full & ~a_mask
        if rest == 0:
            continue
        b_bit = 1 << rng.choice([b for b in range(n) if rest >> b & 1])
        k = rng.randint(0, 4)
        expected = 0
        indices = [i for i, m in enumerate(family.sets) if m]
        for chosen in combinations(indices, k):
            union = 0
            ok = True
            for i in chosen:
                mask = family.sets[i]
                if mask & union or mask & ~a_mask or (mask & -mask) >= b_bit:
                    ok = False
                    break
                union |= mask
            if ok and union == a_mask:
                expected += 1
        assert sc.z_var_dp(family, a_mask, b_bit, k) == expected


def test_setpartition_traces_known_values():
    assert sc.setpartition_via_traces(sc.family_from_lists(2, [[1], [2]]), 2, 1) == 1
    # empty universe: only empty sets, pure binomial choice
    empties = sc.SetFamily(0, (0, 0, 0))
    for k in range(5):
        assert sc.setpartition_via_traces(empties, k, 1) == comb(3, k)


def test_setpartition_traces_precondition():
    family = sc.family_from_lists(4, [[1, 2, 3]])
    with pytest.raises(PreconditionViolated):
        sc.setpartition_via_traces(family, 1, 1)  # size 3 > floor(4/2)


@pytest.mark.parametrize("theta", [1, 2, 3])
def test_setpartition_traces_vs_brute(theta):
    rng = random.Random(theta)
    for _ in range(150):
        n = rng.randint(2 * theta, 10)
        family = random_family(rng, n, 10, n // (2 * theta))
        k = rng.randint(0, len(family.sets))
        assert sc.setpartition_via_traces(family, k, theta) == sc.setpartition_brute(
            family, k
        )


@settings(max_examples=120, deadline=None)
@given(
    st.integers(4, 9),
    st.lists(st.lists(st.integers(1, 9), min_size=0, max_size=2), max_size=9),
    st.integers(0, 9),
)
def test_setpartition_traces_hypothesis(n, raw_sets, k):
    lists = [[e for e in s if e <= n][: n // 4] for s in raw_sets]
    family = sc.family_from_lists(n, [sorted(set(s)) for s in lists])
    assert sc.setpartition_via_traces(family, k, 2) == sc.setpartition_brute(family, k)


def greedy_partition_trace(masks, n, theta):
    """The unique block decomposition of a partition's nonempty sets."""
    nonempty = sorted((m for m in masks if m), key=lambda m: m & -m)
    blocks, current, covered = [], [], 0
    for mask in nonempty:
        size = bin(mask).count("1")
        if theta * (covered + size) > n:
            prefix = 0
            for x in current:
                prefix |= x
            blocks.append((prefix, mask, len(current) + 1))
            current, covered = [], 0
        else:
            current.append(mask)
            covered += size
    if current:
        prefix = 0
        for x in current[:-1]:
            prefix |= x
        blocks.append((prefix, current[-1], len(current)))
    return tuple(blocks)


def test_partition_trace_uniqueness_audit():
    """Each brute partition lands in exactly one trace, and every trace's
    y * z * binomial product reproduces its histogram bucket."""
    rng = random.Random(8)
    for _ in range(60):
        theta = rng.choice([1, 2, 3])
        n = rng.randint(2 * theta, 6)
        family = random_family(rng, n, 9, max(1, n // (2 * theta)))
        k = rng.randint(0, len(family.sets))
        empties = sum(1 for m in family.sets if m == 0)
        value_counts = {}
        for mask in family.sets:
            if mask:
                value_counts[mask] = value_counts.get(mask, 0) + 1
        histogram = {}
        for indices in combinations(range(len(family.sets)), k):
            union, ok = 0, True
            for i in indices:
                if family.sets[i] & union:
                    ok = False
                    break
                union |= family.sets[i]
            if not ok or union != family.full_mask:
                continue
            trace = greedy_partition_trace([family.sets[i] for i in indices], n, theta)
            histogram[trace] = histogram.get(trace, 0) + 1
        total = sc.setpartition_via_traces(family, k, theta)
        assert sum(histogram.values()) == total
        for trace, bucket in histogram.items():
            used = sum(k_j for _, _, k_j in trace)
            expected = comb(empties, k - used)
            for a_mask, b_mask, k_j in trace:
                expected *= value_counts[b_mask] * sc.z_var_dp(family, a_mask, b_mask, k_j - 1)
            assert expected == bucket


def test_hcv_brute_known_values():
    assert sc.hcv_brute(sc.family_from_lists(1, [[1]]), 1, 1, 1) == 1
    assert sc.hcv_brute(sc.family_from_lists(1, [[1], [1]]), 1, 1, 2) == 0
    # with m = 0, HCV counts covers: {1}+{2}, {1}+{1,2}, {2}+{1,2}
    assert sc.hcv_brute(sc.family_from_lists(2, [[1], [2], [1, 2]]), 2, 0, 2) == 3


def test_hcv_is_setpartition_when_m_equals_n():
    rng = random.Random(2)
    for _ in range(80):
        n = rng.randint(1, 6)
        family = random_family(rng, n, 8, n)
        k = rng.randint(0, len(family.sets))
        assert sc.hcv_brute(family, n, n, k) == sc.setpartition_brute(family, k)


def test_hcv_branch_structure():
    family = sc.family_from_lists(3, [[1, 2], [3]])
    same = sc.hcv_branch(family, 3, 3, 1)
    assert len(same) == 1 and same[0][0] == 1 and same[0][1] == family
    two = sc.hcv_branch(family, 3, 2, 1)
    assert len(two) == 2 and [sign for sign, _ in two] == [1, -1]
    assert all(inst.n == 2 for _, inst in two)


def test_hcv_branch_signed_sums_match_brute():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 7)
        m = rng.randint(0, n)
        family = random_family(rng, n, 8, n)
        k = rng.randint(0, len(family.sets))
        expected = sc.hcv_brute(family, n, m, k)
        terms = sc.hcv_branch(family, n, m, k)
        assert len(terms) == 2 ** (n - m)
        assert sum(sign * sc.setpartition_brute(inst, k) for sign, inst in terms) == expected


def test_hcv_expand_known_values():
    family = sc.family_from_lists(2, [[1, 2]])
    expanded = sc.hcv_expand_setcover(family, 1)
    assert sorted(expanded.sets) == sorted(
        (0b11, 0b10)
    )  # {1,2} and {2}
    unchanged = sc.hcv_expand_setcover(family, 0)
    assert unchanged.sets == family.sets


def test_hcv_expand_positivity_matches_coverability():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 6)
        m = rng.randint(0, n)
        family = random_family(rng, n, 6, n)
        k = rng.randint(1, max(1, len(family.sets)))
        expanded = sc.hcv_expand_setcover(family, m)
        m_mask = (1 << m) - 1
        assert len(expanded.sets) == sum(
            2 ** bin(mask & m_mask).count("1") for mask in family.sets
        )
        positive = sc.hcv_brute(expanded, n, m, k) > 0 if len(expanded.sets) <= 18 else None
        if positive is None:
            continue
        coverable = sc._has_cover(family.sets, family.full_mask, k)
        assert positive == coverable


def test_setcover_min_known_values():
    assert sc.setcover_min(sc.family_from_lists(3, [[1, 2, 3]])) == 1
    assert sc.setcover_min(sc.family_from_lists(3, [[1], [2], [3]])) == 3
    assert sc.setcover_min(sc.family_from_lists(3, [[1], [2]])) is None
    assert sc.setcover_min(sc.SetFamily(0, ())) == 0


def test_setcover_min_methods_agree():
    rng = random.Random(5)
    for _ in range(120):
        n = rng.randint(2, 8)
        family = random_family(rng, n, 9, min(3, n // 2), empty_rate=0.1)
        brute = sc.setcover_min(family, method="brute")
        reduction = sc.setcover_min(family, method="reduction")
        assert brute == reduction


def test_setcover_min_reduction_precondition():
    family = sc.family_from_lists(3, [[1, 2, 3]])
    with pytest.raises(PreconditionViolated):
        sc.setcover_min(family, method="reduction")  # needs m >= 6 > n
