"""Set Cover through the exact-counting chain.

For each candidate k the chain asks "is there a k-cover?" by counting: the
expansion turns covers into exactly-once coverings on a prefix [m] of the
universe, branching eliminates the remaining elements at the price of signs,
and the surviving #Set Partition instances are counted through their block
traces.  The first k with a positive signed total is the minimum.
"""

from polyoracle import setcover as sc

family = sc.family_from_lists(
    6, [[1, 2, 3], [3, 4], [4, 5, 6], [1, 4], [2, 5], [6]]
)
print("universe [6], sets:", sc.family_to_lists(family))
print("brute minimum:", sc.setcover_min(family, method="brute"))

m = 6  # keep the whole universe exactly-once for the walkthrough
k = 2
expanded = sc.hcv_expand_setcover(family, m)
print(f"\nexpansion at m={m}: {len(family.sets)} sets -> {len(expanded.sets)} sets")

terms = sc.hcv_branch(expanded, family.n, m, k)
print(f"branching to universe [{m}]: {len(terms)} signed term(s)")
total = sum(sign * sc.setpartition_via_traces(inst, k, 1) for sign, inst in terms)
print(f"signed #HCV total at k={k}: {total} (positive means a {k}-cover exists)")

print("\nfull reduction route:", sc.setcover_min(family, method="reduction"))

# the trace counter agrees with brute partition counting, repetitions included
dup = sc.family_from_lists(4, [[1], [1], [2], [3, 4], [2]])
print()
for k in range(5):
    brute = sc.setpartition_brute(dup, k)
    traced = sc.setpartition_via_traces(dup, k, 1)
    print(f"#SetPartition(k={k}): brute={brute} traces={traced}")
    assert brute == traced
