"""How the formulation's variable count scales with instance size.

The count is 3 * (s+1) * theta * 2**L with L = ceil(r * ceil(log2 s) / theta),
so raising theta trades polynomial degree for a flatter size exponent: the
fitted log-log slope approaches 1 as theta grows past r.
"""

from polyoracle import oracle as orc

sizes = [2**t for t in range(6, 13)]
print("triangle detection (r = 2), sizes", sizes)
print()
print("theta  slope   variables at s=64 .. s=4096")
for theta in (1, 2, 4, 8, 16):
    bench = orc.bench_vars("triangle", theta, sizes)
    counts = " ".join(f"{count:>9}" for _, count in bench.rows)
    print(f"{theta:>5}  {bench.slope:.3f}  {counts}")

print()
bench = orc.bench_vars("triangle", 8, sizes)
print("CSV for theta=8:")
print(bench.to_csv())
