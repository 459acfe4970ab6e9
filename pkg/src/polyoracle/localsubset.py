"""Local-subset problems and their constant-degree polynomial formulations.

A local-subset problem asks, for an instance (n, m, S) with S a sorted
m-subset of the universe [n**r]: do there exist alpha elements of S and beta
elements of [n**r] \\ S that a fixed verifier accepts?  The instance size is
s = n + m.

The formulation replaces per-universe-element variables by block-comparison
indicators.  Sorted S gains sentinels s_0 = 0 and s_{m+1} = n**r + 1; an
element a belongs to S iff a == s_i for some row i, and b avoids S iff
s_j < b < s_{j+1} for some row j.  Values are compared through the theta
blocks of their binary representation, zero-padded to theta*L bits with

    L = ceil(r * ceil(log2 s) / theta),

and a comparison outcome is decided by the leftmost differing block, so each
outcome tuple lies in exactly one of three comparison-tuple sets (below).
The variable space is the full grid

    x[c][i][q][a],  c in {<, =, >},  i in [0, s],  q in [1, theta],
                    a in [0, 2**L)

flattened in that order, 3 * (s+1) * theta * 2**L variables in total; row i
of the assignment is all-zero beyond i = m + 1.  Two conventions make the
grid exact at desk scale: the most significant block absorbs all bits above
(theta-1)*L, so the sentinel n**r + 1 compares correctly even when it does
not fit in theta*L bits, and enumerated candidate values are capped at
2**(theta*L) - 1 (the cap only ever excludes the top shell code when m = 0
and s is a power of two; shipped encoders never place a witness there).

Two evaluation paths compute the same number: the literal monomial stream
(exponentially large in alpha + beta, usable only at tiny s) and the witness
count (the number of accepted tuples with every a in S and every b outside;
index rows and comparison tuples are uniquely determined, so each witness
contributes exactly one).  Their equality is part of the test suite.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator, Sequence

from . import polynomials
from .errors import StreamTooLarge, UniverseTooLarge
from .polynomials import Monomial, Powers, SparsePolynomial

BRUTE_UNIVERSE_CAP = 10**6
DEFAULT_STREAM_CAP = 10**7
STREAM_CAP_ENV = "POLYORACLE_CAP"

LT, EQ, GT = "<", "=", ">"
COMPARISONS = (LT, EQ, GT)


@dataclass(frozen=True)
class LSProblemSpec:
    """A local-subset problem: (alpha, beta, universe exponent r, verifier).

    The verifier is a pure total predicate on alpha + beta universe codes and
    must interpret a code the same way at every instance size.
    """

    name: str
    alpha: int
    beta: int
    r: int
    verifier: Callable[..., bool]

    def __post_init__(self) -> None:
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        if self.r < 1:
            raise ValueError("r must be >= 1")


@dataclass(frozen=True)
class LSInstance:
    """An instance (n, m, S); elements strictly increasing, sentinels implicit."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        previous = 0
        for element in self.elements:
            if element <= previous:
                raise ValueError("elements must be strictly increasing positive integers")
            previous = element

    @property
    def m(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return self.n + self.m


def ls_instance(n: int, elements: Sequence[int]) -> LSInstance:
    return LSInstance(n, tuple(sorted(elements)))


def universe_size(spec: LSProblemSpec, inst: LSInstance) -> int:
    size = inst.n**spec.r
    if inst.elements and inst.elements[-1] > size:
        raise ValueError("instance elements exceed the universe")
    return size


def brute_solve(spec: LSProblemSpec, inst: LSInstance) -> bool:
    """Reference decision: enumerate all witness tuples over S and its complement."""
    u = universe_size(spec, inst)
    if u > BRUTE_UNIVERSE_CAP:
        raise UniverseTooLarge(f"universe size {u} exceeds cap {BRUTE_UNIVERSE_CAP}")
    member = set(inst.elements)
    verifier = spec.verifier
    if spec.beta == 0:
        return any(verifier(*a) for a in product(inst.elements, repeat=spec.alpha))
    outside = [v for v in range(1, u + 1) if v not in member]
    for a in product(inst.elements, repeat=spec.alpha):
        for b in product(outside, repeat=spec.beta):
            if verifier(*a, *b):
                return True
    return False


# --- block comparison machinery ------------------------------------------


def ceil_log2(s: int) -> int:
    if s < 2:
        raise ValueError("size must be >= 2")
    return (s - 1).bit_length()


def block_length(s: int, r: int, theta: int) -> int:
    """L = ceil(r * ceil(log2 s) / theta)."""
    if theta < 1:
        raise ValueError("theta must be >= 1")
    bits = r * ceil_log2(s)
    return -(-bits // theta)


def variable_count(s: int, r: int, theta: int) -> int:
    """Exact size of the implemented variable grid: 3 * (s+1) * theta * 2**L."""
    return 3 * (s + 1) * theta * (1 << block_length(s, r, theta))


def flat_variable_index(
    s: int, theta: int, block_len: int, comparison: str, i: int, q: int, a: int
) -> int:
    """Flatten (c, i, q, a) in the documented grid order."""
    c = COMPARISONS.index(comparison)
    return ((c * (s + 1) + i) * theta + (q - 1)) * (1 << block_len) + a


def blocks_of(value: int, theta: int, block_len: int) -> tuple[int, ...]:
    """Split a nonnegative value into theta blocks, most significant first.

    Blocks 2..theta hold ``block_len`` bits each; block 1 is unbounded and
    absorbs everything above, so block-vector comparison of any two
    nonnegative integers agrees with integer comparison.
    """
    mask = (1 << block_len) - 1
    out = [0] * theta
    for q in range(theta - 1, 0, -1):
        out[q] = value & mask
        value >>= block_len
    out[0] = value
    return tuple(out)


def compare3(left: int, right: int) -> str:
    if left < right:
        return LT
    if left == right:
        return EQ
    return GT


@lru_cache(maxsize=None)
def comparison_tuple_sets(
    theta: int,
) -> tuple[frozenset[tuple[str, ...]], frozenset[tuple[str, ...]], frozenset[tuple[str, ...]]]:
    """The outcome-tuple sets (C_eq, C_lt, C_gt) deciding blockwise comparison.

    C_eq is the all-equal tuple; C_lt collects tuples whose first non-equal
    position is '<'; C_gt is the rest.  The three sets partition
    {<,=,>}**theta.
    """
    if theta < 1:
        raise ValueError("theta must be >= 1")
    c_eq = frozenset({(EQ,) * theta})
    lt: set[tuple[str, ...]] = set()
    for q in range(1, theta + 1):
        for tail in product(COMPARISONS, repeat=theta - q):
            lt.add((EQ,) * (q - 1) + (LT,) + tail)
    c_lt = frozenset(lt)
    c_gt = frozenset(product(COMPARISONS, repeat=theta)) - c_eq - c_lt
    return c_eq, c_lt, frozenset(c_gt)


@dataclass(frozen=True)
class BlockVariableAssignment:
    """The 0/1 table x[c][i][q][a] produced by the encoding map.

    The table is queryable rather than materialized: entry (c, i, q, a) is 1
    iff i <= m + 1 and comparing block q of s_i against a yields c, where
    s_0 = 0, s_1..s_m are the instance elements and s_{m+1} = n**r + 1.
    """

    s: int
    m: int
    theta: int
    block_len: int
    sorted_elements: tuple[int, ...]
    sentinel: int

    @property
    def num_vars(self) -> int:
        return 3 * (self.s + 1) * self.theta * (1 << self.block_len)

    @property
    def max_abs_value(self) -> int:
        return 1

    def row_value(self, i: int) -> int:
        if i == 0:
            return 0
        if i <= self.m:
            return self.sorted_elements[i - 1]
        return self.sentinel

    def value(self, comparison: str, i: int, q: int, a: int) -> int:
        if not 0 <= i <= self.s:
            raise ValueError("row index out of range")
        if not 1 <= q <= self.theta:
            raise ValueError("block index out of range")
        if not 0 <= a < (1 << self.block_len):
            raise ValueError("block value out of range")
        if i > self.m + 1:
            return 0
        block = blocks_of(self.row_value(i), self.theta, self.block_len)[q - 1]
        return 1 if compare3(block, a) == comparison else 0

    def variable_index(self, comparison: str, i: int, q: int, a: int) -> int:
        return flat_variable_index(self.s, self.theta, self.block_len, comparison, i, q, a)

    def vector(self) -> list[int]:
        """Materialize the full grid; intended for small instances only."""
        out = [0] * self.num_vars
        width = 1 << self.block_len
        for c in COMPARISONS:
            for i in range(self.s + 1):
                if i > self.m + 1:
                    continue
                blocks = blocks_of(self.row_value(i), self.theta, self.block_len)
                for q in range(1, self.theta + 1):
                    block = blocks[q - 1]
                    for a in range(width):
                        if compare3(block, a) == c:
                            out[self.variable_index(c, i, q, a)] = 1
        return out


def compute_assignment(spec: LSProblemSpec, inst: LSInstance, theta: int) -> BlockVariableAssignment:
    s = inst.size
    if s < 2:
        raise ValueError("instance size must be >= 2")
    return BlockVariableAssignment(
        s=s,
        m=inst.m,
        theta=theta,
        block_len=block_length(s, spec.r, theta),
        sorted_elements=inst.elements,
        sentinel=universe_size(spec, inst) + 1,
    )


def _stream_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get(STREAM_CAP_ENV, DEFAULT_STREAM_CAP))


def formulation_monomials(
    spec: LSProblemSpec, s: int, theta: int, cap: int | None = None
) -> Iterator[Monomial]:
    """Stream the literal monomials of the size-s formulation polynomial.

    The outer sum ranges over verifier-accepted candidate tuples from
    [1, s**r], row choices i in [1, s] per a-slot and j in [0, s-1] per
    b-slot, and per-b comparison tuples from C_lt (row j) and C_gt (row
    j + 1).  Every emitted monomial has coefficient 1 and total degree
    exactly theta * (alpha + 2 * beta); duplicates across outer terms are
    emitted separately (canonicalization merges them into larger
    coefficients).

    The stream depends only on (spec, s, theta) -- not on any instance --
    and raises StreamTooLarge beyond the cap (default 10**7, overridable via
    the POLYORACLE_CAP environment variable).
    """
    if s < 2:
        raise ValueError("size must be >= 2")
    limit = _stream_cap(cap)
    length = block_length(s, spec.r, theta)
    candidate_top = min(s**spec.r, (1 << (theta * length)) - 1)
    if candidate_top ** (spec.alpha + spec.beta) > 10 * limit:
        raise StreamTooLarge(
            f"candidate space {candidate_top}**{spec.alpha + spec.beta} is beyond the"
            f" literal path (cap {limit})"
        )
    c_eq, c_lt, c_gt = comparison_tuple_sets(theta)
    eq_tuple = next(iter(c_eq))

    def var_index(comparison: str, i: int, q: int, a: int) -> int:
        return flat_variable_index(s, theta, length, comparison, i, q, a)

    emitted = 0
    candidates = range(1, candidate_top + 1)
    candidate_blocks = {v: blocks_of(v, theta, length) for v in candidates}
    verifier = spec.verifier
    for witness in product(candidates, repeat=spec.alpha + spec.beta):
        if not verifier(*witness):
            continue
        a_part = witness[: spec.alpha]
        b_part = witness[spec.alpha :]
        for rows_a in product(range(1, s + 1), repeat=spec.alpha):
            for rows_b in product(range(s), repeat=spec.beta):
                lt_choices = product(c_lt, repeat=spec.beta)
                for lt_tuples in lt_choices:
                    for gt_tuples in product(c_gt, repeat=spec.beta):
                        exponents: dict[int, int] = {}
                        for a_value, i in zip(a_part, rows_a):
                            for q, (c, block) in enumerate(
                                zip(eq_tuple, candidate_blocks[a_value]), start=1
                            ):
                                idx = var_index(c, i, q, block)
                                exponents[idx] = exponents.get(idx, 0) + 1
                        for b_value, j, lt_t, gt_t in zip(b_part, rows_b, lt_tuples, gt_tuples):
                            blocks = candidate_blocks[b_value]
                            for q in range(1, theta + 1):
                                idx = var_index(lt_t[q - 1], j, q, blocks[q - 1])
                                exponents[idx] = exponents.get(idx, 0) + 1
                                idx = var_index(gt_t[q - 1], j + 1, q, blocks[q - 1])
                                exponents[idx] = exponents.get(idx, 0) + 1
                        powers: Powers = tuple(sorted((i, e) for i, e in exponents.items()))
                        emitted += 1
                        if emitted > limit:
                            raise StreamTooLarge(
                                f"monomial stream exceeds cap {limit} at size {s}"
                            )
                        yield Monomial(1, powers)


def formulation_polynomial(
    spec: LSProblemSpec, s: int, theta: int, cap: int | None = None
) -> SparsePolynomial:
    """Collect the literal stream into canonical sparse form."""
    terms: dict[Powers, int] = {}
    for mono in formulation_monomials(spec, s, theta, cap):
        terms[mono.powers] = terms.get(mono.powers, 0) + mono.coefficient
    return polynomials.polynomial(variable_count(s, spec.r, theta), terms)


def evaluate_formulation(spec: LSProblemSpec, inst: LSInstance, theta: int) -> int:
    """Exact formulation value at the instance encoding, via witness counting.

    Equals the number of verifier-accepted tuples with every a-slot drawn
    from S and every b-slot drawn from the universe complement: sortedness of
    S makes the row choices unique and the actual comparison outcomes select
    exactly one comparison tuple per polynomial factor, so each witness
    contributes 1.  Positive iff the instance is a yes-instance.
    """
    s = inst.size
    if s < 2:
        raise ValueError("instance size must be >= 2")
    u = universe_size(spec, inst)
    top = min(u, (1 << (theta * block_length(s, spec.r, theta))) - 1)
    member = set(inst.elements)
    verifier = spec.verifier
    count = 0
    a_pool = [v for v in inst.elements if v <= top]
    if spec.beta == 0:
        for a in product(a_pool, repeat=spec.alpha):
            if verifier(*a):
                count += 1
        return count
    outside = [v for v in range(1, top + 1) if v not in member]
    for a in product(a_pool, repeat=spec.alpha):
        for b in product(outside, repeat=spec.beta):
            if verifier(*a, *b):
                count += 1
    return count


# LS instance wire format: {"problem": "<name>", "n": N, "elements": [codes...]}
# with m inferred from the element list.


def instance_to_json_dict(problem: str, inst: LSInstance) -> dict:
    return {"problem": problem, "n": inst.n, "elements": list(inst.elements)}


def instance_from_json_dict(data: dict) -> tuple[str, LSInstance]:
    return str(data["problem"]), ls_instance(int(data["n"]), [int(e) for e in data["elements"]])


@dataclass(frozen=True)
class FormulationQuery:
    """One oracle query: evaluate the size-``size`` formulation at phi(inst)."""

    spec: LSProblemSpec
    instance: LSInstance
    theta: int
    size: int
    assignment: BlockVariableAssignment

    @property
    def max_abs_value(self) -> int:
        return self.assignment.max_abs_value


Oracle = Callable[[FormulationQuery], int]


def exact_evaluation_oracle(query: FormulationQuery) -> int:
    return evaluate_formulation(query.spec, query.instance, query.theta)


def solve_via_oracle(
    spec: LSProblemSpec,
    inst: LSInstance,
    theta: int,
    oracle: Oracle = exact_evaluation_oracle,
) -> bool:
    """Decide the instance with exactly one size-variable_count oracle call."""
    s = inst.size
    query = FormulationQuery(
        spec=spec,
        instance=inst,
        theta=theta,
        size=variable_count(s, spec.r, theta),
        assignment=compute_assignment(spec, inst, theta),
    )
    return oracle(query) != 0
