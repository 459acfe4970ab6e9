"""Arithmetic circuits over Z (or Z_p): evaluation, homogenization, verification.

A circuit is a topologically ordered gate list over binary +/x gates, input
leaves and integer constants.  Its size is the number of edges, i.e. two per
binary gate.  A circuit *computes* a polynomial; verification below means
identity of polynomials (monomial by monomial), never pointwise agreement.

The verification pipeline for a candidate circuit C against a target
polynomial P of degree <= delta:

    1. homogenize(C, delta)    -- every gate split into its homogeneous
                                  degree-0..delta components (Strassen);
                                  components above delta are truncated, which
                                  is harmless exactly when deg(C) <= delta.
    2. expand_to_polynomial    -- gate-by-gate symbolic expansion into
                                  canonical sparse form, guarded by a monomial
                                  cap so non-constant-degree circuits fail
                                  fast instead of exhausting memory.
    3. compare against P       -- canonical forms are equal iff the
                                  polynomials are identical.

Prime selection for modular evaluation picks the smallest prime in [2M, 4M]
(one exists by Bertrand's postulate); smallest rather than arbitrary keeps
golden files reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from . import polynomials as poly
from .errors import ArityMismatch, CapExceeded
from .polynomials import SparsePolynomial, is_prime

DEFAULT_MONOMIAL_CAP = 10**6

# Homogenization emits at most this factor times delta**2 times the original
# size; asserted by the test suite on random circuits.
HOMOGENIZE_SIZE_FACTOR = 6


@dataclass(frozen=True)
class InputGate:
    index: int


@dataclass(frozen=True)
class ConstGate:
    value: int


@dataclass(frozen=True)
class AddGate:
    left: int
    right: int


@dataclass(frozen=True)
class MulGate:
    left: int
    right: int


Gate = Union[InputGate, ConstGate, AddGate, MulGate]


@dataclass(frozen=True)
class ArithmeticCircuit:
    num_inputs: int
    gates: tuple[Gate, ...]
    output: int

    def __post_init__(self) -> None:
        if not self.gates:
            raise ValueError("circuit needs at least one gate")
        if not 0 <= self.output < len(self.gates):
            raise ValueError("output is not a valid gate id")
        for gate_id, gate in enumerate(self.gates):
            if isinstance(gate, InputGate):
                if not 0 <= gate.index < self.num_inputs:
                    raise ValueError(f"gate {gate_id}: input index out of range")
            elif isinstance(gate, (AddGate, MulGate)):
                if not (0 <= gate.left < gate_id and 0 <= gate.right < gate_id):
                    raise ValueError(f"gate {gate_id}: operand must reference an earlier gate")


@dataclass(frozen=True)
class PrimeModulus:
    """A prime p together with the window [2M, 4M] it was drawn from."""

    p: int
    lower: int
    upper: int

    def __post_init__(self) -> None:
        if not self.lower <= self.p <= self.upper:
            raise ValueError("prime outside its declared window")
        if not is_prime(self.p):
            raise ValueError("modulus is not prime")


def circuit_size(circuit: ArithmeticCircuit) -> int:
    """Number of edges: two per binary gate, zero for leaves."""
    return 2 * sum(isinstance(g, (AddGate, MulGate)) for g in circuit.gates)


def evaluate_circuit(
    circuit: ArithmeticCircuit, point: Sequence[int], modulus: int | None = None
) -> int:
    """Evaluate gate by gate in topological order, optionally mod a prime."""
    if len(point) != circuit.num_inputs:
        raise ArityMismatch(f"expected {circuit.num_inputs} inputs, got {len(point)}")
    values: list[int] = []
    for gate in circuit.gates:
        if isinstance(gate, InputGate):
            v = point[gate.index]
        elif isinstance(gate, ConstGate):
            v = gate.value
        elif isinstance(gate, AddGate):
            v = values[gate.left] + values[gate.right]
        else:
            v = values[gate.left] * values[gate.right]
        if modulus is not None:
            v %= modulus
        values.append(v)
    return values[circuit.output]


class _CircuitBuilder:
    """Gate accumulator with None standing for an identically-zero operand.

    Skipping zero operands instead of materializing zero constants keeps the
    homogenization size bound tight and lets single-leaf circuits transform
    into single-leaf circuits.
    """

    def __init__(self) -> None:
        self.gates: list[Gate] = []

    def emit(self, gate: Gate) -> int:
        self.gates.append(gate)
        return len(self.gates) - 1

    def add(self, left: int | None, right: int | None) -> int | None:
        if left is None:
            return right
        if right is None:
            return left
        return self.emit(AddGate(left, right))

    def mul(self, left: int | None, right: int | None) -> int | None:
        if left is None or right is None:
            return None
        return self.emit(MulGate(left, right))

    def sum_all(self, parts: list[int | None]) -> int | None:
        acc: int | None = None
        for part in parts:
            acc = self.add(acc, part)
        return acc


def homogenize(circuit: ArithmeticCircuit, delta: int) -> ArithmeticCircuit:
    """Strassen homogenization truncated at degree ``delta``.

    Every original gate g is replaced by components computing the homogeneous
    degree-0..delta parts of g: addition acts componentwise and multiplication
    becomes the truncated convolution sum_{i+j=d} l_i * r_j.  The returned
    circuit computes the degree-<=delta truncation of the original polynomial,
    hence the identical polynomial whenever that degree bound holds.  The
    precondition is deliberately unchecked; a violation surfaces as a
    verification mismatch downstream.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    builder = _CircuitBuilder()
    components: list[list[int | None]] = []
    for gate in circuit.gates:
        comps: list[int | None] = [None] * (delta + 1)
        if isinstance(gate, InputGate):
            comps[1] = builder.emit(InputGate(gate.index))
        elif isinstance(gate, ConstGate):
            if gate.value != 0:
                comps[0] = builder.emit(ConstGate(gate.value))
        elif isinstance(gate, AddGate):
            left, right = components[gate.left], components[gate.right]
            for d in range(delta + 1):
                comps[d] = builder.add(left[d], right[d])
        else:
            left, right = components[gate.left], components[gate.right]
            for d in range(delta + 1):
                comps[d] = builder.sum_all(
                    [builder.mul(left[i], right[d - i]) for i in range(d + 1)]
                )
        components.append(comps)
    output = builder.sum_all(components[circuit.output])
    if output is None:
        output = builder.emit(ConstGate(0))
    return ArithmeticCircuit(circuit.num_inputs, tuple(builder.gates), output)


def expand_to_polynomial(
    circuit: ArithmeticCircuit, monomial_cap: int = DEFAULT_MONOMIAL_CAP
) -> SparsePolynomial:
    """Symbolically expand every gate into canonical sparse form.

    Raises CapExceeded as soon as any gate's expansion holds more than
    ``monomial_cap`` monomials, signalling that the circuit is not
    effectively constant-degree at this cap.
    """
    n = circuit.num_inputs
    expanded: list[SparsePolynomial] = []
    for gate in circuit.gates:
        if isinstance(gate, InputGate):
            p = poly.variable(n, gate.index)
        elif isinstance(gate, ConstGate):
            p = poly.constant(n, gate.value)
        elif isinstance(gate, AddGate):
            p = poly.add(expanded[gate.left], expanded[gate.right])
        else:
            p = poly.multiply(expanded[gate.left], expanded[gate.right])
        if len(p.monomials) > monomial_cap:
            raise CapExceeded(
                f"gate expansion holds {len(p.monomials)} monomials (cap {monomial_cap})"
            )
        expanded.append(p)
    return expanded[circuit.output]


@dataclass(frozen=True)
class VerificationResult:
    accepted: bool
    reason: str  # "match", "mismatch", or "cap_exceeded"

    def __bool__(self) -> bool:
        return self.accepted


def verify_circuit(
    circuit: ArithmeticCircuit,
    target: SparsePolynomial,
    delta: int,
    monomial_cap: int = DEFAULT_MONOMIAL_CAP,
) -> VerificationResult:
    """Check that ``circuit`` computes exactly ``target`` (degree <= delta).

    Expansion happens on the homogenized circuit; acceptance means the two
    canonical monomial sequences are identical, so there are no false
    accepts.  A cap overflow is reported as a rejection with its own reason
    code rather than an exception.
    """
    try:
        expansion = expand_to_polynomial(homogenize(circuit, delta), monomial_cap)
    except CapExceeded:
        return VerificationResult(False, "cap_exceeded")
    if expansion.num_vars != target.num_vars:
        return VerificationResult(False, "mismatch")
    if expansion.monomials != target.monomials:
        return VerificationResult(False, "mismatch")
    return VerificationResult(True, "match")


def find_prime(bound: int) -> PrimeModulus:
    """Smallest prime in [2M, 4M]; existence is Bertrand's postulate."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    lower, upper = 2 * bound, 4 * bound
    candidate = lower
    while candidate <= upper:
        if is_prime(candidate):
            return PrimeModulus(candidate, lower, upper)
        candidate += 1
    raise AssertionError("no prime in [2M, 4M]; Bertrand's postulate violated")


def centered_residue(residue: int, modulus: int) -> int:
    """Map a residue in [0, p) into (-p/2, p/2]."""
    if not 0 <= residue < modulus:
        raise ValueError("residue out of range")
    return residue if residue <= modulus // 2 else residue - modulus


def build_circuit_from_polynomial(target: SparsePolynomial) -> ArithmeticCircuit:
    """Deterministic faithful circuit: sum of per-monomial products.

    Each monomial becomes coefficient-constant times repeated-squaring-free
    variable products (exponents are small for constant-degree targets); the
    terms are folded with additions in canonical order.
    """
    builder = _CircuitBuilder()
    n = target.num_vars
    input_ids: dict[int, int] = {}

    def input_gate(index: int) -> int:
        if index not in input_ids:
            input_ids[index] = builder.emit(InputGate(index))
        return input_ids[index]

    term_ids: list[int | None] = []
    for mono in target.monomials:
        acc = builder.emit(ConstGate(mono.coefficient))
        for index, exponent in mono.powers:
            for _ in range(exponent):
                acc = builder.emit(MulGate(acc, input_gate(index)))
        term_ids.append(acc)
    output = builder.sum_all(term_ids)
    if output is None:
        output = builder.emit(ConstGate(0))
    return ArithmeticCircuit(n, tuple(builder.gates), output)


# --- JSON wire format ---------------------------------------------------
#
# {"num_inputs": n,
#  "gates": [{"op": "input", "i": k} | {"op": "const", "v": "<decimal>"}
#            | {"op": "add", "l": i, "r": j} | {"op": "mul", "l": i, "r": j}],
#  "output": id}
#
# Gate ids are positions in the gates array.


def to_json_dict(circuit: ArithmeticCircuit) -> dict:
    gates: list[dict] = []
    for gate in circuit.gates:
        if isinstance(gate, InputGate):
            gates.append({"op": "input", "i": gate.index})
        elif isinstance(gate, ConstGate):
            gates.append({"op": "const", "v": str(gate.value)})
        elif isinstance(gate, AddGate):
            gates.append({"op": "add", "l": gate.left, "r": gate.right})
        else:
            gates.append({"op": "mul", "l": gate.left, "r": gate.right})
    return {"num_inputs": circuit.num_inputs, "gates": gates, "output": circuit.output}


def from_json_dict(data: dict) -> ArithmeticCircuit:
    gates: list[Gate] = []
    for entry in data["gates"]:
        op = entry["op"]
        if op == "input":
            gates.append(InputGate(int(entry["i"])))
        elif op == "const":
            gates.append(ConstGate(int(entry["v"])))
        elif op == "add":
            gates.append(AddGate(int(entry["l"]), int(entry["r"])))
        elif op == "mul":
            gates.append(MulGate(int(entry["l"]), int(entry["r"])))
        else:
            raise ValueError(f"unknown gate op {op!r}")
    return ArithmeticCircuit(int(data["num_inputs"]), tuple(gates), int(data["output"]))
