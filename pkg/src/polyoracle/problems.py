"""Concrete local-subset encoders: k-SUM, collinearity, induced patterns,
minimum-weight cliques and weighted pattern subgraphs.

Every encoder turns a natural problem input into an ``LSProblemSpec`` plus an
``LSInstance``.  Universe codecs are size-independent bijections into the
positive integers, so a tuple valid at size n-1 keeps its code at size n:

* pairs use shell (max-based) enumeration -- shell k covers codes
  ((k-1)**2, k**2], with the self-pair (k, k) taking the shell's top code;
* tagged weighted records (tag, u, v, w) nest the pair shell code with a
  fixed weight span and tag count, both frozen into the problem spec;
* values from a range [-W, W] are shifted by W + 1 before encoding so codes
  stay positive.

Verifiers are pure predicates on codes and never consult the instance size.
The one construction that needs a reserved element (the pattern-family
encoder, whose instances must keep both S and its complement nonempty) puts
a loop at vertex 1 and shifts real vertices up by one, so "the witness avoids
the reserved vertex" is a size-independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import isqrt
from typing import Callable, Iterable, Literal, Sequence

from .errors import ValueOutOfRange
from .localsubset import LSInstance, LSProblemSpec, ls_instance


# --- shell pair codec -----------------------------------------------------


@lru_cache(maxsize=None)
def encode_pair(u: int, v: int) -> int:
    """Shell code of an ordered pair of positive integers; max(u, v) = shell."""
    if u < 1 or v < 1:
        raise ValueOutOfRange("pair components must be positive")
    k = max(u, v)
    base = (k - 1) * (k - 1)
    if v == k and u < k:
        return base + u
    if u == k and v < k:
        return base + (k - 1) + v
    return k * k  # u == v == k


@lru_cache(maxsize=None)
def decode_pair(code: int) -> tuple[int, int]:
    if code < 1:
        raise ValueOutOfRange("pair code must be positive")
    k = isqrt(code - 1) + 1
    offset = code - (k - 1) * (k - 1)
    if offset <= k - 1:
        return offset, k
    if offset <= 2 * (k - 1):
        return k, offset - (k - 1)
    return k, k


@dataclass(frozen=True)
class UniverseCodec:
    """A size-stable bijection between natural tuples and [1, n**r]."""

    r: int
    encode: Callable[..., int]
    decode: Callable[[int], tuple]


# --- pattern graphs -------------------------------------------------------


@dataclass(frozen=True)
class PatternGraph:
    """A small fixed pattern on vertices 1..num_vertices with canonical edges."""

    name: str
    num_vertices: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (1 <= u < v <= self.num_vertices):
                raise ValueOutOfRange("pattern edges must be canonical pairs in range")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def nonedges(self) -> frozenset[tuple[int, int]]:
        every = {(u, v) for u, v in combinations(range(1, self.num_vertices + 1), 2)}
        return frozenset(every - self.edges)

    @property
    def num_nonedges(self) -> int:
        return self.num_vertices * (self.num_vertices - 1) // 2 - len(self.edges)


def _pattern(name: str, n: int, edges: Iterable[tuple[int, int]]) -> PatternGraph:
    return PatternGraph(name, n, frozenset(tuple(sorted(e)) for e in edges))


H_PRESETS: dict[str, PatternGraph] = {
    "edge": _pattern("edge", 2, [(1, 2)]),
    "path3": _pattern("path3", 3, [(1, 2), (2, 3)]),
    "triangle": _pattern("triangle", 3, [(1, 2), (1, 3), (2, 3)]),
    "c4": _pattern("c4", 4, [(1, 2), (2, 3), (3, 4), (1, 4)]),
    "k4": _pattern("k4", 4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
}


def _spans_pattern(
    edge_pairs: Sequence[tuple[int, int]],
    nonedge_pairs: Sequence[tuple[int, int]],
    pattern: PatternGraph,
) -> bool:
    """True iff the given edges plus declared non-edges realize the pattern.

    The caller supplies exactly |E(H)| edges and |nonedges(H)| non-edges, so
    distinctness plus a vertex count of |V(H)| means every vertex pair is
    covered; isomorphism is then a brute-force bijection check.
    """
    pairs = tuple(edge_pairs) + tuple(nonedge_pairs)
    if len(set(pairs)) != len(pairs):
        return False
    vertices = sorted({x for pair in pairs for x in pair})
    if len(vertices) != pattern.num_vertices:
        return False
    for image in permutations(range(1, pattern.num_vertices + 1)):
        mapping = dict(zip(vertices, image))
        mapped = {
            (min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
            for u, v in edge_pairs
        }
        if mapped == pattern.edges:
            return True
    return False


# --- natural inputs -------------------------------------------------------


@dataclass(frozen=True)
class KSumInput:
    """k equal-size sets of integers within [-magnitude, magnitude]."""

    k: int
    sets: tuple[tuple[int, ...], ...]
    magnitude: int

    def __post_init__(self) -> None:
        if self.k < 1 or len(self.sets) != self.k:
            raise ValueOutOfRange("need exactly k value sets")
        sizes = {len(s) for s in self.sets}
        if len(sizes) != 1:
            raise ValueOutOfRange("value sets must have equal size")
        for values in self.sets:
            if len(set(values)) != len(values):
                raise ValueOutOfRange("values within a set must be distinct")
            for value in values:
                if abs(value) > self.magnitude:
                    raise ValueOutOfRange(f"value {value} outside [-W, W]")


@dataclass(frozen=True)
class PointSetInput:
    """Planar integer points with coordinates within [-magnitude, magnitude]."""

    points: tuple[tuple[int, int], ...]
    magnitude: int

    def __post_init__(self) -> None:
        for x, y in self.points:
            if abs(x) > self.magnitude or abs(y) > self.magnitude:
                raise ValueOutOfRange(f"point ({x}, {y}) outside range")


@dataclass(frozen=True)
class GraphInput:
    """Simple graph on vertices 1..n with canonical (u < v) edges."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueOutOfRange("edges must be canonical pairs within [1, n]")


@dataclass(frozen=True)
class WeightedGraphInput:
    """Simple graph with integer weights in [-magnitude, magnitude].

    ``edge_weights`` maps canonical pairs to weights; ``vertex_weights``
    (when present) assigns one weight per vertex.
    """

    n: int
    edge_weights: tuple[tuple[tuple[int, int], int], ...]
    magnitude: int
    vertex_weights: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for (u, v), w in self.edge_weights:
            if not (1 <= u < v <= self.n):
                raise ValueOutOfRange("edges must be canonical pairs within [1, n]")
            if (u, v) in seen:
                raise ValueOutOfRange("duplicate edge")
            seen.add((u, v))
            if abs(w) > self.magnitude:
                raise ValueOutOfRange(f"edge weight {w} outside [-W, W]")
        if self.vertex_weights:
            if len(self.vertex_weights) != self.n:
                raise ValueOutOfRange("need one weight per vertex")
            for w in self.vertex_weights:
                if abs(w) > self.magnitude:
                    raise ValueOutOfRange(f"vertex weight {w} outside [-W, W]")


# --- encoders -------------------------------------------------------------


def encode_ksum(inp: KSumInput) -> tuple[LSProblemSpec, LSInstance]:
    """k-SUM: universe [k] x [-W, W]; a witness picks one value per set index.

    The verifier demands set indices exactly 1..k in order, so every solution
    corresponds to exactly one witness tuple.
    """
    k, w = inp.k, inp.magnitude

    def encode(tag: int, value: int) -> int:
        return (value + w) * k + tag

    def verifier(*codes: int) -> bool:
        total = 0
        for position, code in enumerate(codes, start=1):
            tag = (code - 1) % k + 1
            if tag != position:
                return False
            total += (code - tag) // k - w
        return total == 0

    spec = LSProblemSpec(name=f"{k}-sum", alpha=k, beta=0, r=1, verifier=verifier)
    elements = [encode(tag, value) for tag, values in enumerate(inp.sets, 1) for value in values]
    return spec, ls_instance(n=k * (2 * w + 1), elements=elements)


def encode_collinearity(inp: PointSetInput) -> tuple[LSProblemSpec, LSInstance]:
    """Collinearity: universe [-W, W]^2; exact cross-product test, no floats."""
    w = inp.magnitude
    shift = w + 1

    def decode_point(code: int) -> tuple[int, int]:
        a, b = decode_pair(code)
        return a - shift, b - shift

    def verifier(c1: int, c2: int, c3: int) -> bool:
        if c1 == c2 or c1 == c3 or c2 == c3:
            return False
        (x1, y1), (x2, y2), (x3, y3) = decode_point(c1), decode_point(c2), decode_point(c3)
        return (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1) == 0

    spec = LSProblemSpec(name="collinearity", alpha=3, beta=0, r=2, verifier=verifier)
    elements = {encode_pair(x + shift, y + shift) for x, y in inp.points}
    return spec, ls_instance(n=2 * w + 1, elements=sorted(elements))


def _decode_canonical_pair(code: int) -> tuple[int, int] | None:
    u, v = decode_pair(code)
    return (u, v) if u < v else None


def encode_h_induced(inp: GraphInput, pattern: PatternGraph) -> tuple[LSProblemSpec, LSInstance]:
    """H-induced subgraph: universe [n]^2, witnesses = |E(H)| edges plus
    |nonedges(H)| non-edges spanning an H-isomorph.

    Edges are stored canonically (u < v); the verifier rejects any code whose
    pair is not canonical, so each edge or non-edge has exactly one code.
    """
    if pattern.num_edges < 1:
        raise ValueOutOfRange("pattern needs at least one edge to be encodable")
    alpha, beta = pattern.num_edges, pattern.num_nonedges

    def verifier(*codes: int) -> bool:
        pairs = [_decode_canonical_pair(c) for c in codes]
        if any(p is None for p in pairs):
            return False
        return _spans_pattern(pairs[:alpha], pairs[alpha:], pattern)

    spec = LSProblemSpec(
        name=f"induced-{pattern.name}", alpha=alpha, beta=beta, r=2, verifier=verifier
    )
    elements = [encode_pair(u, v) for u, v in inp.edges]
    return spec, ls_instance(n=inp.n, elements=elements)


def encode_family_induced(
    inp: GraphInput, family: Sequence[PatternGraph]
) -> tuple[LSProblemSpec, LSInstance]:
    """Family-induced subgraph: some member of a finite pattern family occurs.

    Vertex 1 is reserved and carries a loop so that S and its complement are
    both nonempty; real vertices shift up by one.  A witness uses the leading
    |E(H)| edge slots and |nonedges(H)| non-edge slots for some member H and
    must avoid the reserved vertex; trailing slots are unconstrained.
    """
    if not family:
        raise ValueOutOfRange("family must be nonempty")
    alpha = max(p.num_edges for p in family)
    beta = max(p.num_nonedges for p in family)
    if alpha < 1:
        raise ValueOutOfRange("family needs a member with at least one edge")
    members = tuple(family)

    def verifier(*codes: int) -> bool:
        pairs = [decode_pair(c) for c in codes]
        for pattern in members:
            ne, nn = pattern.num_edges, pattern.num_nonedges
            chosen = pairs[:ne] + pairs[alpha : alpha + nn]
            if any(u >= v or u == 1 for u, v in chosen):
                continue
            if _spans_pattern(chosen[:ne], chosen[ne:], pattern):
                return True
        return False

    spec = LSProblemSpec(
        name="family-induced-" + "+".join(p.name for p in members),
        alpha=alpha,
        beta=beta,
        r=2,
        verifier=verifier,
    )
    elements = [encode_pair(1, 1)] + [encode_pair(u + 1, v + 1) for u, v in inp.edges]
    return spec, ls_instance(n=inp.n + 1, elements=elements)


def tagged_codec(n: int, num_tags: int, span: int) -> UniverseCodec:
    """Codec for records (tag, u, v, w') with tag in [num_tags], w' in [span].

    The exponent r is the smallest one with n**r >= num_tags * span * n**2,
    the top record code; the code function itself never consults n.
    """

    def encode(tag: int, u: int, v: int, w: int) -> int:
        if not 1 <= tag <= num_tags:
            raise ValueOutOfRange("tag out of range")
        if not 1 <= w <= span:
            raise ValueOutOfRange("weight slot out of range")
        return ((encode_pair(u, v) - 1) * span + (w - 1)) * num_tags + tag

    @lru_cache(maxsize=None)
    def decode(code: int) -> tuple[int, int, int, int]:
        tag = (code - 1) % num_tags + 1
        rest = (code - tag) // num_tags
        w = rest % span + 1
        u, v = decode_pair(rest // span + 1)
        return tag, u, v, w

    return UniverseCodec(r=_tagged_universe_exponent(n, num_tags, span), encode=encode, decode=decode)


def _tagged_universe_exponent(n: int, num_tags: int, span: int) -> int:
    """Smallest r with n**r >= num_tags * span * n**2 (the max record code)."""
    if n < 2:
        raise ValueOutOfRange("weighted encoders need n >= 2")
    top = num_tags * span * n * n
    r = 1
    while n**r < top:
        r += 1
    return r


def encode_min_weight_kclique(
    inp: WeightedGraphInput, k: int, threshold: int
) -> tuple[LSProblemSpec, LSInstance]:
    """Minimum-weight k-clique, decision form: some k-clique of weight <= threshold.

    Records are (1, u, v, weight) for edges and (2, 1, 1, threshold); the tag
    pattern lets the verifier tell edges from the threshold record.
    """
    if k < 2:
        raise ValueOutOfRange("k must be >= 2")
    pair_count = k * (k - 1) // 2
    wcap = max(inp.magnitude, abs(threshold), 1)
    span = 2 * wcap + 1
    shift = wcap + 1
    codec = tagged_codec(inp.n, 2, span)
    r = codec.r

    decode = codec.decode

    def verifier(*codes: int) -> bool:
        tag, u, v, w = decode(codes[-1])
        if tag != 2 or u != 1 or v != 1:
            return False
        bound = w - shift
        pairs = set()
        total = 0
        for code in codes[:-1]:
            tag, u, v, w = decode(code)
            if tag != 1 or u >= v or (u, v) in pairs:
                return False
            pairs.add((u, v))
            total += w - shift
        if total > bound:
            return False
        vertices = {x for pair in pairs for x in pair}
        return len(vertices) == k

    spec = LSProblemSpec(
        name=f"min-weight-{k}-clique", alpha=pair_count + 1, beta=0, r=r, verifier=verifier
    )
    elements = [codec.encode(1, u, v, w + shift) for (u, v), w in inp.edge_weights]
    elements.append(codec.encode(2, 1, 1, threshold + shift))
    return spec, ls_instance(n=inp.n, elements=elements)


WeightMode = Literal["edge-weights", "vertex-weights"]


def encode_max_h_subgraph(
    inp: WeightedGraphInput, pattern: PatternGraph, threshold: int, mode: WeightMode
) -> tuple[LSProblemSpec, LSInstance]:
    """MAX H-SUBGRAPH, decision form: an induced H of total weight >= threshold.

    Edge mode records: (1, u, v, weight) weighted edges, (2, u, v, 1)
    adjacency witnesses -- their absence from S certifies a non-edge -- and
    (3, 1, 1, threshold).  Vertex mode records: (1, u, v, 1) edges,
    (2, v, v, weight) weighted vertices, (3, 1, 1, threshold); non-edges are
    certified through absent tag-1 records.  In edge mode the pattern must
    not contain isolated vertices (every pattern vertex must be pinned to a
    real edge endpoint; a vertex touching only non-edge slots could otherwise
    land outside the graph).
    """
    if mode not in ("edge-weights", "vertex-weights"):
        raise ValueOutOfRange(f"unknown mode {mode!r}")
    edge_mode = mode == "edge-weights"
    if edge_mode:
        covered = {x for pair in pattern.edges for x in pair}
        if len(covered) != pattern.num_vertices:
            raise ValueOutOfRange("edge mode requires a pattern without isolated vertices")
    if not edge_mode and not inp.vertex_weights:
        raise ValueOutOfRange("vertex mode needs vertex weights")
    wcap = max(inp.magnitude, abs(threshold), 1)
    span = 2 * wcap + 1
    shift = wcap + 1
    codec = tagged_codec(inp.n, 3, span)
    r = codec.r
    ne, nv = pattern.num_edges, pattern.num_vertices
    beta = pattern.num_nonedges

    decode = codec.decode

    def verify_edge_mode(*codes: int) -> bool:
        tag, u, v, w = decode(codes[ne])
        if tag != 3 or u != 1 or v != 1:
            return False
        bound = w - shift
        edge_pairs = []
        total = 0
        for code in codes[:ne]:
            tag, u, v, w = decode(code)
            if tag != 1 or u >= v:
                return False
            edge_pairs.append((u, v))
            total += w - shift
        if total < bound:
            return False
        nonedge_pairs = []
        for code in codes[ne + 1 :]:
            tag, u, v, w = decode(code)
            if tag != 2 or u >= v or w != 1:
                return False
            nonedge_pairs.append((u, v))
        return _spans_pattern(edge_pairs, nonedge_pairs, pattern)

    def verify_vertex_mode(*codes: int) -> bool:
        tag, u, v, w = decode(codes[ne + nv])
        if tag != 3 or u != 1 or v != 1:
            return False
        bound = w - shift
        edge_pairs = []
        for code in codes[:ne]:
            tag, u, v, w = decode(code)
            if tag != 1 or u >= v or w != 1:
                return False
            edge_pairs.append((u, v))
        declared = set()
        total = 0
        for code in codes[ne : ne + nv]:
            tag, u, v, w = decode(code)
            if tag != 2 or u != v or u in declared:
                return False
            declared.add(u)
            total += w - shift
        if total < bound:
            return False
        if nv == 1:
            return True
        nonedge_pairs = []
        for code in codes[ne + nv + 1 :]:
            tag, u, v, w = decode(code)
            if tag != 1 or u >= v or w != 1:
                return False
            nonedge_pairs.append((u, v))
        spanned = {x for pair in edge_pairs + nonedge_pairs for x in pair}
        if spanned != declared:
            return False
        return _spans_pattern(edge_pairs, nonedge_pairs, pattern)

    alpha = ne + 1 if edge_mode else ne + nv + 1
    spec = LSProblemSpec(
        name=f"max-{pattern.name}-subgraph-{mode}",
        alpha=alpha,
        beta=beta,
        r=r,
        verifier=verify_edge_mode if edge_mode else verify_vertex_mode,
    )
    elements = []
    for (u, v), w in inp.edge_weights:
        if edge_mode:
            elements.append(codec.encode(1, u, v, w + shift))
        elements.append(codec.encode(2, u, v, 1) if edge_mode else codec.encode(1, u, v, 1))
    if not edge_mode:
        for vertex, w in enumerate(inp.vertex_weights, start=1):
            elements.append(codec.encode(2, vertex, vertex, w + shift))
    elements.append(codec.encode(3, 1, 1, threshold + shift))
    return spec, ls_instance(n=inp.n, elements=elements)


# --- natural-input JSON and the problem registry ---------------------------


def graph_from_json(data: dict) -> GraphInput:
    edges = frozenset(tuple(sorted((int(u), int(v)))) for u, v, *_ in data["edges"])
    return GraphInput(n=int(data["n"]), edges=edges)


def weighted_graph_from_json(data: dict) -> WeightedGraphInput:
    edge_weights = []
    magnitude = int(data.get("magnitude", 0))
    implied = 0
    for entry in data["edges"]:
        u, v = int(entry[0]), int(entry[1])
        w = int(entry[2]) if len(entry) > 2 else 0
        implied = max(implied, abs(w))
        edge_weights.append(((min(u, v), max(u, v)), w))
    vertex_weights = tuple(int(w) for w in data.get("vertex_weights", ()))
    implied = max([implied, *(abs(w) for w in vertex_weights)], default=implied)
    return WeightedGraphInput(
        n=int(data["n"]),
        edge_weights=tuple(edge_weights),
        magnitude=max(magnitude, implied),
        vertex_weights=vertex_weights,
    )


def points_from_json(data: dict) -> PointSetInput:
    points = tuple((int(x), int(y)) for x, y in data["points"])
    implied = max((max(abs(x), abs(y)) for x, y in points), default=0)
    return PointSetInput(points=points, magnitude=max(int(data.get("magnitude", 0)), implied))


def ksum_from_json(data: dict) -> KSumInput:
    sets = tuple(tuple(int(v) for v in values) for values in data["sets"])
    implied = max((abs(v) for values in sets for v in values), default=0)
    return KSumInput(
        k=int(data["k"]), sets=sets, magnitude=max(int(data.get("magnitude", 0)), implied)
    )


def pattern_from_json(value) -> PatternGraph:
    if isinstance(value, str):
        try:
            return H_PRESETS[value]
        except KeyError:
            raise ValueOutOfRange(f"unknown pattern preset {value!r}") from None
    return _pattern(value.get("name", "custom"), int(value["n"]), [tuple(e) for e in value["edges"]])


@dataclass(frozen=True)
class ProblemDefinition:
    """Registry entry: JSON builder, the universe exponent used by benchmarks,
    and (when the problem spec needs no instance parameters) a default input
    that pins down the spec alone."""

    name: str
    build: Callable[[dict], tuple[LSProblemSpec, LSInstance]]
    bench_r: int | None
    default_input: dict | None = None


def _h_induced_definition(preset: str) -> ProblemDefinition:
    return ProblemDefinition(
        name=preset,
        build=lambda data: encode_h_induced(graph_from_json(data), H_PRESETS[preset]),
        bench_r=2,
        default_input={"n": 2, "edges": []},
    )


PROBLEMS: dict[str, ProblemDefinition] = {
    "ksum": ProblemDefinition("ksum", lambda d: encode_ksum(ksum_from_json(d)), bench_r=1),
    "collinearity": ProblemDefinition(
        "collinearity", lambda d: encode_collinearity(points_from_json(d)), bench_r=2
    ),
    "h-induced": ProblemDefinition(
        "h-induced",
        lambda d: encode_h_induced(graph_from_json(d), pattern_from_json(d["H"])),
        bench_r=2,
    ),
    "family-induced": ProblemDefinition(
        "family-induced",
        lambda d: encode_family_induced(
            graph_from_json(d), [pattern_from_json(p) for p in d["family"]]
        ),
        bench_r=2,
    ),
    "min-weight-clique": ProblemDefinition(
        "min-weight-clique",
        lambda d: encode_min_weight_kclique(
            weighted_graph_from_json(d), int(d["k"]), int(d["threshold"])
        ),
        bench_r=None,
    ),
    "max-h-subgraph": ProblemDefinition(
        "max-h-subgraph",
        lambda d: encode_max_h_subgraph(
            weighted_graph_from_json(d),
            pattern_from_json(d["H"]),
            int(d["threshold"]),
            d.get("mode", "edge-weights"),
        ),
        bench_r=None,
    ),
}
for _preset in H_PRESETS:
    PROBLEMS[_preset] = _h_induced_definition(_preset)


def build_problem(name: str, data: dict) -> tuple[LSProblemSpec, LSInstance]:
    try:
        definition = PROBLEMS[name]
    except KeyError:
        raise ValueOutOfRange(f"unknown problem {name!r}") from None
    return definition.build(data)
