"""Finite directed graphs, finite paths, and eventually periodic infinite paths.

Conventions follow the categorical composition order: a path a1 a2 ... an
requires d(ai) = r(ai+1), its range is r(a1) and its source is d(an).
Graphs are expected to have no sources, i.e. every vertex receives at least
one edge; ``validate_graph`` reports violations instead of raising.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import periodic
from .errors import CompositionError, DepthExceededError
from .tri import Tri, DISTINCT, EQUAL, from_bool, unknown


@dataclass(frozen=True)
class Graph:
    """Finite directed graph with dense integer ids and string labels."""

    vertex_labels: tuple[str, ...]
    edge_labels: tuple[str, ...]
    range_of: tuple[int, ...]   # edge -> vertex
    source_of: tuple[int, ...]  # edge -> vertex

    def __post_init__(self):
        if len(self.range_of) != len(self.edge_labels) or len(self.source_of) != len(self.edge_labels):
            raise ValueError("range/source maps must cover every edge")

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def n_edges(self) -> int:
        return len(self.edge_labels)

    def vertices(self) -> range:
        return range(self.n_vertices)

    def edges(self) -> range:
        return range(self.n_edges)

    def edges_into(self, v: int) -> tuple[int, ...]:
        """Edges e with r(e) = v."""
        return tuple(e for e in self.edges() if self.range_of[e] == v)

    def edges_out_of(self, v: int) -> tuple[int, ...]:
        """Edges e with d(e) = v."""
        return tuple(e for e in self.edges() if self.source_of[e] == v)

    def vertex_id(self, label: str) -> int:
        return self.vertex_labels.index(label)

    def edge_id(self, label: str) -> int:
        return self.edge_labels.index(label)


def make_graph(vertices: Sequence[str], edges: Sequence[tuple[str, str, str]]) -> Graph:
    """Build a graph from vertex labels and (edge label, range label, source label) rows."""
    vlabels = tuple(vertices)
    elabels = tuple(e[0] for e in edges)
    if len(set(vlabels)) != len(vlabels):
        raise ValueError("duplicate vertex label")
    if len(set(elabels)) != len(elabels):
        raise ValueError("duplicate edge label")
    index = {lab: i for i, lab in enumerate(vlabels)}
    try:
        rng = tuple(index[e[1]] for e in edges)
        src = tuple(index[e[2]] for e in edges)
    except KeyError as missing:
        raise ValueError(f"edge endpoint references unknown vertex {missing}") from None
    return Graph(vlabels, elabels, rng, src)


@dataclass(frozen=True)
class GraphReport:
    ok: bool
    problems: tuple[str, ...]


def validate_graph(g: Graph) -> GraphReport:
    """Report vertices with no incoming edge and dangling edge endpoints."""
    problems = []
    for e in g.edges():
        if not 0 <= g.range_of[e] < g.n_vertices:
            problems.append(f"edge {g.edge_labels[e]}: range is not a vertex")
        if not 0 <= g.source_of[e] < g.n_vertices:
            problems.append(f"edge {g.edge_labels[e]}: source is not a vertex")
    for v in g.vertices():
        if not any(g.range_of[e] == v for e in g.edges()):
            problems.append(f"vertex {g.vertex_labels[v]}: no incoming edge (source)")
    return GraphReport(not problems, tuple(problems))


@dataclass(frozen=True)
class Path:
    """Finite path: either a vertex (length 0) or a composable edge sequence.

    Vertex paths carry their vertex explicitly so range and source need no
    graph lookup.
    """

    graph: Graph = field(repr=False)
    vertex: int | None
    edges: tuple[int, ...]

    def __post_init__(self):
        if (self.vertex is None) == (not self.edges):
            raise ValueError("exactly one of vertex / edges must be set")

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    @property
    def range_vertex(self) -> int:
        if self.vertex is not None:
            return self.vertex
        return self.graph.range_of[self.edges[0]]

    @property
    def source_vertex(self) -> int:
        if self.vertex is not None:
            return self.vertex
        return self.graph.source_of[self.edges[-1]]

    def prefix(self, n: int) -> "Path":
        """Truncation to the first n edges (n = 0 gives the range vertex)."""
        if not 0 <= n <= len(self):
            raise ValueError(f"prefix length {n} out of range")
        if n == 0:
            return vertex_path(self.graph, self.range_vertex)
        return Path(self.graph, None, self.edges[:n])

    def drop(self, n: int) -> "Path":
        """Remainder after the first n edges (the gamma with self = prefix(n) . gamma)."""
        if not 0 <= n <= len(self):
            raise ValueError(f"drop length {n} out of range")
        if n == len(self):
            return vertex_path(self.graph, self.source_vertex)
        return Path(self.graph, None, self.edges[n:])

    def __str__(self) -> str:
        if self.vertex is not None:
            return "@" + self.graph.vertex_labels[self.vertex]
        return ".".join(self.graph.edge_labels[e] for e in self.edges)


def vertex_path(graph: Graph, v: int) -> Path:
    if not 0 <= v < graph.n_vertices:
        raise ValueError(f"no vertex {v}")
    return Path(graph, v, ())


def edge_path(graph: Graph, edges: Iterable[int]) -> Path:
    seq = tuple(edges)
    if not seq:
        raise ValueError("edge_path needs at least one edge; use vertex_path")
    for e in seq:
        if not 0 <= e < graph.n_edges:
            raise ValueError(f"no edge {e}")
    for a, b in zip(seq, seq[1:]):
        if graph.source_of[a] != graph.range_of[b]:
            raise CompositionError(
                f"edges {graph.edge_labels[a]} and {graph.edge_labels[b]} do not compose"
            )
    return Path(graph, None, seq)


def concat(a: Path, b: Path) -> Path:
    """Concatenation a.b, defined when d(a) = r(b)."""
    if a.graph != b.graph:
        raise CompositionError("paths live on different graphs")
    if a.source_vertex != b.range_vertex:
        raise CompositionError(
            f"cannot concatenate: d({a}) = {a.graph.vertex_labels[a.source_vertex]}"
            f" but r({b}) = {b.graph.vertex_labels[b.range_vertex]}"
        )
    if a.is_vertex:
        return b
    if b.is_vertex:
        return a
    return Path(a.graph, None, a.edges + b.edges)


class PrefixRel(enum.Enum):
    EQUAL = "equal"
    A_PROPER = "a-proper-prefix"
    B_PROPER = "b-proper-prefix"
    INCOMPARABLE = "incomparable"


def prefix_compare(a: Path, b: Path) -> PrefixRel:
    """Compare two paths in the prefix order.

    A vertex path is a prefix of every path it is the range of.
    """
    if a.graph != b.graph:
        return PrefixRel.INCOMPARABLE
    if len(a) <= len(b):
        shorter, longer, short_is_a = a, b, True
    else:
        shorter, longer, short_is_a = b, a, False
    if shorter.range_vertex != longer.range_vertex:
        return PrefixRel.INCOMPARABLE
    if shorter.edges != longer.edges[: len(shorter)]:
        return PrefixRel.INCOMPARABLE
    if len(shorter) == len(longer):
        return PrefixRel.EQUAL
    return PrefixRel.A_PROPER if short_is_a else PrefixRel.B_PROPER


def complement(a: Path, b: Path) -> Path:
    """The unique gamma with a.gamma = b; requires a to be a prefix of b."""
    rel = prefix_compare(a, b)
    if rel not in (PrefixRel.EQUAL, PrefixRel.A_PROPER):
        raise CompositionError(f"{a} is not a prefix of {b}")
    return b.drop(len(a))


def extensions(b: Path, count: int) -> list[Path]:
    """All paths extending b by exactly ``count`` edges at the source end.

    Nonempty for count >= 1 whenever every vertex along the way receives an
    edge (the no-sources hypothesis).
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    result = [b]
    graph = b.graph
    for _ in range(count):
        nxt = []
        for p in result:
            for e in graph.edges_into(p.source_vertex):
                nxt.append(concat(p, Path(graph, None, (e,))))
        result = nxt
    return result


class InfPath:
    """Right-infinite path; subclasses: PeriodicPath (exact), StreamPath (bounded)."""

    graph: Graph

    def letter(self, n: int) -> int:
        """1-indexed n-th edge."""
        raise NotImplementedError

    @property
    def depth_limit(self) -> int | None:
        """Largest queryable index, or None when unbounded."""
        raise NotImplementedError

    @property
    def range_vertex(self) -> int:
        return self.graph.range_of[self.letter(1)]

    def truncate(self, n: int) -> Path:
        """The finite prefix of length n (n = 0 gives the range vertex)."""
        if n < 0:
            raise ValueError("truncation length must be >= 0")
        if n == 0:
            return vertex_path(self.graph, self.range_vertex)
        return Path(self.graph, None, tuple(self.letter(i) for i in range(1, n + 1)))

    def drop(self, k: int) -> "InfPath":
        raise NotImplementedError

    def prepend(self, path: Path) -> "InfPath":
        raise NotImplementedError


@dataclass(frozen=True)
class PeriodicPath(InfPath):
    """Eventually periodic infinite path in normal form.

    Normal form (minimal prefix, primitive cycle) makes structural equality
    agree with equality of the underlying infinite words.
    """

    graph: Graph = field(repr=False)
    prefix_edges: tuple[int, ...]
    cycle_edges: tuple[int, ...]

    def letter(self, n: int) -> int:
        if n < 1:
            raise ValueError("letters are 1-indexed")
        return periodic.entry(self.prefix_edges, self.cycle_edges, n - 1)

    @property
    def depth_limit(self) -> int | None:
        return None

    def drop(self, k: int) -> "PeriodicPath":
        pre, cyc = periodic.drop(self.prefix_edges, self.cycle_edges, k)
        return PeriodicPath(self.graph, pre, cyc)

    def prepend(self, path: Path) -> "PeriodicPath":
        if path.source_vertex != self.range_vertex:
            raise CompositionError("cannot prepend: endpoints do not match")
        pre, cyc = periodic.normalize(path.edges + self.prefix_edges, self.cycle_edges)
        return PeriodicPath(self.graph, pre, cyc)

    def __str__(self) -> str:
        labels = self.graph.edge_labels
        head = ".".join(labels[e] for e in self.prefix_edges)
        body = ".".join(labels[e] for e in self.cycle_edges)
        return f"{head}({body})*"


def periodic_path(graph: Graph, prefix: Sequence[int] | Path, cycle: Sequence[int] | Path) -> PeriodicPath:
    """Validated, normalized eventually periodic path prefix.(cycle)*."""
    pre = tuple(prefix.edges) if isinstance(prefix, Path) else tuple(prefix)
    cyc = tuple(cycle.edges) if isinstance(cycle, Path) else tuple(cycle)
    if not cyc:
        raise ValueError("cycle must have length >= 1")
    cyc_path = edge_path(graph, cyc)
    if cyc_path.source_vertex != cyc_path.range_vertex:
        raise CompositionError("cycle does not close up")
    if pre:
        pre_path = edge_path(graph, pre)
        if pre_path.source_vertex != cyc_path.range_vertex:
            raise CompositionError("prefix does not meet the cycle")
    pre, cyc = periodic.normalize(pre, cyc)
    return PeriodicPath(graph, pre, cyc)


@dataclass(eq=False)
class StreamPath(InfPath):
    """Infinite path known only through a prefix query up to a declared depth."""

    graph: Graph
    fetch: Callable[[int], int]  # 1-indexed edge query
    max_depth: int

    def __post_init__(self):
        self._cache: dict[int, int] = {}

    def letter(self, n: int) -> int:
        if n < 1:
            raise ValueError("letters are 1-indexed")
        if n > self.max_depth:
            raise DepthExceededError(f"stream path only declared to depth {self.max_depth}")
        if n not in self._cache:
            self._cache[n] = self.fetch(n)
        return self._cache[n]

    @property
    def depth_limit(self) -> int | None:
        return self.max_depth

    def drop(self, k: int) -> "StreamPath":
        if k > self.max_depth:
            raise DepthExceededError("cannot drop beyond the declared depth")
        return StreamPath(self.graph, lambda n, k=k: self.letter(n + k), self.max_depth - k)

    def prepend(self, path: Path) -> "StreamPath":
        if path.source_vertex != self.range_vertex:
            raise CompositionError("cannot prepend: endpoints do not match")
        k = len(path)

        def fetched(n: int) -> int:
            return path.edges[n - 1] if n <= k else self.letter(n - k)

        return StreamPath(self.graph, fetched, self.max_depth + k)

    def __str__(self) -> str:
        shown = min(self.max_depth, 12)
        labels = self.graph.edge_labels
        head = ".".join(labels[self.letter(i)] for i in range(1, shown + 1))
        return f"{head}..[{self.max_depth}]"


def stream_path(graph: Graph, letters: Sequence[int]) -> StreamPath:
    """Stream path backed by a concrete list of known letters."""
    seq = tuple(letters)
    if not seq:
        raise ValueError("stream path needs at least one known letter")
    edge_path(graph, seq)  # validates composability
    return StreamPath(graph, lambda n: seq[n - 1], len(seq))


def inf_path_eq(a: InfPath, b: InfPath, depth: int) -> Tri:
    """Equality of infinite paths: exact for two periodic paths, else depth-bounded.

    A definite letter mismatch always decides distinctness; only the
    confirmation of equality is unavailable for streams.
    """
    if a.graph != b.graph:
        return DISTINCT
    if isinstance(a, PeriodicPath) and isinstance(b, PeriodicPath):
        return from_bool(a == b)
    horizon = depth
    for lim in (a.depth_limit, b.depth_limit):
        if lim is not None:
            horizon = min(horizon, lim)
    for n in range(1, horizon + 1):
        if a.letter(n) != b.letter(n):
            return DISTINCT
    return unknown(horizon)
