"""Builders for the two standard families of self-similar graph actions.

The two-matrix construction takes nonnegative A (no zero rows) and integer B
with B vanishing wherever A does; the integers then act on the graph with
adjacency matrix A by adding m*B[i][j] to the edge counter modulo A[i][j],
the cocycle being the Euclidean quotient. Automaton data gives the classic
single-vertex picture where generators permute letters and restrict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .action import SelfSimilarTriple
from .errors import InvalidMatricesError
from .graph import Graph, make_graph
from .groups import AutomatonGroup, FiniteGroup, IntegerGroup


@dataclass(frozen=True)
class KatsuraData:
    a: tuple[tuple[int, ...], ...]
    b: tuple[tuple[int, ...], ...]

    @staticmethod
    def make(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> "KatsuraData":
        return KatsuraData(tuple(tuple(row) for row in a), tuple(tuple(row) for row in b))

    @property
    def size(self) -> int:
        return len(self.a)

    def validate(self):
        n = self.size
        if n == 0 or len(self.b) != n or any(len(r) != n for r in self.a) or any(len(r) != n for r in self.b):
            raise InvalidMatricesError("matrices must be square and of equal size")
        for i, row in enumerate(self.a):
            if any(x < 0 for x in row):
                raise InvalidMatricesError(f"A row {i + 1} has a negative entry")
            if all(x == 0 for x in row):
                raise InvalidMatricesError(f"A row {i + 1} is zero")
            for j, x in enumerate(row):
                if x == 0 and self.b[i][j] != 0:
                    raise InvalidMatricesError(
                        f"A[{i + 1}][{j + 1}] = 0 forces B[{i + 1}][{j + 1}] = 0"
                    )


@dataclass(frozen=True)
class AutomatonData:
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    output: tuple[tuple[int, ...], ...]        # state -> letter -> letter
    restriction: tuple[tuple[tuple[int, ...], ...], ...]  # state -> letter -> word

    @staticmethod
    def make(alphabet, states, output, restriction) -> "AutomatonData":
        return AutomatonData(
            tuple(alphabet),
            tuple(states),
            tuple(tuple(row) for row in output),
            tuple(tuple(tuple(w) for w in row) for row in restriction),
        )


def katsura_graph(data: KatsuraData) -> Graph:
    """Vertices 1..N; A[i][j] edges with range i and source j, labeled (i,j,n)."""
    n = data.size
    vertices = [str(i + 1) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            for c in range(data.a[i][j]):
                edges.append((f"({i + 1},{j + 1},{c})", str(i + 1), str(j + 1)))
    return make_graph(vertices, edges)


def from_katsura(data: KatsuraData) -> SelfSimilarTriple:
    """Integer action on the two-matrix graph, by the closed division formula.

    For edge (i,j,n): m*B[i][j] + n = k*A[i][j] + n' with 0 <= n' < A[i][j];
    floored division keeps the remainder in range for negative m as well.
    """
    data.validate()
    graph = katsura_graph(data)
    coords = []
    for i in range(data.size):
        for j in range(data.size):
            for c in range(data.a[i][j]):
                coords.append((i, j, c))
    index = {t: e for e, t in enumerate(coords)}

    def edge_act(m: int, e: int) -> int:
        i, j, c = coords[e]
        _, rem = divmod(m * data.b[i][j] + c, data.a[i][j])
        return index[(i, j, rem)]

    def cocycle(m: int, e: int) -> int:
        i, j, c = coords[e]
        quot, _ = divmod(m * data.b[i][j] + c, data.a[i][j])
        return quot

    return SelfSimilarTriple(
        graph,
        IntegerGroup(),
        vertex_act=lambda m, v: v,
        edge_act=edge_act,
        cocycle=cocycle,
        description=f"katsura A={list(map(list, data.a))} B={list(map(list, data.b))}",
    )


def integer_triple_from_generator(
    graph: Graph,
    vertex_perm: Sequence[int],
    edge_perm: Sequence[int],
    cocycle_row: Sequence[int],
    description: str = "integer triple",
) -> SelfSimilarTriple:
    """Integer-backend triple from the generator's tables, extended by iteration.

    sigma_m is the m-th power of the generator permutation; the cocycle
    extends by phi(m, e) = phi(1, sigma_(m-1) e) + phi(m-1, e) and by the
    inverse identity phi(-m, e) = -phi(m, sigma_(-m) e).
    """
    vperm = tuple(vertex_perm)
    eperm = tuple(edge_perm)
    row = tuple(cocycle_row)
    n_e = graph.n_edges
    inv_eperm = [0] * n_e
    for x, y in enumerate(eperm):
        inv_eperm[y] = x
    inv_vperm = [0] * graph.n_vertices
    for x, y in enumerate(vperm):
        inv_vperm[y] = x

    edge_pow: dict[int, tuple[int, ...]] = {0: tuple(range(n_e)), 1: eperm}
    vert_pow: dict[int, tuple[int, ...]] = {0: tuple(range(graph.n_vertices)), 1: vperm}
    coc: dict[tuple[int, int], int] = {}

    def epow(m: int) -> tuple[int, ...]:
        if m not in edge_pow:
            if m > 0:
                prev = epow(m - 1)
                edge_pow[m] = tuple(eperm[prev[e]] for e in range(n_e))
            else:
                prev = epow(m + 1)
                edge_pow[m] = tuple(inv_eperm[prev[e]] for e in range(n_e))
        return edge_pow[m]

    def vpow(m: int) -> tuple[int, ...]:
        if m not in vert_pow:
            if m > 0:
                prev = vpow(m - 1)
                vert_pow[m] = tuple(vperm[prev[v]] for v in range(graph.n_vertices))
            else:
                prev = vpow(m + 1)
                vert_pow[m] = tuple(inv_vperm[prev[v]] for v in range(graph.n_vertices))
        return vert_pow[m]

    def cocycle(m: int, e: int) -> int:
        if m == 0:
            return 0
        key = (m, e)
        if key not in coc:
            if m > 0:
                coc[key] = row[epow(m - 1)[e]] + cocycle(m - 1, e)
            else:
                coc[key] = -cocycle(-m, epow(m)[e])
        return coc[key]

    return SelfSimilarTriple(
        graph,
        IntegerGroup(),
        vertex_act=lambda m, v: vpow(m)[v],
        edge_act=lambda m, e: epow(m)[e],
        cocycle=cocycle,
        description=description,
    )


def from_automaton(data: AutomatonData, faithful_to_depth: bool = False) -> SelfSimilarTriple:
    """Single-vertex triple whose group is the automaton group of the data."""
    group = AutomatonGroup(
        data.states,
        len(data.alphabet),
        data.output,
        data.restriction,
        faithful_to_depth=faithful_to_depth,
    )
    graph = make_graph(["v"], [(lab, "v", "v") for lab in data.alphabet])
    return SelfSimilarTriple(
        graph,
        group,
        vertex_act=lambda g, v: v,
        edge_act=lambda g, e: group.step(g, e)[0],
        cocycle=lambda g, e: group.step(g, e)[1],
        description=f"automaton on {len(data.alphabet)} letters",
    )


def finite_triple(
    graph: Graph,
    group: FiniteGroup,
    vertex_table: Sequence[Sequence[int]],
    edge_table: Sequence[Sequence[int]],
    cocycle_table: Sequence[Sequence[int]],
    description: str = "finite triple",
) -> SelfSimilarTriple:
    """Triple over a finite group given by full (element x vertex/edge) tables."""
    vt = tuple(tuple(r) for r in vertex_table)
    et = tuple(tuple(r) for r in edge_table)
    ct = tuple(tuple(r) for r in cocycle_table)
    return SelfSimilarTriple(
        graph,
        group,
        vertex_act=lambda g, v: vt[g][v],
        edge_act=lambda g, e: et[g][e],
        cocycle=lambda g, e: ct[g][e],
        description=description,
    )


# -- builtin examples --------------------------------------------------------


def odometer() -> SelfSimilarTriple:
    """Binary odometer: one vertex, two loops, integers adding with carry."""
    return from_katsura(KatsuraData.make([[2]], [[1]]))


def katsura_3_2() -> SelfSimilarTriple:
    return from_katsura(KatsuraData.make([[3]], [[2]]))


def katsura_2_0() -> SelfSimilarTriple:
    """Degenerate pair: the action and cocycle are trivial, freeness fails."""
    return from_katsura(KatsuraData.make([[2]], [[0]]))


def z2_swap() -> SelfSimilarTriple:
    """Z/2 swapping two parallel loops with trivial cocycle."""
    graph = make_graph(["v"], [("e0", "v", "v"), ("e1", "v", "v")])
    group = FiniteGroup(["0", "1"], [[0, 1], [1, 0]])
    return finite_triple(
        graph,
        group,
        vertex_table=[[0], [0]],
        edge_table=[[0, 1], [1, 0]],
        cocycle_table=[[0, 0], [0, 0]],
        description="z2 edge swap",
    )


def adding_machine() -> SelfSimilarTriple:
    """Binary adding machine automaton: a(0) = 1, a(1) = 0 with restriction a."""
    data = AutomatonData.make(
        alphabet=["0", "1"],
        states=["a"],
        output=[[1, 0]],
        restriction=[[(), (1,)]],
    )
    return from_automaton(data, faithful_to_depth=True)
