"""Self-similar actions on graphs: the triple (G, E, sigma, phi).

The triple packages a group action by graph automorphisms together with an
edge cocycle. The recursion extending both to finite paths, the induced
action on infinite paths, the cocycle sequence along an infinite path, and
the freeness sweeps all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .corona import BoundedSeq, CoronaSeq, PeriodicSeq
from .graph import (
    Graph,
    InfPath,
    Path,
    PeriodicPath,
    StreamPath,
    concat,
    stream_path,
    vertex_path,
)
from .groups import GroupBackend
from .tri import Tri
from . import periodic


class SelfSimilarTriple:
    """Action + cocycle data; all evaluation goes through the three callables.

    vertex_act(g, v) -> v', edge_act(g, e) -> e', cocycle(g, e) -> g'.
    Values are pure and may be memoized by the constructors.
    """

    def __init__(
        self,
        graph: Graph,
        group: GroupBackend,
        vertex_act: Callable,
        edge_act: Callable,
        cocycle: Callable,
        description: str = "triple",
    ):
        self.graph = graph
        self.group = group
        self._vertex_act = vertex_act
        self._edge_act = edge_act
        self._cocycle = cocycle
        self.description = description

    def act_vertex(self, g, v: int) -> int:
        return self._vertex_act(g, v)

    def act_edge(self, g, e: int) -> int:
        return self._edge_act(g, e)

    def edge_cocycle(self, g, e: int):
        return self._cocycle(g, e)

    def act_path(self, g, a: Path) -> tuple[Path, object]:
        """The pair (g.a, phi(g, a)) via the one-step recursion.

        On a vertex path the cocycle is g itself; on longer paths the group
        element mutates edge by edge as it passes through.
        """
        if a.graph != self.graph:
            raise ValueError("path does not belong to this triple's graph")
        self.group.check(g)
        if a.is_vertex:
            return vertex_path(self.graph, self.act_vertex(g, a.vertex)), g
        images = []
        state = g
        for e in a.edges:
            images.append(self.act_edge(state, e))
            state = self.edge_cocycle(state, e)
        return Path(self.graph, None, tuple(images)), state

    def __str__(self) -> str:
        return self.description


def act_and_cocycle(t: SelfSimilarTriple, g, a: Path) -> tuple[Path, object]:
    return t.act_path(g, a)


def act_infinite(t: SelfSimilarTriple, g, xi: InfPath, n: int) -> Path:
    """Length-n prefix of g.xi, computed as g acting on the length-n truncation."""
    return t.act_path(g, xi.truncate(n))[0]


def capital_phi(t: SelfSimilarTriple, g, xi: InfPath, n: int):
    """n-th cocycle value along xi: phi(g, xi|_(n-1)); n >= 1."""
    if n < 1:
        raise ValueError("cocycle sequence is 1-indexed")
    return t.act_path(g, xi.truncate(n - 1))[1]


def _orbit(t: SelfSimilarTriple, g, xi: InfPath, depth: int):
    """Walk the carry state along xi, detecting closure for periodic inputs.

    Returns ("periodic", images, carries, preperiod, period) when the state
    (carry value, phase in the cycle) recurs, else ("bounded", images,
    carries). carries[n] = phi(g, xi|_n), images[n-1] = (g.xi)_n.
    """
    images: list[int] = []
    carries = [g]
    if isinstance(xi, PeriodicPath):
        p, q = len(xi.prefix_edges), len(xi.cycle_edges)
        seen: dict = {}
        n = 0
        while n <= depth + p + q:
            if n >= p:
                key = (carries[-1], (n - p) % q)
                if key in seen:
                    return "periodic", images, carries, seen[key], n - seen[key]
                seen[key] = n
            letter = xi.letter(n + 1)
            images.append(t.act_edge(carries[-1], letter))
            carries.append(t.edge_cocycle(carries[-1], letter))
            n += 1
        return "bounded", images[:depth], carries[: depth + 1]
    horizon = min(depth, xi.depth_limit)
    for n in range(horizon):
        letter = xi.letter(n + 1)
        images.append(t.act_edge(carries[-1], letter))
        carries.append(t.edge_cocycle(carries[-1], letter))
    return "bounded", images, carries


def act_inf_path(t: SelfSimilarTriple, g, xi: InfPath, depth: int = 64) -> InfPath:
    """The infinite path g.xi; eventually periodic when the carry orbit closes."""
    t.group.check(g)
    outcome = _orbit(t, g, xi, depth)
    if outcome[0] == "periodic":
        _, images, _, start, period = outcome
        pre, cyc = periodic.normalize(tuple(images[:start]), tuple(images[start : start + period]))
        return PeriodicPath(t.graph, pre, cyc)
    _, images, _ = outcome
    return stream_path(t.graph, images)


def phi_corona(t: SelfSimilarTriple, g, xi: InfPath, depth: int = 64) -> CoronaSeq:
    """The cocycle sequence Phi(g, xi) as a corona representative.

    Eventually periodic whenever the carry orbit closes within the depth
    bound; otherwise a bounded stream, and downstream equality answers
    degrade to unknown rather than being silently wrong.
    """
    t.group.check(g)
    outcome = _orbit(t, g, xi, depth)
    if outcome[0] == "periodic":
        _, _, carries, start, period = outcome
        # Phi_n = carries[n-1]: shift the detected closure by one index.
        return PeriodicSeq.make(t.group, tuple(carries[:start]), tuple(carries[start : start + period]))
    _, _, carries = outcome
    return BoundedSeq(t.group, tuple(carries[:-1]) if len(carries) > 1 else (g,))


@dataclass(frozen=True)
class Violation:
    law: str
    detail: str


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...]
    undecided: tuple[Violation, ...]
    checked_pairs: int

    @property
    def ok(self) -> bool:
        return not self.violations and not self.undecided


def _check_window(t: SelfSimilarTriple, window: Sequence) -> list:
    window = list(window)
    if not window:
        raise ValueError("window must not be empty")
    group = t.group
    if not any(group.eq(g, group.identity()).is_equal for g in window):
        raise ValueError("window must contain the identity")
    for g in window:
        ginv = group.inv(g)
        if not any(group.eq(ginv, h).is_equal for h in window):
            raise ValueError("window must be closed under inverses")
    return window


def verify_axioms(t: SelfSimilarTriple, window: Iterable) -> AxiomReport:
    """Check the automorphism and cocycle axioms over a finite window.

    Laws: sigma_g bijective on vertices and edges, r/d equivariance,
    sigma_(gh) = sigma_g sigma_h, the cocycle identity, phi(1, e) = 1, and
    sigma_phi(g,e) = sigma_g on vertices.
    """
    window = _check_window(t, window)
    graph, group = t.graph, t.group
    bad: list[Violation] = []
    open_: list[Violation] = []

    def record(tri: Tri, law: str, detail: str):
        if tri.is_distinct:
            bad.append(Violation(law, detail))
        elif tri.is_unknown:
            open_.append(Violation(law, detail))

    ident = group.identity()
    for e in graph.edges():
        record(
            group.is_identity(t.edge_cocycle(ident, e)),
            "cocycle-at-one",
            f"phi(1, {graph.edge_labels[e]}) != 1",
        )

    for g in window:
        gname = group.render(g)
        v_img = [t.act_vertex(g, v) for v in graph.vertices()]
        if sorted(v_img) != list(graph.vertices()):
            bad.append(Violation("vertex-bijection", f"sigma_{gname} is not a vertex bijection"))
        e_img = [t.act_edge(g, e) for e in graph.edges()]
        if sorted(e_img) != list(graph.edges()):
            bad.append(Violation("edge-bijection", f"sigma_{gname} is not an edge bijection"))
        for e in graph.edges():
            ename = graph.edge_labels[e]
            if graph.range_of[t.act_edge(g, e)] != t.act_vertex(g, graph.range_of[e]):
                bad.append(Violation("range-equivariance", f"r(sigma_{gname}({ename}))"))
            if graph.source_of[t.act_edge(g, e)] != t.act_vertex(g, graph.source_of[e]):
                bad.append(Violation("source-equivariance", f"d(sigma_{gname}({ename}))"))
            for v in graph.vertices():
                if t.act_vertex(t.edge_cocycle(g, e), v) != t.act_vertex(g, v):
                    bad.append(
                        Violation(
                            "cocycle-on-vertices",
                            f"sigma_phi({gname},{ename}) != sigma_{gname} at {graph.vertex_labels[v]}",
                        )
                    )

    pairs = 0
    for g in window:
        for h in window:
            pairs += 1
            gh = group.mul(g, h)
            detail = f"(g={group.render(g)}, h={group.render(h)})"
            for v in graph.vertices():
                if t.act_vertex(gh, v) != t.act_vertex(g, t.act_vertex(h, v)):
                    bad.append(Violation("action-hom-vertices", f"{detail} at {graph.vertex_labels[v]}"))
            for e in graph.edges():
                if t.act_edge(gh, e) != t.act_edge(g, t.act_edge(h, e)):
                    bad.append(Violation("action-hom-edges", f"{detail} at {graph.edge_labels[e]}"))
                lhs = t.edge_cocycle(gh, e)
                rhs = group.mul(t.edge_cocycle(g, t.act_edge(h, e)), t.edge_cocycle(h, e))
                record(group.eq(lhs, rhs), "cocycle-identity", f"{detail} at {graph.edge_labels[e]}")
    return AxiomReport(tuple(bad), tuple(open_), pairs)


def inverse_cocycle_check(t: SelfSimilarTriple, g, a: Path) -> Tri:
    """phi(g^-1, a) == phi(g, g^-1 a)^-1."""
    group = t.group
    ginv = group.inv(g)
    lhs = t.act_path(ginv, a)[1]
    rhs = group.inv(t.act_path(g, t.act_path(ginv, a)[0])[1])
    return group.eq(lhs, rhs)


@dataclass(frozen=True)
class FreenessReport:
    """Outcome of the freeness sweep over a window of group elements.

    kind is "holds" (finite group fully swept, nothing found),
    "counterexample" (some g != 1 fixes an edge with trivial cocycle), or
    "unknown" (nothing found within the window, but the window is not all
    of the group or some comparison stayed undecided).
    """

    kind: str
    counterexample: tuple | None  # (g, edge id)
    consistency_failures: tuple[str, ...]
    undecided: tuple[str, ...]
    window_size: int

    @property
    def found_counterexample(self) -> bool:
        return self.kind == "counterexample"


def all_paths_upto(graph: Graph, max_len: int) -> list[Path]:
    """Every path of length <= max_len, vertex paths first, deterministic order."""
    result: list[Path] = [vertex_path(graph, v) for v in graph.vertices()]
    layer = list(result)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for e in graph.edges_into(p.source_vertex):
                nxt.append(concat(p, Path(graph, None, (e,))))
        result.extend(nxt)
        layer = nxt
    return result


def check_residually_free(
    t: SelfSimilarTriple, window: Iterable, path_bound: int = 4
) -> FreenessReport:
    """Sweep for g != 1 fixing an edge with trivial cocycle.

    Also sweeps the path-level variant and the two-element rigidity property
    over paths of length <= path_bound. A hit there while the edge sweep is
    clean is reported as a consistency failure: for a fully swept finite
    group it contradicts the reduction of path fixing to edge fixing, and for
    an infinite group it indicates an edge counterexample outside the window.
    """
    window = _check_window(t, window)
    group = t.group
    graph = t.graph
    nontrivial = [g for g in window if not group.is_identity(g).is_equal]
    undecided: list[str] = []
    counterexample = None

    for g in nontrivial:
        g_is_id = group.is_identity(g)
        for e in graph.edges():
            if t.act_edge(g, e) != e:
                continue
            coc_trivial = group.is_identity(t.edge_cocycle(g, e))
            # A definite counterexample needs: g definitely != 1 and the
            # cocycle definitely trivial.
            if g_is_id.is_distinct and coc_trivial.is_equal:
                counterexample = (g, e)
                break
            if coc_trivial.is_unknown or g_is_id.is_unknown:
                undecided.append(
                    f"(g={group.render(g)}, e={graph.edge_labels[e]}) undecided at depth"
                )
        if counterexample:
            break

    failures: list[str] = []
    if counterexample is None:
        paths = all_paths_upto(graph, path_bound)
        for g in nontrivial:
            if not group.is_identity(g).is_distinct:
                continue
            for a in paths:
                img, coc = t.act_path(g, a)
                if img == a and group.is_identity(coc).is_equal:
                    failures.append(
                        f"path-freeness: g={group.render(g)} fixes {a} with trivial cocycle"
                    )
        for g1 in window:
            for g2 in window:
                if group.eq(g1, g2).is_equal:
                    continue
                if not group.eq(g1, g2).is_distinct:
                    continue
                for a in paths:
                    i1, c1 = t.act_path(g1, a)
                    i2, c2 = t.act_path(g2, a)
                    if i1 == i2 and group.eq(c1, c2).is_equal:
                        failures.append(
                            f"rigidity: g1={group.render(g1)}, g2={group.render(g2)} agree on {a}"
                        )

    if counterexample is not None:
        kind = "counterexample"
    elif group.is_finite and len(window) >= len(list(group.elements())) and not undecided:
        kind = "holds"
    else:
        kind = "unknown"
    return FreenessReport(kind, counterexample, tuple(sorted(set(failures))), tuple(undecided), len(window))
