"""The inverse semigroup of triples (alpha, g, beta) with d(alpha) = g d(beta).

Multiplication follows the two-case prefix split, with zero absorbing;
the adjoint swaps the paths and inverts the group element. Idempotents are
the elements (alpha, 1, alpha); their order reverses the prefix order on
paths, and two idempotents either intersect comparably or are orthogonal,
which is what makes the finite cover check below complete.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .action import SelfSimilarTriple, all_paths_upto
from .errors import NotIdempotentError, SourceConditionError
from .graph import Path, PrefixRel, complement, concat, extensions, prefix_compare
from .tri import Tri, DISTINCT, from_bool


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "0"


ZERO = Zero()


@dataclass(frozen=True)
class Triple:
    alpha: Path
    g: object
    beta: Path


SemigroupElement = Triple | Zero


def make_triple(t: SelfSimilarTriple, alpha: Path, g, beta: Path) -> Triple:
    """Validated triple; raises unless d(alpha) = g d(beta)."""
    t.group.check(g)
    if alpha.graph != t.graph or beta.graph != t.graph:
        raise SourceConditionError("paths do not belong to the triple's graph")
    if alpha.source_vertex != t.act_vertex(g, beta.source_vertex):
        raise SourceConditionError(
            f"d({alpha}) != g d({beta}) for g = {t.group.render(g)}"
        )
    return Triple(alpha, g, beta)


def unit_idempotent(t: SelfSimilarTriple, alpha: Path) -> Triple:
    """The idempotent e_alpha = (alpha, 1, alpha)."""
    return make_triple(t, alpha, t.group.identity(), alpha)


def star(t: SelfSimilarTriple, s: SemigroupElement) -> SemigroupElement:
    if isinstance(s, Zero):
        return ZERO
    return Triple(s.beta, t.group.inv(s.g), s.alpha)


def mul(t: SelfSimilarTriple, s: SemigroupElement, u: SemigroupElement) -> SemigroupElement:
    """Product of semigroup elements; zero absorbs.

    With s = (alpha, g, beta) and u = (gamma, h, delta): when gamma = beta.eps
    the product is (alpha.(g eps), phi(g, eps) h, delta); when beta = gamma.eps
    it is the adjoint mirror of that case; otherwise zero.
    """
    if isinstance(s, Zero) or isinstance(u, Zero):
        return ZERO
    rel = prefix_compare(s.beta, u.alpha)
    if rel == PrefixRel.INCOMPARABLE:
        return ZERO
    if rel in (PrefixRel.EQUAL, PrefixRel.A_PROPER):
        eps = complement(s.beta, u.alpha)
        img, coc = t.act_path(s.g, eps)
        return Triple(concat(s.alpha, img), t.group.mul(coc, u.g), u.beta)
    # beta = gamma.eps: star of the first case applied to the starred operands.
    return star(t, mul(t, star(t, u), star(t, s)))


def element_eq(t: SelfSimilarTriple, s: SemigroupElement, u: SemigroupElement, depth: int | None = None) -> Tri:
    """Equality of semigroup elements; tri-state via the group backend."""
    if isinstance(s, Zero) or isinstance(u, Zero):
        return from_bool(isinstance(s, Zero) and isinstance(u, Zero))
    if s.alpha != u.alpha or s.beta != u.beta:
        return DISTINCT
    return t.group.eq(s.g, u.g, depth)


def is_idempotent(t: SelfSimilarTriple, s: SemigroupElement) -> bool:
    """Exact-form test: zero, or (alpha, 1, alpha) with the literal identity."""
    if isinstance(s, Zero):
        return True
    return s.alpha == s.beta and t.group.eq(s.g, t.group.identity()).is_equal


def render(t: SelfSimilarTriple, s: SemigroupElement) -> str:
    if isinstance(s, Zero):
        return "0"
    return f"({s.alpha}, {t.group.render(s.g)}, {s.beta})"


class IdempotentOrder(enum.Enum):
    EQUAL = "equal"
    LEQ = "leq"
    GEQ = "geq"
    ORTHOGONAL = "orthogonal"


def idempotent_order(t: SelfSimilarTriple, e: SemigroupElement, f: SemigroupElement) -> IdempotentOrder:
    """Order relation between idempotents: e <= f iff f's path is a prefix of e's.

    Intersecting idempotents are always comparable, so the answer is one of
    equal / below / above / orthogonal; zero sits below everything.
    """
    for x in (e, f):
        if not is_idempotent(t, x):
            raise NotIdempotentError(f"{render(t, x)} is not an idempotent")
    if isinstance(e, Zero) and isinstance(f, Zero):
        return IdempotentOrder.EQUAL
    if isinstance(e, Zero):
        return IdempotentOrder.LEQ
    if isinstance(f, Zero):
        return IdempotentOrder.GEQ
    rel = prefix_compare(e.alpha, f.alpha)
    if rel == PrefixRel.EQUAL:
        return IdempotentOrder.EQUAL
    if rel == PrefixRel.B_PROPER:  # f's path is a prefix of e's path
        return IdempotentOrder.LEQ
    if rel == PrefixRel.A_PROPER:
        return IdempotentOrder.GEQ
    return IdempotentOrder.ORTHOGONAL


def is_cover(t: SelfSimilarTriple, members: Iterable[SemigroupElement], target: SemigroupElement) -> bool:
    """Does the family cover the idempotent target?

    A cover means every nonzero idempotent below the target intersects some
    member. Since intersecting idempotents are comparable, it suffices that
    every extension of the target's path by L = max relative length carries
    some member's path as a prefix; members not below the target are
    discarded unless they dominate it outright.
    """
    if not is_idempotent(t, target) or isinstance(target, Zero):
        raise NotIdempotentError("cover target must be a nonzero idempotent")
    beta = target.alpha
    relative: list[Path] = []
    for m in members:
        if not is_idempotent(t, m):
            raise NotIdempotentError(f"{render(t, m)} is not an idempotent")
        if isinstance(m, Zero):
            continue
        rel = prefix_compare(beta, m.alpha)
        if rel in (PrefixRel.EQUAL, PrefixRel.B_PROPER):
            # Member at or above the target: covers it outright.
            return True
        if rel == PrefixRel.A_PROPER:
            relative.append(m.alpha)
    if not relative:
        return False
    horizon = max(len(p) for p in relative) - len(beta)
    for delta in extensions(beta, horizon):
        if not any(
            prefix_compare(p, delta) in (PrefixRel.EQUAL, PrefixRel.A_PROPER) for p in relative
        ):
            return False
    return True


def cover_oracle(
    t: SelfSimilarTriple, members: Sequence[SemigroupElement], target: SemigroupElement, slack: int = 2
) -> bool:
    """Brute-force cover definition, for cross-checking is_cover.

    Enumerates every nonzero idempotent below the target out to the members'
    depth plus slack and tests intersection by multiplying.
    """
    beta = target.alpha
    lengths = [len(m.alpha) for m in members if not isinstance(m, Zero)]
    horizon = (max(lengths) - len(beta) if lengths else 0) + slack
    for k in range(horizon + 1):
        for delta in extensions(beta, k):
            e_delta = unit_idempotent(t, delta)
            if not any(
                not isinstance(mul(t, e_delta, m), Zero) for m in members if not isinstance(m, Zero)
            ):
                return False
    return True


@dataclass(frozen=True)
class UnitaryReport:
    kind: str  # "holds" | "counterexample" | "unknown"
    counterexample: tuple | None  # (element, idempotent)
    window_size: int


def check_e_star_unitary(
    t: SelfSimilarTriple, window: Iterable, path_bound: int = 4
) -> UnitaryReport:
    """Search for a non-idempotent element dominating a nonzero idempotent.

    Sweeps s = (alpha, g, beta) with g in the window and paths of length <=
    path_bound against idempotents e of the same depth, looking for s e = e
    with s not idempotent. The verdict mirrors the freeness sweep: "holds"
    only for a fully swept finite group.
    """
    window = list(window)
    group = t.group
    paths = all_paths_upto(t.graph, path_bound)
    undecided = False
    for g in window:
        for beta in paths:
            alpha_source = t.act_vertex(g, beta.source_vertex)
            for alpha in paths:
                if alpha.source_vertex != alpha_source:
                    continue
                s = Triple(alpha, g, beta)
                if is_idempotent(t, s):
                    continue
                if alpha == beta and group.is_identity(g).is_unknown:
                    undecided = True
                    continue
                for gamma in paths:
                    e = unit_idempotent(t, gamma)
                    prod = mul(t, s, e)
                    verdict = element_eq(t, prod, e)
                    if verdict.is_equal:
                        return UnitaryReport("counterexample", (s, e), len(window))
                    if verdict.is_unknown:
                        undecided = True
    if group.is_finite and len(window) >= len(list(group.elements())) and not undecided:
        return UnitaryReport("holds", None, len(window))
    return UnitaryReport("unknown", None, len(window))
