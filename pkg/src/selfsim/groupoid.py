"""Groupoid of germs over infinite paths, with the corona-valued lag.

A germ [alpha, g, beta; xi] is the equivalence class of the semigroup
element (alpha, g, beta) acting at the point beta.xi of path space. Germ
operations are gathered in a context object that first verifies freeness of
the underlying triple over a window, since the equality criterion and the
lag are only valid under that hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .action import (
    FreenessReport,
    SelfSimilarTriple,
    act_inf_path,
    check_residually_free,
    phi_corona,
)
from .corona import (
    CoronaSeq,
    LagValue,
    PeriodicSeq,
    shift_right,
)
from .errors import (
    DepthExceededError,
    EmptySetError,
    FreenessNotVerifiedError,
    NotComposableError,
    SourceConditionError,
    UndecidedError,
)
from .graph import (
    InfPath,
    Path,
    PeriodicPath,
    PrefixRel,
    complement,
    concat,
    inf_path_eq,
    prefix_compare,
)
from .groups import default_window
from .tri import Tri, DISTINCT, EQUAL, all_of, unknown


@dataclass(eq=False)
class Germ:
    """[alpha, g, beta; xi]: source point beta.xi, range point alpha.(g xi)."""

    alpha: Path
    g: object
    beta: Path
    xi: InfPath


@dataclass(frozen=True)
class HausdorffReport:
    kind: str  # "hausdorff" | "not-implied"
    freeness: FreenessReport


def hausdorff_report(t: SelfSimilarTriple, window) -> HausdorffReport:
    """Freeness implies a Hausdorff germ groupoid; the converse is not claimed."""
    fr = check_residually_free(t, window)
    if fr.found_counterexample:
        return HausdorffReport("not-implied", fr)
    return HausdorffReport("hausdorff", fr)


class GermContext:
    """Germ operations over one triple, gated on a freeness sweep.

    Construction runs the freeness check over the window and refuses to
    proceed past a known counterexample unless explicitly overridden.
    """

    def __init__(
        self,
        triple: SelfSimilarTriple,
        window=None,
        depth: int = 64,
        allow_unverified: bool = False,
        window_radius: int = 4,
    ):
        self.triple = triple
        if window is None:
            window = default_window(triple.group, window_radius)
        self.window = list(window)
        self.depth = depth
        self.freeness = check_residually_free(triple, self.window)
        if self.freeness.found_counterexample and not allow_unverified:
            g, e = self.freeness.counterexample
            raise FreenessNotVerifiedError(
                f"freeness counterexample (g={triple.group.render(g)},"
                f" e={triple.graph.edge_labels[e]}); pass allow_unverified to proceed"
            )

    # -- construction ------------------------------------------------------

    def make(self, alpha: Path, g, beta: Path, xi: InfPath) -> Germ:
        t = self.triple
        t.group.check(g)
        if alpha.source_vertex != t.act_vertex(g, beta.source_vertex):
            raise SourceConditionError("d(alpha) != g d(beta)")
        if beta.source_vertex != xi.range_vertex:
            raise SourceConditionError("d(beta) != r(xi): point is not in the cylinder of beta")
        return Germ(alpha, g, beta, xi)

    def unit(self, beta: Path, xi: InfPath) -> Germ:
        return self.make(beta, self.triple.group.identity(), beta, xi)

    def render(self, u: Germ) -> str:
        return f"[{u.alpha}, {self.triple.group.render(u.g)}, {u.beta}; {u.xi}]"

    # -- source and range --------------------------------------------------

    def source_point(self, u: Germ) -> InfPath:
        return u.xi.prepend(u.beta)

    def range_point(self, u: Germ, depth: int | None = None) -> InfPath:
        gxi = act_inf_path(self.triple, u.g, u.xi, depth or self.depth)
        return gxi.prepend(u.alpha)

    def source_prefix(self, u: Germ, n: int) -> Path:
        return self.source_point(u).truncate(n)

    def range_prefix(self, u: Germ, n: int) -> Path:
        """Length-n prefix of alpha.(g xi), computed through the path action."""
        k = max(n - len(u.alpha), 0)
        g_img = self.triple.act_path(u.g, u.xi.truncate(k))[0]
        return concat(u.alpha, g_img).prefix(n)

    # -- equality and representatives --------------------------------------

    def germ_eq(self, u1: Germ, u2: Germ, depth: int | None = None) -> Tri:
        """Germ equality via the finite-path criterion, oriented by |beta|."""
        depth = depth or self.depth
        if len(u1.beta) > len(u2.beta):
            u1, u2 = u2, u1
        rel = prefix_compare(u1.beta, u2.beta)
        if rel not in (PrefixRel.EQUAL, PrefixRel.A_PROPER):
            return DISTINCT
        gamma = complement(u1.beta, u2.beta)
        tails = inf_path_eq(u1.xi, u2.xi.prepend(gamma), depth)
        if tails.is_distinct:
            return DISTINCT
        img, coc = self.triple.act_path(u1.g, gamma)
        if u2.alpha != concat(u1.alpha, img):
            return DISTINCT
        return all_of(tails, self.triple.group.eq(u2.g, coc, depth))

    def reparametrize(self, u: Germ, n: int, side: str = "beta") -> Germ:
        """Equal germ whose alpha (or beta) component has length n >= current.

        Absorbs a prefix of xi: [a, g, b; gxi] = [a.(g gamma), phi(g, gamma),
        b.gamma; xi'] for gamma the absorbed prefix.
        """
        if side not in ("alpha", "beta"):
            raise ValueError("side must be 'alpha' or 'beta'")
        current = len(u.alpha) if side == "alpha" else len(u.beta)
        k = n - current
        if k < 0:
            raise ValueError(f"cannot shorten {side} from {current} to {n}")
        if k == 0:
            return u
        gamma = u.xi.truncate(k)
        img, coc = self.triple.act_path(u.g, gamma)
        return Germ(concat(u.alpha, img), coc, concat(u.beta, gamma), u.xi.drop(k))

    # -- groupoid structure --------------------------------------------------

    def compose(self, u1: Germ, u2: Germ, depth: int | None = None) -> Germ:
        """Product u1 u2, defined when source(u1) = range(u2).

        Reparametrizes so the middle paths align; raises when the sources
        provably diverge, and refuses (rather than guessing) when the tails
        cannot be decided at this depth.
        """
        depth = depth or self.depth
        n = max(len(u1.beta), len(u2.alpha))
        r1 = self.reparametrize(u1, n, "beta")
        r2 = self.reparametrize(u2, n, "alpha")
        if r1.beta != r2.alpha:
            raise NotComposableError("source and range prefixes diverge")
        tails = inf_path_eq(r1.xi, act_inf_path(self.triple, r2.g, r2.xi, depth), depth)
        if tails.is_distinct:
            raise NotComposableError("source and range tails diverge")
        if tails.is_unknown:
            raise UndecidedError(f"composability undecided at depth {depth}")
        return Germ(r1.alpha, self.triple.group.mul(r1.g, r2.g), r2.beta, r2.xi)

    def inverse(self, u: Germ, depth: int | None = None) -> Germ:
        gxi = act_inf_path(self.triple, u.g, u.xi, depth or self.depth)
        return Germ(u.beta, self.triple.group.inv(u.g), u.alpha, gxi)

    # -- lag and the concrete model ----------------------------------------

    def lag(self, u: Germ, depth: int | None = None) -> LagValue:
        """(right-shift^|alpha| of the cocycle sequence class, |alpha| - |beta|)."""
        depth = depth or self.depth
        seq = phi_corona(self.triple, u.g, u.xi, depth)
        return LagValue(shift_right(seq, len(u.alpha)), len(u.alpha) - len(u.beta))

    def f_map(self, u: Germ, depth: int | None = None) -> tuple[InfPath, LagValue, InfPath]:
        """(range point, lag, source point): injective on germs."""
        depth = depth or self.depth
        return (self.range_point(u, depth), self.lag(u, depth), self.source_point(u))

    def model_check(
        self,
        eta: InfPath,
        gseq: CoronaSeq,
        k: int,
        zeta: InfPath,
        depth: int | None = None,
        split: tuple[int, int] | None = None,
    ) -> Tri:
        """Membership test for the concrete groupoid model.

        Verifies, for a witness split k = p - q (supplied, or searched), that
        for all n >= 1 the carry recursion g_(n+p+1) = phi(g_(n+p), zeta_(n+q))
        and the letter law eta_(n+p) = g_(n+p) zeta_(n+q) hold. Fully decided
        when all three sequences are eventually periodic.
        """
        depth = depth or self.depth
        if split is not None:
            p, q = split
            if p < 0 or q < 0 or p - q != k:
                raise ValueError("split must be nonnegative with p - q = k")
            return _model_conditions(self.triple, eta, gseq, p, q, zeta, depth)
        all_periodic = (
            isinstance(eta, PeriodicPath)
            and isinstance(zeta, PeriodicPath)
            and isinstance(gseq, PeriodicSeq)
        )
        p_lo = max(k, 0)
        p_hi = depth
        if all_periodic:
            # Past every preperiod the conditions are periodic in n, so a
            # clean failure out there recurs for every larger split.
            period = lcm(len(eta.cycle_edges), len(zeta.cycle_edges), len(gseq.cycle))
            p_hi = max(
                p_hi,
                len(eta.prefix_edges) + len(zeta.prefix_edges) + len(gseq.prefix) + period + abs(k) + 1,
            )
        saw_unknown = False
        for p in range(p_lo, p_hi + 1):
            verdict = _model_conditions(self.triple, eta, gseq, p, p - k, zeta, depth)
            if verdict.is_equal:
                return EQUAL
            if verdict.is_unknown:
                saw_unknown = True
        if saw_unknown or not all_periodic:
            return unknown(depth)
        return DISTINCT

    def model_to_germ(
        self, eta: InfPath, gseq: CoronaSeq, k: int, zeta: InfPath, split: tuple[int, int]
    ) -> Germ:
        """Proof-recipe pullback: g = g_(p+1), alpha = eta|_p, beta = zeta|_q."""
        p, q = split
        g = gseq.entry(p + 1)
        alpha = eta.truncate(p)
        beta = zeta.truncate(q)
        return self.make(alpha, g, beta, zeta.drop(q))

    # -- basic open sets -----------------------------------------------------

    def normalize_basic(
        self, alpha: Path, g, beta: Path, gamma: Path | None = None
    ) -> tuple[Path, object, Path]:
        """Fold the cylinder restriction into the semigroup element.

        The set is unchanged when gamma is at or above beta; when beta.eps =
        gamma the element absorbs eps; incomparable data denotes the empty
        set. Idempotent by construction.
        """
        if gamma is None:
            return (alpha, g, beta)
        rel = prefix_compare(gamma, beta)
        if rel in (PrefixRel.EQUAL, PrefixRel.A_PROPER):
            return (alpha, g, beta)
        if rel == PrefixRel.B_PROPER:
            eps = complement(beta, gamma)
            img, coc = self.triple.act_path(g, eps)
            return (concat(alpha, img), coc, gamma)
        raise EmptySetError(f"cylinder {gamma} does not meet the domain cylinder {beta}")

    def open_set_member(
        self,
        u: Germ,
        alpha: Path,
        g,
        beta: Path,
        gamma: Path | None = None,
        depth: int | None = None,
    ) -> Tri:
        """Is u in the basic open set of (alpha, g, beta) restricted to gamma?

        Membership means u is germ-equal to [alpha, g, beta; point] at its own
        source point, which must lie in the cylinder of beta.
        """
        depth = depth or self.depth
        alpha, g, beta = self.normalize_basic(alpha, g, beta, gamma)
        source = self.source_point(u)
        try:
            if source.truncate(len(beta)) != beta:
                return DISTINCT
            candidate = self.make(alpha, g, beta, source.drop(len(beta)))
        except DepthExceededError:
            return unknown(depth)
        return self.germ_eq(u, candidate, depth)


def _model_conditions(
    t: SelfSimilarTriple, eta: InfPath, gseq: CoronaSeq, p: int, q: int, zeta: InfPath, depth: int
) -> Tri:
    """Check the two model conditions for one split, over a decisive window.

    For eventually periodic inputs one combined period past every preperiod
    decides all n; bounded inputs cap the window and leave the verdict open.
    """
    horizon = depth
    decisive = True
    if isinstance(gseq, PeriodicSeq) and isinstance(zeta, PeriodicPath) and isinstance(eta, PeriodicPath):
        period = lcm(len(gseq.cycle), len(zeta.cycle_edges), len(eta.cycle_edges))
        base = max(len(gseq.prefix) - p, len(zeta.prefix_edges) - q, len(eta.prefix_edges) - p, 0)
        horizon = max(horizon, base + period)
    else:
        decisive = False
        for lim, offset in ((gseq.depth_limit, p + 1), (zeta.depth_limit, q), (eta.depth_limit, p)):
            if lim is not None:
                horizon = min(horizon, lim - offset)
        if horizon < 1:
            return unknown(0)
    group = t.group
    pending = False
    for n in range(1, horizon + 1):
        carry = gseq.entry(n + p)
        letter = zeta.letter(n + q)
        step = group.eq(gseq.entry(n + p + 1), t.edge_cocycle(carry, letter))
        if step.is_distinct:
            return DISTINCT
        if step.is_unknown:
            pending = True
        if eta.letter(n + p) != t.act_edge(carry, letter):
            return DISTINCT
    if decisive and not pending:
        return EQUAL
    return unknown(horizon)
