"""Corona arithmetic: G-sequences modulo eventually trivial ones, and lag values.

A corona element is represented either by an eventually periodic sequence
(class membership then decidable) or by a bounded stream of known entries
(answers degrade to unknown). Two representatives are corona-equal when the
sequences agree from some index on. The lag group pairs a corona element
with an integer shift, multiplying semidirectly through the right-shift
automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from . import periodic
from .errors import DepthExceededError
from .groups import GroupBackend
from .tri import Tri, DISTINCT, all_of, unknown


class CoronaSeq:
    """Common interface: 1-indexed entries in the group backend."""

    backend: GroupBackend

    def entry(self, n: int):
        raise NotImplementedError

    @property
    def depth_limit(self) -> int | None:
        raise NotImplementedError


@dataclass(frozen=True)
class PeriodicSeq(CoronaSeq):
    backend: GroupBackend = field(repr=False)
    prefix: tuple
    cycle: tuple

    @staticmethod
    def make(backend: GroupBackend, prefix, cycle) -> "PeriodicSeq":
        pre, cyc = periodic.normalize(tuple(prefix), tuple(cycle))
        return PeriodicSeq(backend, pre, cyc)

    def entry(self, n: int):
        if n < 1:
            raise ValueError("entries are 1-indexed")
        return periodic.entry(self.prefix, self.cycle, n - 1)

    @property
    def depth_limit(self) -> int | None:
        return None

    def __str__(self) -> str:
        r = self.backend.render
        head = ".".join(r(x) for x in self.prefix)
        body = ".".join(r(x) for x in self.cycle)
        return f"{head}({body})*"


@dataclass(eq=False)
class BoundedSeq(CoronaSeq):
    backend: GroupBackend
    values: tuple  # entries 1..len(values)

    def entry(self, n: int):
        if n < 1:
            raise ValueError("entries are 1-indexed")
        if n > len(self.values):
            raise DepthExceededError(f"sequence known only to depth {len(self.values)}")
        return self.values[n - 1]

    @property
    def depth_limit(self) -> int | None:
        return len(self.values)

    def __str__(self) -> str:
        r = self.backend.render
        return ".".join(r(x) for x in self.values) + "~"


def corona_identity(backend: GroupBackend) -> PeriodicSeq:
    return PeriodicSeq(backend, (), (backend.identity(),))


def _pointwise(op, a: CoronaSeq, b: CoronaSeq | None = None) -> CoronaSeq:
    backend = a.backend
    if b is None:
        if isinstance(a, PeriodicSeq):
            return PeriodicSeq.make(backend, tuple(op(x) for x in a.prefix), tuple(op(x) for x in a.cycle))
        return BoundedSeq(backend, tuple(op(x) for x in a.values))
    if isinstance(a, PeriodicSeq) and isinstance(b, PeriodicSeq):
        p = max(len(a.prefix), len(b.prefix))
        q = lcm(len(a.cycle), len(b.cycle))
        entries = [op(a.entry(n), b.entry(n)) for n in range(1, p + q + 1)]
        return PeriodicSeq.make(backend, tuple(entries[:p]), tuple(entries[p:]))
    horizon = min(x.depth_limit for x in (a, b) if x.depth_limit is not None)
    return BoundedSeq(backend, tuple(op(a.entry(n), b.entry(n)) for n in range(1, horizon + 1)))


def corona_mul(a: CoronaSeq, b: CoronaSeq) -> CoronaSeq:
    return _pointwise(a.backend.mul, a, b)


def corona_inv(a: CoronaSeq) -> CoronaSeq:
    return _pointwise(a.backend.inv, a)


def shift_right(a: CoronaSeq, k: int = 1) -> CoronaSeq:
    """Right shift: prepend k identities (k >= 0)."""
    if k < 0:
        return shift_left(a, -k)
    pad = (a.backend.identity(),) * k
    if isinstance(a, PeriodicSeq):
        return PeriodicSeq.make(a.backend, pad + a.prefix, a.cycle)
    return BoundedSeq(a.backend, pad + a.values)


def shift_left(a: CoronaSeq, k: int = 1) -> CoronaSeq:
    """Left shift: drop the first k entries (k >= 0)."""
    if k < 0:
        return shift_right(a, -k)
    if isinstance(a, PeriodicSeq):
        pre, cyc = periodic.drop(a.prefix, a.cycle, k)
        return PeriodicSeq(a.backend, pre, cyc)
    if k >= len(a.values):
        raise DepthExceededError("cannot shift a bounded sequence past its depth")
    return BoundedSeq(a.backend, a.values[k:])


def corona_eq(a: CoronaSeq, b: CoronaSeq, depth: int = 64) -> Tri:
    """Tail equality: do the sequences agree from some index on?

    Exact for two periodic representatives (one combined period past both
    preperiods decides every later index); otherwise unknown, since a finite
    window can neither confirm nor refute eventual agreement.
    """
    if isinstance(a, PeriodicSeq) and isinstance(b, PeriodicSeq):
        p = max(len(a.prefix), len(b.prefix))
        q = lcm(len(a.cycle), len(b.cycle))
        return all_of(*(a.backend.eq(a.entry(n), b.entry(n)) for n in range(p + 1, p + q + 1)))
    horizon = depth
    for x in (a, b):
        if x.depth_limit is not None:
            horizon = min(horizon, x.depth_limit)
    return unknown(horizon)


@dataclass(frozen=True)
class LagValue:
    """Element of the lag group: corona part and integer shift."""

    corona: CoronaSeq
    shift: int

    def __str__(self) -> str:
        return f"({self.corona}, {self.shift})"


def lag_identity(backend: GroupBackend) -> LagValue:
    return LagValue(corona_identity(backend), 0)


def lag_mul(a: LagValue, b: LagValue) -> LagValue:
    """Semidirect product law: (x, m)(y, n) = (x . rho^m(y), m + n)."""
    return LagValue(corona_mul(a.corona, shift_right(b.corona, a.shift)), a.shift + b.shift)


def lag_inv(a: LagValue) -> LagValue:
    return LagValue(shift_right(corona_inv(a.corona), -a.shift), -a.shift)


def lag_eq(a: LagValue, b: LagValue, depth: int = 64) -> Tri:
    if a.shift != b.shift:
        return DISTINCT
    return corona_eq(a.corona, b.corona, depth)
