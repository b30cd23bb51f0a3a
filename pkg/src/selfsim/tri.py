"""Three-valued verdicts for comparisons that may be undecidable at finite depth."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tri:
    """Outcome of an equality test: equal, distinct, or unknown at some depth.

    Exact backends (integers, Cayley tables) only ever produce equal/distinct.
    Depth-bounded backends (free automaton words, stream paths) may answer
    unknown, carrying the depth to which the comparison was pushed.
    """

    verdict: str  # "equal" | "distinct" | "unknown"
    depth: int | None = None

    @property
    def is_equal(self) -> bool:
        return self.verdict == "equal"

    @property
    def is_distinct(self) -> bool:
        return self.verdict == "distinct"

    @property
    def is_unknown(self) -> bool:
        return self.verdict == "unknown"

    def __str__(self) -> str:
        if self.is_unknown and self.depth is not None:
            return f"unknown@{self.depth}"
        return self.verdict


EQUAL = Tri("equal")
DISTINCT = Tri("distinct")


def unknown(depth: int | None = None) -> Tri:
    return Tri("unknown", depth)


def from_bool(value: bool) -> Tri:
    return EQUAL if value else DISTINCT


def all_of(*parts: Tri) -> Tri:
    """Conjunction: distinct dominates, then unknown, else equal."""
    pending: Tri | None = None
    for part in parts:
        if part.is_distinct:
            return part
        if part.is_unknown and pending is None:
            pending = part
    return pending if pending is not None else EQUAL
