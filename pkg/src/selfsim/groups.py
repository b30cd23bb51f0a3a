"""Group backends with a uniform element interface.

Three backends: the integers under addition, finite groups given by a Cayley
table, and automaton groups whose elements are reduced words over the
generators. The first two decide equality exactly; automaton words are
compared through the action they induce on letter sequences, which yields a
three-valued answer.
"""

from __future__ import annotations

from typing import Sequence

from .errors import BackendMismatchError, NonBijectiveOutputError
from .tri import Tri, DISTINCT, EQUAL, from_bool, unknown

DEFAULT_EQ_DEPTH = 32


class GroupBackend:
    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def eq(self, a, b, depth: int | None = None) -> Tri:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def check(self, x):
        if not self.contains(x):
            raise BackendMismatchError(f"{x!r} is not an element of {self}")
        return x

    def is_identity(self, x, depth: int | None = None) -> Tri:
        return self.eq(x, self.identity(), depth)

    def render(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    def power(self, x, n: int):
        out = self.identity()
        step = x if n >= 0 else self.inv(x)
        for _ in range(abs(n)):
            out = self.mul(out, step)
        return out


class IntegerGroup(GroupBackend):
    """The integers under addition; identity 0."""

    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.check(a) + self.check(b)

    def inv(self, a: int) -> int:
        return -self.check(a)

    def eq(self, a, b, depth=None) -> Tri:
        return from_bool(self.check(a) == self.check(b))

    def contains(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool)

    def render(self, x) -> str:
        return str(x)

    def parse(self, text: str) -> int:
        try:
            return int(text)
        except ValueError:
            raise BackendMismatchError(f"not an integer: {text!r}") from None

    def window(self, radius: int) -> list[int]:
        """Identity first, then by increasing magnitude: 0, 1, -1, 2, -2, ..."""
        out = [0]
        for m in range(1, radius + 1):
            out.extend((m, -m))
        return out

    def __str__(self) -> str:
        return "integers"


class FiniteGroup(GroupBackend):
    """Finite group presented by a Cayley table over element names.

    The table is validated at construction: identity, inverses, and full
    associativity (cube over the order, fine at desk scale).
    """

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[int]]):
        self.names = tuple(names)
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValueError("duplicate element name")
        self.table = tuple(tuple(row) for row in table)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("Cayley table must be square over the element list")
        for row in self.table:
            for x in row:
                if not 0 <= x < n:
                    raise ValueError("Cayley table entry out of range")
        self._identity = self._find_identity()
        self._inverse = self._find_inverses()
        self._check_associativity()

    def _find_identity(self) -> int:
        for e in range(len(self.names)):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(len(self.names))):
                return e
        raise ValueError("Cayley table has no identity")

    def _find_inverses(self) -> tuple[int, ...]:
        inv = []
        e = self._identity
        for a in range(len(self.names)):
            for b in range(len(self.names)):
                if self.table[a][b] == e == self.table[b][a]:
                    inv.append(b)
                    break
            else:
                raise ValueError(f"element {self.names[a]} has no inverse")
        return tuple(inv)

    def _check_associativity(self):
        n = len(self.names)
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise ValueError(
                            f"Cayley table not associative at ({self.names[a]}, {self.names[b]}, {self.names[c]})"
                        )

    def identity(self) -> int:
        return self._identity

    def mul(self, a: int, b: int) -> int:
        return self.table[self.check(a)][self.check(b)]

    def inv(self, a: int) -> int:
        return self._inverse[self.check(a)]

    def eq(self, a, b, depth=None) -> Tri:
        return from_bool(self.check(a) == self.check(b))

    def contains(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < len(self.names)

    def render(self, x) -> str:
        return self.names[x]

    def parse(self, text: str) -> int:
        if text in self.names:
            return self.names.index(text)
        raise BackendMismatchError(f"unknown element name: {text!r}")

    @property
    def is_finite(self) -> bool:
        return True

    def elements(self) -> range:
        return range(len(self.names))

    def __str__(self) -> str:
        return f"finite group of order {len(self.names)}"


def reduce_word(word: Sequence[int]) -> tuple[int, ...]:
    """Free reduction: cancel adjacent x, -x. Letters are nonzero signed ints."""
    out: list[int] = []
    for sym in word:
        if out and out[-1] == -sym:
            out.pop()
        else:
            out.append(sym)
    return tuple(out)


def invert_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-sym for sym in reversed(word))


class AutomatonGroup(GroupBackend):
    """Group of reduced words over the states of an invertible automaton.

    Each state (generator) permutes the letter alphabet and restricts to a
    word at every letter. Words act on letter sequences by the usual wreath
    recursion; equality is decided by comparing induced actions on all finite
    sequences up to a depth, so it is three-valued: a mismatch certifies
    distinctness, while agreement certifies equality only when the backend is
    flagged faithful to that depth.
    """

    def __init__(
        self,
        generator_names: Sequence[str],
        n_letters: int,
        outputs: Sequence[Sequence[int]],
        restrictions: Sequence[Sequence[Sequence[int]]],
        faithful_to_depth: bool = False,
        default_depth: int = DEFAULT_EQ_DEPTH,
    ):
        self.generator_names = tuple(generator_names)
        self.n_letters = n_letters
        self.outputs = tuple(tuple(row) for row in outputs)
        self.restrictions = tuple(tuple(reduce_word(w) for w in rows) for rows in restrictions)
        self.faithful_to_depth = faithful_to_depth
        self.default_depth = default_depth
        if len(self.outputs) != len(self.generator_names) or len(self.restrictions) != len(self.generator_names):
            raise ValueError("outputs/restrictions must cover every generator")
        self._inv_outputs = []
        for g, row in enumerate(self.outputs):
            if sorted(row) != list(range(n_letters)):
                raise NonBijectiveOutputError(
                    f"state {self.generator_names[g]} does not permute the alphabet"
                )
            inv = [0] * n_letters
            for x, y in enumerate(row):
                inv[y] = x
            self._inv_outputs.append(tuple(inv))
        self._inv_outputs = tuple(self._inv_outputs)

    def identity(self) -> tuple[int, ...]:
        return ()

    def mul(self, a, b) -> tuple[int, ...]:
        return reduce_word(tuple(self.check(a)) + tuple(self.check(b)))

    def inv(self, a) -> tuple[int, ...]:
        return invert_word(self.check(a))

    def contains(self, x) -> bool:
        if not isinstance(x, tuple):
            return False
        k = len(self.generator_names)
        return all(isinstance(s, int) and s != 0 and abs(s) <= k for s in x) and x == reduce_word(x)

    def generator(self, index: int) -> tuple[int, ...]:
        return (index + 1,)

    def _letter_step(self, sym: int, letter: int) -> tuple[int, tuple[int, ...]]:
        """Image letter and restriction word of a single signed generator."""
        if sym > 0:
            g = sym - 1
            return self.outputs[g][letter], self.restrictions[g][letter]
        g = -sym - 1
        pre = self._inv_outputs[g][letter]
        return pre, invert_word(self.restrictions[g][pre])

    def step(self, word, letter: int) -> tuple[int, tuple[int, ...]]:
        """Act on one letter: returns (image letter, restriction word).

        The word acts as the composite of its generators, rightmost first;
        restrictions compose by the cocycle rule.
        """
        img = letter
        rest: tuple[int, ...] = ()
        for sym in reversed(word):
            img, r = self._letter_step(sym, img)
            rest = reduce_word(r + rest)
        return img, rest

    def act_letters(self, word, letters: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Image sequence and final restriction of the word acting on a letter sequence."""
        out = []
        state = reduce_word(word)
        for letter in letters:
            img, state = self.step(state, letter)
            out.append(img)
        return tuple(out), state

    def eq(self, a, b, depth: int | None = None) -> Tri:
        a = self.check(a)
        b = self.check(b)
        if a == b:
            return EQUAL
        depth = self.default_depth if depth is None else depth
        # Breadth-first comparison of the two actions along the letter tree,
        # closing branches whose restriction pair has been seen before.
        seen = {(a, b)}
        frontier = [(a, b)]
        for _ in range(depth):
            nxt = []
            for u, v in frontier:
                for letter in range(self.n_letters):
                    iu, ru = self.step(u, letter)
                    iv, rv = self.step(v, letter)
                    if iu != iv:
                        return DISTINCT
                    if ru != rv and (ru, rv) not in seen:
                        seen.add((ru, rv))
                        nxt.append((ru, rv))
            if not nxt:
                # Actions provably agree on all finite sequences.
                return EQUAL if self.faithful_to_depth else unknown(depth)
            frontier = nxt
        return EQUAL if self.faithful_to_depth else unknown(depth)

    def render(self, x) -> str:
        if not x:
            return "1"
        parts = []
        for sym in x:
            name = self.generator_names[abs(sym) - 1]
            parts.append(name if sym > 0 else name + "'")
        return ".".join(parts)

    def parse(self, text: str) -> tuple[int, ...]:
        if text == "1":
            return ()
        word = []
        for part in text.split("."):
            inv = part.endswith("'")
            name = part[:-1] if inv else part
            if name not in self.generator_names:
                raise BackendMismatchError(f"unknown generator: {name!r}")
            sym = self.generator_names.index(name) + 1
            word.append(-sym if inv else sym)
        return reduce_word(word)

    def window(self, radius: int) -> list[tuple[int, ...]]:
        """All reduced words of length <= radius, identity first."""
        out = [()]
        frontier: list[tuple[int, ...]] = [()]
        syms = [s for g in range(len(self.generator_names)) for s in (g + 1, -(g + 1))]
        for _ in range(radius):
            nxt = []
            for w in frontier:
                for s in syms:
                    r = reduce_word(w + (s,))
                    if len(r) == len(w) + 1:
                        nxt.append(r)
            out.extend(nxt)
            frontier = nxt
        return out

    def __str__(self) -> str:
        return f"automaton group on {len(self.generator_names)} generator(s)"


def default_window(backend: GroupBackend, radius: int):
    """Identity-containing, inverse-closed test window for any backend."""
    if isinstance(backend, FiniteGroup):
        return list(backend.elements())
    if isinstance(backend, (IntegerGroup, AutomatonGroup)):
        return backend.window(radius)
    raise BackendMismatchError(f"no default window for {backend}")
