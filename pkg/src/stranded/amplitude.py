"""Symbolic Feynman amplitudes as products of group delta functions.

Every face contributes one delta on a word in the free group generated by
external strand symbols and edge holonomies. Holonomies are integrated out
one at a time by solving a delta in which they occur exactly once.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import SymbolAbsentError, SymbolRepeatedError
from .graph import FaceSet, StrandedGraph, trace_faces

__all__ = [
    "GroupSymbol",
    "GroupWord",
    "Delta",
    "DeltaKernel",
    "AmplitudeResult",
    "external",
    "holonomy",
    "parse_word",
    "canonicalize_word",
    "kernel_from_graph",
    "eliminate",
    "solve_delta_for",
]

EXTERNAL = 0
HOLONOMY = 1


@dataclass(frozen=True, eq=False)
class GroupSymbol:
    """A generator; externals sort before holonomies, each by ``key``.

    Equality and hashing use the kind and name only, so a symbol parsed
    from text equals the one built from a graph.
    """

    kind: int
    key: tuple
    name: str

    def __eq__(self, other):
        if not isinstance(other, GroupSymbol):
            return NotImplemented
        return self.kind == other.kind and self.name == other.name

    def __hash__(self):
        return hash((self.kind, self.name))

    def _order(self) -> tuple:
        return (self.kind, self.key, self.name)

    def __lt__(self, other):
        return self._order() < other._order()

    def __le__(self, other):
        return self._order() <= other._order()

    def __gt__(self, other):
        return self._order() > other._order()

    def __ge__(self, other):
        return self._order() >= other._order()

    @property
    def is_holonomy(self) -> bool:
        return self.kind == HOLONOMY

    def __str__(self) -> str:
        return self.name


def external(name: str) -> GroupSymbol:
    return GroupSymbol(EXTERNAL, (name,), name)


def holonomy(name: str, index: int | None = None) -> GroupSymbol:
    if index is None:
        m = re.search(r"(\d+)$", name)
        index = int(m.group(1)) if m else 0
    return GroupSymbol(HOLONOMY, (index, name), name)


Letter = tuple[GroupSymbol, int]


def _letter_key(letter: Letter) -> tuple:
    return (letter[0], 0 if letter[1] > 0 else 1)


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for sym, e in letters:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word; construction reduces its input."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def of(cls, *items: GroupSymbol | Letter) -> GroupWord:
        return cls(tuple(x if isinstance(x, tuple) else (x, 1) for x in items))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def symbols(self) -> set[GroupSymbol]:
        return {s for s, _ in self.letters}

    def count(self, symbol: GroupSymbol) -> int:
        return sum(1 for s, _ in self.letters if s == symbol)

    def holonomy_count(self) -> int:
        return sum(1 for s, _ in self.letters if s.is_holonomy)

    def cyclic_reduce(self) -> GroupWord:
        letters = self.letters
        i, j = 0, len(letters) - 1
        while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
            i += 1
            j -= 1
        return GroupWord(letters[i : j + 1])

    def substitute(self, symbol: GroupSymbol, value: GroupWord) -> GroupWord:
        inv = value.inverse()
        out: list[Letter] = []
        for s, e in self.letters:
            if s == symbol:
                out.extend((value if e > 0 else inv).letters)
            else:
                out.append((s, e))
        return GroupWord(tuple(out))

    def rename(self, mapping: dict[GroupSymbol, GroupWord]) -> GroupWord:
        out: list[Letter] = []
        for s, e in self.letters:
            if s in mapping:
                w = mapping[s]
                out.extend((w if e > 0 else w.inverse()).letters)
            else:
                out.append((s, e))
        return GroupWord(tuple(out))

    def sort_key(self) -> tuple:
        return tuple(_letter_key(x) for x in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(s.name if e > 0 else f"{s.name}^-1" for s, e in self.letters)


def parse_word(text: str, holonomies: Iterable[str] = ()) -> GroupWord:
    """Parse ``"g1 h1 h2^-1 g5"``; names in ``holonomies`` become holonomy symbols.

    ``e`` or an empty string is the identity. Exponents may be written
    ``^-1``, ``^{-1}`` or ``^1``.
    """
    hol = set(holonomies)
    letters = []
    for tok in text.replace("*", " ").split():
        if tok == "e":
            continue
        m = re.fullmatch(r"([^\s^]+)(?:\^\{?(-?1)\}?)?", tok)
        if not m:
            raise ValueError(f"bad letter {tok!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        sym = holonomy(name) if name in hol else external(name)
        letters.append((sym, exp))
    return GroupWord(tuple(letters))


def canonicalize_word(word: GroupWord) -> GroupWord:
    """Least cyclic rotation of ``word`` or its inverse, after cyclic reduction."""
    w = word.cyclic_reduce()
    if not w:
        return w
    best = None
    for cand in (w.letters, w.inverse().letters):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            key = tuple(_letter_key(x) for x in rot)
            if best is None or key < best[0]:
                best = (key, rot)
    return GroupWord(best[1])


@dataclass(frozen=True)
class Delta:
    """``delta(word)``; ``origin`` is the index of the face it came from."""

    word: GroupWord
    origin: int | None = None

    def canonical(self) -> GroupWord:
        return canonicalize_word(self.word)

    def holonomies(self) -> set[GroupSymbol]:
        return {s for s in self.word.symbols() if s.is_holonomy}

    def __str__(self) -> str:
        return f"delta({self.word})"


@dataclass(frozen=True)
class DeltaKernel:
    deltas: tuple[Delta, ...]
    internal_symbols: tuple[GroupSymbol, ...] = ()

    def __len__(self) -> int:
        return len(self.deltas)

    def external_symbols(self) -> list[GroupSymbol]:
        return sorted({s for d in self.deltas for s in d.word.symbols() if not s.is_holonomy})

    def canonical_multiset(self) -> list[GroupWord]:
        return sorted((d.canonical() for d in self.deltas), key=GroupWord.sort_key)


def kernel_from_graph(graph: StrandedGraph, faces: FaceSet | None = None) -> DeltaKernel:
    """One delta per face.

    A closed face gives the product of holonomies along it; an open face
    gives ``s_in * (holonomies) * s_out^-1``.
    """
    faces = faces or trace_faces(graph)
    hol = {e.id: holonomy(e.symbol, graph.edge_index[e.id] + 1) for e in graph.edges}
    deltas = []
    for i, f in enumerate(faces):
        letters = [(hol[eid], d) for eid, d in f.edge_passes]
        if not f.closed:
            s_in, s_out = f.boundary_symbols
            letters = [(external(s_in), 1)] + letters + [(external(s_out), -1)]
        deltas.append(Delta(GroupWord(tuple(letters)), i))
    return DeltaKernel(tuple(deltas), tuple(hol[e.id] for e in graph.edges))


def solve_delta_for(delta: Delta | GroupWord, symbol: GroupSymbol) -> GroupWord:
    """Value of ``symbol`` that makes the delta's word the identity."""
    word = delta.word if isinstance(delta, Delta) else delta
    positions = [i for i, (s, _) in enumerate(word.letters) if s == symbol]
    if not positions:
        raise SymbolAbsentError(f"{symbol} does not occur in {word}")
    if len(positions) > 1:
        raise SymbolRepeatedError(f"{symbol} occurs {len(positions)} times in {word}")
    i = positions[0]
    prefix = GroupWord(word.letters[:i])
    suffix = GroupWord(word.letters[i + 1 :])
    # prefix * s^e * suffix = 1
    value = prefix.inverse() * suffix.inverse()
    return value if word.letters[i][1] > 0 else value.inverse()


@dataclass(frozen=True)
class AmplitudeResult:
    residual: tuple[Delta, ...]
    degree: int
    stuck: DeltaKernel | None
    log: tuple[tuple[GroupSymbol, GroupWord, int | None], ...]
    free: tuple[GroupSymbol, ...] = ()
    trivial_origins: tuple[int | None, ...] = ()

    @property
    def complete(self) -> bool:
        return self.stuck is None

    def residual_words(self, origins: Iterable[int] | None = None) -> list[GroupWord]:
        """Canonical residual words, optionally restricted to some source faces."""
        keep = None if origins is None else set(origins)
        words = [d.canonical() for d in self.residual if keep is None or d.origin in keep]
        return sorted(words, key=GroupWord.sort_key)


def _pick(deltas: Sequence[Delta], holonomies: Sequence[GroupSymbol]) -> tuple[GroupSymbol, int] | None:
    for h in holonomies:
        best = None
        for i, d in enumerate(deltas):
            if d.word.count(h) == 1:
                mixed = d.word.holonomy_count() < len(d.word)
                key = (mixed, d.word.holonomy_count(), len(d.word), i)
                if best is None or key < best:
                    best = key
        if best is not None:
            return h, best[-1]
    return None


def eliminate(kernel: DeltaKernel, order: Sequence[GroupSymbol] | None = None) -> AmplitudeResult:
    """Integrate out holonomies until none is left or none can be solved linearly.

    At each step the first holonomy (in ``order``, default the kernel's
    symbol order) occurring exactly once in some delta is solved from a
    holonomy-only delta when there is one, otherwise from the delta with
    fewest holonomy letters, then shortest, then earliest. Deltas
    that reduce to the identity are dropped and counted in ``degree``.
    """
    holonomies = list(order) if order is not None else sorted(kernel.internal_symbols)
    deltas = [Delta(d.word.cyclic_reduce(), d.origin) for d in kernel.deltas]
    degree = 0
    trivial = []
    kept = []
    for d in deltas:
        if d.word:
            kept.append(d)
        else:
            degree += 1
            trivial.append(d.origin)
    deltas = kept
    log = []
    solved: set[GroupSymbol] = set()
    while True:
        live = [h for h in holonomies if h not in solved and any(h in d.word.symbols() for d in deltas)]
        if not live:
            break
        choice = _pick(deltas, live)
        if choice is None:
            break
        h, i = choice
        value = solve_delta_for(deltas[i], h)
        log.append((h, value, deltas[i].origin))
        solved.add(h)
        rest = []
        for j, d in enumerate(deltas):
            if j == i:
                continue
            w = d.word.substitute(h, value).cyclic_reduce()
            if w:
                rest.append(Delta(w, d.origin))
            else:
                degree += 1
                trivial.append(d.origin)
        deltas = rest

    residual = tuple(d for d in deltas if not d.holonomies())
    stuck_deltas = tuple(d for d in deltas if d.holonomies())
    stuck = None
    if stuck_deltas:
        syms = sorted({h for d in stuck_deltas for h in d.holonomies()})
        stuck = DeltaKernel(stuck_deltas, tuple(syms))
    in_stuck = set(stuck.internal_symbols) if stuck else set()
    free = tuple(h for h in sorted(kernel.internal_symbols) if h not in solved and h not in in_stuck)
    residual = tuple(Delta(canonicalize_word(d.word), d.origin) for d in residual)
    return AmplitudeResult(residual, degree, stuck, tuple(log), free, tuple(trivial))
