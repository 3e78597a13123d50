"""Exact finite groups and the brute-force amplitude oracle.

Haar integrals become sums over the group and each delta becomes the
indicator of the identity, so the oracle counts holonomy assignments that
satisfy every delta of a kernel. With the normalized conventions
(integral = average, delta = |G| * indicator) the amplitude of a kernel with
``F`` deltas and ``m`` holonomies is ``|G|**(F - m) * N``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .amplitude import AmplitudeResult, DeltaKernel, GroupSymbol, GroupWord
from .errors import BudgetExceededError, OrderTooLargeError
from .models import budget_factor

__all__ = [
    "FiniteGroup",
    "make_group",
    "evaluate_word",
    "brute_force_count",
    "random_externals",
    "identity_externals",
    "DivergenceFit",
    "fit_divergence_exponent",
    "predicted_count",
    "normalization_identity",
    "MAX_ORDER",
    "MAX_ASSIGNMENTS",
]

MAX_ORDER = 24
MAX_ASSIGNMENTS = 10**7
_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on elements ``0..order-1`` given by its Cayley table."""

    name: str
    table: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        ident = [a for a in range(n) if np.array_equal(table[a], np.arange(n))]
        if len(ident) != 1 or not np.array_equal(table[:, ident[0]], np.arange(n)):
            raise ValueError(f"{self.name}: no two-sided identity")
        e = ident[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            (cands,) = np.nonzero(table[a] == e)
            if len(cands) != 1 or table[cands[0], a] != e:
                raise ValueError(f"{self.name}: element {a} has no inverse")
            inv[a] = cands[0]
        inv.setflags(write=False)
        object.__setattr__(self, "identity", int(e))
        object.__setattr__(self, "inverse", inv)
        self._check_associative()

    def _check_associative(self) -> None:
        t = self.table
        n = len(t)
        if n <= MAX_ORDER:
            a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
            ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
        if not ok:
            raise ValueError(f"{self.name}: table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _from_elements(name: str, elements: list, op) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            table[i, j] = index[op(x, y)]
    return FiniteGroup(name, table, tuple(str(x) for x in elements))


def _quaternion_mul(x, y):
    # (sign, unit) with unit in 1, i, j, k
    units = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    s, u = units[(x[1], y[1])]
    return (x[0] * y[0] * s, u)


_SPEC = re.compile(r"^\s*(cyclic|dihedral|symmetric)\s*[:\s]?\s*(\d+)\s*$|^\s*(quaternion8|q8)\s*$", re.I)


def make_group(spec: str | tuple[str, int]) -> FiniteGroup:
    """Build ``cyclic:n``, ``dihedral:n`` (order 2n), ``symmetric:n`` or ``quaternion8``."""
    if isinstance(spec, tuple):
        family, n = spec
    else:
        m = _SPEC.match(spec)
        if not m:
            raise ValueError(f"bad group spec {spec!r}")
        if m.group(3):
            family, n = "quaternion8", 8
        else:
            family, n = m.group(1).lower(), int(m.group(2))
    if n < 1:
        raise ValueError("group parameter must be positive")
    order = {"cyclic": n, "dihedral": 2 * n, "symmetric": math.factorial(n), "quaternion8": 8}[family]
    if order > MAX_ORDER * budget_factor():
        raise OrderTooLargeError(f"{family} {n} has order {order} > {MAX_ORDER * budget_factor()}")
    if family == "cyclic":
        t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        return FiniteGroup(f"C{n}", t, tuple(str(i) for i in range(n)))
    if family == "dihedral":
        # (k, f) = r^k s^f with s r s = r^-1
        elements = [(k, f) for f in (0, 1) for k in range(n)]
        return _from_elements(
            f"D{n}",
            elements,
            lambda x, y: ((x[0] + (y[0] if x[1] == 0 else -y[0])) % n, (x[1] + y[1]) % 2),
        )
    if family == "symmetric":
        elements = list(itertools.permutations(range(n)))
        return _from_elements(f"S{n}", elements, lambda p, q: tuple(p[q[i]] for i in range(n)))
    elements = [(s, u) for s in (1, -1) for u in ("1", "i", "j", "k")]
    return _from_elements("Q8", elements, _quaternion_mul)


def evaluate_word(word: GroupWord, group: FiniteGroup, values: Mapping[GroupSymbol, int]) -> int:
    x = group.identity
    for s, e in word.letters:
        g = values[s]
        x = group.mul(x, g if e > 0 else group.inv(g))
    return x


def identity_externals(kernel: DeltaKernel, group: FiniteGroup) -> dict[GroupSymbol, int]:
    return {s: group.identity for s in kernel.external_symbols()}


def random_externals(kernel: DeltaKernel, group: FiniteGroup, seed: int) -> dict[GroupSymbol, int]:
    """Uniform external values from ``numpy.random.default_rng(seed)`` in symbol order."""
    rng = np.random.default_rng(seed)
    syms = kernel.external_symbols()
    draws = rng.integers(0, group.order, size=len(syms))
    return {s: int(g) for s, g in zip(syms, draws)}


def brute_force_count(kernel: DeltaKernel, group: FiniteGroup, externals: Mapping[GroupSymbol, int]) -> int:
    """Number of holonomy assignments making every delta word the identity."""
    hol = list(kernel.internal_symbols)
    m = len(hol)
    n = group.order
    total = n**m
    if total > MAX_ASSIGNMENTS * budget_factor():
        raise BudgetExceededError(f"{n}**{m} = {total} assignments exceed the oracle budget")
    col = {h: i for i, h in enumerate(hol)}
    table, inv = group.table, group.inverse
    count = 0
    powers = n ** np.arange(m, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        assign = (idx[:, None] // powers[None, :]) % n if m else np.zeros((len(idx), 0), dtype=np.int64)
        ok = np.ones(len(idx), dtype=bool)
        for d in kernel.deltas:
            x = np.full(len(idx), group.identity, dtype=np.int64)
            for s, e in d.word.letters:
                if s in col:
                    g = assign[:, col[s]]
                    x = table[x, g if e > 0 else inv[g]]
                else:
                    g = externals[s]
                    x = table[x, g if e > 0 else inv[g]]
            ok &= x == group.identity
        count += int(ok.sum())
    return count


def predicted_count(result: AmplitudeResult, group: FiniteGroup, externals: Mapping[GroupSymbol, int]) -> int:
    """Solution count implied by an elimination: free volume times residual indicators.

    For a stuck elimination the remaining system is counted by brute force.
    """
    for d in result.residual:
        if evaluate_word(d.word, group, externals) != group.identity:
            return 0
    count = group.order ** len(result.free)
    if result.stuck is not None:
        count *= brute_force_count(result.stuck, group, externals)
    return count


def normalization_identity(
    kernel: DeltaKernel, result: AmplitudeResult, group: FiniteGroup, externals: Mapping[GroupSymbol, int], n_count: int
) -> bool:
    """Check ``|G|^(F-m) N == |G|^k * prod(|G| * indicator(residual))`` (complete eliminations).

    Stuck eliminations compare against the stuck system's own normalized
    amplitude instead.
    """
    n = group.order
    F, m = len(kernel.deltas), len(kernel.internal_symbols)
    lhs = Fraction(n) ** (F - m) * n_count
    rhs = Fraction(n) ** result.degree
    for d in result.residual:
        rhs *= n if evaluate_word(d.word, group, externals) == group.identity else 0
    if result.stuck is not None:
        sk = result.stuck
        rhs *= Fraction(n) ** (len(sk.deltas) - len(sk.internal_symbols)) * brute_force_count(sk, group, externals)
    return lhs == rhs


@dataclass(frozen=True)
class DivergenceFit:
    kappa: int | None
    constant: Fraction | None
    table: tuple[tuple[str, int, int], ...]  # (group name, |G|, N)


def fit_divergence_exponent(kernel: DeltaKernel, groups: Sequence[FiniteGroup]) -> DivergenceFit:
    """Fit ``N(|G|) = c |G|**kappa`` at identity externals.

    A fit is reported only when the groups are cyclic of at least two
    distinct prime orders and every point lies exactly on the curve.
    """
    rows = []
    for g in groups:
        rows.append((g.name, g.order, brute_force_count(kernel, g, identity_externals(kernel, g))))
    table = tuple(rows)
    orders = [o for _, o, _ in rows]
    cyclic = all(name.startswith("C") for name, _, _ in rows)
    primes = all(o > 1 and all(o % p for p in range(2, int(math.isqrt(o)) + 1)) for o in orders)
    if not (cyclic and primes and len(set(orders)) >= 2) or any(N == 0 for _, _, N in rows):
        return DivergenceFit(None, None, table)
    (_, p1, n1), (_, p2, n2) = rows[0], next(r for r in rows if r[1] != rows[0][1])
    kappa = round(math.log(n1 / n2) / math.log(p1 / p2))
    c = Fraction(n1, 1) / Fraction(p1) ** kappa
    if all(Fraction(N) == c * Fraction(p) ** kappa for _, p, N in rows):
        return DivergenceFit(kappa, c, table)
    return DivergenceFit(None, None, table)
