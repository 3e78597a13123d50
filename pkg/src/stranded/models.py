"""The four field-theory models and their vertex conventions."""

from __future__ import annotations

import os
from dataclasses import dataclass

__all__ = [
    "ModelSpec",
    "BOULATOV3D",
    "MO3D",
    "COLORED3D",
    "MO4D",
    "MODELS",
    "get_model",
    "budget_factor",
]


@dataclass(frozen=True)
class ModelSpec:
    """Combinatorial rules of one model.

    ``vertex_kinds`` maps a kind name to its corner-sign sequence, or to
    ``None`` when the kind carries no signs. Corner ``c`` of a kind with
    signs ``s`` has sign ``s[c]``; ``"+"`` marks a field (edge tail) and
    ``"-"`` a conjugate field (edge head).
    """

    name: str
    dimension: int
    vertex_kinds: tuple[tuple[str, tuple[str, ...] | None], ...]
    couplings: tuple[str, ...]

    @property
    def corners_per_vertex(self) -> int:
        return self.dimension + 1

    @property
    def slots_per_edge(self) -> int:
        return self.dimension

    @property
    def kind_names(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.vertex_kinds)

    @property
    def default_kind(self) -> str | None:
        """The kind used when a vertex is declared without one."""
        return self.vertex_kinds[0][0] if len(self.vertex_kinds) == 1 else None

    @property
    def signed(self) -> bool:
        return self.name in ("mo3d", "mo4d")

    @property
    def colored(self) -> bool:
        return self.name == "colored3d"

    def signs(self, kind: str) -> tuple[str, ...] | None:
        for k, s in self.vertex_kinds:
            if k == kind:
                return s
        raise KeyError(f"model {self.name} has no vertex kind {kind!r}")

    def corner_sign(self, kind: str, corner: int) -> str | None:
        s = self.signs(kind)
        return None if s is None else s[corner]

    def rotations(self, kind: str) -> tuple[int, ...]:
        """Cyclic corner shifts ``r`` (corner c -> c - r) preserving the kind.

        The allowed shifts form a subgroup of Z_{D+1}. In 3D every shift is
        allowed: an odd shift swaps the two alternating sign patterns, which
        are the two phases of one and the same vertex. In 4D only shifts
        fixing the sign pattern are kept.
        """
        n = self.corners_per_vertex
        s = self.signs(kind)
        if s is None or self.dimension == 3:
            return tuple(range(n))
        return tuple(r for r in range(n) if all(s[(c + r) % n] == s[c] for c in range(n)))


BOULATOV3D = ModelSpec("boulatov3d", 3, (("A", None),), ("lambda",))
MO3D = ModelSpec("mo3d", 3, (("A", ("+", "-", "+", "-")),), ("lambda",))
# kind A is the phi^4 vertex, kind B the conjugate one
COLORED3D = ModelSpec("colored3d", 3, (("A", None), ("B", None)), ("lambda",))
MO4D = ModelSpec(
    "mo4d",
    4,
    (("A", ("-", "+", "-", "+", "-")), ("B", ("+", "-", "+", "-", "+"))),
    ("lambda1", "lambda2"),
)

MODELS = {m.name: m for m in (BOULATOV3D, MO3D, COLORED3D, MO4D)}


def get_model(name: str | ModelSpec) -> ModelSpec:
    if isinstance(name, ModelSpec):
        return name
    try:
        return MODELS[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; expected one of {sorted(MODELS)}") from None


def budget_factor() -> int:
    """Multiplier applied to every enumeration/oracle budget.

    Read from ``STRANDED_BUDGET`` (best effort: malformed values are ignored).
    """
    raw = os.environ.get("STRANDED_BUDGET", "")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(value, 1)
