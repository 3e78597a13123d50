"""Exhaustive small-order checks of the structural theorems.

Every suite walks the deduplicated boulatov3d graphs with up to
``max_vertices`` vertices and the requested leg counts, decides
colorability and multi-orientability with the checkers, and asserts its
property on the graphs it applies to. Counterexamples come back as DSL text
that replays standalone.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import lru_cache

from .dsl import graph_to_dsl, load_graph
from .enumerate import EnumerationRequest, enumerate_graphs
from .errors import UnpairableError
from .graph import FaceSet, StrandedGraph, trace_faces
from .models import BOULATOV3D
from .structure import (
    ColoringAssignment,
    OrientationAssignment,
    check_colorable,
    check_multi_orientable,
    detect_generalized_tadpoles,
    detect_tadfaces,
    external_signs,
    forget,
    irregularity_report,
)

__all__ = ["SUITES", "VerifyReport", "Sample", "run_verify", "check_property", "replay", "samples"]

DEFAULT_LEGS = (0, 2, 4)


@dataclass(frozen=True)
class Sample:
    graph: StrandedGraph
    faces: FaceSet
    mo: OrientationAssignment | None
    col: ColoringAssignment | None


def _sample(graph: StrandedGraph) -> Sample:
    base = graph if graph.model is BOULATOV3D else forget(graph)
    return Sample(base, trace_faces(base), check_multi_orientable(base), check_colorable(base))


@lru_cache(maxsize=None)
def _samples_at(n: int, legs: int) -> tuple[Sample, ...]:
    try:
        req = EnumerationRequest(BOULATOV3D, n, legs, frozenset({"dedupe"}))
    except UnpairableError:
        return ()
    return tuple(_sample(g) for g in enumerate_graphs(req))


def samples(max_vertices: int, legs: Iterable[int] = DEFAULT_LEGS) -> list[Sample]:
    out = []
    for n in range(1, max_vertices + 1):
        for L in legs:
            out.extend(_samples_at(n, L))
    return out


# Each property returns None when it does not apply, else whether it holds.


def _inclusion(s: Sample) -> bool | None:
    return s.col is None or s.mo is not None


def _no_tadface_mo(s: Sample) -> bool | None:
    if s.mo is None:
        return None
    return not detect_tadfaces(s.graph, s.faces)


def _no_tadface_colored(s: Sample) -> bool | None:
    if s.col is None:
        return None
    return not detect_tadfaces(s.graph, s.faces)


def _no_nonplanar_gt(s: Sample) -> bool | None:
    if s.mo is None or not s.graph.externals:
        return None
    return all(w.planarity != "non-planar" for w in detect_generalized_tadpoles(s.graph))


def _single_edge_break(s: Sample) -> bool | None:
    if s.mo is None or not s.graph.externals:
        return None
    return not irregularity_report(s.graph, s.faces).single_leg_faces


def _broken_face_parity(s: Sample) -> bool | None:
    if s.mo is None or not s.graph.externals:
        return None
    return all(c % 2 == 0 for c in irregularity_report(s.graph, s.faces).breaking_counts)


def _vertex_function_types(s: Sample) -> bool | None:
    L = len(s.graph.externals)
    if s.mo is None or L not in (2, 4):
        return None
    signs = external_signs(s.graph, s.mo)
    if sorted(signs) != ["+"] * (L // 2) + ["-"] * (L // 2):
        return False
    # along every broken face the leg signs alternate
    for face in irregularity_report(s.graph, s.faces).broken.faces:
        seq = [signs[j] for j in face]
        if any(seq[i] == seq[(i + 1) % len(seq)] for i in range(len(seq))):
            return False
    return True


SUITES: dict[str, Callable[[Sample], bool | None]] = {
    "inclusion": _inclusion,
    "no_tadface_mo": _no_tadface_mo,
    "no_tadface_colored": _no_tadface_colored,
    "no_nonplanar_gt": _no_nonplanar_gt,
    "single_edge_break": _single_edge_break,
    "broken_face_parity": _broken_face_parity,
    "vertex_function_types": _vertex_function_types,
}


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    max_vertices: int
    legs: tuple[int, ...]
    examined: int
    counterexamples: tuple[str, ...]
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        d = {
            "suite": self.suite,
            "max_vertices": self.max_vertices,
            "legs": list(self.legs),
            "examined": self.examined,
            "counterexamples": list(self.counterexamples),
            "passed": self.passed,
        }
        if self.wall_time is not None:
            d["wall_time"] = round(self.wall_time, 3)
        return d


def check_property(suite: str, graph: StrandedGraph) -> bool | None:
    return SUITES[suite](_sample(graph))


def replay(suite: str, dsl_text: str) -> bool | None:
    """Re-run one suite's property on a graph given as DSL text."""
    return check_property(suite, load_graph(dsl_text))


def run_verify(
    suite: str,
    max_vertices: int = 3,
    legs: Iterable[int] = DEFAULT_LEGS,
    timing: bool = False,
) -> VerifyReport:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; expected one of {sorted(SUITES)} or 'all'")
    legs = tuple(legs)
    prop = SUITES[suite]
    t0 = time.perf_counter()
    examined = 0
    bad = []
    for s in samples(max_vertices, legs):
        verdict = prop(s)
        if verdict is None:
            continue
        examined += 1
        if not verdict:
            bad.append(graph_to_dsl(s.graph))
    wall = time.perf_counter() - t0 if timing else None
    return VerifyReport(suite, max_vertices, legs, examined, tuple(bad), wall)
