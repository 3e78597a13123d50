"""Helpers for comparing kernels against hand-written reference words.

Reference words name an external strand after the vertex strand it leaves
on (``g1 .. g6`` from the first-appearance naming), with a prime for the
second vertex. A vertex may be drawn mirrored (conjugate vertices run
clockwise), which maps address ``(c, s)`` to ``(-c, 4 - s)``.
"""

from __future__ import annotations

from stranded.amplitude import GroupWord, canonicalize_word, external, parse_word
from stranded.graph import FaceSet, vertex_segment_labels

LABELS = vertex_segment_labels(3)


def _name(addr, mirrored, primed) -> str:
    port, slot = addr
    c = port.corner
    if port.vertex in mirrored:
        c, slot = (-c) % 4, 4 - slot
    return LABELS[(c, slot)] + ("'" if port.vertex in primed else "")


def reference_renaming(
    faces: FaceSet, mirrored=(), primed=(), inverted=()
) -> dict:
    """External symbol -> one-letter word with its reference name.

    Only faces crossing an internal edge are named. ``inverted`` lists
    reference names whose sign convention is flipped.
    """
    mapping = {}
    for f in faces:
        if f.closed or not f.edge_passes:
            continue
        start = f.segments[0].ends[0]
        end = f.segments[-1].ends[1]
        for sym, addr in zip(f.boundary_symbols, (start, end)):
            name = _name(addr, set(mirrored), set(primed))
            mapping[external(sym)] = GroupWord(((external(name), -1 if name in inverted else 1),))
    return mapping


def crossing_origins(faces: FaceSet) -> list[int]:
    return [i for i, f in enumerate(faces) if f.edge_passes]


def canon_all(words) -> list[str]:
    return sorted(str(canonicalize_word(w)) for w in words)


def reference(texts, holonomies=("h1", "h2")) -> list[str]:
    return canon_all(parse_word(t, holonomies) for t in texts)
