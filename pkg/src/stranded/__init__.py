"""Stranded Feynman graphs of three- and four-dimensional group field theories."""

from __future__ import annotations

from .amplitude import (
    AmplitudeResult,
    Delta,
    DeltaKernel,
    GroupSymbol,
    GroupWord,
    canonicalize_word,
    eliminate,
    kernel_from_graph,
    parse_word,
    solve_delta_for,
)
from .catalog import CATALOG, catalog_graph
from .dsl import GraphDocument, graph_to_dsl, load_graph, parse_graph_dsl
from .enumerate import CanonicalForm, EnumerationRequest, canonical_form, census, enumerate_graphs
from .graph import (
    Edge,
    ExternalLeg,
    Face,
    FaceSet,
    Port,
    StrandedGraph,
    broken_face_count,
    build_graph,
    connectivity_report,
    jacket,
    trace_faces,
    vertex_strand_pairs,
)
from .groups import FiniteGroup, brute_force_count, fit_divergence_exponent, make_group
from .models import BOULATOV3D, COLORED3D, MO3D, MO4D, ModelSpec, get_model
from .structure import (
    check_colorable,
    check_multi_orientable,
    detect_generalized_tadpoles,
    detect_tadfaces,
    irregularity_report,
    structure_report,
)
from .verify import VerifyReport, run_verify

__version__ = "0.1.0"
