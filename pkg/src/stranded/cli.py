"""Command-line interface: ``stranded <subcommand> ...``.

Exit status is 0 on success, 1 when a verified property fails and 2 on
usage, parse or budget errors. JSON output uses sorted keys so repeated
runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .amplitude import AmplitudeResult, eliminate, kernel_from_graph
from .catalog import CATALOG, catalog_text
from .dsl import graph_to_dsl, parse_graph_dsl
from .enumerate import EnumerationRequest, census, enumerate_graphs
from .errors import StrandedError
from .graph import StrandedGraph, broken_face_count, connectivity_report, jacket, trace_faces
from .groups import (
    brute_force_count,
    fit_divergence_exponent,
    identity_externals,
    make_group,
    normalization_identity,
    predicted_count,
    random_externals,
)
from .models import MODELS
from .structure import structure_report
from .verify import DEFAULT_LEGS, SUITES, run_verify

__all__ = ["main", "run_subcommand", "build_parser"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# report builders


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    if path.startswith("catalog:"):
        return catalog_text(path.split(":", 1)[1])
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load(path: str) -> StrandedGraph:
    return parse_graph_dsl(_read_source(path)).to_graph()


def graph_summary(g: StrandedGraph) -> dict:
    connected, one_pi = connectivity_report(g)
    return {
        "model": g.model.name,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "externals": len(g.externals),
        "connected": connected,
        "one_pi": one_pi,
    }


def faces_report(g: StrandedGraph) -> list[dict]:
    faces = trace_faces(g)
    kernel = kernel_from_graph(g, faces)
    out = []
    for f, d in zip(faces, kernel.deltas):
        out.append(
            {
                "closed": f.closed,
                "slot_class": f.slot_class,
                "word": str(d.word),
                "edges": [str(e) for e, _ in f.edge_passes],
                "breaking_legs": list(f.boundary_legs) if f.boundary_legs else [],
            }
        )
    return out


def checks_report(g: StrandedGraph) -> dict:
    rep = structure_report(g)
    out = {
        "multi_orientable": rep.multi_orientable is not None,
        "colorable": rep.colorable is not None,
        "tadpoles": [{"edge": str(t.edge), "planarity": t.planarity} for t in rep.tadpoles],
        "tadfaces": [{"face": i, "edge": str(e)} for i, e in rep.tadfaces],
        "generalized_tadpoles": [
            {
                "vertices": [str(v) for v in w.vertices],
                "external_vertex": str(w.external_vertex),
                "B": w.B,
                "planarity": w.planarity,
            }
            for w in rep.generalized_tadpoles
        ],
        "B": rep.B,
        "irregular": rep.irregular,
        "broken_faces": [list(f) for f in broken_face_count(g).faces] if g.externals else [],
        "internal_faces": trace_faces(g).internal_count,
    }
    if g.dimension == 3:
        out["genus"] = jacket(g).genus
    return out


def amplitude_report(result: AmplitudeResult, faces) -> dict:
    crossing = [i for i, f in enumerate(faces) if f.edge_passes]
    out = {
        "degree": result.degree,
        "complete": result.complete,
        "residual": [str(w) for w in result.residual_words()],
        # residuals of faces crossing at least one internal edge
        "crossing_residual": [str(w) for w in result.residual_words(crossing)],
        "stuck": None if result.stuck is None else sorted(str(d.word) for d in result.stuck.deltas),
        "log": [{"symbol": str(s), "value": str(w), "face": face} for s, w, face in result.log],
        "free": [str(s) for s in result.free],
        "internal_faces": faces.internal_count,
    }
    if result.stuck is not None:
        out["hint"] = "run 'eval' with several cyclic groups of prime order to fit the divergence exponent"
    return out


def _externals(kernel, group, spec: str) -> tuple[dict, object]:
    if spec == "identity":
        return identity_externals(kernel, group), "identity"
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad seed in {spec!r}") from None
        return random_externals(kernel, group, seed), {"seed": seed}
    raise UsageError(f"--externals must be 'identity' or 'random:<seed>', got {spec!r}")


def eval_report(g: StrandedGraph, group_spec: str, ext_spec: str) -> dict:
    faces = trace_faces(g)
    kernel = kernel_from_graph(g, faces)
    result = eliminate(kernel)
    group = make_group(group_spec)
    ext, ext_desc = _externals(kernel, group, ext_spec)
    N = brute_force_count(kernel, group, ext)
    return {
        "group": group.name,
        "order": group.order,
        "externals": ext_desc,
        "assignment": {str(s): group.labels[v] for s, v in sorted(ext.items())},
        "N": N,
        "predicted_N": predicted_count(result, group, ext),
        "identity_of_G2_holds": normalization_identity(kernel, result, group, ext, N),
    }


# ---------------------------------------------------------------------------
# text rendering


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                body = _text(v, indent + 1).lstrip()
                lines.append(f"{pad}- {body}")
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}-")
                lines.extend(pad + "  " + ln for ln in v.rstrip().splitlines())
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "none"
    return str(v)


def emit(obj: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        out.write(_text(obj) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> tuple[int, dict]:
    g = load(args.file)
    return 0, {"graph": graph_summary(g), "checks": checks_report(g)}


def cmd_faces(args) -> tuple[int, dict]:
    g = load(args.file)
    return 0, {"graph": graph_summary(g), "faces": faces_report(g)}


def cmd_amplitude(args) -> tuple[int, dict]:
    g = load(args.file)
    faces = trace_faces(g)
    result = eliminate(kernel_from_graph(g, faces))
    return 0, {"graph": graph_summary(g), "amplitude": amplitude_report(result, faces)}


def cmd_eval(args) -> tuple[int, dict]:
    g = load(args.file)
    groups = args.group or ["cyclic:2"]
    evals = [eval_report(g, spec, args.externals) for spec in groups]
    report = {"graph": graph_summary(g), "eval": evals[0] if len(evals) == 1 else evals}
    if len(groups) > 1:
        fit = fit_divergence_exponent(kernel_from_graph(g), [make_group(s) for s in groups])
        report["fit"] = {
            "kappa": fit.kappa,
            "constant": None if fit.constant is None else str(fit.constant),
            "table": [{"group": n, "order": o, "N": N} for n, o, N in fit.table],
        }
    return 0, report


def _filters(args) -> frozenset:
    f = set()
    if args.connected:
        f.add("connected")
    if args.one_pi:
        f.add("one_pi")
    if args.dedupe:
        f.add("dedupe")
    return frozenset(f)


def cmd_enumerate(args) -> tuple[int, dict]:
    req = EnumerationRequest(MODELS[args.model], args.vertices, args.legs, _filters(args))
    graphs = []
    count = 0
    for g in enumerate_graphs(req):
        count += 1
        if not args.count_only:
            graphs.append(graph_to_dsl(g))
    body = {
        "model": args.model,
        "vertices": args.vertices,
        "legs": args.legs,
        "filters": sorted(req.filters),
        "count": count,
    }
    if not args.count_only:
        body["graphs"] = graphs
    return 0, {"enumerate": body}


def cmd_census(args) -> tuple[int, dict]:
    rows = census(args.model, args.max_vertices, args.legs)
    return 0, {
        "census": {
            "model": args.model,
            "legs": args.legs,
            "rows": [
                {"order": r.order, "total": r.total, "colorable": r.colorable, "mo_only": r.mo_only, "neither": r.neither}
                for r in rows
            ],
        }
    }


def _legs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_verify(args) -> tuple[int, dict]:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_verify(n, args.max_vertices, args.legs, timing=args.timing) for n in names]
    status = 0 if all(r.passed for r in reports) else 1
    body = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
    return status, {"verify": body}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stranded", description="Stranded group field theory graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    src_help = "graph file in the DSL, '-' for stdin, or catalog:<name> (" + ", ".join(sorted(CATALOG)) + ")"
    for name, fn, helptext in (
        ("check", cmd_check, "structure checks"),
        ("faces", cmd_faces, "faces and their delta words"),
        ("amplitude", cmd_amplitude, "symbolic amplitude and divergence degree"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("file", help=src_help)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("eval", parents=[common], help="brute-force count over finite groups")
    sp.add_argument("file", help=src_help)
    sp.add_argument("--group", action="append", help="cyclic:n, dihedral:n, symmetric:n or quaternion8 (repeatable)")
    sp.add_argument("--externals", default="identity", help="identity or random:<seed>")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("enumerate", parents=[common], help="labeled Wick contractions")
    sp.add_argument("--model", choices=sorted(MODELS), required=True)
    sp.add_argument("--vertices", type=int, required=True)
    sp.add_argument("--legs", type=int, default=0)
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--1pi", dest="one_pi", action="store_true")
    sp.add_argument("--dedupe", action="store_true")
    sp.add_argument("--count-only", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("census", parents=[common], help="deduplicated counts by class")
    sp.add_argument("--model", choices=sorted(MODELS), required=True)
    sp.add_argument("--max-vertices", type=int, required=True)
    sp.add_argument("--legs", type=int, default=0)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("verify", parents=[common], help="exhaustive theorem checks")
    sp.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    sp.add_argument("--max-vertices", type=int, default=3)
    sp.add_argument("--legs", type=_legs, default=DEFAULT_LEGS, help="comma-separated leg counts (default 0,2,4)")
    sp.add_argument("--timing", action="store_true", help="include wall time (output is then not reproducible)")
    sp.set_defaults(func=cmd_verify)
    return p


def run_subcommand(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status, report = args.func(args)
    except (StrandedError, UsageError, KeyError, OSError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        err.write(f"stranded {args.command}: {msg}\n")
        return 2
    emit(report, args.format, out)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    return run_subcommand(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
