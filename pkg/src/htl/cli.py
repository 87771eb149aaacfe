"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 structural or format
error, 3 search incomplete.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import builders, io, search, surface
from .labeling import Labeling, LabelingError, NotProperError, StructureError, canonicalize, verify

EXIT_OK = 0
EXIT_NOT_PROPER = 1
EXIT_STRUCTURE = 2
EXIT_INCOMPLETE = 3


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _labeling_text(lab: Labeling, fmt: str) -> str:
    if fmt == "htl":
        return io.emit_htl(lab)
    if fmt == "json":
        return json.dumps({"n": lab.n, "m": lab.m,
                           "polygons": [list(p) for p in lab.polygons]}, indent=2) + "\n"
    if fmt == "svg":
        return io.render_svg(lab)
    raise StructureError(f"unsupported format {fmt!r}")


def _cmd_build(args) -> int:
    lab = builders.build(args.k)
    _write_output(_labeling_text(lab, args.format), args.out)
    return EXIT_OK


def _cmd_build_oriented(args) -> int:
    lab = builders.build_oriented(args.k)
    _write_output(_labeling_text(lab, args.format), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    lab = io.parse_htl(_read_input(args.input))
    report = verify(lab)
    _write_output(str(report) + "\n", args.out)
    return EXIT_OK if report.proper else EXIT_NOT_PROPER


def _cmd_analyze(args) -> int:
    lab = io.parse_htl(_read_input(args.input))
    _write_output(io.analyze_json(lab), args.out)
    return EXIT_OK if verify(lab).proper else EXIT_NOT_PROPER


def _cmd_search(args) -> int:
    result = search.search_labelings(
        args.k,
        args.n,
        oriented_only=args.oriented,
        limit=args.limit,
        vertex_budget=args.budget,
    )
    if args.format == "json":
        payload = {
            "complete": result.complete,
            "count": len(result.labelings),
            "labelings": [
                {"n": lab.n, "m": lab.m, "polygons": [list(p) for p in lab.polygons]}
                for lab in result.labelings
            ],
        }
        _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        chunks = []
        for i, lab in enumerate(result.labelings):
            chunks.append(f"# solution {i}\n" + io.emit_htl(lab))
        chunks.append(f"# search {'complete' if result.complete else 'INCOMPLETE'}\n")
        _write_output("".join(chunks), args.out)
    return EXIT_OK if result.complete else EXIT_INCOMPLETE


def _cmd_double_cover(args) -> int:
    lab = io.parse_htl(_read_input(args.input))
    cover = surface.double_cover(lab)
    _write_output(_labeling_text(cover, args.format), args.out)
    return EXIT_OK


def _cmd_dual(args) -> int:
    lab = io.parse_htl(_read_input(args.input))
    tiling = surface.dual(surface.glue(lab), lab)
    payload = {
        "triangles": [
            {"label": t.label, "polygons": list(t.polygons)} for t in tiling.triangles
        ],
        "adjacency": [list(e) for e in tiling.adjacency],
        "vertices": tiling.vertices,
        "edges": tiling.edges,
        "faces": tiling.faces,
        "chi": tiling.chi,
    }
    _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_hamilton(args) -> int:
    graph = io.parse_graph(_read_input(args.input))
    walk = search.double_hamiltonian(graph, both_directions=args.oriented)
    if walk is None:
        payload = {"found": False, "both_directions": args.oriented}
        _write_output(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_OK
    lab = search.walk_to_labeling(graph, walk)
    payload = {
        "found": True,
        "both_directions": walk.both_directions(),
        "walk": list(walk.vertices),
        "labeling": {"n": lab.n, "m": lab.m, "polygons": [list(p) for p in lab.polygons]},
        "canonical": [list(p) for p in canonicalize(lab).polygons],
    }
    _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_render(args) -> int:
    lab = io.parse_htl(_read_input(args.input))
    _write_output(io.render_svg(lab), args.out)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="htl",
        description="Build, rewrite, verify and analyze proper labelings of "
                    "polygon families that glue into triangle-tiled surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        return p

    p = add("build", _cmd_build, help="least-area labeling for a polygon size")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("htl", "json", "svg"), default="htl")

    p = add("build-oriented", _cmd_build_oriented,
            help="least-area labeling with an orientable glued surface")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("htl", "json", "svg"), default="htl")

    p = add("verify", _cmd_verify, help="check the proper-labeling conditions")
    p.add_argument("input", nargs="?", default="-")

    p = add("analyze", _cmd_analyze, help="full topology/geometry report (JSON)")
    p.add_argument("input", nargs="?", default="-")

    p = add("search", _cmd_search, help="exhaustive oracle for small instances")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oriented", action="store_true", help="oriented labelings only")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--budget", type=int, default=search.DEFAULT_VERTEX_BUDGET,
                   help="largest allowed corner total n*k")
    p.add_argument("--format", choices=("htl", "json"), default="htl")

    p = add("double-cover", _cmd_double_cover, help="orientation double cover")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=("htl", "json", "svg"), default="htl")

    p = add("dual", _cmd_dual, help="dual triangle tiling (JSON)")
    p.add_argument("input", nargs="?", default="-")

    p = add("hamilton", _cmd_hamilton,
            help="double walk on a cubic graph and its labeling")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--oriented", action="store_true",
                   help="walk each edge once per direction")

    p = add("render", _cmd_render, help="schematic SVG drawing")
    p.add_argument("input", nargs="?", default="-")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.HtlFormatError, StructureError, search.GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE
    except NotProperError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PROPER
    except (search.SearchBudgetError, search.SearchIncompleteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except LabelingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE


if __name__ == "__main__":
    sys.exit(main())
