"""Command-line front end.

Every subcommand parses its input, validates it, and only then computes.
Exit status 0 means success, 1 a parse or validation failure, 2 an
operation whose precondition failed (cyclic field, missing path, mesh that
is not in the image of the bridge, and so on).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dynamics import closed_l_path, l_paths
from .errors import InvalidComplexError, OperationError, ParseError
from .formats import (
    emit_complex,
    emit_line_field,
    emit_vector_field,
    graph_dot,
    parse_document,
    parse_line_field,
    parse_off,
    parse_vector_field,
    report_json,
)
from .linefield import LineField, critical_cells, euler_sum, validate_line_field
from .radial import dlf_to_dvf, dvf_to_dlf
from .simplify import cancel_vertex_face, homotopy_core, merge_critical_faces
from .vectorfield import (
    VectorField,
    closed_x_path,
    count_x_paths,
    critical_cells_dvf,
    euler_sum_dvf,
    validate_vector_field,
    x_paths,
)


def _read_field(path: str, dvf: bool):
    text = Path(path).read_text()
    if dvf:
        return parse_vector_field(text)
    doc = parse_document(text)
    if doc.vmatch:
        return VectorField(doc.complex, doc.vmatch)
    return LineField(doc.complex, doc.match)


def _problems(field) -> list[str]:
    out = field.complex.validate()
    if isinstance(field, LineField):
        out += validate_line_field(field)
    else:
        out += validate_vector_field(field)
    return out


def _valid_or_report(field) -> bool:
    problems = _problems(field)
    for p in problems:
        print(p, file=sys.stderr)
    return not problems


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _half_text(doubled: int) -> str:
    return str(doubled // 2) if doubled % 2 == 0 else f"{doubled}/2"


def _path_text(path) -> str:
    if hasattr(path, "vertices"):
        cells, steps = path.vertices, path.edges
    else:
        cells, steps = path.cells, [w[0] for w in path.witnesses]
    out = cells[0]
    for step, cell in zip(steps, cells[1:]):
        out += f" -{step}-> {cell}"
    return out


# ---- subcommand handlers --------------------------------------------------

def _cmd_validate(args) -> int:
    field = _read_field(args.file, args.dvf)
    if not _valid_or_report(field):
        return 1
    print("OK")
    return 0


def _cmd_euler(args) -> int:
    field = _read_field(args.file, args.dvf)
    if not _valid_or_report(field):
        return 1
    S = field.complex
    chi = len(S.vertices) - len(S.edges) + len(S.faces)
    if isinstance(field, LineField):
        doubled = euler_sum(field)
        matches = doubled == 2 * chi
        shown = _half_text(doubled)
    else:
        total = euler_sum_dvf(field)
        matches = total == chi
        shown = str(total)
    verdict = "OK" if matches else "MISMATCH"
    print(f"chi={chi} index_sum={shown} {verdict}")
    return 0 if matches else 2


def _cmd_critical(args) -> int:
    field = _read_field(args.file, args.dvf)
    if not _valid_or_report(field):
        return 1
    S = field.complex
    crit = (critical_cells if isinstance(field, LineField) else critical_cells_dvf)(field)
    entries = [
        {"cell": c, "dim": S.dim_of(c), "doubled_index": crit[c]} for c in sorted(crit)
    ]
    print(json.dumps(entries, indent=2))
    return 0


def _cmd_check_acyclic(args) -> int:
    field = _read_field(args.file, args.dvf)
    if not _valid_or_report(field):
        return 1
    witness = (closed_l_path if isinstance(field, LineField) else closed_x_path)(field)
    if witness is None:
        print("acyclic")
        return 0
    print(_path_text(witness))
    return 2


def _cmd_paths(args) -> int:
    field = _read_field(args.file, args.dvf)
    if not _valid_or_report(field):
        return 1
    if isinstance(field, LineField):
        found = l_paths(field, args.source, args.target)
        if args.count_only:
            print(len(found))
            return 0
        found = iter(found)
    else:
        if args.count_only:
            print(count_x_paths(field, args.source, args.target))
            return 0
        found = x_paths(field, args.source, args.target)
    shown = 0
    for path in found:
        if shown == args.max:
            print(f"capped at {args.max}")
            break
        print(_path_text(path))
        shown += 1
    return 0


def _cmd_ms_graph(args) -> int:
    field = _read_field(args.file, args.dvf)
    if not _valid_or_report(field):
        return 1
    text = graph_dot(field) if args.format == "dot" else report_json(field)
    _write(text, args.out)
    return 0


def _emit_result(field: LineField, correspondence, args) -> None:
    _write(emit_line_field(field), args.out)
    _write(json.dumps(dict(sorted(correspondence.mapping.items())), indent=2) + "\n", args.map)


def _cmd_simplify(args) -> int:
    L = parse_line_field(Path(args.file).read_text())
    if not _valid_or_report(L):
        return 1
    result = homotopy_core(L)
    _emit_result(result.field, result.correspondence, args)
    if result.degenerate_face is not None:
        print(f"degenerate face: {result.degenerate_face}", file=sys.stderr)
        return 2
    return 0


def _cmd_cancel(args) -> int:
    if (args.faces is None) == (args.vertex is None or args.face is None):
        print("error: give either --faces F G or --vertex V --face F", file=sys.stderr)
        return 2
    L = parse_line_field(Path(args.file).read_text())
    if not _valid_or_report(L):
        return 1
    if args.faces is not None:
        field, correspondence = merge_critical_faces(L, args.faces[0], args.faces[1])
    else:
        field, correspondence = cancel_vertex_face(L, args.vertex, args.face)
    _emit_result(field, correspondence, args)
    return 0


def _cmd_from_dvf(args) -> int:
    V = parse_vector_field(Path(args.file).read_text())
    if not _valid_or_report(V):
        return 1
    _write(emit_line_field(dvf_to_dlf(V)), args.out)
    return 0


def _cmd_to_dvf(args) -> int:
    L = parse_line_field(Path(args.file).read_text())
    if not _valid_or_report(L):
        return 1
    primal, dual = dlf_to_dvf(L)
    _write(emit_vector_field(primal), args.out)
    if args.dual_out is not None:
        _write(emit_vector_field(dual), args.dual_out)
    return 0


def _cmd_import_off(args) -> int:
    S = parse_off(Path(args.file).read_text())
    problems = S.validate()
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 1
    _write(emit_complex(S), args.out)
    return 0


# ---- parser ---------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linefields",
        description="Analyze matchings on closed-surface cell complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("file", help="input file in the native format")
        p.set_defaults(func=handler)
        return p

    for name, handler, text in [
        ("validate", _cmd_validate, "report every structural violation"),
        ("euler", _cmd_euler, "compare the index sum with the Euler characteristic"),
        ("critical", _cmd_critical, "list critical cells with doubled indices"),
        ("check-acyclic", _cmd_check_acyclic, "print a closed path if one exists"),
    ]:
        p = add(name, handler, help=text)
        p.add_argument("--dvf", action="store_true", help="read a bare complex as a vector field")

    p = add("paths", _cmd_paths, help="enumerate paths between two critical cells")
    p.add_argument("--dvf", action="store_true", help="read a bare complex as a vector field")
    p.add_argument("--from", dest="source", required=True, help="source cell")
    p.add_argument("--to", dest="target", required=True, help="target cell")
    p.add_argument("--count-only", action="store_true", help="print only the path count")
    p.add_argument("--max", type=int, default=100, help="cap on listed paths")

    p = add("ms-graph", _cmd_ms_graph, help="emit the topological graph")
    p.add_argument("--dvf", action="store_true", help="read a bare complex as a vector field")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("-o", "--out", help="output path (default stdout)")

    p = add("simplify", _cmd_simplify, help="contract and collapse to the homotopy core")
    p.add_argument("-o", "--out", help="simplified field output path")
    p.add_argument("--map", help="correspondence table output path")

    p = add("cancel", _cmd_cancel, help="merge two faces or cancel a vertex against a face")
    p.add_argument("--faces", nargs=2, metavar=("F", "G"), help="critical faces to merge")
    p.add_argument("--vertex", help="critical vertex to cancel")
    p.add_argument("--face", help="critical face to cancel against")
    p.add_argument("-o", "--out", help="result field output path")
    p.add_argument("--map", help="correspondence table output path")

    p = add("from-dvf", _cmd_from_dvf, help="turn a vector field into a line field")
    p.add_argument("-o", "--out", help="output path (default stdout)")

    p = add("to-dvf", _cmd_to_dvf, help="factor a radial line field into vector fields")
    p.add_argument("-o", "--out", help="first factor output path")
    p.add_argument("--dual-out", help="second factor output path")

    p = add("import-off", _cmd_import_off, help="convert an OFF triangle mesh")
    p.add_argument("-o", "--out", help="output path (default stdout)")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OperationError, InvalidComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
