"""Text formats: the native surface file, OFF triangle meshes, DOT, JSON.

The native format is line oriented with `#` comments and a fixed section
order: one `surface` header, then `vertex`, `edge`, and `face ... walk`
declarations, then optional matching lines.  `match v e` lines describe a
vertex-edge matching; `vmatch lower upper` lines describe a cell matching
across one dimension.  A file may carry one kind of matching, not both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dynamics import TopologicalGraph, ms_decomposition, topological_graph
from .errors import ParseError
from .linefield import LineField, critical_cells
from .surface import SurfaceComplex, occ_text
from .vectorfield import VectorField, critical_cells_dvf, topological_graph_dvf

_SECTIONS = {"surface": 0, "vertex": 1, "edge": 2, "face": 3, "match": 4, "vmatch": 4}


@dataclass(frozen=True)
class Document:
    """One parsed file: a complex plus whichever matching lines it had."""

    complex: SurfaceComplex
    match: frozenset[tuple[str, str]]
    vmatch: frozenset[tuple[str, str]]

    def kind(self) -> str:
        if self.vmatch:
            return "vector"
        if self.match:
            return "line"
        return "complex"


def parse_document(text: str) -> Document:
    name = None
    vertices: list[str] = []
    edges: dict[str, tuple[str, str]] = {}
    faces: dict[str, tuple] = {}
    match: list[tuple[str, str]] = []
    vmatch: list[tuple[str, str]] = []
    seen: set[str] = set()
    rank = -1
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if keyword not in _SECTIONS:
            raise ParseError(f"unknown directive {keyword}", line=num)
        if _SECTIONS[keyword] < rank:
            raise ParseError(f"{keyword} line out of section order", line=num)
        rank = _SECTIONS[keyword]
        if keyword == "surface":
            if name is not None:
                raise ParseError("second surface line", line=num)
            if len(tokens) != 2:
                raise ParseError("surface line needs exactly one name", line=num)
            name = tokens[1]
        elif keyword == "vertex":
            if name is None:
                raise ParseError("vertex line before the surface line", line=num)
            if len(tokens) != 2:
                raise ParseError("vertex line needs exactly one id", line=num)
            if tokens[1] in seen:
                raise ParseError(f"duplicate id {tokens[1]}", line=num)
            seen.add(tokens[1])
            vertices.append(tokens[1])
        elif keyword == "edge":
            if len(tokens) != 4:
                raise ParseError("edge line needs id, tail, head", line=num)
            eid, tail, head = tokens[1:]
            if eid in seen:
                raise ParseError(f"duplicate id {eid}", line=num)
            for v in (tail, head):
                if v not in vertices:
                    raise ParseError(f"edge {eid} references unknown vertex {v}", line=num)
            seen.add(eid)
            edges[eid] = (tail, head)
        elif keyword == "face":
            if len(tokens) < 4 or tokens[2] != "walk":
                raise ParseError("face line needs id, walk keyword, occurrences", line=num)
            fid = tokens[1]
            if fid in seen:
                raise ParseError(f"duplicate id {fid}", line=num)
            walk = []
            for tok in tokens[3:]:
                if len(tok) < 2 or tok[0] not in "+-":
                    raise ParseError(f"occurrence {tok} needs a +/- sign", line=num)
                if tok[1:] not in edges:
                    raise ParseError(f"walk references unknown edge {tok[1:]}", line=num)
                walk.append((1 if tok[0] == "+" else -1, tok[1:]))
            seen.add(fid)
            faces[fid] = tuple(walk)
        elif keyword == "match":
            if vmatch:
                raise ParseError("match line in a vmatch file", line=num)
            if len(tokens) != 3:
                raise ParseError("match line needs vertex and edge", line=num)
            match.append((tokens[1], tokens[2]))
        else:
            if match:
                raise ParseError("vmatch line in a match file", line=num)
            if len(tokens) != 3:
                raise ParseError("vmatch line needs lower and upper cell", line=num)
            vmatch.append((tokens[1], tokens[2]))
    if name is None:
        raise ParseError("missing surface line")
    S = SurfaceComplex(frozenset(vertices), edges, faces, name=name)
    return Document(S, frozenset(match), frozenset(vmatch))


def parse_complex(text: str) -> SurfaceComplex:
    doc = parse_document(text)
    if doc.match or doc.vmatch:
        raise ParseError("matching lines in a bare complex file")
    return doc.complex


def parse_line_field(text: str) -> LineField:
    doc = parse_document(text)
    if doc.vmatch:
        raise ParseError("vmatch lines describe a vector field, not a line field")
    return LineField(doc.complex, doc.match)


def parse_vector_field(text: str) -> VectorField:
    doc = parse_document(text)
    if doc.match:
        raise ParseError("match lines describe a line field, not a vector field")
    return VectorField(doc.complex, doc.vmatch)


def emit_complex(S: SurfaceComplex) -> str:
    lines = [f"surface {S.name}"]
    for v in sorted(S.vertices):
        lines.append(f"vertex {v}")
    for e in sorted(S.edges):
        tail, head = S.edges[e]
        lines.append(f"edge {e} {tail} {head}")
    for f in sorted(S.faces):
        lines.append(f"face {f} walk " + " ".join(occ_text(o) for o in S.faces[f]))
    return "\n".join(lines) + "\n"


def emit_line_field(L: LineField) -> str:
    out = emit_complex(L.complex)
    for v, e in sorted(L.matching):
        out += f"match {v} {e}\n"
    return out


def emit_vector_field(V: VectorField) -> str:
    out = emit_complex(V.complex)
    for lo, up in sorted(V.matching):
        out += f"vmatch {lo} {up}\n"
    return out


# ---- OFF import -----------------------------------------------------------

def parse_off(text: str) -> SurfaceComplex:
    """Build a complex from an ASCII OFF triangle mesh.

    Triangles are oriented as listed; edges are identified by unordered
    vertex pair.  A pair on three triangles is a hard error, but a pair on
    only one is left for validation to report, so near-miss meshes still
    parse.
    """
    rows = []
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((num, line.split()))
    if not rows:
        raise ParseError("empty OFF file")
    pos = 0
    if rows[0][1] == ["OFF"]:
        pos = 1
    if pos >= len(rows) or len(rows[pos][1]) != 3:
        raise ParseError("missing vertex/face/edge count line", line=rows[min(pos, len(rows) - 1)][0])
    try:
        n_vertices, n_faces, _n_edges = (int(t) for t in rows[pos][1])
    except ValueError:
        raise ParseError("counts are not integers", line=rows[pos][0])
    pos += 1
    if len(rows) - pos < n_vertices + n_faces:
        raise ParseError(f"expected {n_vertices} vertex and {n_faces} face lines")
    pos += n_vertices  # coordinates are ignored
    vertices = [f"v{i}" for i in range(n_vertices)]
    edges: dict[str, tuple[str, str]] = {}
    edge_by_pair: dict[tuple[int, int], str] = {}
    uses: dict[str, int] = {}
    faces: dict[str, tuple] = {}
    for k in range(n_faces):
        num, tokens = rows[pos + k]
        try:
            count = int(tokens[0])
            indices = [int(t) for t in tokens[1 : 1 + count]]
        except (ValueError, IndexError):
            raise ParseError("bad face line", line=num)
        if count != 3 or len(indices) != 3:
            raise ParseError("only triangle faces are supported", line=num)
        if any(i < 0 or i >= n_vertices for i in indices):
            raise ParseError("vertex index out of range", line=num)
        walk = []
        for a, b in zip(indices, indices[1:] + indices[:1]):
            pair = (min(a, b), max(a, b))
            if pair not in edge_by_pair:
                eid = f"e{a}_{b}"
                edge_by_pair[pair] = eid
                edges[eid] = (f"v{a}", f"v{b}")
                uses[eid] = 0
            eid = edge_by_pair[pair]
            if uses[eid] == 2:
                raise ParseError(
                    f"edge between v{pair[0]} and v{pair[1]} lies on three faces", line=num
                )
            uses[eid] += 1
            walk.append((1 if edges[eid] == (f"v{a}", f"v{b}") else -1, eid))
        faces[f"f{k}"] = tuple(walk)
    return SurfaceComplex(frozenset(vertices), edges, faces, name="off_import")


# ---- DOT and JSON export --------------------------------------------------

def _index_label(cell: str, doubled: int) -> str:
    if doubled % 2 == 0:
        return f"{cell} (idx={doubled // 2})"
    return f"{cell} (idx={doubled}/2)"


def _graph_and_critical(field):
    if isinstance(field, LineField):
        return topological_graph(field), critical_cells(field)
    return topological_graph_dvf(field), critical_cells_dvf(field)


_SHAPES = {0: "circle", 1: "diamond", 2: "box"}


def graph_dot(field) -> str:
    """Topological graph in DOT, byte stable for a given field.

    Critical vertices are circles, faces boxes, and for cell matchings
    critical edges diamonds.  Node order follows the sorted critical set;
    edge order follows walk positions of the source cells.
    """
    graph, crit = _graph_and_critical(field)
    S = field.complex
    lines = ["digraph topological_graph {"]
    for cell in graph.vertices:
        shape = _SHAPES[S.dim_of(cell)]
        lines.append(f'  "{cell}" [shape={shape}, label="{_index_label(cell, crit[cell])}"];')
    for sep in graph.edges:
        lines.append(f'  "{sep.source}" -> "{sep.target}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _complex_json(S: SurfaceComplex) -> dict:
    return {
        "name": S.name,
        "vertices": sorted(S.vertices),
        "edges": {e: list(S.edges[e]) for e in sorted(S.edges)},
        "faces": {f: [occ_text(o) for o in S.faces[f]] for f in sorted(S.faces)},
    }


def _critical_json(S: SurfaceComplex, crit: dict[str, int]) -> list[dict]:
    return [
        {"cell": c, "dim": S.dim_of(c), "doubled_index": crit[c]} for c in sorted(crit)
    ]


def _separatrix_json(sep) -> dict:
    entry = {"source": sep.source, "target": sep.target, "occurrence": sep.occurrence}
    if hasattr(sep.path, "vertices"):
        entry["vertices"] = list(sep.path.vertices)
        entry["edges"] = list(sep.path.edges)
    else:
        entry["cells"] = list(sep.path.cells)
        entry["witnesses"] = [list(w) for w in sep.path.witnesses]
    return entry


def _crossing_json(crossing) -> dict:
    return {
        "edge": crossing.edge,
        "depart": list(crossing.depart),
        "arrive": list(crossing.arrive),
    }


def report_json(field) -> str:
    """Full decomposition report as deterministic JSON.

    Cell matchings have no corridor notion, so those arrays stay empty for
    them.  All index values are doubled integers.
    """
    if isinstance(field, LineField):
        report = ms_decomposition(field)
        graph, crit = report.graph, critical_cells(field)
        matching = [list(p) for p in sorted(field.matching)]
        corridors = [
            {
                "start": c.start,
                "end": c.end,
                "interior": list(c.interior),
                "crossings": [_crossing_json(x) for x in c.crossings],
            }
            for c in report.corridors
        ]
        closed = [
            {
                "faces": list(c.faces),
                "crossings": [_crossing_json(x) for x in c.crossings],
            }
            for c in report.closed_corridors
        ]
    else:
        graph, crit = _graph_and_critical(field)
        matching = [list(p) for p in sorted(field.matching)]
        corridors = []
        closed = []
    S = field.complex
    payload = {
        "complex": _complex_json(S),
        "matching": matching,
        "critical": _critical_json(S, crit),
        "separatrices": [_separatrix_json(s) for s in graph.edges],
        "corridors": corridors,
        "closed_corridors": closed,
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_graph_json(text: str) -> TopologicalGraph:
    """Rebuild the multigraph recorded by report_json, witnesses dropped."""
    from .dynamics import Separatrix

    payload = json.loads(text)
    vertices = tuple(entry["cell"] for entry in payload["critical"])
    edges = tuple(
        Separatrix(s["source"], s["target"], s["occurrence"], None)
        for s in payload["separatrices"]
    )
    return TopologicalGraph(vertices, edges)
