"""Path dynamics of a line field and its Morse-Smale style decomposition.

An L-path hops from vertex to vertex across matched edges.  Separatrices
connect a critical face to the critical vertices reached by chains starting
at its corners; corridors leave a critical face through an unmatched
boundary occurrence and tunnel through faces with exactly two unmatched
occurrences until they reach a critical face again.  Corridors that never
touch a critical face close up into cycles and mark periodic behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CyclicFieldError, OperationError
from .linefield import LineField, critical_cells, unmatched_boundary_count


@dataclass(frozen=True)
class LPath:
    """Vertices v1..vk with witness edges e1..e(k-1); {vi, ei} is matched
    and v(i+1) is the other endpoint of ei (vi itself for a loop)."""

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    def is_trivial(self) -> bool:
        return not self.edges

    def is_closed(self) -> bool:
        return len(self.vertices) > 1 and self.vertices[0] == self.vertices[-1]


@dataclass(frozen=True)
class Separatrix:
    """One edge of the topological graph, from `source` down to `target`.

    `occurrence` names the boundary occurrence of the path's first cell on
    the source cell (a walk position, or an endpoint slot for vector
    fields), so parallel separatrices stay distinct.  `path` is the LPath
    or XPath witness.
    """

    source: str
    target: str
    occurrence: int
    path: object


@dataclass(frozen=True)
class TopologicalGraph:
    """Multigraph on the critical cells; edges are separatrices."""

    vertices: tuple[str, ...]
    edges: tuple[Separatrix, ...]

    def multiplicity(self, source: str, target: str) -> int:
        return sum(1 for s in self.edges if s.source == source and s.target == target)


@dataclass(frozen=True)
class Crossing:
    """One step of a corridor: leave through `depart`, an unmatched (face,
    position) occurrence of `edge`, and enter at the edge's other
    occurrence `arrive`."""

    edge: str
    depart: tuple[str, int]
    arrive: tuple[str, int]


@dataclass(frozen=True)
class Corridor:
    start: str
    end: str
    crossings: tuple[Crossing, ...]
    interior: tuple[str, ...]


@dataclass(frozen=True)
class ClosedCorridor:
    """A corridor cycle through faces with two unmatched occurrences,
    touching no critical face."""

    faces: tuple[str, ...]
    crossings: tuple[Crossing, ...]


@dataclass(frozen=True)
class DecompositionReport:
    field: LineField
    graph: TopologicalGraph
    corridors: tuple[Corridor, ...]
    closed_corridors: tuple[ClosedCorridor, ...]
    regions: int
    flags: tuple[str, ...]


# ---- L-paths --------------------------------------------------------------


def _step_maps(L: LineField) -> tuple[dict[str, str], dict[str, str]]:
    step = {}
    witness = {}
    for v, e in L.matching:
        tail, head = L.complex.edges[e]
        step[v] = head if v == tail else tail
        witness[v] = e
    return step, witness


def closed_l_path(L: LineField) -> LPath | None:
    """A closed L-path, rotated to start at its least vertex, or None."""
    step, witness = _step_maps(L)
    done: set[str] = set()
    for start in sorted(step):
        if start in done:
            continue
        chain = [start]
        on_chain = {start}
        while True:
            nxt = step.get(chain[-1])
            if nxt is None or nxt in done:
                break
            if nxt in on_chain:
                k = chain.index(nxt)
                cycle = chain[k:]
                m = cycle.index(min(cycle))
                cycle = cycle[m:] + cycle[:m]
                cycle.append(cycle[0])
                return LPath(tuple(cycle), tuple(witness[v] for v in cycle[:-1]))
            chain.append(nxt)
            on_chain.add(nxt)
        done.update(chain)
    return None


def is_acyclic(L: LineField) -> bool:
    return closed_l_path(L) is None


def _require_acyclic(L: LineField):
    closed = closed_l_path(L)
    if closed is not None:
        raise CyclicFieldError(
            "line field has a closed path through " + closed.vertices[0],
            witness=closed,
        )


def l_paths(L: LineField, source: str, target: str) -> list[LPath]:
    """All L-paths from source to target; at most one exists, the trivial
    path counting when source == target."""
    _require_acyclic(L)
    for v in (source, target):
        if v not in L.complex.vertices:
            raise OperationError(f"{v} is not a vertex of the complex")
    step, witness = _step_maps(L)
    cells = [source]
    edges = []
    while True:
        cur = cells[-1]
        if cur == target:
            return [LPath(tuple(cells), tuple(edges))]
        if cur not in step:
            return []
        edges.append(witness[cur])
        cells.append(step[cur])


def _maximal_chain(step, witness, start: str) -> LPath:
    cells = [start]
    edges = []
    while cells[-1] in step:
        edges.append(witness[cells[-1]])
        cells.append(step[cells[-1]])
    return LPath(tuple(cells), tuple(edges))


# ---- topological graph ----------------------------------------------------


def topological_graph(L: LineField) -> TopologicalGraph:
    """Separatrices from each critical face to the critical vertices its
    corner chains reach.

    One separatrix per unmatched occurrence on the face's walk, witnessed
    by the chain from the vertex where that occurrence starts.  Matched
    occurrences carry none: simplification contracts them out of the walk,
    merging their corners into neighbours, so counting them (or dropping
    anything else) would break the graph-preservation property of
    homotopy_core.  A critical face therefore emits exactly c separatrices.
    """
    _require_acyclic(L)
    S = L.complex
    crit = critical_cells(L)
    matched = L.matched_edges()
    step, witness = _step_maps(L)
    chains: dict[str, LPath] = {}
    edges = []
    for f in sorted(c for c in crit if c in S.faces):
        walk = S.faces[f]
        for i, (_sign, e) in enumerate(walk):
            if e in matched:
                continue
            u = S.corner_vertex(f, i)
            if u not in chains:
                chains[u] = _maximal_chain(step, witness, u)
            path = chains[u]
            edges.append(Separatrix(f, path.vertices[-1], i, path))
    return TopologicalGraph(tuple(sorted(crit)), tuple(edges))


# ---- corridors ------------------------------------------------------------


def _corridor_structure(L: LineField):
    """Per-face unmatched counts, the partner map pairing the two
    occurrences of each unmatched edge, and the sibling map pairing the two
    unmatched occurrences of each count-2 face."""
    S = L.complex
    matched = L.matched_edges()
    counts = {f: unmatched_boundary_count(L, f) for f in S.faces}
    partner: dict[tuple[str, int], tuple[str, int]] = {}
    for e in S.edges:
        if e in matched:
            continue
        occs = S.edge_occurrences(e)
        partner[occs[0]] = occs[1]
        partner[occs[1]] = occs[0]
    sibling: dict[tuple[str, int], tuple[str, int]] = {}
    for f, walk in S.faces.items():
        if counts[f] != 2:
            continue
        a, b = [(f, i) for i, (_s, e) in enumerate(walk) if e not in matched]
        sibling[a] = b
        sibling[b] = a
    unmatched_positions = {
        f: [i for i, (_s, e) in enumerate(S.faces[f]) if e not in matched]
        for f in S.faces
    }
    return counts, partner, sibling, unmatched_positions


def _trace_corridor(S, counts, partner, sibling, start_occ, visited=None) -> Corridor:
    crossings = []
    interior = []
    cur = start_occ
    while True:
        if visited is not None:
            visited.add(cur)
        edge = S.faces[cur[0]][cur[1]][1]
        arrive = partner[cur]
        if visited is not None:
            visited.add(arrive)
        crossings.append(Crossing(edge, cur, arrive))
        g = arrive[0]
        if counts[g] != 2:
            return Corridor(start_occ[0], g, tuple(crossings), tuple(interior))
        interior.append(g)
        cur = sibling[arrive]


def corridors_from(L: LineField, face: str) -> list[Corridor]:
    """One corridor per unmatched occurrence on the walk of a critical face.

    Each trace crosses to the other occurrence of its edge and keeps
    tunnelling through count-2 faces via their other unmatched occurrence;
    it always terminates on a critical face, possibly the starting one.
    """
    S = L.complex
    if face not in S.faces:
        raise OperationError(f"{face} is not a face of the complex")
    counts, partner, sibling, positions = _corridor_structure(L)
    if counts[face] == 2:
        raise OperationError(f"face {face} is not critical")
    return [
        _trace_corridor(S, counts, partner, sibling, (face, i))
        for i in positions[face]
    ]


def scan_closed_corridors(L: LineField) -> list[ClosedCorridor]:
    """Corridor cycles disjoint from every critical face.

    Works for cyclic fields too; a closed corridor is a property of the
    unmatched occurrence structure alone.
    """
    S = L.complex
    counts, partner, sibling, positions = _corridor_structure(L)
    visited: set[tuple[str, int]] = set()
    for f in sorted(S.faces):
        if counts[f] == 2:
            continue
        for i in positions[f]:
            _trace_corridor(S, counts, partner, sibling, (f, i), visited)
    return _collect_cycles(S, counts, partner, sibling, positions, visited)


def _collect_cycles(S, counts, partner, sibling, positions, visited):
    out = []
    for f in sorted(S.faces):
        if counts[f] != 2:
            continue
        for i in positions[f]:
            start = (f, i)
            if start in visited:
                continue
            crossings = []
            faces = []
            cur = start
            while True:
                visited.add(cur)
                edge = S.faces[cur[0]][cur[1]][1]
                arrive = partner[cur]
                visited.add(arrive)
                crossings.append(Crossing(edge, cur, arrive))
                faces.append(arrive[0])
                cur = sibling[arrive]
                if cur == start:
                    break
            out.append(ClosedCorridor(tuple(faces), tuple(crossings)))
    return out


def ms_decomposition(L: LineField) -> DecompositionReport:
    """Topological graph, all corridors, and closed corridors of the field.

    Each undirected corridor is traced once from each end; `regions` counts
    them up to direction.  Closed corridors are flagged as periodic
    components.
    """
    _require_acyclic(L)
    graph = topological_graph(L)
    S = L.complex
    counts, partner, sibling, positions = _corridor_structure(L)
    visited: set[tuple[str, int]] = set()
    corridors = []
    for f in sorted(S.faces):
        if counts[f] == 2:
            continue
        for i in positions[f]:
            corridors.append(
                _trace_corridor(S, counts, partner, sibling, (f, i), visited)
            )
    closed = _collect_cycles(S, counts, partner, sibling, positions, visited)
    undirected = set()
    for corr in corridors:
        key = tuple((c.depart, c.arrive) for c in corr.crossings)
        rkey = tuple((c.arrive, c.depart) for c in reversed(corr.crossings))
        undirected.add(min(key, rkey))
    return DecompositionReport(
        field=L,
        graph=graph,
        corridors=tuple(corridors),
        closed_corridors=tuple(closed),
        regions=len(undirected),
        flags=("periodic component",) if closed else (),
    )
