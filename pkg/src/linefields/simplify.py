"""Simplification moves for acyclic line fields.

Two local moves shrink the complex without touching the critical cells:
contracting a matched vertex-edge pair, and collapsing a two-sided
non-critical face.  Iterating both yields a homotopy core with empty
matching.  Two further moves trade critical cells away: merging two
critical faces along a unique corridor, and cancelling a critical vertex
against a critical face along a unique separatrix.  Every move returns the
new field together with a cell correspondence.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dynamics import _maximal_chain, _require_acyclic, _step_maps, corridors_from
from .errors import (
    CancellationError,
    DegenerateOperationError,
    OperationError,
)
from .linefield import LineField, critical_cells, unmatched_boundary_count
from .surface import SurfaceComplex, delete_edge_merge_faces, fresh_id, split_face


@dataclass(frozen=True)
class CellCorrespondence:
    """Total map from the cells of the original complex into the result.

    Vertices map to the vertex they were merged into; deleted edges and
    faces map to the cell that absorbed them.  Critical cells always map
    injectively, so they can be located in the simplified field.
    """

    mapping: dict[str, str]

    def image_of(self, cell: str) -> str:
        return self.mapping[cell]

    def preimages(self, cell: str) -> tuple[str, ...]:
        return tuple(sorted(c for c, img in self.mapping.items() if img == cell))

    def then(self, later: CellCorrespondence) -> CellCorrespondence:
        """Composition: self first, `later` applied to the images."""
        return CellCorrespondence(
            {c: later.mapping[img] for c, img in self.mapping.items()}
        )

    @classmethod
    def identity(cls, S: SurfaceComplex) -> CellCorrespondence:
        return cls({c: c for c, _d in S.cells()})


@dataclass(frozen=True)
class CoreResult:
    """Outcome of homotopy_core; degenerate_face is set when simplification
    stopped at a non-critical face it cannot remove."""

    field: LineField
    correspondence: CellCorrespondence
    degenerate_face: str | None = None


# ---- elementary moves ----------------------------------------------------


def contract_matched_pair(
    L: LineField, v: str, e: str
) -> tuple[LineField, CellCorrespondence]:
    """Contract the matched edge e, merging v into its other endpoint.

    The occurrences of e disappear from all walks; every other pair stays
    matched and valid.  A face whose walk consists of e alone cannot
    survive the contraction and raises DegenerateOperationError.
    """
    S = L.complex
    if (v, e) not in L.matching:
        raise OperationError(f"({v}, {e}) is not a matched pair")
    tail, head = S.edges[e]
    if tail == head:
        raise OperationError(f"cannot contract the matched loop {e}")
    keep = head if v == tail else tail
    faces = {}
    for f, walk in S.faces.items():
        trimmed = tuple(occ for occ in walk if occ[1] != e)
        if not trimmed:
            raise DegenerateOperationError(
                f"contracting {e} would leave face {f} with an empty boundary"
            )
        faces[f] = trimmed
    edges = {
        eid: (keep if t == v else t, keep if h == v else h)
        for eid, (t, h) in S.edges.items()
        if eid != e
    }
    T = replace(S, vertices=S.vertices - {v}, edges=edges, faces=faces)
    mapping = {c: c for c, _d in S.cells()}
    mapping[v] = keep
    mapping[e] = keep
    return LineField(T, L.matching - {(v, e)}), CellCorrespondence(mapping)


def collapse_noncritical_face(
    L: LineField, f: str
) -> tuple[LineField, CellCorrespondence]:
    """Remove a two-sided face by deleting the smaller of its two edges.

    Applicable once the matching is empty, so a non-critical face is
    exactly a walk of length two.  The deleted edge's other face absorbs f
    and keeps its identifier.
    """
    S = L.complex
    if L.matching:
        raise OperationError("matched pairs remain; contract them before collapsing")
    if f not in S.faces:
        raise OperationError(f"{f} is not a face of the complex")
    walk = S.faces[f]
    if len(walk) != 2:
        raise OperationError(f"face {f} is critical")
    ea, eb = walk[0][1], walk[1][1]
    if ea == eb:
        raise DegenerateOperationError(
            f"face {f} repeats {ea} twice; collapsing needs two distinct edges"
        )
    gone = min(ea, eb)
    neighbor = next(fc for fc, _p in S.edge_occurrences(gone) if fc != f)
    T = delete_edge_merge_faces(S, gone, neighbor)
    mapping = {c: c for c, _d in S.cells()}
    mapping[f] = neighbor
    mapping[gone] = neighbor
    return LineField(T, frozenset()), CellCorrespondence(mapping)


# ---- homotopy core -------------------------------------------------------


def _contraction_order(L: LineField) -> list[tuple[str, str]]:
    """Pairs ordered so no pair's path target is contracted after it."""
    S = L.complex
    partner = dict(L.matching)
    remaining = set(partner)
    order = []
    while remaining:
        ready = []
        for v in remaining:
            tail, head = S.edges[partner[v]]
            if (head if v == tail else tail) not in remaining:
                ready.append(v)
        v = min(ready)
        order.append((v, partner[v]))
        remaining.discard(v)
    return order


def homotopy_core(L: LineField) -> CoreResult:
    """Contract every matched pair, then collapse every removable face.

    The result has an empty matching and, unless a degenerate face stops
    the collapse phase, only critical faces.  Critical cells, their
    indices, and the topological graph survive under the correspondence.
    """
    _require_acyclic(L)
    cur = L
    mapping = {c: c for c, _d in L.complex.cells()}
    for v, e in _contraction_order(L):
        try:
            cur, step = contract_matched_pair(cur, v, e)
        except DegenerateOperationError:
            bad = min(
                fc
                for fc, walk in cur.complex.faces.items()
                if all(ee == e for _s, ee in walk)
            )
            return CoreResult(cur, CellCorrespondence(mapping), degenerate_face=bad)
        mapping = {c: step.mapping[img] for c, img in mapping.items()}
    while True:
        bigons = [
            fc for fc in sorted(cur.complex.faces) if len(cur.complex.faces[fc]) == 2
        ]
        removable = [
            fc
            for fc in bigons
            if cur.complex.faces[fc][0][1] != cur.complex.faces[fc][1][1]
        ]
        if not removable:
            return CoreResult(
                cur,
                CellCorrespondence(mapping),
                degenerate_face=bigons[0] if bigons else None,
            )
        cur, step = collapse_noncritical_face(cur, removable[0])
        mapping = {c: step.mapping[img] for c, img in mapping.items()}


# ---- cancellation --------------------------------------------------------


def merge_critical_faces(
    L: LineField, f: str, g: str
) -> tuple[LineField, CellCorrespondence]:
    """Merge two critical faces along the unique corridor joining them.

    All crossing edges of the corridor are deleted; f, g, and the interior
    faces become one face whose doubled index is the sum of the two
    inputs'.  The matching is untouched, so acyclicity is preserved.
    """
    S = L.complex
    for x in (f, g):
        if x not in S.faces:
            raise OperationError(f"{x} is not a face of the complex")
    if f == g:
        raise OperationError("cannot merge a face with itself")
    crit = critical_cells(L)
    for x in (f, g):
        if x not in crit:
            raise OperationError(f"face {x} is not critical")
    hits = [c for c in corridors_from(L, f) if c.end == g]
    if not hits:
        raise CancellationError(f"no corridor from {f} to {g}")
    if len(hits) > 1:
        raise CancellationError(
            f"merging needs a unique corridor from {f} to {g}; found {len(hits)}"
        )
    corridor = hits[0]
    merged_id = fresh_id(f"m_{f}_{g}", {c for c, _d in S.cells()})
    T = S
    for crossing in corridor.crossings:
        T = delete_edge_merge_faces(T, crossing.edge, merged_id)
    problems = T.validate()
    if problems:
        raise DegenerateOperationError(
            f"merging {f} and {g} breaks the complex: {problems[0]}"
        )
    mapping = {c: c for c, _d in S.cells()}
    for cell in (f, g, *corridor.interior):
        mapping[cell] = merged_id
    for crossing in corridor.crossings:
        mapping[crossing.edge] = merged_id
    return LineField(T, L.matching), CellCorrespondence(mapping)


def cancel_vertex_face(
    L: LineField, v: str, f: str
) -> tuple[LineField, CellCorrespondence]:
    """Cancel a critical vertex against a negative-index critical face.

    Reverses the unique matched-step path from a corner of f down to v and
    splits f along a new diagonal matched to the path's first vertex.  The
    split-off face takes exactly two unmatched occurrences and is
    non-critical; the rest of f keeps the remaining index.

    Uniqueness is counted over the chains of every corner occurrence of f,
    including chains that revisit f's own boundary edges.  Counting only
    graph separatrices would admit reversals that close a cycle through an
    excluded chain.
    """
    S = L.complex
    if v not in S.vertices:
        raise OperationError(f"{v} is not a vertex of the complex")
    if f not in S.faces:
        raise OperationError(f"{f} is not a face of the complex")
    if v in L.matched_vertices():
        raise OperationError(f"{v} is matched, not critical")
    c = unmatched_boundary_count(L, f)
    if c < 3:
        raise OperationError(
            f"face {f} has doubled index {2 - c}; cancellation needs a negative index"
        )
    _require_acyclic(L)
    step, edge_of = _step_maps(L)
    walk = S.faces[f]
    n = len(walk)
    hits = []
    for pos in range(n):
        chain = _maximal_chain(step, edge_of, S.corner_vertex(f, pos))
        if chain.vertices[-1] == v:
            hits.append((pos, chain))
    if not hits:
        raise CancellationError(f"no path from {f} to {v}")
    if len(hits) > 1:
        raise CancellationError(
            f"cancellation needs a unique path from {f} to {v}; found {len(hits)}"
        )
    p, path = hits[0]
    u1 = path.vertices[0]
    matched = L.matched_edges()
    q = None
    for k in range(1, n):
        cand = (p + k) % n
        count = sum(
            1
            for j in range((p - cand) % n)
            if walk[(cand + j) % n][1] not in matched
        )
        if count < 2:
            break
        if count == 2 and S.corner_vertex(f, cand) != u1:
            q = cand
            break
    if q is None:
        raise DegenerateOperationError(
            f"every admissible diagonal of {f} is a loop at {u1}"
        )
    taken = {cid for cid, _d in S.cells()}
    diag = fresh_id(f"d_{f}", taken)
    taken.add(diag)
    part_entry = fresh_id(f"{f}_1", taken)
    taken.add(part_entry)
    part_off = fresh_id(f"{f}_0", taken)
    T = split_face(S, f, p, q, diag, part_entry, part_off)
    pairs = set(L.matching)
    for i, e_i in enumerate(path.edges):
        pairs.discard((path.vertices[i], e_i))
        pairs.add((path.vertices[i + 1], e_i))
    pairs.add((u1, diag))
    mapping = {cid: cid for cid, _d in S.cells()}
    mapping[f] = part_entry
    return LineField(T, frozenset(pairs)), CellCorrespondence(mapping)
