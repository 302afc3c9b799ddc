"""Corner quadrangulation and the vector-field/line-field bridge.

Every complex has a radial refinement: a vertex on each original vertex
and face, an edge across each corner, and one quadrilateral wrapped
around each original edge.  The refinement of a complex and of its dual
coincide, which is what lets a vector field trade its edge pairs for
vertex-diagonal pairs of a line field on the refinement, and lets the
factorization below take such a line field back to the primal and dual
vector fields it came from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInImageError
from .linefield import LineField, validate_line_field
from .surface import SurfaceComplex, delete_edge_merge_faces, fresh_id, split_face
from .vectorfield import VectorField


@dataclass(frozen=True)
class RadialComplex:
    """A quadrangulation together with its cell bookkeeping.

    vertex_origin maps each radial vertex to the vertex or face it stands
    on; face_origin maps each quadrilateral to the edge it surrounds.
    """

    complex: SurfaceComplex
    vertex_origin: dict[str, str]
    face_origin: dict[str, str]


def radial_decomposition(S: SurfaceComplex) -> RadialComplex:
    """Refine S into one quadrilateral per edge.

    The quadrilateral of an edge strings together the four corner edges
    flanking the edge's two walk occurrences.  When the occurrences carry
    opposite signs the two flanks chain head-to-tail; when they carry the
    same sign the second flank is traversed the other way around.
    """
    names: set[str] = set()
    radial_vertex: dict[str, str] = {}
    vertex_origin: dict[str, str] = {}
    for cell in sorted(S.vertices) + sorted(S.faces):
        wid = fresh_id(f"w_{cell}", names)
        names.add(wid)
        radial_vertex[cell] = wid
        vertex_origin[wid] = cell

    side: dict[tuple[str, int], str] = {}
    edges: dict[str, tuple[str, str]] = {}
    for f in sorted(S.faces):
        for i in range(len(S.faces[f])):
            rid = fresh_id(f"r_{f}_{i}", names)
            names.add(rid)
            side[(f, i)] = rid
            edges[rid] = (radial_vertex[S.corner_vertex(f, i)], radial_vertex[f])

    faces: dict[str, tuple] = {}
    face_origin: dict[str, str] = {}
    for e in sorted(S.edges):
        (f1, i1), (f2, i2) = S.edge_occurrences(e)
        s1 = side[(f1, i1)]
        s2 = side[(f1, (i1 + 1) % len(S.faces[f1]))]
        s3 = side[(f2, i2)]
        s4 = side[(f2, (i2 + 1) % len(S.faces[f2]))]
        qid = fresh_id(f"q_{e}", names)
        names.add(qid)
        if S.faces[f1][i1][0] != S.faces[f2][i2][0]:
            faces[qid] = ((1, s1), (-1, s2), (1, s3), (-1, s4))
        else:
            faces[qid] = ((1, s1), (-1, s2), (1, s4), (-1, s3))
        face_origin[qid] = e

    R = SurfaceComplex(
        frozenset(vertex_origin), edges, faces, name=f"radial_{S.name}"
    )
    return RadialComplex(R, vertex_origin, face_origin)


def _bipartition(S: SurfaceComplex):
    """Two-color the 1-skeleton; None when an odd cycle obstructs.

    The class holding the lexicographically least vertex comes first, so
    the primal/dual labeling below is deterministic.
    """
    adj: dict[str, list[str]] = {v: [] for v in S.vertices}
    for tail, head in S.edges.values():
        adj[tail].append(head)
        adj[head].append(tail)
    color: dict[str, int] = {}
    for start in sorted(S.vertices):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x not in color:
                    color[x] = 1 - color[u]
                    stack.append(x)
                elif color[x] == color[u]:
                    return None
    first = frozenset(v for v, c in color.items() if c == 0)
    return first, frozenset(S.vertices - first)


def is_radial(S: SurfaceComplex) -> bool:
    """Whether S is the radial refinement of some complex.

    Checks the bipartite quadrilateral characterization, plus a single
    link cycle at every vertex so that pinched points are refused.
    """
    if S.validate():
        return False
    if any(len(walk) != 4 for walk in S.faces.values()):
        return False
    if _bipartition(S) is None:
        return False
    return all(len(cycles) == 1 for cycles in S.vertex_link_cycles().values())


def dvf_to_dlf(V: VectorField) -> LineField:
    """Realize a vector field as a line field on the radial refinement.

    Each matched pair splits the quadrilateral of its edge cell along the
    diagonal at the other cell's radial vertex and matches that vertex
    with the diagonal.  Pairs touch disjoint quadrilaterals, so the
    splits never interfere.
    """
    S = V.complex
    R = radial_decomposition(S)
    T = R.complex
    quad_of = {e: q for q, e in R.face_origin.items()}
    vertex_of = {c: w for w, c in R.vertex_origin.items()}
    pairs = []
    for lo, up in sorted(V.matching):
        e, other = (lo, up) if lo in S.edges else (up, lo)
        quad = quad_of[e]
        anchor = vertex_of[other]
        k = min(i for i in range(4) if T.corner_vertex(quad, i) == anchor)
        taken = {cid for cid, _d in T.cells()}
        diag = fresh_id(f"d_{e}", taken)
        taken.add(diag)
        half_a = fresh_id(f"{quad}_0", taken)
        taken.add(half_a)
        half_b = fresh_id(f"{quad}_1", taken)
        T = split_face(T, quad, k, (k + 2) % 4, diag, half_a, half_b)
        pairs.append((anchor, diag))
    return LineField(T, frozenset(pairs))


def dlf_to_dvf(L: LineField) -> tuple[VectorField, VectorField]:
    """Factor a line field into the vector-field pair it realizes.

    Deleting the matched diagonals must leave a radial refinement; its
    two vertex classes then become the vertices of the primal and the
    dual complex, each quadrilateral an edge, and each vertex of the
    opposite class a face read off the link cycle.  Raises
    NotInImageError when any step refuses.
    """
    if validate_line_field(L):
        raise NotInImageError("not a valid line field")
    T = L.complex
    merged_quad: dict[str, str] = {}
    for _v, d in sorted(L.matching, key=lambda pair: pair[1]):
        occs = T.edge_occurrences(d)
        if len(occs) != 2 or occs[0][0] == occs[1][0]:
            raise NotInImageError(f"matched edge {d} is not a face diagonal")
        if any(len(T.faces[f]) != 3 for f, _i in occs):
            raise NotInImageError(
                f"matched edge {d} does not split a quadrilateral"
            )
        taken = {cid for cid, _dim in T.cells()}
        qid = fresh_id(f"m_{d}", taken)
        T = delete_edge_merge_faces(T, d, qid)
        merged_quad[d] = qid
    if not is_radial(T):
        raise NotInImageError("unmatched edges do not form a radial refinement")
    first, second = _bipartition(T)
    return (
        _factor(T, first, second, L.matching, merged_quad, f"{T.name}_a"),
        _factor(T, second, first, L.matching, merged_quad, f"{T.name}_b"),
    )


def _factor(R, kept, opposite, matching, merged_quad, name):
    """Collapse a radial refinement onto the complex of one vertex class.

    Quadrilaterals become edges between their two kept corners; each
    opposite-class vertex becomes a face whose walk follows the link
    cycle, oriented +1 exactly when the crossing starts at the corner
    chosen as the edge's tail.
    """
    tail_corner: dict[str, int] = {}
    edges: dict[str, tuple[str, str]] = {}
    for z in sorted(R.faces):
        k = min(i for i in range(4) if R.corner_vertex(z, i) in kept)
        tail_corner[z] = k
        edges[z] = (R.corner_vertex(z, k), R.corner_vertex(z, (k + 2) % 4))

    link = R.vertex_link_cycles()
    faces: dict[str, tuple] = {}
    for u in sorted(opposite):
        (cycle,) = link[u]
        walk = []
        for step in cycle:
            z, pos = step["corner"]
            source = (pos - 1) % 4 if step["corner_side"] == "in" else (pos + 1) % 4
            walk.append((1 if source == tail_corner[z] else -1, z))
        faces[u] = tuple(walk)

    S = SurfaceComplex(frozenset(kept), edges, faces, name=name)
    return VectorField(S, frozenset((v, merged_quad[d]) for v, d in matching))
