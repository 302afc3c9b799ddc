"""CW decompositions of compact surfaces given by faces-as-boundary-walks.

A complex is a set of vertices, a set of edges with a designated tail and
head, and a set of faces, each carrying a closed walk of signed edge
occurrences.  +e traverses tail to head, -e the other way.  Loops and
repeated edges are allowed, and nothing here assumes orientability: any
combination of occurrence signs is accepted as long as the walks chain.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field, replace

from .errors import DegenerateOperationError, InvalidComplexError

# An occurrence is (sign, edge_id) with sign +1 or -1.
Occurrence = tuple[int, str]


def occ_text(occ: Occurrence) -> str:
    sign, edge = occ
    return ("+" if sign > 0 else "-") + edge


def occ_reversed(occ: Occurrence) -> Occurrence:
    return (-occ[0], occ[1])


def reversed_walk(walk: tuple[Occurrence, ...]) -> tuple[Occurrence, ...]:
    return tuple(occ_reversed(o) for o in reversed(walk))


def _canonical_rotation(walk: tuple[Occurrence, ...]) -> tuple[Occurrence, ...]:
    # Rotate to start at the lexicographically least signed occurrence so
    # corner positions are reproducible.
    if len(walk) < 2:
        return walk
    keys = [occ_text(o) for o in walk]
    best = min(range(len(walk)), key=lambda i: (keys[i], [keys[(i + j) % len(walk)] for j in range(len(walk))]))
    return walk[best:] + walk[:best]


def fresh_id(base: str, taken) -> str:
    """A cell identifier not already in `taken`, derived from `base`."""
    if base not in taken:
        return base
    n = 2
    while f"{base}_{n}" in taken:
        n += 1
    return f"{base}_{n}"


@dataclass(frozen=True)
class SurfaceComplex:
    """Immutable complex; walks are canonically rotated at construction."""

    vertices: frozenset[str]
    edges: dict[str, tuple[str, str]]
    faces: dict[str, tuple[Occurrence, ...]]
    name: str = field(default="surface", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        seen: set[str] = set()
        for cell in list(self.vertices) + list(self.edges) + list(self.faces):
            if cell in seen:
                raise InvalidComplexError(f"identifier {cell!r} used for more than one cell")
            seen.add(cell)
        edges = {}
        for e, (tail, head) in self.edges.items():
            if tail not in self.vertices or head not in self.vertices:
                raise InvalidComplexError(f"edge {e} references unknown vertex")
            edges[e] = (tail, head)
        faces = {}
        for f, walk in self.faces.items():
            w = []
            for occ in walk:
                sign, e = occ
                if e not in edges:
                    raise InvalidComplexError(f"face {f} references unknown edge {e}")
                if sign not in (1, -1):
                    raise InvalidComplexError(f"face {f} has occurrence with sign {sign}")
                w.append((sign, e))
            faces[f] = _canonical_rotation(tuple(w))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "faces", faces)

    # ---- basic accessors -------------------------------------------------

    def dim_of(self, cell: str) -> int:
        if cell in self.vertices:
            return 0
        if cell in self.edges:
            return 1
        if cell in self.faces:
            return 2
        raise KeyError(cell)

    def has_cell(self, cell: str) -> bool:
        return cell in self.vertices or cell in self.edges or cell in self.faces

    def cells(self):
        for v in sorted(self.vertices):
            yield v, 0
        for e in sorted(self.edges):
            yield e, 1
        for f in sorted(self.faces):
            yield f, 2

    def is_loop(self, edge: str) -> bool:
        tail, head = self.edges[edge]
        return tail == head

    def occ_source(self, occ: Occurrence) -> str:
        tail, head = self.edges[occ[1]]
        return tail if occ[0] > 0 else head

    def occ_target(self, occ: Occurrence) -> str:
        tail, head = self.edges[occ[1]]
        return head if occ[0] > 0 else tail

    def walk(self, face: str) -> tuple[Occurrence, ...]:
        return self.faces[face]

    def corner_vertex(self, face: str, position: int) -> str:
        walk = self.faces[face]
        return self.occ_source(walk[position % len(walk)])

    def corners(self) -> list[tuple[str, str, int]]:
        """All (vertex, face, walk-position) triples; 2|E| of them when valid."""
        out = []
        for f in sorted(self.faces):
            for i in range(len(self.faces[f])):
                out.append((self.corner_vertex(f, i), f, i))
        return out

    def edge_occurrences(self, edge: str) -> list[tuple[str, int]]:
        """(face, position) slots where `edge` occurs, in sorted face order."""
        out = []
        for f in sorted(self.faces):
            for i, (_s, e) in enumerate(self.faces[f]):
                if e == edge:
                    out.append((f, i))
        return out

    # ---- invariants ------------------------------------------------------

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def validate(self) -> list[str]:
        """Violations of the closed-surface conditions; empty when clean.

        Checks that every edge occurs exactly twice among the boundary
        walks, that each walk chains head-to-tail, and that the incidence
        structure is connected.
        """
        problems = []
        counts = Counter(e for walk in self.faces.values() for _s, e in walk)
        for e in sorted(self.edges):
            c = counts.get(e, 0)
            if c != 2:
                problems.append(f"edge {e} occurs {c} time(s) in boundary walks, expected 2")
        for f in sorted(self.faces):
            walk = self.faces[f]
            for i in range(len(walk)):
                here = self.occ_target(walk[i])
                there = self.occ_source(walk[(i + 1) % len(walk)])
                if here != there:
                    problems.append(
                        f"face {f} breaks between positions {i} and {(i + 1) % len(walk)}:"
                        f" {here} != {there}"
                    )
        n_components = self._incidence_components()
        if n_components > 1:
            problems.append(f"incidence structure is disconnected ({n_components} components)")
        return problems

    def _incidence_components(self) -> int:
        adjacency: dict[str, set[str]] = {cell: set() for cell, _d in self.cells()}
        for e, (tail, head) in self.edges.items():
            adjacency[e].add(tail)
            adjacency[e].add(head)
            adjacency[tail].add(e)
            adjacency[head].add(e)
        for f, walk in self.faces.items():
            for _s, e in walk:
                adjacency[f].add(e)
                adjacency[e].add(f)
        seen: set[str] = set()
        components = 0
        for start in adjacency:
            if start in seen:
                continue
            components += 1
            queue = deque([start])
            seen.add(start)
            while queue:
                cur = queue.popleft()
                for nxt in adjacency[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
        return components

    # ---- Hasse diagram ---------------------------------------------------

    def hasse_diagram(self) -> "HasseDiagram":
        incidences: Counter = Counter()
        for e, (tail, head) in self.edges.items():
            incidences[(tail, e)] += 1
            incidences[(head, e)] += 1
        for f in self.faces:
            for _s, e in self.faces[f]:
                incidences[(e, f)] += 1
        dims = {cell: d for cell, d in self.cells()}
        return HasseDiagram(dims=dims, incidences=dict(incidences))

    # ---- vertex links ----------------------------------------------------

    def vertex_link_cycles(self) -> dict[str, list[list[dict]]]:
        """The cyclic fan of edge-ends and corners around each vertex.

        Each edge has two ends, (edge, 0) at the tail and (edge, 1) at the
        head.  Every corner joins the end entering it to the end leaving it;
        each end sits in exactly two corners, so the ends at a vertex chain
        into disjoint cycles.  A genuine surface point has exactly one.

        Returns, per vertex, a list of cycles; a cycle is a list of steps
        {"end", "occ_in", "occ_out", "corner", "corner_side"} where the occ
        fields are the (face, position) occurrence slots flanking the crossing
        of that end, "corner" is the (face, position) corner left through, and
        "corner_side" is the slot side ("in" or "out") it was entered by.
        """
        # Slots: each corner contributes one "in" slot and one "out" slot.
        end_slots: dict[tuple[str, int], list[tuple[str, int, str]]] = {}
        for e, (tail, head) in self.edges.items():
            end_slots[(e, 0)] = []
            end_slots[(e, 1)] = []
        corner_of: dict[tuple[str, int], tuple] = {}
        for f in sorted(self.faces):
            walk = self.faces[f]
            n = len(walk)
            for i in range(n):
                prev = walk[(i - 1) % n]
                cur = walk[i]
                in_end = (prev[1], 1 if prev[0] > 0 else 0)
                out_end = (cur[1], 0 if cur[0] > 0 else 1)
                corner_of[(f, i)] = (in_end, out_end)
                end_slots[in_end].append((f, i, "in"))
                end_slots[out_end].append((f, i, "out"))

        def end_vertex(end):
            return self.edges[end[0]][end[1]]

        def slot_occ(f, i, side):
            n = len(self.faces[f])
            return (f, (i - 1) % n) if side == "in" else (f, i)

        cycles_by_vertex: dict[str, list[list[dict]]] = {v: [] for v in self.vertices}
        consumed: set[tuple] = set()
        for end in sorted(end_slots):
            for first in sorted(end_slots[end]):
                if (end, first) in consumed:
                    continue
                cycle = []
                cur_end, depart = end, first
                while True:
                    consumed.add((cur_end, depart))
                    f, i, side = depart
                    other_side = "out" if side == "in" else "in"
                    in_end, out_end = corner_of[(f, i)]
                    nxt_end = out_end if other_side == "out" else in_end
                    arrive = (f, i, other_side)
                    consumed.add((nxt_end, arrive))
                    # pick the other slot at nxt_end to depart through
                    nxt_depart = None
                    for slot in sorted(end_slots[nxt_end]):
                        if (nxt_end, slot) not in consumed:
                            nxt_depart = slot
                            break
                    cycle.append(
                        {
                            "end": nxt_end,
                            "occ_in": slot_occ(*arrive),
                            "occ_out": None,  # filled below
                            "corner": None,
                            "corner_side": None,
                        }
                    )
                    if nxt_depart is None:
                        break
                    cycle[-1]["occ_out"] = slot_occ(*nxt_depart)
                    cycle[-1]["corner"] = (nxt_depart[0], nxt_depart[1])
                    cycle[-1]["corner_side"] = nxt_depart[2]
                    cur_end, depart = nxt_end, nxt_depart
                # close the cycle: the final arrival's departure is the slot
                # we started from
                cycle[-1]["occ_out"] = slot_occ(*first)
                cycle[-1]["corner"] = (first[0], first[1])
                cycle[-1]["corner_side"] = first[2]
                v = end_vertex(end)
                cycles_by_vertex[v].append(cycle)
        return cycles_by_vertex

    # ---- dual ------------------------------------------------------------

    def dual(self) -> "SurfaceComplex":
        """The dual complex: a vertex per face, an edge per edge, a face per
        vertex, all keeping their identifiers.

        Requires every vertex link to be a single cycle; a complex that
        pinches two umbrellas into one vertex has no dual in this encoding.
        """
        problems = self.validate()
        if problems:
            raise InvalidComplexError(f"cannot dualize: {problems[0]}")
        dual_edges = {}
        occ_order: dict[str, list[tuple[str, int]]] = {}
        for e in self.edges:
            occs = self.edge_occurrences(e)
            if len(occs) != 2:
                raise InvalidComplexError(f"cannot dualize: edge {e} occurs {len(occs)} time(s)")
            occ_order[e] = occs
            dual_edges[e] = (occs[0][0], occs[1][0])
        dual_faces = {}
        links = self.vertex_link_cycles()
        for v in sorted(self.vertices):
            cycles = links[v]
            if len(cycles) != 1:
                raise InvalidComplexError(
                    f"cannot dualize: link of vertex {v} has {len(cycles)} cycles"
                )
            walk = []
            for step in cycles[0]:
                e = step["end"][0]
                first, second = occ_order[e]
                src = step["occ_in"]
                dst = step["occ_out"]
                assert {src, dst} == {first, second}
                sign = 1 if (src, dst) == (first, second) else -1
                walk.append((sign, e))
            dual_faces[v] = tuple(walk)
        return SurfaceComplex(
            vertices=frozenset(self.faces),
            edges=dual_edges,
            faces=dual_faces,
            name=self.name + "_dual",
        )


@dataclass(frozen=True)
class HasseDiagram:
    """Cells tagged with dimension plus incidence multiplicities.

    A loop is incident to its vertex with multiplicity 2, and an edge
    occurring twice on one walk is incident to that face with multiplicity 2;
    both incidence levels total 2|E|.
    """

    dims: dict[str, int]
    incidences: dict[tuple[str, str], int]

    def multiplicity(self, lower: str, upper: str) -> int:
        return self.incidences.get((lower, upper), 0)

    def pairs(self) -> list[tuple[str, str]]:
        return sorted(self.incidences)

    def level_total(self, lower_dim: int) -> int:
        return sum(
            m for (lo, _up), m in self.incidences.items() if self.dims[lo] == lower_dim
        )


# ---- walk surgery --------------------------------------------------------


def split_face(
    S: SurfaceComplex,
    face: str,
    p: int,
    q: int,
    diag_id: str,
    face_a_id: str,
    face_b_id: str,
) -> SurfaceComplex:
    """Split `face` by a new edge between its corners at positions p and q.

    The diagonal runs from the corner-p vertex (tail) to the corner-q vertex
    (head).  Face A takes positions p..q-1 followed by the diagonal traversed
    backwards; face B takes positions q..p-1 followed by the diagonal forwards.
    """
    walk = S.faces[face]
    n = len(walk)
    if n < 2 or p == q:
        raise DegenerateOperationError(f"cannot split face {face} at positions {p}, {q}")
    a = S.corner_vertex(face, p)
    b = S.corner_vertex(face, q)
    part_a = tuple(walk[(p + k) % n] for k in range((q - p) % n)) + ((-1, diag_id),)
    part_b = tuple(walk[(q + k) % n] for k in range((p - q) % n)) + ((1, diag_id),)
    edges = dict(S.edges)
    edges[diag_id] = (a, b)
    faces = {g: w for g, w in S.faces.items() if g != face}
    faces[face_a_id] = part_a
    faces[face_b_id] = part_b
    return replace(S, edges=edges, faces=faces)


def delete_edge_merge_faces(S: SurfaceComplex, edge: str, merged_id: str) -> SurfaceComplex:
    """Delete `edge` and merge the two faces holding its occurrences.

    Raises DegenerateOperationError when both occurrences lie on one face
    (deleting would split it or change the Euler characteristic) or when the
    merged boundary walk would be empty.
    """
    occs = S.edge_occurrences(edge)
    if len(occs) != 2:
        raise DegenerateOperationError(f"edge {edge} occurs {len(occs)} time(s), expected 2")
    (f1, p1), (f2, p2) = occs
    if f1 == f2:
        raise DegenerateOperationError(
            f"both occurrences of {edge} lie on face {f1}; deletion would not merge two faces"
        )
    wa, wb = S.faces[f1], S.faces[f2]
    occ_a, occ_b = wa[p1], wb[p2]
    src_a, tgt_a = S.occ_source(occ_a), S.occ_target(occ_a)
    src_b, tgt_b = S.occ_source(occ_b), S.occ_target(occ_b)
    rest_b = wb[p2 + 1 :] + wb[:p2]
    if (src_b, tgt_b) == (tgt_a, src_a):
        middle = rest_b
    elif (src_b, tgt_b) == (src_a, tgt_a):
        middle = reversed_walk(rest_b)
    else:  # pragma: no cover - construction guarantees shared endpoints
        raise DegenerateOperationError(f"occurrences of {edge} do not share endpoints")
    merged = wa[:p1] + middle + wa[p1 + 1 :]
    if not merged:
        raise DegenerateOperationError(
            f"deleting {edge} would leave a face with an empty boundary"
        )
    edges = {e: ep for e, ep in S.edges.items() if e != edge}
    faces = {g: w for g, w in S.faces.items() if g not in (f1, f2)}
    faces[merged_id] = merged
    return replace(S, edges=edges, faces=faces)


def subdivide_edge(
    S: SurfaceComplex, edge: str, vertex_id: str, edge_a_id: str, edge_b_id: str
) -> SurfaceComplex:
    """Replace `edge` by two edges through a new midpoint vertex."""
    tail, head = S.edges[edge]
    edges = {e: ep for e, ep in S.edges.items() if e != edge}
    edges[edge_a_id] = (tail, vertex_id)
    edges[edge_b_id] = (vertex_id, head)
    faces = {}
    for f, walk in S.faces.items():
        w: list[Occurrence] = []
        for sign, e in walk:
            if e != edge:
                w.append((sign, e))
            elif sign > 0:
                w.extend([(1, edge_a_id), (1, edge_b_id)])
            else:
                w.extend([(-1, edge_b_id), (-1, edge_a_id)])
        faces[f] = tuple(w)
    return replace(S, vertices=S.vertices | {vertex_id}, edges=edges, faces=faces)
