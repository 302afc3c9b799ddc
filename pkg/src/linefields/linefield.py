"""Vertex-edge matchings on a surface complex and their critical cells.

A matching pairs some vertices with incident edges, using each vertex and
each edge at most once.  Unmatched vertices are critical; a face is critical
unless exactly two of its boundary occurrences use unmatched edges; edges
are never critical.  Cell indices are half-integers, so they are kept
doubled throughout and the doubled total always equals twice the Euler
characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import SurfaceComplex


@dataclass(frozen=True)
class LineField:
    """A complex plus a set of (vertex, edge) pairs.

    Construction does not check the pairing conditions; see
    validate_line_field.  Operations elsewhere assume a clean report.
    """

    complex: SurfaceComplex
    matching: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "matching", frozenset((v, e) for v, e in self.matching))

    def matched_vertices(self) -> set[str]:
        return {v for v, _e in self.matching}

    def matched_edges(self) -> set[str]:
        return {e for _v, e in self.matching}

    def edge_matched_to(self, vertex: str) -> str | None:
        for v, e in self.matching:
            if v == vertex:
                return e
        return None

    def vertex_matched_to(self, edge: str) -> str | None:
        for v, e in self.matching:
            if e == edge:
                return v
        return None


def validate_line_field(L: LineField) -> list[str]:
    """Violations of the matching conditions; empty when L is a line field.

    Every pair must join a vertex to an edge it is an endpoint of, and no
    vertex or edge may be used by two pairs.
    """
    S = L.complex
    problems = []
    for v, e in sorted(L.matching):
        if v not in S.vertices:
            problems.append(f"pair ({v}, {e}) references unknown vertex {v}")
        elif e not in S.edges:
            problems.append(f"pair ({v}, {e}) references unknown edge {e}")
        elif v not in S.edges[e]:
            problems.append(f"pair ({v}, {e}): {v} is not an endpoint of {e}")
    used_v: dict[str, int] = {}
    used_e: dict[str, int] = {}
    for v, e in L.matching:
        used_v[v] = used_v.get(v, 0) + 1
        used_e[e] = used_e.get(e, 0) + 1
    for v in sorted(used_v):
        if used_v[v] > 1:
            problems.append(f"vertex {v} appears in {used_v[v]} pairs")
    for e in sorted(used_e):
        if used_e[e] > 1:
            problems.append(f"edge {e} appears in {used_e[e]} pairs")
    return problems


def unmatched_boundary_count(L: LineField, face: str) -> int:
    """Occurrences of unmatched edges on the face's walk, with multiplicity."""
    walk = L.complex.faces[face]
    matched = L.matched_edges()
    return sum(1 for _s, e in walk if e not in matched)


def critical_cells(L: LineField) -> dict[str, int]:
    """Map from critical cell to its doubled index.

    Unmatched vertices score +2.  A face with c unmatched boundary
    occurrences scores 2 - c, recorded only when c != 2.  Edges never
    appear.
    """
    out: dict[str, int] = {}
    matched_v = L.matched_vertices()
    for v in sorted(L.complex.vertices):
        if v not in matched_v:
            out[v] = 2
    for f in sorted(L.complex.faces):
        c = unmatched_boundary_count(L, f)
        if c != 2:
            out[f] = 2 - c
    return out


def euler_sum(L: LineField) -> int:
    """Total doubled index over the critical cells.

    Equals 2 * euler_characteristic for every matching, valid or not a
    maximal one; the identity needs only that each edge has two boundary
    occurrences.
    """
    return sum(critical_cells(L).values())
