"""Discrete vector fields: matchings of cell pairs one dimension apart.

A pair joins a cell to one of its cofaces; unmatched cells are critical
with index (-1)^dim.  X-paths slide from a matched cell into another
boundary cell of its partner, never stepping back to the same cell, and
record which boundary occurrence each step uses so parallel paths stay
distinct.  Cancellation reverses the unique path joining two critical
cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dynamics import Separatrix, TopologicalGraph
from .errors import CancellationError, CyclicFieldError, OperationError
from .surface import SurfaceComplex


@dataclass(frozen=True)
class XPath:
    """Cells s1..sk of one dimension with witnesses (t1, key1)..; {si, ti}
    is matched and s(i+1) occurs on the boundary of ti at the keyed slot
    (endpoint slot for edges, walk position for faces)."""

    dimension: int
    cells: tuple[str, ...]
    witnesses: tuple[tuple[str, int], ...]

    def is_trivial(self) -> bool:
        return not self.witnesses

    def is_closed(self) -> bool:
        return len(self.cells) > 1 and self.cells[0] == self.cells[-1]


@dataclass(frozen=True)
class VectorField:
    """A complex plus pairs (lower, upper); construction reorders each pair
    by dimension but checks nothing else, see validate_vector_field."""

    complex: SurfaceComplex
    matching: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        pairs = []
        for a, b in self.matching:
            if (
                self.complex.has_cell(a)
                and self.complex.has_cell(b)
                and self.complex.dim_of(a) == self.complex.dim_of(b) + 1
            ):
                a, b = b, a
            pairs.append((a, b))
        object.__setattr__(self, "matching", frozenset(pairs))

    def matched_cells(self) -> set[str]:
        return {c for pair in self.matching for c in pair}

    def upper_of(self, lower: str) -> str | None:
        for lo, up in self.matching:
            if lo == lower:
                return up
        return None

    def lower_of(self, upper: str) -> str | None:
        for lo, up in self.matching:
            if up == upper:
                return lo
        return None


def validate_vector_field(V: VectorField) -> list[str]:
    """Violations of the matching conditions; empty when V is a discrete
    vector field: pairs incident and one dimension apart, no cell reused."""
    S = V.complex
    problems = []
    for lo, up in sorted(V.matching):
        if not S.has_cell(lo):
            problems.append(f"pair ({lo}, {up}) references unknown cell {lo}")
            continue
        if not S.has_cell(up):
            problems.append(f"pair ({lo}, {up}) references unknown cell {up}")
            continue
        dlo, dup = S.dim_of(lo), S.dim_of(up)
        if dup - dlo != 1:
            problems.append(f"pair ({lo}, {up}): dimensions differ by {dup - dlo}")
            continue
        if dlo == 0 and lo not in S.edges[up]:
            problems.append(f"pair ({lo}, {up}): {lo} is not an endpoint of {up}")
        if dlo == 1 and all(e != lo for _s, e in S.faces[up]):
            problems.append(f"pair ({lo}, {up}): {lo} is not on the boundary walk of {up}")
    used: dict[str, int] = {}
    for pair in V.matching:
        for c in pair:
            used[c] = used.get(c, 0) + 1
    for c in sorted(used):
        if used[c] > 1:
            problems.append(f"cell {c} appears in {used[c]} pairs")
    return problems


def critical_cells_dvf(V: VectorField) -> dict[str, int]:
    """Unmatched cells mapped to their index (-1)^dim."""
    matched = V.matched_cells()
    return {
        cell: 1 if dim % 2 == 0 else -1
        for cell, dim in V.complex.cells()
        if cell not in matched
    }


def euler_sum_dvf(V: VectorField) -> int:
    """Index total over critical cells; equals the Euler characteristic."""
    return sum(critical_cells_dvf(V).values())


# ---- X-paths --------------------------------------------------------------


def _step_options(V: VectorField, cell: str, dim: int) -> list[tuple[str, int, str]]:
    """(witness, occurrence key, next cell) triples leaving `cell`."""
    upper = V.upper_of(cell)
    if upper is None:
        return []
    if dim == 0:
        tail, head = V.complex.edges[upper]
        return [
            (upper, slot, v)
            for slot, v in ((0, tail), (1, head))
            if v != cell
        ]
    return [
        (upper, i, e)
        for i, (_s, e) in enumerate(V.complex.faces[upper])
        if e != cell
    ]


def closed_x_path(V: VectorField) -> XPath | None:
    """A closed X-path in either dimension, or None when the step relation
    is acyclic."""
    for p in (0, 1):
        lowers = sorted(
            lo for lo, _up in V.matching if V.complex.dim_of(lo) == p
        )
        color: dict[str, int] = {}
        for root in lowers:
            if color.get(root):
                continue
            color[root] = 1
            stack = [(root, iter(_step_options(V, root, p)))]
            steps: list[tuple[str, int]] = []
            while stack:
                node, options = stack[-1]
                advanced = False
                for tau, key, nxt in options:
                    state = color.get(nxt)
                    if state == 1:
                        cells = [n for n, _o in stack]
                        k = cells.index(nxt)
                        return XPath(
                            p,
                            tuple(cells[k:]) + (nxt,),
                            tuple(steps[k:]) + ((tau, key),),
                        )
                    if state is None:
                        color[nxt] = 1
                        stack.append((nxt, iter(_step_options(V, nxt, p))))
                        steps.append((tau, key))
                        advanced = True
                        break
                if not advanced:
                    color[node] = 2
                    stack.pop()
                    if steps:
                        steps.pop()
    return None


def is_acyclic_dvf(V: VectorField) -> bool:
    return closed_x_path(V) is None


def _require_acyclic_dvf(V: VectorField):
    closed = closed_x_path(V)
    if closed is not None:
        raise CyclicFieldError(
            "vector field has a closed X-path through " + closed.cells[0],
            witness=closed,
        )


def _boundary_occurrences(S: SurfaceComplex, cell: str) -> list[tuple[int, str]]:
    """(occurrence key, boundary cell) pairs of an edge or face, in order."""
    if cell in S.edges:
        tail, head = S.edges[cell]
        return [(0, tail), (1, head)]
    return [(i, e) for i, (_s, e) in enumerate(S.faces[cell])]


def _start_cells(S: SurfaceComplex, cell: str) -> list[str]:
    seen = []
    for _key, c in _boundary_occurrences(S, cell):
        if c not in seen:
            seen.append(c)
    return seen


def _complete_paths(V: VectorField, dim: int, cell: str):
    """All X-paths from `cell` to unmatched cells, in occurrence order."""
    if V.upper_of(cell) is None:
        yield XPath(dim, (cell,), ())
        return
    for tau, key, nxt in _step_options(V, cell, dim):
        for tail_path in _complete_paths(V, dim, nxt):
            yield XPath(
                dim, (cell,) + tail_path.cells, ((tau, key),) + tail_path.witnesses
            )


def _check_path_query(V: VectorField, source: str, target: str) -> int:
    S = V.complex
    for c in (source, target):
        if not S.has_cell(c):
            raise OperationError(f"{c} is not a cell of the complex")
    d_source, d_target = S.dim_of(source), S.dim_of(target)
    if d_source != d_target + 1:
        raise OperationError(
            f"dimension mismatch: {source} has dimension {d_source},"
            f" {target} has dimension {d_target}"
        )
    matched = V.matched_cells()
    for c in (source, target):
        if c in matched:
            raise OperationError(f"{c} is matched, not critical")
    _require_acyclic_dvf(V)
    return d_target


def x_paths(V: VectorField, source: str, target: str):
    """All X-paths starting at a cell incident to the critical cell
    `source` and ending at the critical cell `target`, lazily, in
    deterministic order.  Trivial one-cell paths count."""
    p = _check_path_query(V, source, target)

    def generate():
        for start in _start_cells(V.complex, source):
            for path in _complete_paths(V, p, start):
                if path.cells[-1] == target:
                    yield path

    return generate()


def count_x_paths(V: VectorField, source: str, target: str) -> int:
    """Number of X-paths x_paths would yield, without enumerating them."""
    p = _check_path_query(V, source, target)
    return sum(_path_counter(V, p, target)(c) for c in _start_cells(V.complex, source))


def _path_counter(V: VectorField, dim: int, target: str):
    @lru_cache(maxsize=None)
    def ways(cell: str) -> int:
        if V.upper_of(cell) is None:
            return 1 if cell == target else 0
        return sum(ways(nxt) for _t, _k, nxt in _step_options(V, cell, dim))

    return ways


# ---- topological graph and cancellation -----------------------------------


def topological_graph_dvf(V: VectorField) -> TopologicalGraph:
    """Separatrices from each critical edge or face down one dimension: one
    per (boundary occurrence, X-path) witness pair."""
    _require_acyclic_dvf(V)
    S = V.complex
    crit = critical_cells_dvf(V)
    edges = []
    for upper in sorted(crit):
        dim = S.dim_of(upper)
        if dim == 0:
            continue
        for key, cell in _boundary_occurrences(S, upper):
            for path in _complete_paths(V, dim - 1, cell):
                # A path may also die in a cell matched downward; only ends
                # at critical cells give separatrices.
                if path.cells[-1] in crit:
                    edges.append(Separatrix(upper, path.cells[-1], key, path))
    return TopologicalGraph(tuple(sorted(crit)), tuple(edges))


def cancel_dvf(V: VectorField, upper: str, lower: str) -> VectorField:
    """Reverse the unique X-path witness joining two critical cells.

    Uniqueness counts (boundary occurrence, path) pairs, matching the
    multiplicity convention of the topological graph.  The reversed
    matching drops each {si, ti}, adds {s(i+1), ti}, and adds {s1, upper};
    the critical count drops by exactly two.
    """
    p = _check_path_query(V, upper, lower)
    ways = _path_counter(V, p, lower)
    total = sum(ways(cell) for _key, cell in _boundary_occurrences(V.complex, upper))
    if total == 0:
        raise CancellationError(f"no X-path from {upper} to {lower}")
    if total > 1:
        raise CancellationError(
            f"cancellation needs a unique X-path from {upper} to {lower}; found {total}"
        )
    path = next(iter(x_paths(V, upper, lower)))
    removed = {(path.cells[i], path.witnesses[i][0]) for i in range(len(path.witnesses))}
    added = {(path.cells[i + 1], path.witnesses[i][0]) for i in range(len(path.witnesses))}
    matching = (V.matching - removed) | added | {(path.cells[0], upper)}
    return VectorField(V.complex, matching)


def dualize(V: VectorField) -> VectorField:
    """The same pairs on the dual complex; lower and upper roles swap."""
    return VectorField(V.complex.dual(), V.matching)
