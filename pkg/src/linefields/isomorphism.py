"""Combinatorial isomorphism testing for complexes and fields on them.

The encoding fixes choices an isomorphism must be free to undo: each edge
has an arbitrary direction (so edges map together with a sign), and each
boundary walk an arbitrary starting point and direction (so faces align up
to rotation and reversal).  Signs matter: two complexes can agree in every
count and still differ only in how occurrence signs line up, so the search
tries sign assignments rather than comparing sign-free summaries.

The search backtracks over vertex images with signature pruning, then over
edge images within parallel classes, then checks faces.  Intended for the
small complexes that appear in tests and interactive use.
"""

from __future__ import annotations

from itertools import permutations

from .surface import _canonical_rotation, reversed_walk


def _vertex_signatures(S):
    deg = {v: 0 for v in S.vertices}
    loops = {v: 0 for v in S.vertices}
    for _e, (t, h) in S.edges.items():
        deg[t] += 1
        deg[h] += 1
        if t == h:
            loops[t] += 1
    corner_lengths = {v: [] for v in S.vertices}
    for v, f, _i in S.corners():
        corner_lengths[v].append(len(S.faces[f]))
    return {
        v: (deg[v], loops[v], tuple(sorted(corner_lengths[v]))) for v in S.vertices
    }


def _walk_variants(walk):
    return (_canonical_rotation(walk), _canonical_rotation(reversed_walk(walk)))


def isomorphisms(S1, S2, vertex_map=None):
    """Yield isomorphisms from S1 to S2.

    Each result is {"vertices", "edges", "signs", "faces"}: three cell
    bijections plus the per-edge sign (+1 keeps the edge's direction).
    `vertex_map` pins chosen vertex images; the search fills in the rest.
    """
    if (
        len(S1.vertices) != len(S2.vertices)
        or len(S1.edges) != len(S2.edges)
        or len(S1.faces) != len(S2.faces)
    ):
        return
    lengths1 = sorted(len(walk) for walk in S1.faces.values())
    lengths2 = sorted(len(walk) for walk in S2.faces.values())
    if lengths1 != lengths2:
        return
    sig1 = _vertex_signatures(S1)
    sig2 = _vertex_signatures(S2)
    if sorted(sig1.values()) != sorted(sig2.values()):
        return
    pinned = dict(vertex_map) if vertex_map else {}
    for v, img in pinned.items():
        if v not in S1.vertices or img not in S2.vertices:
            return

    order = sorted(S1.vertices, key=lambda v: (v not in pinned, -sig1[v][0], v))
    face_walks2 = {f: S2.faces[f] for f in S2.faces}

    def vertex_stage(i, phi, used):
        if i == len(order):
            yield from edge_stage(dict(phi))
            return
        v = order[i]
        if v in pinned:
            candidates = [pinned[v]]
        else:
            candidates = [u for u in sorted(S2.vertices) if sig2[u] == sig1[v]]
        for u in candidates:
            if u in used or sig2.get(u) != sig1[v]:
                continue
            phi[v] = u
            yield from vertex_stage(i + 1, phi, used | {u})
            del phi[v]

    def edge_stage(phi):
        groups1 = {}
        for e, (t, h) in S1.edges.items():
            groups1.setdefault(frozenset({t, h}), []).append(e)
        groups2 = {}
        for e, (t, h) in S2.edges.items():
            groups2.setdefault(frozenset({t, h}), []).append(e)
        keys = sorted(groups1, key=sorted)
        targets = []
        for k in keys:
            img = frozenset(phi[x] for x in k)
            if img not in groups2 or len(groups2[img]) != len(groups1[k]):
                return
            targets.append(groups2[img])

        def group_stage(gi, edge_map, signs):
            if gi == len(keys):
                yield from face_stage(phi, dict(edge_map), dict(signs))
                return
            sources = sorted(groups1[keys[gi]])
            for perm in permutations(sorted(targets[gi])):
                assignments = list(zip(sources, perm))
                yield from sign_stage(gi, assignments, 0, edge_map, signs)

        def sign_stage(gi, assignments, ai, edge_map, signs):
            if ai == len(assignments):
                yield from group_stage(gi + 1, edge_map, signs)
                return
            e1, e2 = assignments[ai]
            t1, h1 = S1.edges[e1]
            t2, h2 = S2.edges[e2]
            options = []
            if (phi[t1], phi[h1]) == (t2, h2):
                options.append(1)
            if (phi[t1], phi[h1]) == (h2, t2):
                options.append(-1)
            for s in options:
                edge_map[e1] = e2
                signs[e1] = s
                yield from sign_stage(gi, assignments, ai + 1, edge_map, signs)
                del edge_map[e1]
                del signs[e1]

        yield from group_stage(0, {}, {})

    def face_stage(phi, edge_map, signs):
        mapped = {}
        for f, walk in S1.faces.items():
            image = tuple((s * signs[e], edge_map[e]) for s, e in walk)
            mapped[f] = _walk_variants(image)

        faces1 = sorted(S1.faces, key=lambda f: (-len(S1.faces[f]), f))

        def assign(fi, face_map, used):
            if fi == len(faces1):
                yield {
                    "vertices": dict(phi),
                    "edges": dict(edge_map),
                    "signs": dict(signs),
                    "faces": dict(face_map),
                }
                return
            f = faces1[fi]
            fwd, rev = mapped[f]
            for g in sorted(face_walks2):
                if g in used:
                    continue
                if face_walks2[g] == fwd or face_walks2[g] == rev:
                    face_map[f] = g
                    yield from assign(fi + 1, face_map, used | {g})
                    del face_map[f]

        yield from assign(0, {}, frozenset())

    yield from vertex_stage(0, {}, frozenset())


def complexes_isomorphic(S1, S2, vertex_map=None):
    """First isomorphism found, or None."""
    for iso in isomorphisms(S1, S2, vertex_map):
        return iso
    return None


def _cell_image(iso, S1, cell):
    if cell in S1.vertices:
        return iso["vertices"][cell]
    if cell in S1.edges:
        return iso["edges"][cell]
    return iso["faces"][cell]


def _fields_isomorphic(F1, F2, vertex_map):
    S1 = F1.complex
    if len(F1.matching) != len(F2.matching):
        return None
    want = set(F2.matching)
    for iso in isomorphisms(S1, F2.complex, vertex_map):
        image = {
            (_cell_image(iso, S1, a), _cell_image(iso, S1, b)) for a, b in F1.matching
        }
        if image == want:
            return iso
    return None


def line_fields_isomorphic(L1, L2, vertex_map=None):
    """Isomorphism of the underlying complexes carrying one matching to the
    other, or None."""
    return _fields_isomorphic(L1, L2, vertex_map)


def vector_fields_isomorphic(X1, X2, vertex_map=None):
    return _fields_isomorphic(X1, X2, vertex_map)
