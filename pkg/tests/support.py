"""Shared fixtures and generators for the test suite.

Complex builders return fresh objects so tests can mutate derived data
freely.  The random-corpus helpers apply Euler-characteristic-preserving
moves (edge subdivision, face splitting) to small seeds, which keeps the
generated complexes valid by construction.
"""

import random

from linefields.surface import (
    SurfaceComplex,
    fresh_id,
    split_face,
    subdivide_edge,
)


def w(text):
    """Parse a walk written like "+e12 -e13" into occurrence tuples."""
    out = []
    for token in text.split():
        sign = 1 if token[0] == "+" else -1
        out.append((sign, token[1:]))
    return tuple(out)


def is_rotation(walk, other):
    """Equality of closed walks irrespective of starting position."""
    return len(walk) == len(other) and any(
        walk == other[i:] + other[:i] for i in range(max(len(other), 1))
    )


# ---- named complexes -----------------------------------------------------


def tetra():
    return SurfaceComplex(
        vertices=frozenset({"v1", "v2", "v3", "v4"}),
        edges={
            "e12": ("v1", "v2"),
            "e13": ("v1", "v3"),
            "e14": ("v1", "v4"),
            "e23": ("v2", "v3"),
            "e24": ("v2", "v4"),
            "e34": ("v3", "v4"),
        },
        faces={
            "f123": w("+e12 +e23 -e13"),
            "f124": w("+e14 -e24 -e12"),
            "f134": w("+e13 +e34 -e14"),
            "f234": w("+e24 -e34 -e23"),
        },
        name="tetra",
    )


def torus_one():
    """One-vertex torus: two loops, one square face."""
    return SurfaceComplex(
        vertices=frozenset({"v"}),
        edges={"a": ("v", "v"), "b": ("v", "v")},
        faces={"F": w("+a +b -a -b")},
        name="torus1",
    )


def disk_sphere():
    """Sphere as two one-sided disks glued along a loop."""
    return SurfaceComplex(
        vertices=frozenset({"v"}),
        edges={"e": ("v", "v")},
        faces={"n": w("+e"), "s": w("-e")},
        name="disk_sphere",
    )


def proj_plane():
    return SurfaceComplex(
        vertices=frozenset({"v"}),
        edges={"a": ("v", "v")},
        faces={"F": w("+a +a")},
        name="proj_plane",
    )


def klein():
    return SurfaceComplex(
        vertices=frozenset({"v"}),
        edges={"a": ("v", "v"), "b": ("v", "v")},
        faces={"F": w("+a +b -a +b")},
        name="klein",
    )


def slit_sphere():
    """Sphere as one bigon face traversing its single edge both ways."""
    return SurfaceComplex(
        vertices=frozenset({"u", "w"}),
        edges={"e": ("u", "w")},
        faces={"F": w("+e -e")},
        name="slit_sphere",
    )


def theta_sphere():
    """Sphere cut by three parallel edges into three bigons."""
    return SurfaceComplex(
        vertices=frozenset({"u", "w"}),
        edges={"a": ("u", "w"), "b": ("u", "w"), "c": ("u", "w")},
        faces={"fab": w("+a -b"), "fbc": w("+b -c"), "fca": w("+c -a")},
        name="theta_sphere",
    )


def grid_torus(rows, cols):
    """Torus cut into a rows-by-cols grid of square faces."""
    vertices = {f"v{r}{c}" for r in range(rows) for c in range(cols)}
    edges = {}
    for r in range(rows):
        for c in range(cols):
            edges[f"h{r}{c}"] = (f"v{r}{c}", f"v{r}{(c + 1) % cols}")
            edges[f"u{r}{c}"] = (f"v{r}{c}", f"v{(r + 1) % rows}{c}")
    faces = {}
    for r in range(rows):
        for c in range(cols):
            faces[f"q{r}{c}"] = w(
                f"+h{r}{c} +u{r}{(c + 1) % cols} -h{(r + 1) % rows}{c} -u{r}{c}"
            )
    return SurfaceComplex(
        vertices=frozenset(vertices), edges=edges, faces=faces, name=f"grid{rows}x{cols}"
    )


def pinched_spheres():
    """Two disk-spheres sharing their vertex; passes validate, has no dual."""
    return SurfaceComplex(
        vertices=frozenset({"v"}),
        edges={"e1": ("v", "v"), "e2": ("v", "v")},
        faces={"n1": w("+e1"), "s1": w("-e1"), "n2": w("+e2"), "s2": w("-e2")},
        name="pinched",
    )


def all_seed_builders():
    return [
        tetra,
        torus_one,
        disk_sphere,
        proj_plane,
        klein,
        slit_sphere,
        theta_sphere,
        lambda: grid_torus(2, 2),
    ]


# ---- independent surface check -------------------------------------------


def is_closed_surface(S):
    """Closed-surface test written separately from the library's validate."""
    flat = sorted(e for walk in S.faces.values() for _s, e in walk)
    if flat != sorted(list(S.edges) + list(S.edges)):
        return False
    for walk in S.faces.values():
        n = len(walk)
        for i in range(n):
            s1, e1 = walk[i]
            s2, e2 = walk[(i + 1) % n]
            t1, h1 = S.edges[e1]
            t2, h2 = S.edges[e2]
            if (h1 if s1 == 1 else t1) != (t2 if s2 == 1 else h2):
                return False
    parent = {c: c for c, _d in S.cells()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for e, (t, h) in S.edges.items():
        union(e, t)
        union(e, h)
    for f, walk in S.faces.items():
        for _s, e in walk:
            union(f, e)
    return len({find(c) for c, _d in S.cells()}) == 1


# ---- random corpus -------------------------------------------------------


def subdivide_move(S, rng):
    e = rng.choice(sorted(S.edges))
    taken = set(S.vertices) | set(S.edges) | set(S.faces)
    mid = fresh_id(f"{e}m", taken)
    taken.add(mid)
    ea = fresh_id(f"{e}a", taken)
    taken.add(ea)
    eb = fresh_id(f"{e}b", taken)
    return subdivide_edge(S, e, mid, ea, eb)


def split_move(S, rng):
    f = rng.choice(sorted(S.faces))
    n = len(S.faces[f])
    if n < 2:
        return None
    p = rng.randrange(n)
    q = rng.randrange(n)
    if p == q:
        return None
    taken = set(S.vertices) | set(S.edges) | set(S.faces)
    d = fresh_id(f"{f}d", taken)
    taken.add(d)
    fa = fresh_id(f"{f}a", taken)
    taken.add(fa)
    fb = fresh_id(f"{f}b", taken)
    return split_face(S, f, p, q, d, fa, fb)


def random_complex(rng, seed_builder, n_moves):
    S = seed_builder()
    for _ in range(n_moves):
        move = rng.choice([subdivide_move, split_move])
        grown = move(S, rng)
        if grown is not None:
            S = grown
    return S


def random_corpus(seed, count, max_moves=4, seeds=None):
    rng = random.Random(seed)
    builders = seeds if seeds is not None else all_seed_builders()
    return [
        random_complex(rng, rng.choice(builders), rng.randrange(max_moves + 1))
        for _ in range(count)
    ]


# ---- matchings -----------------------------------------------------------


def line_field_pairs(S):
    """All (vertex, edge) pairs available to a line-field matching."""
    out = set()
    for e, (t, h) in S.edges.items():
        out.add((t, e))
        out.add((h, e))
    return sorted(out)


def vector_field_pairs(S):
    """All incident (lower, upper) cell pairs available to a vector field."""
    return sorted(set(S.hasse_diagram().incidences))


def all_matchings(pairs):
    """Every subset of `pairs` in which no cell appears twice."""
    pairs = sorted(set(pairs))
    chosen = []

    def rec(i, used):
        if i == len(pairs):
            yield frozenset(chosen)
            return
        yield from rec(i + 1, used)
        a, b = pairs[i]
        if a not in used and b not in used:
            chosen.append(pairs[i])
            yield from rec(i + 1, used | {a, b})
            chosen.pop()

    yield from rec(0, frozenset())


def sample_matching(pairs, rng, keep=0.5):
    shuffled = list(pairs)
    rng.shuffle(shuffled)
    used = set()
    out = []
    for a, b in shuffled:
        if a in used or b in used or rng.random() > keep:
            continue
        used.add(a)
        used.add(b)
        out.append((a, b))
    return frozenset(out)
