"""Independent brute-force cross-check for the map generator.

Pairs darts in plain slot order (earliest unassigned position first) instead
of the face-driven order of the main engine, keeps only the two obviously
safe prunes (a closed face must have an allowed size; an open face walk of L
darts can only close into a face with more than L edges), and removes
duplicates by pairwise isomorphism of rooted embeddings rather than by
canonical codes.  Slower than the generator, but its completeness relies on
nothing beyond the exhaustive branching itself.
"""

from __future__ import annotations

from .planar import PlanarGraph, is_polyhedral, trace_faces


def _rotate(pos: int) -> int:
    return (pos & ~3) | ((pos + 1) & 3)


def _walk_face(partner: list, start: int) -> tuple[bool, int]:
    """Length of the face walk through assigned dart ``start``.

    Returns (closed, number of darts in the maximal walk).
    """
    chain = [start]
    cur = start
    while True:
        nxt = _rotate(partner[cur])
        if partner[nxt] is None:
            break
        if nxt == start:
            return True, len(chain)
        chain.append(nxt)
        cur = nxt
    # extend backwards: predecessor of d sits opposite the slot before d
    cur = start
    while True:
        before = (cur & ~3) | ((cur - 1) & 3)
        if partner[before] is None:
            break
        prev = partner[before]
        chain.append(prev)
        cur = prev
    return False, len(chain)


def quartic_maps_by_dart_pairing(max_n: int, allowed_sizes: frozenset[int]) -> list:
    """All rotation tables of 4-valent sphere maps with the given face sizes,
    up to ``max_n`` vertices (duplicates included; root edge at slot 0 of
    vertices 0 and 1, discovery labeling)."""
    cap = max(allowed_sizes)
    partner: list = [None] * (4 * max_n)
    adjacent: list[set[int]] = [set() for _ in range(max_n)]
    partner[0] = 4
    partner[4] = 0
    adjacent[0].add(1)
    adjacent[1].add(0)
    results: list = []
    n_active = [2]

    def next_position() -> int | None:
        for pos in range(4 * n_active[0]):
            if partner[pos] is None:
                return pos
        return None

    def checks_pass(p: int, q: int) -> bool:
        for dart in (p, q):
            closed, length = _walk_face(partner, dart)
            if closed and length not in allowed_sizes:
                return False
            if not closed and length + 1 > cap:
                return False
        return True

    def finish() -> None:
        n = n_active[0]
        visited: set[int] = set()
        faces = 0
        for dart in range(4 * n):
            if dart in visited:
                continue
            faces += 1
            cur = dart
            while True:
                visited.add(cur)
                cur = _rotate(partner[cur])
                if cur == dart:
                    break
        if faces == n + 2:
            results.append(
                tuple(tuple(partner[4 * v + s] >> 2 for s in range(4)) for v in range(n))
            )

    def explore() -> None:
        pos = next_position()
        if pos is None:
            finish()
            return
        u = pos >> 2
        options: list[int] = []
        for w in range(n_active[0]):
            if w == u or w in adjacent[u]:
                continue
            for s in range(4):
                if partner[4 * w + s] is None:
                    options.append(4 * w + s)
        if n_active[0] < max_n:
            options.append(4 * n_active[0])
        for q in options:
            w = q >> 2
            fresh = w == n_active[0]
            partner[pos] = q
            partner[q] = pos
            adjacent[u].add(w)
            adjacent[w].add(u)
            if fresh:
                n_active[0] += 1
            if checks_pass(pos, q):
                explore()
            if fresh:
                n_active[0] -= 1
            adjacent[u].discard(w)
            adjacent[w].discard(u)
            partner[pos] = None
            partner[q] = None

    explore()
    return results


def _rooted_code(graph: PlanarGraph, root: tuple[int, int], mirrored: bool) -> tuple:
    """Breadth-first traversal signature from a root dart (no minimization)."""
    rot = (
        tuple(tuple(reversed(r)) for r in graph.rot) if mirrored else graph.rot
    )
    u0, v0 = root
    names = {u0: 0}
    order = [u0]
    entry = {u0: v0}
    signature: list[int] = []
    for x in order:
        ring = rot[x]
        start = ring.index(entry[x])
        for t in range(len(ring)):
            nb = ring[(start + t) % len(ring)]
            if nb not in names:
                names[nb] = len(names)
                order.append(nb)
                entry[nb] = x
            signature.append(names[nb])
        signature.append(-1)
    return tuple(signature)


def maps_isomorphic(g1: PlanarGraph, g2: PlanarGraph) -> bool:
    """Embedded-graph isomorphism (reflections allowed) by rooted comparison."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(len(r) for r in g1.rot) != sorted(len(r) for r in g2.rot):
        return False
    ref = _rooted_code(g1, (0, g1.rot[0][0]), False)
    for mirrored in (False, True):
        for u in range(g2.n):
            for v in g2.rot[u]:
                if _rooted_code(g2, (u, v), mirrored) == ref:
                    return True
    return False


def octahedrite_oracle(max_n: int) -> dict[int, list[PlanarGraph]]:
    """Complete duplicate-free octahedrite lists for every n <= max_n."""
    raw = quartic_maps_by_dart_pairing(max_n, frozenset({3, 4}))
    by_n: dict[int, list[PlanarGraph]] = {n: [] for n in range(6, max_n + 1)}
    for rot in raw:
        graph = PlanarGraph(rot)
        if not is_polyhedral(graph):
            continue
        sizes = {len(f) for f in trace_faces(graph)}
        if not sizes <= {3, 4}:
            continue
        bucket = by_n[graph.n]
        if not any(maps_isomorphic(graph, other) for other in bucket):
            bucket.append(graph)
    return by_n
