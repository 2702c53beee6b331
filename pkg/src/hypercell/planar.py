"""Planar embedded graphs as rotation systems.

A PlanarGraph stores, for each vertex, the cyclic order of its neighbors.
Faces are traced with the rule next(u -> v) = (v -> w) where w follows u in
the rotation at v; a rotation system embeds in the sphere exactly when
n - e + f = 2.  Canonical codes minimize a BFS code over all starting darts
and both orientations, so identical codes mean isomorphic as embedded
graphs up to relabeling and reflection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidLattice, NotPolyhedral, NotSphere
from .lattice import FaceLattice, build_from_facets

_SEP = 0  # code separator byte; vertex labels are 1-based


@dataclass(frozen=True)
class PlanarGraph:
    """Rotation-system representation of an embedded graph."""

    rot: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rot)
        if n == 0:
            raise ValueError("empty graph")
        seen_pairs = set()
        for v, nbrs in enumerate(self.rot):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"repeated neighbor at vertex {v} (multi-edge)")
            for u in nbrs:
                if not 0 <= u < n:
                    raise ValueError(f"neighbor {u} out of range")
                if u == v:
                    raise ValueError(f"loop at vertex {v}")
                seen_pairs.add((v, u))
        for v, u in seen_pairs:
            if (u, v) not in seen_pairs:
                raise ValueError(f"asymmetric adjacency {v}->{u}")
        # connectivity
        stack, reach = [0], {0}
        while stack:
            v = stack.pop()
            for u in self.rot[v]:
                if u not in reach:
                    reach.add(u)
                    stack.append(u)
        if len(reach) != n:
            raise ValueError("graph is not connected")

    @property
    def n(self) -> int:
        return len(self.rot)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    @property
    def edges(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset((v, u)) for v, r in enumerate(self.rot) for u in r)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.rot[u]


@dataclass(frozen=True)
class FaceCycle:
    """Ordered boundary cycle of one face of an embedding."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_set(self) -> frozenset[frozenset[int]]:
        vs = self.vertices
        return frozenset(
            frozenset((vs[i], vs[(i + 1) % len(vs)])) for i in range(len(vs))
        )


def _min_rotation(cycle: tuple[int, ...]) -> tuple[int, ...]:
    best = cycle
    for i in range(1, len(cycle)):
        cand = cycle[i:] + cycle[:i]
        if cand < best:
            best = cand
    return best


def trace_faces(graph: PlanarGraph) -> tuple[FaceCycle, ...]:
    """All face cycles of the rotation system; raises NotSphere unless
    n - e + f = 2."""
    rot = graph.rot
    pos = [{u: i for i, u in enumerate(r)} for r in rot]
    unused = {(v, u) for v, r in enumerate(rot) for u in r}
    faces = []
    while unused:
        start = min(unused)
        cycle = []
        dart = start
        while True:
            unused.discard(dart)
            cycle.append(dart[0])
            v, u = dart
            j = pos[u][v]
            dart = (u, rot[u][(j + 1) % len(rot[u])])
            if dart == start:
                break
        faces.append(FaceCycle(_min_rotation(tuple(cycle))))
    if graph.n - graph.m + len(faces) != 2:
        raise NotSphere(
            f"n - e + f = {graph.n} - {graph.m} + {len(faces)} != 2"
        )
    return tuple(sorted(faces, key=lambda f: f.vertices))


def is_polyhedral(graph: PlanarGraph) -> bool:
    """Simple, sphere-embedded and 3-connected (2-cut search at desk scale)."""
    n = graph.n
    if n < 4 or any(graph.degree(v) < 3 for v in range(n)):
        return False
    try:
        trace_faces(graph)
    except NotSphere:
        return False

    def connected_without(removed: set[int]) -> bool:
        keep = [v for v in range(n) if v not in removed]
        if not keep:
            return False
        stack, reach = [keep[0]], {keep[0]}
        while stack:
            v = stack.pop()
            for u in graph.rot[v]:
                if u not in removed and u not in reach:
                    reach.add(u)
                    stack.append(u)
        return len(reach) == len(keep)

    for pair in itertools.combinations(range(n), 2):
        if not connected_without(set(pair)):
            return False
    return True


# ---------------------------------------------------------------------------
# canonical codes


def _bfs_code(rot: Sequence[Sequence[int]], u0: int, v0: int) -> bytes:
    label = {u0: 1}
    order = [u0]
    entry = {u0: v0}
    out = bytearray()
    for x in order:
        r = rot[x]
        k = r.index(entry[x])
        d = len(r)
        for t in range(d):
            nb = r[(k + t) % d]
            if nb not in label:
                label[nb] = len(label) + 1
                order.append(nb)
                entry[nb] = x
            out.append(label[nb])
        out.append(_SEP)
    return bytes(out)


def _mirror_rot(rot: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(reversed(r)) for r in rot)


def canonical_code(graph: PlanarGraph) -> bytes:
    """Minimal BFS code over all starting darts and both orientations."""
    if graph.n > 255:
        raise ValueError("canonical codes support n <= 255")
    best = None
    for rot in (graph.rot, _mirror_rot(graph.rot)):
        for u0, r in enumerate(rot):
            for v0 in r:
                code = _bfs_code(rot, u0, v0)
                if best is None or code < best:
                    best = code
    assert best is not None
    return bytes([graph.n]) + best


def graph_from_code(code: bytes) -> PlanarGraph:
    """Rebuild the canonical representative encoded by canonical_code."""
    n = code[0]
    body = code[1:]
    rots: list[tuple[int, ...]] = []
    current: list[int] = []
    for b in body:
        if b == _SEP:
            rots.append(tuple(x - 1 for x in current))
            current = []
        else:
            current.append(b)
    if len(rots) != n or current:
        raise ValueError("malformed code")
    return PlanarGraph(tuple(rots))


def canonical_form(graph: PlanarGraph) -> PlanarGraph:
    """The canonically labeled representative of the embedded-isomorphism
    class (identical for isomorphic inputs)."""
    return graph_from_code(canonical_code(graph))


def map_automorphisms(graph: PlanarGraph) -> tuple[tuple[int, ...], ...]:
    """All automorphisms of the embedded graph, including the
    orientation-reversing ones, as vertex permutations."""
    best = None
    achievers = []
    for mirrored, rot in ((False, graph.rot), (True, _mirror_rot(graph.rot))):
        for u0, r in enumerate(rot):
            for v0 in r:
                code = _bfs_code(rot, u0, v0)
                if best is None or code < best:
                    best = code
                    achievers = [(mirrored, u0, v0)]
                elif code == best:
                    achievers.append((mirrored, u0, v0))

    def ordering(mirrored: bool, u0: int, v0: int) -> list[int]:
        rot = _mirror_rot(graph.rot) if mirrored else graph.rot
        label = {u0: 0}
        order = [u0]
        entry = {u0: v0}
        for x in order:
            r = rot[x]
            k = r.index(entry[x])
            for t in range(len(r)):
                nb = r[(k + t) % len(r)]
                if nb not in label:
                    label[nb] = len(label)
                    order.append(nb)
                    entry[nb] = x
        return order

    ref = ordering(*achievers[0])
    perms = set()
    for ach in achievers:
        ord_a = ordering(*ach)
        # position i of ord_a corresponds to position i of ref
        perm = [0] * graph.n
        for i, v in enumerate(ord_a):
            perm[v] = ref[i]
        perms.add(tuple(perm))
    return tuple(sorted(perms))


def mirror(graph: PlanarGraph) -> PlanarGraph:
    return PlanarGraph(_mirror_rot(graph.rot))


def relabel(graph: PlanarGraph, perm: Sequence[int]) -> PlanarGraph:
    """Apply the vertex permutation v -> perm[v]."""
    new_rot: list[tuple[int, ...]] = [()] * graph.n
    for v, r in enumerate(graph.rot):
        new_rot[perm[v]] = tuple(perm[u] for u in r)
    return PlanarGraph(tuple(new_rot))


# ---------------------------------------------------------------------------
# planar_code serialization


PLANAR_CODE_HEADER = b">>planar_code<<"


def planar_code_dumps(graphs: Iterable[PlanarGraph], header: bool = True) -> bytes:
    out = bytearray()
    if header:
        out += PLANAR_CODE_HEADER
    for g in graphs:
        if g.n > 255:
            raise ValueError("planar_code supports n <= 255")
        out.append(g.n)
        for r in g.rot:
            out.extend(u + 1 for u in r)
            out.append(0)
    return bytes(out)


def planar_code_loads(data: bytes) -> list[PlanarGraph]:
    if data.startswith(PLANAR_CODE_HEADER):
        data = data[len(PLANAR_CODE_HEADER):]
    graphs = []
    i = 0
    while i < len(data):
        n = data[i]
        i += 1
        rots = []
        for _ in range(n):
            nbrs = []
            while data[i] != 0:
                nbrs.append(data[i] - 1)
                i += 1
            i += 1
            rots.append(tuple(nbrs))
        graphs.append(PlanarGraph(tuple(rots)))
    return graphs


# ---------------------------------------------------------------------------
# bridges to face lattices


def lattice_from_planar(graph: PlanarGraph) -> FaceLattice:
    """The 3-lattice whose facets are the embedding's faces."""
    if not is_polyhedral(graph):
        raise NotPolyhedral("lattice conversion needs a polyhedral graph")
    faces = trace_faces(graph)
    return build_from_facets(3, [frozenset(f.vertices) for f in faces])


def _polygon_cycle(face: frozenset, edges_in: list[frozenset]) -> list[int]:
    nbrs: dict[int, list[int]] = {v: [] for v in face}
    for e in edges_in:
        u, v = sorted(e)
        nbrs[u].append(v)
        nbrs[v].append(u)
    if any(len(ns) != 2 for ns in nbrs.values()):
        raise NotPolyhedral(f"2-face {sorted(face)} is not a polygon")
    start = min(face)
    cycle = [start, min(nbrs[start])]
    while len(cycle) < len(face):
        prev, cur = cycle[-2], cycle[-1]
        nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
        cycle.append(nxt)
    return cycle


def planar_from_lattice(lattice: FaceLattice) -> PlanarGraph:
    """Rotation system of a 3-lattice's one-skeleton, faces oriented
    consistently so that tracing recovers the lattice's 2-faces."""
    if lattice.dim != 3:
        raise InvalidLattice("planar conversion needs a 3-lattice")
    polys = list(lattice.ranks[2])
    edges = list(lattice.ranks[1])
    cycles: dict[frozenset, list[int]] = {
        f: _polygon_cycle(f, [e for e in edges if e <= f]) for f in polys
    }
    faces_of_edge: dict[frozenset, list[frozenset]] = {e: [] for e in edges}
    for f in polys:
        cyc = cycles[f]
        for i in range(len(cyc)):
            faces_of_edge[frozenset((cyc[i], cyc[(i + 1) % len(cyc)]))].append(f)
    if any(len(fs) != 2 for fs in faces_of_edge.values()):
        raise NotPolyhedral("every edge must lie in exactly two 2-faces")

    def directed(f: frozenset) -> set[tuple[int, int]]:
        cyc = oriented[f]
        return {(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}

    oriented: dict[frozenset, list[int]] = {polys[0]: cycles[polys[0]]}
    queue = [polys[0]]
    while queue:
        f = queue.pop(0)
        darts = directed(f)
        for u, v in darts:
            for g in faces_of_edge[frozenset((u, v))]:
                if g == f or g in oriented:
                    continue
                cyc = cycles[g]
                gd = {(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}
                # the neighbor must traverse the shared edge in the opposite sense
                oriented[g] = cyc if (v, u) in gd else list(reversed(cyc))
                queue.append(g)
    if len(oriented) != len(polys):
        raise NotPolyhedral("face adjacency is not connected")
    for f in polys:
        darts = directed(f)
        for u, v in darts:
            others = [g for g in faces_of_edge[frozenset((u, v))] if g != f]
            if (u, v) in directed(others[0]):
                raise NotPolyhedral("inconsistent orientation (not a sphere)")

    successor: dict[int, dict[int, int]] = {v: {} for v in lattice.vertices}
    for f in polys:
        cyc = oriented[f]
        L = len(cyc)
        for i in range(L):
            u, v, w = cyc[i], cyc[(i + 1) % L], cyc[(i + 2) % L]
            successor[v][u] = w
    rots = []
    for v in lattice.vertices:
        succ = successor[v]
        start = min(succ)
        ring = [start]
        while len(ring) < len(succ):
            ring.append(succ[ring[-1]])
        if succ[ring[-1]] != ring[0]:
            raise NotPolyhedral(f"link of vertex {v} is not a single cycle")
        rots.append(tuple(ring))
    graph = PlanarGraph(tuple(rots))
    if len(trace_faces(graph)) != len(polys):
        raise NotPolyhedral("rotation system does not reproduce the 2-faces")
    return graph
