"""Graded face lattices of combinatorial polytopes.

A lattice of dimension n stores, for each rank 0..n-1, the faces of that
rank as vertex sets.  Faces are identified with their vertex sets, which is
valid for every polytope in scope (all of them are atomistic), and vertex
ids are always the dense integers 0..f0-1.  Coordinates are used only
inside the canonical constructors to derive incidences and are discarded
afterwards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import (
    DimMismatch,
    DuplicateFacet,
    InvalidLattice,
    KTooSmall,
    NonGraded,
    RankOutOfRange,
    UnknownVertex,
)

Face = frozenset


class FVector(tuple):
    """Tuple (f_0, ..., f_{n-1}) of face counts of an n-polytope."""

    def __new__(cls, counts: Iterable[int]):
        counts = tuple(int(c) for c in counts)
        if len(counts) < 2:
            raise ValueError("an f-vector needs at least two ranks")
        if any(c < 0 for c in counts):
            raise ValueError("face counts must be non-negative")
        return super().__new__(cls, counts)

    @property
    def dim(self) -> int:
        return len(self)


@dataclass(frozen=True)
class FaceLattice:
    """Graded incidence structure of a combinatorial n-polytope.

    ``ranks[r]`` is the sorted tuple of rank-r faces (frozensets of vertex
    ids).  Instances are immutable; construct through :func:`build_from_facets`
    or the canonical constructors, which validate all invariants.
    """

    dim: int
    ranks: tuple[tuple[Face, ...], ...]

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(next(iter(f)) for f in self.ranks[0]))

    @cached_property
    def n_vertices(self) -> int:
        return len(self.ranks[0])

    @property
    def facets(self) -> tuple[Face, ...]:
        return self.ranks[self.dim - 1]

    def faces_of_rank(self, r: int) -> tuple[Face, ...]:
        if not 0 <= r < self.dim:
            raise RankOutOfRange(f"rank {r} outside 0..{self.dim - 1}")
        return self.ranks[r]

    @cached_property
    def edges(self) -> tuple[Face, ...]:
        return self.ranks[1]

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.ranks[1]:
            u, v = sorted(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def rank_of(self) -> dict[Face, int]:
        return {f: r for r, faces in enumerate(self.ranks) for f in faces}

    def f_vector(self) -> FVector:
        return FVector(len(faces) for faces in self.ranks)

    def faces_containing(self, v: int, rank: int) -> tuple[Face, ...]:
        if v not in self.adjacency:
            raise UnknownVertex(f"vertex {v} not in lattice")
        return tuple(f for f in self.ranks[rank] if v in f)


def _sorted_faces(faces: Iterable[Face]) -> tuple[Face, ...]:
    return tuple(sorted(faces, key=lambda f: tuple(sorted(f))))


def _intersection_closure(facets: list[Face]) -> set[Face]:
    closure: set[Face] = set(facets)
    frontier = list(facets)
    while frontier:
        new: set[Face] = set()
        for a in frontier:
            for b in closure:
                c = a & b
                if c and c not in closure and c not in new:
                    new.add(c)
        closure |= new
        frontier = list(new)
    return closure


def build_from_facets(dim: int, facet_vertex_sets: Sequence[Iterable[int]]) -> FaceLattice:
    """Close the facet sets under pairwise intersection and stratify by rank.

    Vertex ids are re-indexed to 0..f0-1 (sorted order of the input ids).
    Raises NonGraded when the closure does not form a graded poset with
    exactly ``dim`` ranks, and DuplicateFacet on repeated facet sets.
    """
    if dim < 2:
        raise InvalidLattice("dim must be >= 2")
    raw = [frozenset(s) for s in facet_vertex_sets]
    if any(not f for f in raw):
        raise InvalidLattice("empty facet")
    if len(set(raw)) != len(raw):
        raise DuplicateFacet("two facets share the same vertex set")

    order = {v: i for i, v in enumerate(sorted(set().union(*raw)))}
    facets = [frozenset(order[v] for v in f) for f in raw]
    nverts = len(order)

    for a, b in itertools.combinations(facets, 2):
        if a <= b or b <= a:
            raise NonGraded("one facet is contained in another")
    counts = {v: sum(1 for f in facets if v in f) for v in range(nverts)}
    thin = [v for v, c in counts.items() if c < dim]
    if thin:
        raise NonGraded(f"vertex {thin[0]} lies in only {counts[thin[0]]} facets (< dim)")

    closure = _intersection_closure(facets)

    by_size = sorted(closure, key=len)
    height: dict[Face, int] = {}
    below: dict[Face, list[Face]] = {}
    for f in by_size:
        subs = [g for g in by_size if len(g) < len(f) and g < f]
        below[f] = subs
        height[f] = 1 + max((height[g] for g in subs), default=-1)

    top = dim - 1
    if max(height.values()) != top:
        raise NonGraded(
            f"closure stratifies into {max(height.values()) + 1} ranks, expected {dim}"
        )
    for f in closure:
        if height[f] == 0 and len(f) != 1:
            raise NonGraded(f"minimal face {sorted(f)} is not a vertex")
        if height[f] == 1 and len(f) != 2:
            raise NonGraded(f"rank-1 face {sorted(f)} is not an edge")
        if height[f] == top and f not in set(facets):
            raise NonGraded("non-facet face at top rank")
    if {f for f in closure if height[f] == 0} != {frozenset([v]) for v in range(nverts)}:
        raise NonGraded("rank-0 faces are not exactly the vertex singletons")

    # Gradedness: every covering pair must differ by exactly one rank.
    for f in closure:
        subs = below[f]
        maximal = [g for g in subs if not any(g < h for h in subs)]
        for g in maximal:
            if height[g] != height[f] - 1:
                raise NonGraded(
                    f"cover {sorted(g)} < {sorted(f)} jumps rank "
                    f"{height[g]} -> {height[f]}"
                )

    ranks: list[list[Face]] = [[] for _ in range(dim)]
    for f, h in height.items():
        ranks[h].append(f)
    for r, faces in enumerate(ranks):
        if len(faces) < dim + 1:
            raise NonGraded(f"only {len(faces)} faces of rank {r}, need >= dim+1")
    return FaceLattice(dim, tuple(_sorted_faces(fs) for fs in ranks))


def f_vector(lattice: FaceLattice) -> FVector:
    return lattice.f_vector()


def vertex_figure(lattice: FaceLattice, v: int) -> FaceLattice:
    """Lattice of faces strictly containing v, with ranks shifted down by one.

    Edges through v become the vertices of the figure.  Only defined for
    dim >= 3 (the figure itself must be a lattice of dimension >= 2).
    """
    if lattice.dim < 3:
        raise InvalidLattice("vertex figures need dim >= 3")
    if v not in lattice.adjacency:
        raise UnknownVertex(f"vertex {v} not in lattice")
    edges_thru = [e for e in lattice.ranks[1] if v in e]
    index = {e: i for i, e in enumerate(_sorted_faces(edges_thru))}
    figure_facets = []
    for facet in lattice.facets:
        if v in facet:
            figure_facets.append(frozenset(i for e, i in index.items() if e <= facet))
    return build_from_facets(lattice.dim - 1, figure_facets)


def is_simple_at_edges(lattice: FaceLattice) -> bool:
    """True iff every edge lies in exactly dim-1 facets."""
    want = lattice.dim - 1
    return all(
        sum(1 for f in lattice.facets if e <= f) == want for e in lattice.ranks[1]
    )


def facet_lattice(lattice: FaceLattice, facet: Face) -> FaceLattice:
    """The (dim-1)-lattice of one facet, re-indexed to dense vertex ids."""
    if facet not in lattice.rank_of or lattice.rank_of[facet] != lattice.dim - 1:
        raise UnknownVertex("not a facet of this lattice")
    subfacets = [f for f in lattice.ranks[lattice.dim - 2] if f <= facet]
    return build_from_facets(lattice.dim - 1, subfacets)


# ---------------------------------------------------------------------------
# canonical constructors


@lru_cache(maxsize=None)
def canonical_24cell() -> FaceLattice:
    """The 24-cell as a graded lattice: f-vector (24, 96, 96, 24).

    Vertices are the 8 points (+-2, 0, 0, 0) and the 16 points
    (+-1, +-1, +-1, +-1); facets collect the 6 vertices on each of the 24
    hyperplanes +-x_i +- x_j = 2.  (This self-dual coordinatization is the
    one whose supporting hyperplanes have that form.)
    """
    verts: list[tuple[int, int, int, int]] = []
    for i in range(4):
        for s in (2, -2):
            p = [0, 0, 0, 0]
            p[i] = s
            verts.append(tuple(p))
    for signs in itertools.product((1, -1), repeat=4):
        verts.append(signs)
    facets = []
    for i, j in itertools.combinations(range(4), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            facets.append(
                frozenset(
                    k for k, p in enumerate(verts) if si * p[i] + sj * p[j] == 2
                )
            )
    return build_from_facets(4, facets)


def antiprism(k: int) -> FaceLattice:
    """The 3-lattice of the k-antiprism: two k-gons and a band of 2k triangles.

    Vertex ids: 0..k-1 top ring, k..2k-1 bottom ring.  f = (2k, 4k, 2k+2).
    """
    if k < 3:
        raise KTooSmall(f"antiprism needs k >= 3, got {k}")
    top = frozenset(range(k))
    bottom = frozenset(range(k, 2 * k))
    facets = [top, bottom]
    for i in range(k):
        j = (i + 1) % k
        facets.append(frozenset({i, j, k + j}))
        facets.append(frozenset({k + i, k + j, i}))
    return build_from_facets(3, facets)


def octahedron() -> FaceLattice:
    """The octahedron lattice, f = (6, 12, 8) (same as antiprism(3))."""
    return antiprism(3)


def simplex(dim: int) -> FaceLattice:
    """The dim-simplex on dim+1 vertices."""
    facets = [
        frozenset(c) for c in itertools.combinations(range(dim + 1), dim)
    ]
    return build_from_facets(dim, facets)


def hypercube(dim: int) -> FaceLattice:
    """The dim-cube over vertex set {0,1}^dim."""
    verts = list(itertools.product((0, 1), repeat=dim))
    idx = {v: i for i, v in enumerate(verts)}
    facets = []
    for axis in range(dim):
        for val in (0, 1):
            facets.append(frozenset(idx[v] for v in verts if v[axis] == val))
    return build_from_facets(dim, facets)


def cube() -> FaceLattice:
    return hypercube(3)


# ---------------------------------------------------------------------------
# combinatorial isomorphism


def _vertex_invariant(lattice: FaceLattice, v: int) -> tuple:
    return tuple(
        tuple(sorted(len(f) for f in lattice.ranks[r] if v in f))
        for r in range(lattice.dim)
    )


def combinatorially_isomorphic(l1: FaceLattice, l2: FaceLattice) -> bool:
    """True iff a rank- and incidence-preserving bijection exists.

    Backtracks over vertex bijections (faces are determined by their vertex
    sets, so any lattice isomorphism is induced by one), pruning with vertex
    invariants, adjacency consistency, and face membership of every fully
    mapped face.
    """
    if l1.dim != l2.dim:
        raise DimMismatch(f"dim {l1.dim} vs {l2.dim}")
    if l1.f_vector() != l2.f_vector():
        return False
    for r in range(l1.dim):
        if sorted(len(f) for f in l1.ranks[r]) != sorted(len(f) for f in l2.ranks[r]):
            return False

    inv1 = {v: _vertex_invariant(l1, v) for v in l1.vertices}
    inv2 = {v: _vertex_invariant(l2, v) for v in l2.vertices}
    if sorted(inv1.values()) != sorted(inv2.values()):
        return False

    adj1, adj2 = l1.adjacency, l2.adjacency
    face_sets2 = [set(l2.ranks[r]) for r in range(l2.dim)]
    faces_by_vertex1: dict[int, list[tuple[int, Face]]] = {v: [] for v in l1.vertices}
    for r in range(1, l1.dim):
        for f in l1.ranks[r]:
            for v in f:
                faces_by_vertex1[v].append((r, f))

    # BFS vertex order keeps candidates tightly constrained by mapped neighbors.
    order: list[int] = []
    seen: set[int] = set()
    start = min(l1.vertices, key=lambda v: (sum(1 for u in l1.vertices if inv1[u] == inv1[v]), v))
    queue = [start]
    seen.add(start)
    while queue:
        v = queue.pop(0)
        order.append(v)
        for u in sorted(adj1[v]):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    order.extend(v for v in l1.vertices if v not in seen)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        for u, x in mapping.items():
            if (u in adj1[v]) != (x in adj2[w]):
                return False
        for r, f in faces_by_vertex1[v]:
            if all(u in mapping or u == v for u in f):
                img = frozenset(mapping[u] if u != v else w for u in f)
                if img not in face_sets2[r]:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in l2.vertices:
            if w in used or inv2[w] != inv1[v]:
                continue
            if not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# text interchange format


def lattice_to_text(lattice: FaceLattice) -> str:
    """Serialize: 'dim n', 'vertices m', then one sorted line per facet,
    lines sorted lexicographically."""
    lines = [
        " ".join(str(v) for v in sorted(f)) for f in lattice.facets
    ]
    lines.sort()
    return "\n".join(
        [f"dim {lattice.dim}", f"vertices {lattice.n_vertices}"] + lines
    ) + "\n"


def lattice_from_text(text: str) -> FaceLattice:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3 or not lines[0].startswith("dim ") or not lines[1].startswith("vertices "):
        raise InvalidLattice("expected 'dim n' and 'vertices m' header lines")
    dim = int(lines[0].split()[1])
    nverts = int(lines[1].split()[1])
    facets = [frozenset(int(t) for t in ln.split()) for ln in lines[2:]]
    lat = build_from_facets(dim, facets)
    if lat.n_vertices != nverts:
        raise InvalidLattice(
            f"header says {nverts} vertices, facets use {lat.n_vertices}"
        )
    return lat
