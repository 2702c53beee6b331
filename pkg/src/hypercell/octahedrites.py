"""Octahedrite catalogs and the antiprism-optimality brute force.

An octahedrite is a 4-regular polyhedral planar graph whose faces are all
triangles or quadrilaterals.  The generator enumerates them by rotation-
system backtracking with face-size pruning; completeness for n <= 10 is
certified against the independent dart-pairing oracle rather than by a
correctness proof of the pruner.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import os
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import IncompleteCatalog, LimitExceeded, OracleMismatch
from .lattice import antiprism
from .mapsearch import collect_prefixes, search_quartic_maps
from .oracle import octahedrite_oracle
from .planar import (
    PlanarGraph,
    canonical_code,
    canonical_form,
    is_polyhedral,
    planar_code_dumps,
    planar_code_loads,
    planar_from_lattice,
    trace_faces,
)

GENERATOR_VERSION = "1"
MIN_N, MAX_N = 6, 20
OCTAHEDRITE_SIZES = frozenset({3, 4})

CATALOG_FILE = "octahedrites.pc"
MANIFEST_FILE = "manifest.json"


@dataclass
class OctahedriteCatalog:
    """Canonical-form octahedrites bucketed by vertex count."""

    by_n: dict[int, tuple[PlanarGraph, ...]]
    provenance: dict = field(default_factory=dict)

    @property
    def max_n(self) -> int:
        return int(self.provenance.get("max_n", max(self.by_n, default=0)))

    def counts(self) -> dict[int, int]:
        return {n: len(self.by_n.get(n, ())) for n in range(MIN_N, self.max_n + 1)}

    def members(self, n: int | None = None) -> tuple[PlanarGraph, ...]:
        if n is not None:
            return self.by_n.get(n, ())
        return tuple(g for k in sorted(self.by_n) for g in self.by_n[k])

    def save(self, directory: str) -> dict[str, str]:
        os.makedirs(directory, exist_ok=True)
        blob = planar_code_dumps(self.members())
        pc_path = os.path.join(directory, CATALOG_FILE)
        with open(pc_path, "wb") as fh:
            fh.write(blob)
        manifest = {
            "max_n": self.max_n,
            "counts_by_n": {str(n): c for n, c in sorted(self.counts().items())},
            "generator_version": GENERATOR_VERSION,
            "checks_applied": self.provenance.get("checks_applied", []),
        }
        man_path = os.path.join(directory, MANIFEST_FILE)
        with open(man_path, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return {
            CATALOG_FILE: hashlib.sha256(blob).hexdigest(),
            MANIFEST_FILE: hashlib.sha256(
                open(man_path, "rb").read()
            ).hexdigest(),
        }

    @classmethod
    def load(cls, directory: str) -> "OctahedriteCatalog":
        with open(os.path.join(directory, CATALOG_FILE), "rb") as fh:
            graphs = planar_code_loads(fh.read())
        with open(os.path.join(directory, MANIFEST_FILE), encoding="utf-8") as fh:
            manifest = json.load(fh)
        by_n: dict[int, list[PlanarGraph]] = {}
        for g in graphs:
            by_n.setdefault(g.n, []).append(g)
        return cls(
            by_n={n: tuple(v) for n, v in by_n.items()},
            provenance={
                "max_n": manifest["max_n"],
                "checks_applied": manifest.get("checks_applied", []),
                "generator_version": manifest.get("generator_version"),
            },
        )


def _is_octahedrite(graph: PlanarGraph) -> bool:
    if any(graph.degree(v) != 4 for v in range(graph.n)):
        return False
    if not is_polyhedral(graph):
        return False
    return {len(f) for f in trace_faces(graph)} <= OCTAHEDRITE_SIZES


def _search_job(args) -> list:
    max_n, sizes, cap, prefix = args
    return list(
        search_quartic_maps(max_n, frozenset(sizes), cap, prefix=prefix)
    )


def _candidate_rotations(max_n: int, sizes: frozenset[int], cap: int, jobs: int) -> list:
    if jobs <= 1:
        return list(search_quartic_maps(max_n, sizes, cap))
    shallow, prefixes, _depth = collect_prefixes(max_n, sizes, cap)
    args = [(max_n, tuple(sizes), cap, p) for p in prefixes]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=jobs) as pool:
        chunks = pool.map(_search_job, args)
    out = list(shallow)
    for chunk in chunks:
        out.extend(chunk)
    return out


def enumerate_octahedrites(
    max_n: int,
    jobs: int = 1,
    verify_oracle: bool = True,
    step_limit: int | None = None,
) -> OctahedriteCatalog:
    """Complete duplicate-free octahedrite catalog for 6 <= n <= max_n.

    The catalog is identical (same canonical codes, same order) for any
    ``jobs`` value.  With ``verify_oracle`` the counts and code sets for
    n <= 10 are checked against the exhaustive dart-pairing oracle and an
    OracleMismatch is raised on any disagreement.
    """
    if not MIN_N <= max_n <= MAX_N:
        raise LimitExceeded(f"max_n must lie in {MIN_N}..{MAX_N}, got {max_n}")
    rotations = (
        _candidate_rotations(max_n, OCTAHEDRITE_SIZES, 4, jobs)
        if step_limit is None
        else list(
            search_quartic_maps(max_n, OCTAHEDRITE_SIZES, 4, step_limit=step_limit)
        )
    )
    by_code: dict[int, dict[bytes, PlanarGraph]] = {}
    for rot in rotations:
        graph = PlanarGraph(rot)
        if not _is_octahedrite(graph):
            continue
        by_code.setdefault(graph.n, {})[canonical_code(graph)] = graph

    by_n: dict[int, tuple[PlanarGraph, ...]] = {}
    for n in range(MIN_N, max_n + 1):
        codes = by_code.get(n, {})
        by_n[n] = tuple(
            canonical_form(codes[c]) for c in sorted(codes)
        )

    checks = ["4-regular", "polyhedral", "faces in {3,4}"]
    oracle_to = 0
    if verify_oracle:
        oracle_to = min(max_n, 10)
        oracle = octahedrite_oracle(oracle_to)
        for n in range(MIN_N, oracle_to + 1):
            mine = {canonical_code(g) for g in by_n.get(n, ())}
            theirs = {canonical_code(g) for g in oracle.get(n, ())}
            if mine != theirs:
                raise OracleMismatch(
                    f"n={n}: generator found {len(mine)}, oracle {len(theirs)}"
                )
        checks.append(f"oracle-verified to n={oracle_to}")

    return OctahedriteCatalog(
        by_n=by_n,
        provenance={
            "max_n": max_n,
            "generator_version": GENERATOR_VERSION,
            "checks_applied": checks,
            "oracle_verified_to": oracle_to,
        },
    )


# ---------------------------------------------------------------------------
# necessary realizability checks


@dataclass(frozen=True)
class AndreevReport:
    four_valent: bool
    no_m2: bool
    no_m5: bool

    @property
    def all_pass(self) -> bool:
        return self.four_valent and self.no_m2 and self.no_m5


def necessary_andreev_checks(graph: PlanarGraph) -> AndreevReport:
    """Necessary conditions for an ideal right-angled realization.

    four_valent: all degrees are 4.  no_m2: no two faces share an edge plus
    a further vertex.  no_m5: no two faces share exactly two vertices that
    are not joined by a shared edge.  These are necessary conditions only;
    full sufficiency is out of scope.
    """
    four_valent = all(graph.degree(v) == 4 for v in range(graph.n))
    faces = trace_faces(graph)
    no_m2 = True
    no_m5 = True
    for i in range(len(faces)):
        vi = set(faces[i].vertices)
        ei = faces[i].edge_set
        for j in range(i + 1, len(faces)):
            shared_v = vi & set(faces[j].vertices)
            shared_e = ei & faces[j].edge_set
            if shared_e and len(shared_v) >= 3:
                no_m2 = False
            if not shared_e and len(shared_v) == 2:
                no_m5 = False
    return AndreevReport(four_valent=four_valent, no_m2=no_m2, no_m5=no_m5)


# ---------------------------------------------------------------------------
# antiprism recognition and Proposition-style brute force


@lru_cache(maxsize=None)
def _antiprism_code(k: int) -> bytes:
    return canonical_code(planar_from_lattice(antiprism(k)))


def antiprism_graph(k: int) -> PlanarGraph:
    """One-skeleton of the k-antiprism with its sphere embedding."""
    return planar_from_lattice(antiprism(k))


def is_antiprism(graph: PlanarGraph) -> int | None:
    """k if the graph is the k-antiprism's one-skeleton, else None."""
    n = graph.n
    if n < 6 or n % 2 != 0:
        return None
    if any(graph.degree(v) != 4 for v in range(n)):
        return None
    k = n // 2
    sizes = sorted(len(f) for f in trace_faces(graph))
    expect = sorted([3] * (2 * k) + [k, k])
    if sizes != expect:
        return None
    return k if canonical_code(graph) == _antiprism_code(k) else None


@dataclass(frozen=True)
class MinFacesResult:
    k: int
    min_f2: int
    witnesses: tuple[PlanarGraph, ...]
    all_witnesses_antiprism: bool
    deza_two_kgons: bool
    searched_max_n: int


def min_faces_with_kgon(k: int, search_limit: int = 5_000_000) -> MinFacesResult:
    """Minimum face count over 4-regular polyhedral planar graphs that pass
    the necessary checks and contain a k-gonal face.

    Exhausts all candidates with up to 2k vertices (a 4-regular sphere map
    on n vertices has exactly n + 2 faces, so this covers every graph with
    at most 2k + 2 faces).  Raises SearchLimitExceeded past the node budget.
    """
    if not 3 <= k <= 6:
        raise LimitExceeded(f"k must lie in 3..6 at desk scale, got {k}")
    max_n = 2 * k
    cap = max(3, max_n - 3)  # a face of an n-vertex map has at most n-3 edges
    sizes = frozenset(range(3, cap + 1))
    seen: dict[bytes, PlanarGraph] = {}
    for rot in search_quartic_maps(max_n, sizes, cap, step_limit=search_limit):
        graph = PlanarGraph(rot)
        if not is_polyhedral(graph):
            continue
        seen.setdefault(canonical_code(graph), graph)

    best_n: int | None = None
    witnesses: list[PlanarGraph] = []
    for code in sorted(seen):
        graph = seen[code]
        face_sizes = [len(f) for f in trace_faces(graph)]
        if k not in face_sizes:
            continue
        if not necessary_andreev_checks(graph).all_pass:
            continue
        if best_n is None or graph.n < best_n:
            best_n = graph.n
            witnesses = [graph]
        elif graph.n == best_n:
            witnesses.append(graph)
    if best_n is None:
        raise LimitExceeded(f"no admissible graph with a {k}-gon below n={max_n}")

    all_anti = all(is_antiprism(g) == k for g in witnesses)
    deza = True
    for g in witnesses:
        face_sizes = sorted(len(f) for f in trace_faces(g))
        if face_sizes != sorted([3] * (2 * k) + [k, k]):
            deza = False
    return MinFacesResult(
        k=k,
        min_f2=best_n + 2,
        witnesses=tuple(canonical_form(g) for g in witnesses),
        all_witnesses_antiprism=all_anti,
        deza_two_kgons=deza,
        searched_max_n=max_n,
    )


def d1_counting(f2_p1: int, f2_p2: int, face_sizes: tuple[int, int]) -> int:
    """New-facet lower bound for two facets glued along faces of the given
    sizes: f2(P1) + f2(P2) - (|F1| + |F2|) - 2."""
    s1, s2 = face_sizes
    for f2, s in ((f2_p1, s1), (f2_p2, s2)):
        if s < 3:
            raise ValueError("glued faces must be polygons")
        if f2 < 2 * s + 2:
            raise ValueError(
                f"a polyhedron with a {s}-gon has at least {2 * s + 2} faces, got {f2}"
            )
    return f2_p1 + f2_p2 - (s1 + s2) - 2


def require_catalog_through(catalog: OctahedriteCatalog, n: int) -> None:
    """Raise IncompleteCatalog unless the catalog covers all sizes <= n."""
    if catalog.max_n < n:
        raise IncompleteCatalog(f"catalog stops at n={catalog.max_n}, need {n}")
    for m in range(MIN_N, n + 1):
        if m not in catalog.by_n:
            raise IncompleteCatalog(f"catalog is missing the n={m} bucket")
