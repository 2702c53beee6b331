"""Combinatorial identities and exact volume bookkeeping for 4-lattices.

Everything here is exact rational arithmetic: volumes are carried as the
coefficient q of the unit pi^2/3, never as floats.  Infinite stabilizer
orders are the distinguished value ``math.inf`` whose reciprocal is taken
to be exactly 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import BadStabilizerOrder, IdentityViolation, NotMinimal
from .lattice import (
    FaceLattice,
    FVector,
    canonical_24cell,
    combinatorially_isomorphic,
    facet_lattice,
    octahedron,
)

INFINITE = math.inf


@dataclass(frozen=True)
class VolumeUnits:
    """An exact volume q * pi^2 / 3."""

    q: Fraction

    def __str__(self) -> str:
        return f"{self.q} * pi^2/3"

    @property
    def value(self) -> float:
        return float(self.q) * math.pi ** 2 / 3


@dataclass(frozen=True)
class IdentityReport:
    euler: bool
    edge_vertex: bool
    incidence_sum: bool

    @property
    def all_hold(self) -> bool:
        return self.euler and self.edge_vertex and self.incidence_sum


@dataclass(frozen=True)
class TwoFaceProfile:
    """Counts of k-gonal 2-faces, k >= 3."""

    counts: tuple[tuple[int, int], ...]  # sorted (k, f2(k)) pairs

    @classmethod
    def from_lattice(cls, lattice: FaceLattice) -> "TwoFaceProfile":
        tally: dict[int, int] = {}
        for f in lattice.ranks[2]:
            tally[len(f)] = tally.get(len(f), 0) + 1
        return cls(tuple(sorted(tally.items())))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "TwoFaceProfile":
        if any(k < 3 or c < 0 for k, c in counts.items()):
            raise ValueError("gon sizes must be >= 3 with non-negative counts")
        return cls(tuple(sorted((k, c) for k, c in counts.items() if c)))

    def f2_of(self, k: int) -> int:
        return dict(self.counts).get(k, 0)

    @property
    def max_gon(self) -> int:
        return max((k for k, _ in self.counts), default=0)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def gon_sum(self) -> int:
        """Sum over 2-faces of their vertex counts."""
        return sum(k * c for k, c in self.counts)

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in self.counts}


def check_identities(lattice: FaceLattice) -> IdentityReport:
    """Check Euler, the edge-vertex relation f1 = 4 f0, and the incidence
    sum 12 f0 = sum of vertex counts over 2-faces, for a 4-lattice."""
    if lattice.dim != 4:
        raise IdentityViolation("identity checks apply to dim-4 lattices")
    f0, f1, f2, f3 = lattice.f_vector()
    profile = TwoFaceProfile.from_lattice(lattice)
    return IdentityReport(
        euler=(f0 - f1 + f2 - f3 == 0),
        edge_vertex=(f1 == 4 * f0),
        incidence_sum=(12 * f0 == profile.gon_sum),
    )


def volume_units(f: FVector | tuple, strict: bool = False) -> VolumeUnits:
    """The exact volume (f0 - f3 + 4)/3 * pi^2, as VolumeUnits.

    With ``strict`` the Euler and edge-vertex identities are enforced first;
    otherwise they are the caller's responsibility.
    """
    f = FVector(f)
    if f.dim != 4:
        raise IdentityViolation("volume formula applies to 4-polytopes")
    f0, f1, f2, f3 = f
    if strict:
        if f0 - f1 + f2 - f3 != 0:
            raise IdentityViolation("Euler identity fails")
        if f1 != 4 * f0:
            raise IdentityViolation("edge-vertex identity f1 = 4 f0 fails")
    return VolumeUnits(Fraction(f0 - f3 + 4))


def _recip(order) -> Fraction:
    if order == INFINITE:
        return Fraction(0)
    return Fraction(1, order)


def zehrt_covolume(
    lattice: FaceLattice,
    stab2: Mapping[frozenset, int],
    stab0: Mapping[int, float],
) -> VolumeUnits:
    """Exact covolume in units of pi^2/3 from stabilizer orders.

    Evaluates kappa - 2 * sum_F (f0(F)-2)/|Stab(F)| + 4 * sum_v 1/|Stab(v)|
    with kappa = 4 - 2(f0 + f2) + sum_F f0(F).  Face stabilizer orders must
    be integers >= 2; vertex orders positive integers or INFINITE.
    """
    if lattice.dim != 4:
        raise IdentityViolation("covolume formula applies to 4-lattices")
    f0, _, f2, _ = lattice.f_vector()
    total = Fraction(4 - 2 * (f0 + f2))
    for face in lattice.ranks[2]:
        total += len(face)
    for face in lattice.ranks[2]:
        order = stab2.get(face)
        if not isinstance(order, int) or order < 2:
            raise BadStabilizerOrder(f"2-face stabilizer order {order!r} (need int >= 2)")
        total -= 2 * Fraction(len(face) - 2, order)
    for v in lattice.vertices:
        order = stab0.get(v)
        if order == INFINITE:
            continue
        if not isinstance(order, int) or order < 1:
            raise BadStabilizerOrder(f"vertex stabilizer order {order!r}")
        total += 4 * _recip(order)
    return VolumeUnits(total)


def uniform_stabilizers(
    lattice: FaceLattice, face_order: int = 4, vertex_order: float = INFINITE
) -> tuple[dict, dict]:
    """The right-angled ideal assignment: every 2-face order 4, every vertex
    infinite (overridable)."""
    return (
        {f: face_order for f in lattice.ranks[2]},
        {v: vertex_order for v in lattice.vertices},
    )


def excess_rhs(profile: TwoFaceProfile) -> Fraction:
    """(1/3) * sum over k >= 4 of (k-3) f2(k)."""
    return Fraction(sum((k - 3) * c for k, c in profile.counts if k >= 4), 3)


@dataclass(frozen=True)
class ExcessReport:
    lhs: int
    rhs: Fraction


def volume_excess(lattice: FaceLattice) -> ExcessReport:
    """The identity f0 - f3 = (1/3) sum (k-3) f2(k), evaluated on both sides.

    Requires the three identity checks to hold; raises IdentityViolation if
    they fail or if the two sides disagree.
    """
    report = check_identities(lattice)
    if not report.all_hold:
        raise IdentityViolation(f"identity checks fail: {report}")
    f = lattice.f_vector()
    lhs = f[0] - f[3]
    rhs = excess_rhs(TwoFaceProfile.from_lattice(lattice))
    if lhs != rhs:
        raise IdentityViolation(f"excess mismatch: {lhs} != {rhs}")
    if lhs < 0:
        raise IdentityViolation(f"negative excess {lhs}")
    return ExcessReport(lhs=lhs, rhs=rhs)


MINIMAL_VERDICT = "isometric to the 24-cell"


@dataclass(frozen=True)
class MinVolumeCertificate:
    f_vector: tuple
    volume_units_q: int
    excess: int
    two_face_profile: dict
    verdict: str

    def to_json(self) -> dict:
        return {
            "f_vector": list(self.f_vector),
            "volume_units_q": self.volume_units_q,
            "excess": self.excess,
            "two_face_profile": dict(self.two_face_profile),
            "verdict": self.verdict,
        }


def certify_min_volume(lattice: FaceLattice) -> MinVolumeCertificate:
    """Certify that a 4-lattice attains the minimal volume 4 * pi^2/3.

    At q = 4 all 2-faces must be triangles and all facets combinatorial
    octahedra; the certificate then reports the rigidity verdict.  A lattice
    with q > 4 raises NotMinimal carrying the excess.
    """
    excess = volume_excess(lattice)
    q = volume_units(lattice.f_vector()).q
    if q > 4:
        raise NotMinimal(q, excess.lhs)
    if q < 4:
        raise IdentityViolation(f"q = {q} < 4 contradicts the excess identity")
    profile = TwoFaceProfile.from_lattice(lattice)
    if profile.max_gon != 3:
        raise IdentityViolation("q = 4 but non-triangular 2-faces present")
    reference = octahedron()
    for facet in lattice.facets:
        if not combinatorially_isomorphic(facet_lattice(lattice, facet), reference):
            raise IdentityViolation("q = 4 but a facet is not an octahedron")
    return MinVolumeCertificate(
        f_vector=tuple(lattice.f_vector()),
        volume_units_q=int(q),
        excess=excess.lhs,
        two_face_profile=profile.to_json(),
        verdict=MINIMAL_VERDICT,
    )


def facet_lower_bound(f2_of_facet: int) -> int:
    """Minimum facet count of a 4-polytope one of whose facets has the given
    face count: 2 * f2 - 1."""
    if f2_of_facet < 4:
        raise ValueError("a 3-polytope has at least 4 faces")
    return 2 * f2_of_facet - 1


def verify_24cell_volume() -> bool:
    """Sanity entry point: the 24-cell has q = 4 both directly and via the
    stabilizer formula."""
    lat = canonical_24cell()
    direct = volume_units(lat.f_vector(), strict=True)
    via_stabs = zehrt_covolume(lat, *uniform_stabilizers(lat))
    return direct == via_stabs == VolumeUnits(Fraction(4))
