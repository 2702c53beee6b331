"""Exception types shared across the package."""

from __future__ import annotations


class HypercellError(Exception):
    """Base class for all package-specific errors."""


class InvalidLattice(HypercellError):
    """The input does not describe a valid graded face lattice."""


class NonGraded(InvalidLattice):
    """Intersection closure does not stratify into the expected ranks."""


class DuplicateFacet(InvalidLattice):
    """Two facets were given with the same vertex set."""


class UnknownVertex(HypercellError):
    """A vertex id is not part of the lattice."""


class DimMismatch(HypercellError):
    """Two lattices of different dimension were compared."""


class KTooSmall(HypercellError):
    """Antiprisms require k >= 3."""


class IdentityViolation(HypercellError):
    """A combinatorial identity required as a precondition does not hold."""


class BadStabilizerOrder(HypercellError):
    """A stabilizer order is outside its admissible range."""


class NotMinimal(HypercellError):
    """Volume certificate failed: the lattice exceeds the minimal volume."""

    def __init__(self, q, excess):
        self.q = q
        self.excess = excess
        super().__init__(f"volume is {q} units of pi^2/3 (> 4), excess {excess}")


class NotSphere(HypercellError):
    """Face tracing of a rotation system does not satisfy Euler's formula."""


class NotPolyhedral(HypercellError):
    """The graph is not simple, planar and 3-connected."""


class LimitExceeded(HypercellError):
    """A hard enumeration limit was exceeded."""


class SearchLimitExceeded(HypercellError):
    """The backtracking search exhausted its step budget."""


class IncompleteCatalog(HypercellError):
    """The catalog does not cover the vertex range required by a check."""


class OracleMismatch(HypercellError):
    """Generator output disagrees with the independent exhaustive oracle."""


class NonPositiveRho(HypercellError):
    """Perpendicular lengths must be strictly positive."""


class RankOutOfRange(HypercellError):
    """A face rank is outside 0..dim-1 or violates l < k."""
