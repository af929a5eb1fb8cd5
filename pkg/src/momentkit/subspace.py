"""Subspaces of C^n with a fixed standard basis: construction, genericity,
principal standard vectors and the centroid of the moment set.

A subspace is generic (with respect to the standard basis) when its projector
has a strictly positive diagonal; exactly then every coordinate axis admits a
principal standard vector, the unit vector of the subspace closest in angle to
that axis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import hermitian_eig, orthonormalize, projector, spectral_norm

#: Default threshold on projector diagonal entries for genericity tests.
GENERIC_TOL = 1e-10


class NotGenericAtCoordinate(ValueError):
    """The subspace is orthogonal to a coordinate axis, so the requested
    principal standard vector does not exist."""

    def __init__(self, index: int, diagonal: float):
        self.index = index
        self.diagonal = float(diagonal)
        super().__init__(
            f"no principal vector at coordinate {index}: projector diagonal "
            f"entry {diagonal:.3e} is below tolerance"
        )


class NotGenericSubspace(ValueError):
    """The subspace misses principal vectors at the listed coordinates."""

    def __init__(self, offending: tuple[int, ...]):
        self.offending = tuple(offending)
        super().__init__(f"subspace is not generic at coordinates {list(offending)}")


@dataclass(frozen=True)
class Subspace:
    """An r-dimensional subspace of C^n.

    ``basis`` is an n x r matrix with orthonormal columns, ``projector`` the
    cached n x n orthogonal projector onto the span.  Instances are treated as
    immutable; operations never modify the stored arrays.
    """

    basis: np.ndarray
    projector: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def r(self) -> int:
        return self.basis.shape[1]

    @property
    def is_whole_space(self) -> bool:
        return self.r == self.n

    def membership_residual(self, x) -> float:
        """Norm of (P x - x); zero iff x lies in the subspace."""
        x = np.asarray(x, dtype=np.complex128).reshape(-1)
        return float(np.linalg.norm(self.projector @ x - x))


def subspace_from_spanning(vectors) -> Subspace:
    """Build a Subspace from any spanning set (numerical rank detection).

    Raises ``ValueError`` when the span is zero.  A span equal to all of C^n is
    allowed; it is flagged by ``Subspace.is_whole_space``.
    """
    q = orthonormalize(vectors)
    if q.shape[1] == 0:
        raise ValueError("vectors span only the zero subspace")
    return Subspace(basis=q, projector=projector(q))


def whole_space(n: int) -> Subspace:
    """The full space C^n."""
    eye = np.eye(n, dtype=np.complex128)
    return Subspace(basis=eye, projector=eye.copy())


@dataclass(frozen=True)
class GenericityReport:
    is_generic: bool
    offending: tuple[int, ...]


def is_generic(s: Subspace, tol: float = GENERIC_TOL) -> GenericityReport:
    """Check that every projector diagonal entry exceeds ``tol``."""
    diag = np.real(np.diagonal(s.projector))
    offending = tuple(int(j) for j in np.flatnonzero(diag <= tol))
    return GenericityReport(is_generic=not offending, offending=offending)


@dataclass(frozen=True)
class PrincipalVector:
    """Principal standard vector at coordinate ``index``.

    ``v`` is the normalized projection of the standard basis vector onto the
    subspace, phase-fixed so its own coordinate ``index`` is real positive;
    ``top`` is that coordinate, the largest attainable modulus there over all
    unit vectors of the subspace.
    """

    index: int
    v: np.ndarray
    top: float


def principal_vector(s: Subspace, j: int, tol: float = GENERIC_TOL) -> PrincipalVector:
    """Principal standard vector v^j = P e_j / ||P e_j||, with v^j_j > 0."""
    if not 0 <= j < s.n:
        raise IndexError(f"coordinate {j} out of range for ambient dimension {s.n}")
    col = s.projector[:, j]
    diag = float(np.real(s.projector[j, j]))
    if diag <= tol:
        raise NotGenericAtCoordinate(j, diag)
    norm = float(np.linalg.norm(col))
    v = col / norm
    # P e_j has real positive j-th entry up to roundoff; pin the phase exactly.
    pivot = v[j]
    v = v * (np.conj(pivot) / np.abs(pivot))
    return PrincipalVector(index=j, v=v, top=norm)


def centroid(s: Subspace) -> np.ndarray:
    """Centroid of the moment set: diag(P)/r.

    Equals the barycentre of the moment points of any orthonormal basis of the
    subspace, hence is independent of the basis choice.
    """
    return np.real(np.diagonal(s.projector)) / s.r


# ---------------------------------------------------------------------------
# Minimal subspace arithmetic backing the centroid identities.

def orthogonal_complement(s: Subspace) -> Subspace:
    """Orthogonal complement; rejects the whole space (empty complement)."""
    if s.is_whole_space:
        raise ValueError("the whole space has a trivial complement")
    dec = hermitian_eig(s.projector)
    q = dec.eigenvectors[:, dec.eigenvalues < 0.5]
    return Subspace(basis=q, projector=projector(q))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Span of the union of the two subspaces."""
    return subspace_from_spanning(np.hstack([a.basis, b.basis]).T)


def subspace_intersection(a: Subspace, b: Subspace, tol: float = 1e-8) -> Subspace | None:
    """Intersection of two subspaces, or None when it is trivial.

    Computed as the eigenspace of P_a + P_b at eigenvalue 2.
    """
    dec = hermitian_eig(a.projector + b.projector)
    q = dec.eigenvectors[:, dec.eigenvalues > 2.0 - tol]
    if q.shape[1] == 0:
        return None
    return Subspace(basis=q, projector=projector(q))


def mutually_orthogonal(a: Subspace, b: Subspace, tol: float = 1e-10) -> bool:
    return spectral_norm(a.projector @ b.projector) <= tol


def is_contained(inner: Subspace, outer: Subspace, tol: float = 1e-10) -> bool:
    return spectral_norm(outer.projector @ inner.projector - inner.projector) <= tol


def _difference(outer: Subspace, inner: Subspace) -> Subspace:
    """Orthogonal complement of ``inner`` within ``outer`` (inner must be
    contained in outer)."""
    reduced = (np.eye(outer.n) - inner.projector) @ outer.basis
    return subspace_from_spanning(reduced.T)


# ---------------------------------------------------------------------------
# Centroid algebra.

@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of one centroid identity: either a residual or the failed
    hypothesis."""

    name: str
    applicable: bool
    residual: float | None = None
    reason: str | None = None


@dataclass(frozen=True)
class CentroidAlgebraReport:
    checks: tuple[IdentityCheck, ...]

    def residual(self, name: str) -> float:
        for c in self.checks:
            if c.name == name and c.applicable:
                return float(c.residual)
        raise KeyError(f"identity {name!r} was not applicable")

    @property
    def max_residual(self) -> float:
        vals = [c.residual for c in self.checks if c.applicable]
        return max(vals) if vals else 0.0


def centroid_algebra_check(
    s: Subspace,
    v: Subspace | None = None,
    tol: float = 1e-10,
) -> CentroidAlgebraReport:
    """Evaluate the centroid composition identities that apply to (s, v).

    Checked identities (by the relation the pair satisfies):

    * ``direct-sum``:   s orthogonal to v:  (r+k) c(s (+) v) = r c(s) + k c(v)
    * ``complement``:   always (needs r < n):  (n-r) c(s^perp) = 1 - r c(s)
    * ``difference``:   v strictly contained in s:
      (r-d) c(s (-) v) = r c(s) - d c(v)
    * ``shared-part``:  d = dim(s & v), with (s (-) d) orthogonal to (v (-) d):
      (r+k-d) c(s + v) = r c(s) + k c(v) - d c(s & v)

    Hypotheses violated within ``tol`` are reported, not raised.
    """
    checks: list[IdentityCheck] = []
    c_s = centroid(s)

    if s.is_whole_space:
        checks.append(IdentityCheck("complement", False, reason="s is the whole space"))
    else:
        comp = orthogonal_complement(s)
        lhs = centroid(comp)
        rhs = (np.ones(s.n) - s.r * c_s) / (s.n - s.r)
        checks.append(IdentityCheck("complement", True, residual=float(np.max(np.abs(lhs - rhs)))))

    if v is None:
        return CentroidAlgebraReport(tuple(checks))
    if v.n != s.n:
        raise ValueError("subspaces live in different ambient dimensions")

    c_v = centroid(v)
    r, k = s.r, v.r

    if mutually_orthogonal(s, v, tol):
        both = subspace_sum(s, v)
        lhs = centroid(both)
        rhs = (r * c_s + k * c_v) / (r + k)
        checks.append(IdentityCheck("direct-sum", True, residual=float(np.max(np.abs(lhs - rhs)))))
    else:
        gap = spectral_norm(s.projector @ v.projector)
        checks.append(
            IdentityCheck("direct-sum", False, reason=f"s and v are not orthogonal (|P_s P_v| = {gap:.3e})")
        )

    if is_contained(v, s, tol) and v.r < s.r:
        diff = _difference(s, v)
        lhs = centroid(diff)
        rhs = (r * c_s - k * c_v) / (r - k)
        checks.append(IdentityCheck("difference", True, residual=float(np.max(np.abs(lhs - rhs)))))
    else:
        checks.append(
            IdentityCheck("difference", False, reason="v is not strictly contained in s")
        )

    shared = subspace_intersection(s, v)
    d = 0 if shared is None else shared.r
    s_red = s if shared is None else (_difference(s, shared) if d < r else None)
    v_red = v if shared is None else (_difference(v, shared) if d < k else None)
    reduced_orthogonal = (
        s_red is None or v_red is None or mutually_orthogonal(s_red, v_red, tol)
    )
    if reduced_orthogonal:
        total = subspace_sum(s, v)
        lhs = centroid(total)
        shared_term = 0.0 if shared is None else d * centroid(shared)
        rhs = (r * c_s + k * c_v - shared_term) / (r + k - d)
        checks.append(IdentityCheck("shared-part", True, residual=float(np.max(np.abs(lhs - rhs)))))
    else:
        checks.append(
            IdentityCheck(
                "shared-part",
                False,
                reason="the parts of s and v outside their intersection are not orthogonal",
            )
        )
    return CentroidAlgebraReport(tuple(checks))
