"""First-order convex feasibility over moment sets.

Both operations here minimize a convex quadratic over products of
density-matrix sets by Frank-Wolfe (conditional gradient):

* ``project_onto_moment`` - distance from a real vector to the moment set,
* ``moments_intersect``  - feasibility of m_V and m_W sharing a point.

A density matrix M over the coefficient space C^r maps linearly to the moment
coordinates y = diag(Q M Q*) in R^n, and the linear minimization oracle over
the density set is an extreme eigenvector of the r x r gradient compression,
so every step costs one small eigensolve.  Iterates are kept as explicit
convex combinations of rank-one atoms |Q u|^2, which enables pairwise (swap)
steps and a periodic exact reweighting over the collected atoms; both remove
the classic zig-zag stall near low-dimensional faces.  The duality gap of the
linear oracle certifies accuracy, and disjointness is only ever declared
through an exact support-function separation with a strict margin.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from .linalg import hermitian_eig
from .subspace import Subspace

#: Diagonal-difference norm below which the sets are declared intersecting.
DEFAULT_TOL = 1e-7
DEFAULT_MAX_ITER = 50_000
#: Strict support-function margin required to certify disjointness.
SEPARATION_MARGIN = 1e-9

_WEIGHT_FLOOR = 1e-15
_CORRECT_EVERY = 32
_SEPARATE_EVERY = 256
_MAX_ATOMS = 160
_NNLS_PENALTY = 1e3


def _compression(q: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Hermitized r x r compression Q* diag(d) Q."""
    m = q.conj().T @ (d[:, None] * q)
    return 0.5 * (m + m.conj().T)


class _Side:
    """One moment-set factor of the product feasible set.

    Atoms are unit coefficient vectors u in C^r; atom i contributes the
    moment point |Q u_i|^2 with weight ``weights[i]``.
    """

    def __init__(self, subspace: Subspace, sign: float):
        self.subspace = subspace
        self.q = subspace.basis
        self.sign = float(sign)
        r = subspace.r
        eye = np.eye(r, dtype=np.complex128)
        self.atoms: list[np.ndarray] = [eye[:, i].copy() for i in range(r)]
        self.weights = np.full(r, 1.0 / r)
        self.points = np.array([self._point(u) for u in self.atoms])
        # Principal-vertex probes: coefficient vectors of the principal
        # standard vectors, available to the reweighting step at zero weight.
        for i in range(subspace.n):
            coeff = self.q.conj().T[:, i]
            norm = float(np.linalg.norm(coeff))
            if norm > 1e-12:
                self._append_atom(coeff / norm, 0.0)
        # The initial basis and the probes are never dropped.
        self.protected = len(self.atoms)

    def _point(self, u: np.ndarray) -> np.ndarray:
        return np.abs(self.q @ u) ** 2

    def _append_atom(self, u: np.ndarray, weight: float) -> int:
        for i, existing in enumerate(self.atoms):
            if abs(np.vdot(existing, u)) > 1.0 - 1e-12:
                self.weights[i] += weight
                return i
        self.atoms.append(u)
        self.weights = np.append(self.weights, weight)
        if hasattr(self, "points"):
            self.points = np.vstack([self.points, self._point(u)])
        return len(self.atoms) - 1

    def y(self) -> np.ndarray:
        return self.weights @ self.points

    def lmo(self, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Atom minimizing <sign * d, z> over the moment set."""
        dec = hermitian_eig(self.sign * _compression(self.q, d), atol=1e-8)
        u = dec.eigenvectors[:, 0]
        return u, self._point(u)

    def away_index(self, d: np.ndarray) -> int | None:
        """Active atom maximizing <sign * d, z> (the pairwise donor)."""
        active = np.flatnonzero(self.weights > _WEIGHT_FLOOR)
        if active.size == 0:
            return None
        scores = self.points[active] @ (self.sign * d)
        return int(active[np.argmax(scores)])

    def density(self) -> np.ndarray:
        """The r x r density matrix of the current convex combination."""
        w = self.weights / self.weights.sum()
        m = np.zeros((self.q.shape[1], self.q.shape[1]), dtype=np.complex128)
        for weight, u in zip(w, self.atoms):
            if weight > 0.0:
                m += weight * np.outer(u, u.conj())
        return 0.5 * (m + m.conj().T)

    def drop_idle_atoms(self) -> None:
        """Remove unprotected atoms that carry no weight."""
        keep = self.weights > _WEIGHT_FLOOR
        keep[: self.protected] = True
        if not keep.all():
            self.atoms = [u for u, k in zip(self.atoms, keep) if k]
            self.points = self.points[keep]
            self.weights = self.weights[keep]

    def prune(self) -> bool:
        if len(self.atoms) <= _MAX_ATOMS:
            return False
        extra = np.arange(self.protected, len(self.atoms))
        budget = _MAX_ATOMS - self.protected
        top = extra[np.argsort(self.weights[extra])[::-1][:budget]]
        keep_idx = np.concatenate([np.arange(self.protected), np.sort(top)])
        self.atoms = [self.atoms[i] for i in keep_idx]
        self.points = self.points[keep_idx]
        w = self.weights[keep_idx]
        total = w.sum()
        self.weights = w / total if total > 0 else np.full(len(w), 1.0 / len(w))
        return True


class _FeasibilityEngine:
    """Frank-Wolfe with pairwise steps and exact atom reweighting for
    min || sum_s sign_s y_s - target ||^2 over a product of moment sets."""

    def __init__(
        self,
        sides: list[_Side],
        target: np.ndarray,
        tol: float,
        max_iter: int,
        record_history: bool = False,
        separation_probe=None,
    ):
        self.sides = sides
        self.target = target
        self.tol = float(tol)
        self.max_iter = int(max_iter)
        self.history: list[float] | None = [] if record_history else None
        self.separation_probe = separation_probe
        self.separation_result = None
        self.iterations = 0
        self.gap = math.inf

    def _residual(self) -> np.ndarray:
        d = -self.target.astype(np.float64, copy=True)
        for side in self.sides:
            d += side.sign * side.y()
        return d

    def _reweight(self, f_current: float) -> float:
        """Exact weight optimization over all collected atoms (augmented NNLS);
        kept only when it improves the objective."""
        n = self.target.size
        cols = []
        for s_idx, side in enumerate(self.sides):
            block = np.zeros((n + len(self.sides), len(side.atoms)))
            block[:n] = side.sign * side.points.T
            block[n + s_idx] = _NNLS_PENALTY
            cols.append(block)
        a = np.hstack(cols)
        b = np.concatenate([self.target, np.full(len(self.sides), _NNLS_PENALTY)])
        try:
            x, _ = nnls(a, b)
        except RuntimeError:
            return f_current
        offset = 0
        new_weights = []
        for side in self.sides:
            w = x[offset : offset + len(side.atoms)]
            offset += len(side.atoms)
            total = w.sum()
            if total <= 0.0:
                return f_current
            new_weights.append(w / total)
        old = [side.weights for side in self.sides]
        for side, w in zip(self.sides, new_weights):
            side.weights = w
        d = self._residual()
        f_new = float(d @ d)
        if f_new <= f_current:
            for side in self.sides:
                side.drop_idle_atoms()
            return f_new
        for side, w in zip(self.sides, old):
            side.weights = w
        return f_current

    def run(self) -> float:
        tol_sq = self.tol * self.tol
        d = self._residual()
        f = float(d @ d)
        best_f = f
        best_d = d.copy()
        for it in range(self.max_iter):
            self.iterations = it
            if self.history is not None:
                self.history.append(f)
            if f <= tol_sq:
                break

            # Linear minimization oracle on every side.
            fw = [side.lmo(d) for side in self.sides]
            delta_fw = -sum(side.sign * side.y() for side in self.sides)
            for side, (_, z) in zip(self.sides, fw):
                delta_fw += side.sign * z
            self.gap = float(-2.0 * (d @ delta_fw))
            if self.gap <= tol_sq:
                break

            # Candidate 1: joint Frank-Wolfe step toward the oracle atoms.
            best_step = None
            dd = float(delta_fw @ delta_fw)
            if dd > 0.0:
                gamma = min(max(-float(d @ delta_fw) / dd, 0.0), 1.0)
                f_new = f + 2.0 * gamma * float(d @ delta_fw) + gamma * gamma * dd
                best_step = ("fw", None, gamma, f_new)

            # Candidate 2: best pairwise swap on a single side.
            for s_idx, (side, (u, z)) in enumerate(zip(self.sides, fw)):
                away = side.away_index(d)
                if away is None:
                    continue
                direction = side.sign * (z - side.points[away])
                dd_p = float(direction @ direction)
                if dd_p <= 0.0:
                    continue
                gamma_max = float(side.weights[away])
                gamma = min(max(-float(d @ direction) / dd_p, 0.0), gamma_max)
                f_new = f + 2.0 * gamma * float(d @ direction) + gamma * gamma * dd_p
                if best_step is None or f_new < best_step[3]:
                    best_step = ("pairwise", (s_idx, away), gamma, f_new)

            if best_step is None:
                break
            snapshot = [(len(side.atoms), side.weights.copy()) for side in self.sides]
            kind, detail, gamma, _ = best_step
            if kind == "fw":
                for side, (u, _) in zip(self.sides, fw):
                    side.weights *= 1.0 - gamma
                    side._append_atom(u, gamma)
            else:
                s_idx, away = detail
                side = self.sides[s_idx]
                u, _ = fw[s_idx]
                side.weights[away] = max(side.weights[away] - gamma, 0.0)
                side._append_atom(u, gamma)
            for side in self.sides:
                total = side.weights.sum()
                if total > 0.0:
                    side.weights = side.weights / total
            d = self._residual()
            f_new = float(d @ d)
            if f_new > f:
                # Roundoff blocked the descent: revert and let the exact
                # reweighting try; stop when that stalls too.
                for side, (count, weights) in zip(self.sides, snapshot):
                    del side.atoms[count:]
                    side.points = side.points[:count]
                    side.weights = weights
                f_new = self._reweight(f)
                d = self._residual()
                if not f_new < f:
                    break
            f = f_new
            if any([side.prune() for side in self.sides]):
                d = self._residual()
                f = float(d @ d)

            if (it + 1) % _CORRECT_EVERY == 0:
                f = self._reweight(f)
                d = self._residual()
            if f < best_f:
                best_f = f
                best_d = d.copy()

            if (
                self.separation_probe is not None
                and f > tol_sq
                and (it + 1) % _SEPARATE_EVERY == 0
            ):
                self.separation_result = self.separation_probe(best_d)
                if self.separation_result is not None:
                    return f

        d = self._residual()
        f = self._reweight(float(d @ d))
        if self.history is not None:
            self.history.append(f)
        d = self._residual()
        if f < best_f:
            best_d = d.copy()
        if self.separation_probe is not None and f > tol_sq:
            self.separation_result = self.separation_probe(best_d)
        return f


# ---------------------------------------------------------------------------
# Public operations.

@dataclass(frozen=True)
class ProjectionResult:
    """Distance from a point to the moment set with a witness state.

    ``witness`` is the n x n density matrix supported on the subspace whose
    moment coordinates realize the distance; ``gap`` is the final duality gap
    of the squared objective (an upper bound on how far the squared distance
    is from optimal).
    """

    distance: float
    witness: np.ndarray
    gap: float
    iterations: int
    converged: bool


def project_onto_moment(
    s: Subspace,
    p,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ProjectionResult:
    """Euclidean distance from the real vector p to the moment set of s."""
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    if p.size != s.n:
        raise ValueError(f"point has dimension {p.size}, expected {s.n}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point has non-finite entries")
    side = _Side(s, +1.0)
    engine = _FeasibilityEngine([side], p, tol=tol, max_iter=max_iter)
    f = engine.run()
    distance = math.sqrt(max(f, 0.0))
    m = side.density()
    witness = side.q @ m @ side.q.conj().T
    converged = f <= tol * tol or engine.gap <= tol * tol
    return ProjectionResult(
        distance=distance,
        witness=0.5 * (witness + witness.conj().T),
        gap=engine.gap,
        iterations=engine.iterations,
        converged=converged,
    )


class IntersectionStatus(str, enum.Enum):
    INTERSECT = "INTERSECT"
    DISJOINT = "DISJOINT"
    INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class IntersectionCertificate:
    """Outcome of the moment-intersection feasibility problem.

    INTERSECT carries density matrices Y (supported on V) and X (supported on
    W) whose moment coordinates agree within tolerance, and their common
    point.  DISJOINT carries a unit direction u and the strict support gap
    ``margin`` by which max over m_V of <u, .> stays below min over m_W of
    <u, .>.  ``gap`` is the diagonal-difference norm reached by the solver.
    """

    status: IntersectionStatus
    space_v: Subspace
    space_w: Subspace
    witness_y: np.ndarray | None = None
    witness_x: np.ndarray | None = None
    common: np.ndarray | None = None
    direction: np.ndarray | None = None
    margin: float | None = None
    gap: float = math.nan
    iterations: int = 0


def separation_margin(v: Subspace, w: Subspace, u) -> float:
    """Support gap min over m_W of <u, .> minus max over m_V of <u, .>.

    Positive exactly when the hyperplane normal to u strictly separates the
    moment sets with m_V on the lower side.
    """
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    top_v = float(hermitian_eig(_compression(v.basis, u), atol=1e-8).eigenvalues[-1])
    bottom_w = float(hermitian_eig(_compression(w.basis, u), atol=1e-8).eigenvalues[0])
    return bottom_w - top_v


def _separation_probe(v: Subspace, w: Subspace):
    def probe(d: np.ndarray):
        norm = float(np.linalg.norm(d))
        if norm == 0.0:
            return None
        for sign in (-1.0, 1.0):
            u = sign * d / norm
            margin = separation_margin(v, w, u)
            if margin >= SEPARATION_MARGIN:
                return u, margin
        return None

    return probe


def moments_intersect(
    v: Subspace,
    w: Subspace,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> IntersectionCertificate:
    """Decide whether the moment sets of two subspaces share a point.

    Minimizes ||diag(Q_V M Q_V*) - diag(Q_W N Q_W*)||^2 over pairs of density
    matrices.  INTERSECT when the residual norm reaches ``tol``; DISJOINT only
    when an exact support-function separation holds with a strict margin;
    INDETERMINATE otherwise (tangent or unresolved within ``max_iter``).
    """
    if v.n != w.n:
        raise ValueError("subspaces live in different ambient dimensions")
    side_v = _Side(v, +1.0)
    side_w = _Side(w, -1.0)
    engine = _FeasibilityEngine(
        [side_v, side_w],
        np.zeros(v.n),
        tol=tol,
        max_iter=max_iter,
        separation_probe=_separation_probe(v, w),
    )
    f = engine.run()
    gap = math.sqrt(max(f, 0.0))
    if gap <= tol:
        m_v = side_v.density()
        m_w = side_w.density()
        witness_y = side_v.q @ m_v @ side_v.q.conj().T
        witness_x = side_w.q @ m_w @ side_w.q.conj().T
        witness_y = 0.5 * (witness_y + witness_y.conj().T)
        witness_x = 0.5 * (witness_x + witness_x.conj().T)
        common = 0.5 * (
            np.real(np.diagonal(witness_y)) + np.real(np.diagonal(witness_x))
        )
        return IntersectionCertificate(
            status=IntersectionStatus.INTERSECT,
            space_v=v,
            space_w=w,
            witness_y=witness_y,
            witness_x=witness_x,
            common=common,
            gap=gap,
            iterations=engine.iterations,
        )
    if engine.separation_result is not None:
        u, margin = engine.separation_result
        return IntersectionCertificate(
            status=IntersectionStatus.DISJOINT,
            space_v=v,
            space_w=w,
            direction=u,
            margin=margin,
            gap=gap,
            iterations=engine.iterations,
        )
    return IntersectionCertificate(
        status=IntersectionStatus.INDETERMINATE,
        space_v=v,
        space_w=w,
        gap=gap,
        iterations=engine.iterations,
    )
