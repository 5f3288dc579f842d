"""Extreme eigenpairs of symmetric implicit operators.

The iterative solver is a thick-restart Lanczos with full reorthogonalization:
deterministic for a fixed seed, converging at the extremal end of the spectrum
that the operator kind calls for (smallest for Laplacians, largest for
modularity).  A dense symmetric solver handles the small projected problems
and the W x W concentration matrices downstream.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np

from .graph import LinearOperator, OperatorKind

# Relative gap below which the bandwidth cutoff is considered degenerate and
# the span of the returned basis is not uniquely defined.
DEGENERATE_GAP_RTOL = 1e-6

_DENSE_SIZE_LIMIT = 512


class ConvergenceError(RuntimeError):
    """Iterative solve did not reach the requested residual tolerance."""

    def __init__(self, message: str, converged: int, worst_residual: float):
        super().__init__(message)
        self.converged = converged
        self.worst_residual = worst_residual


class DegenerateCutoffWarning(UserWarning):
    """The eigenvalues across the bandwidth cutoff are numerically tied."""


class SpectralEnd(str, Enum):
    SMALLEST_FIRST = "smallest-first"
    LARGEST_FIRST = "largest-first"


@dataclass(frozen=True)
class SolverConfig:
    """Iterative solve parameters; defaults follow the library conventions.

    ``subspace_dimension`` (Krylov basis size) defaults to
    min(N, max(2W + 2, 20)) when left unset.
    """

    bandwidth: int
    tolerance: float = 1e-10
    max_iterations: int | None = None
    seed: int = 0
    subspace_dimension: int | None = None

    def __post_init__(self):
        if self.bandwidth < 1:
            raise ValueError(f"bandwidth must be >= 1, got {self.bandwidth}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.subspace_dimension is not None and self.subspace_dimension < 2:
            raise ValueError("subspace_dimension must be >= 2")


@dataclass(frozen=True)
class SpectralBasis:
    """W converged eigenpairs of one operator end.

    Columns of ``vectors`` are orthonormal and sign-fixed (largest-magnitude
    entry non-negative); ``values`` are sorted ascending for SMALLEST_FIRST and
    descending for LARGEST_FIRST.  ``cutoff_gap`` is |lambda_W - lambda_{W+1}|
    when one extra pair was probed, else None.
    """

    vectors: np.ndarray
    values: np.ndarray
    end: SpectralEnd
    operator_kind: OperatorKind
    residual_norms: np.ndarray
    seed: int
    tolerance: float
    degenerate_cutoff: bool = False
    cutoff_gap: float | None = None

    @property
    def node_count(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def bandwidth(self) -> int:
        return int(self.vectors.shape[1])

    def truncate(self, w: int) -> "SpectralBasis":
        """First-w-column slice; valid because the basis is nested by construction."""
        if not 1 <= w <= self.bandwidth:
            raise ValueError(f"cannot truncate to w={w} from bandwidth {self.bandwidth}")
        if w == self.bandwidth:
            return self
        gap = float(abs(self.values[w] - self.values[w - 1]))
        degenerate = gap < DEGENERATE_GAP_RTOL * max(abs(float(self.values[w - 1])), 1.0)
        return replace(
            self,
            vectors=self.vectors[:, :w],
            values=self.values[:w],
            residual_norms=self.residual_norms[:w],
            degenerate_cutoff=degenerate,
            cutoff_gap=gap,
        )


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so the largest-magnitude entry is non-negative (first index wins ties)."""
    out = np.array(vectors, dtype=np.float64, copy=True)
    for k in range(out.shape[1]):
        pivot = int(np.argmax(np.abs(out[:, k])))
        if out[pivot, k] < 0:
            out[:, k] = -out[:, k]
    return out


def solve_dense_symmetric(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full decomposition of a small symmetric matrix, eigenvalues descending.

    Rejects matrices with max |M - M^T| above 1e-12 or size above 512.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > _DENSE_SIZE_LIMIT:
        raise ValueError(f"dense solver guarded to size <= {_DENSE_SIZE_LIMIT}, got {m.shape[0]}")
    asym = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    if asym > 1e-12:
        raise ValueError(f"matrix is not symmetric: max asymmetry {asym:.3e}")
    evals, evecs = np.linalg.eigh((m + m.T) / 2.0)
    evals = evals[::-1]
    evecs = _fix_signs(evecs[:, ::-1])
    return evals, evecs


def _orthonormalize_against(v: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Two-pass Gram-Schmidt of v against the columns of basis, normalized."""
    for _ in range(2):
        v = v - basis @ (basis.T @ v)
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise ConvergenceError("cannot extend Krylov basis: zero vector after projection", 0, np.inf)
    return v / nrm


def _lanczos_extreme(
    op: LinearOperator,
    nev: int,
    largest: bool,
    tol: float,
    max_iterations: int,
    m: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Thick-restart Lanczos; returns (values, vectors, residuals, matvecs).

    Values come back sorted with the requested end first (ascending for the
    smallest end, descending for the largest).  Residuals are true 2-norms
    ||op u - lambda u|| measured on the returned vectors.
    """
    n = op.dimension
    apply = op.apply
    m = min(m, n)

    V = np.zeros((n, m), dtype=np.float64)
    theta = np.zeros(0)  # kept Ritz values after a restart
    coup = np.zeros(0)   # coupling row tying kept values to the boundary vector

    v0 = rng.standard_normal(n)
    v0 /= np.linalg.norm(v0)
    V[:, 0] = v0
    k = 0  # number of kept columns at the front of V
    matvecs = 0
    scale = 1.0  # running spectral-scale estimate for breakdown detection

    best_converged = 0
    worst_residual = np.inf

    while True:
        alphas = []
        betas = []  # beta[j] couples column k+j to k+j+1
        j = k
        boundary_beta = 0.0
        boundary_vec = None
        while j < m:
            if matvecs >= max_iterations:
                raise ConvergenceError(
                    f"no convergence after {matvecs} matvecs: "
                    f"{best_converged}/{nev} pairs converged, worst residual {worst_residual:.3e}",
                    best_converged,
                    worst_residual,
                )
            w = apply(V[:, j])
            matvecs += 1
            alpha = float(V[:, j] @ w)
            alphas.append(alpha)
            scale = max(scale, abs(alpha))
            # Full reorthogonalization, two passes, against every current column.
            active = V[:, : j + 1]
            w = w - active @ (active.T @ w)
            w = w - active @ (active.T @ w)
            beta = float(np.linalg.norm(w))
            if j + 1 < m:
                if beta <= 1e-13 * scale:
                    # Invariant subspace: restart with a fresh random direction;
                    # zero coupling keeps the projected matrix consistent.
                    V[:, j + 1] = _orthonormalize_against(rng.standard_normal(n), active)
                    betas.append(0.0)
                else:
                    V[:, j + 1] = w / beta
                    betas.append(beta)
            else:
                if beta <= 1e-13 * scale:
                    boundary_beta = 0.0
                    boundary_vec = None
                else:
                    boundary_beta = beta
                    boundary_vec = w / beta
            j += 1

        # Projected matrix: arrowhead over the kept Ritz values + tridiagonal tail.
        T = np.zeros((m, m), dtype=np.float64)
        if k:
            T[:k, :k] = np.diag(theta)
            T[:k, k] = coup
            T[k, :k] = coup
        for i, a in enumerate(alphas):
            T[k + i, k + i] = a
        for i, b in enumerate(betas):
            T[k + i, k + i + 1] = b
            T[k + i + 1, k + i] = b

        evals, Y = np.linalg.eigh(T)
        order = np.argsort(evals)[::-1] if largest else np.argsort(evals)
        evals = evals[order]
        Y = Y[:, order]
        scale = max(scale, float(np.max(np.abs(evals))))

        res_est = np.abs(boundary_beta * Y[m - 1, :])
        n_req = min(nev, m)
        best_converged = int(np.sum(res_est[:n_req] < tol))
        worst_residual = float(np.max(res_est[:n_req]))

        if best_converged == n_req and n_req == nev:
            X = V @ Y[:, :nev]
            lam = evals[:nev]
            R = np.stack([apply(X[:, i]) for i in range(nev)], axis=1) - X * lam
            matvecs += nev
            true_res = np.linalg.norm(R, axis=0)
            if np.all(true_res < tol):
                return lam, X, true_res, matvecs
            worst_residual = float(np.max(true_res))

        if boundary_vec is None:
            # Exhausted an invariant subspace covering the whole space.
            if m == n:
                X = V @ Y[:, :n_req]
                lam = evals[:n_req]
                R = np.stack([apply(X[:, i]) for i in range(n_req)], axis=1) - X * lam
                matvecs += n_req
                true_res = np.linalg.norm(R, axis=0)
                if np.all(true_res < tol) and n_req == nev:
                    return lam, X, true_res, matvecs
            boundary_vec = _orthonormalize_against(rng.standard_normal(n), V)
            boundary_beta = 0.0

        # Thick restart: keep the requested end plus a few buffer pairs.
        k_new = min(nev + 8, m - 2)
        theta = evals[:k_new].copy()
        coup = boundary_beta * Y[m - 1, :k_new]
        V[:, :k_new] = V @ Y[:, :k_new]
        V[:, k_new] = boundary_vec
        V[:, k_new + 1 :] = 0.0
        k = k_new


def solve_extreme(op: LinearOperator, cfg: SolverConfig) -> SpectralBasis:
    """Compute the W extreme eigenpairs of a symmetric implicit operator.

    The spectral end follows the operator kind: smallest eigenvalues for
    Laplacian variants, largest for modularity.  One extra pair is probed
    (when W < N) to detect a degenerate bandwidth cutoff, which triggers a
    :class:`DegenerateCutoffWarning` and sets the basis flag.
    """
    n = op.dimension
    w = cfg.bandwidth
    if n < 1:
        raise ValueError("operator dimension must be >= 1")
    if w > n:
        raise ValueError(f"bandwidth W={w} exceeds operator dimension N={n}")

    largest = OperatorKind(op.kind) is OperatorKind.MODULARITY
    end = SpectralEnd.LARGEST_FIRST if largest else SpectralEnd.SMALLEST_FIRST

    nev = w + 1 if w < n else w
    m = cfg.subspace_dimension
    if m is None:
        m = max(2 * nev + 2, 20)
    m = min(m, n)
    if m <= nev and m < n:
        raise ValueError(
            f"subspace_dimension={m} too small for W={w} (need > W+1 or the full dimension)"
        )
    max_iterations = cfg.max_iterations if cfg.max_iterations is not None else max(50 * w, 500)

    rng = np.random.default_rng(cfg.seed)
    values, vectors, residuals, _ = _lanczos_extreme(
        op, nev, largest, cfg.tolerance, max_iterations, m, rng
    )

    cutoff_gap = None
    degenerate = False
    if nev > w:
        cutoff_gap = float(abs(values[w] - values[w - 1]))
        degenerate = cutoff_gap < DEGENERATE_GAP_RTOL * max(abs(float(values[w - 1])), 1.0)
        values = values[:w]
        vectors = vectors[:, :w]
        residuals = residuals[:w]
    if degenerate:
        warnings.warn(
            f"eigenvalues {w} and {w + 1} are numerically tied (gap {cutoff_gap:.3e}); "
            "the span of the basis is not uniquely defined",
            DegenerateCutoffWarning,
            stacklevel=2,
        )

    vectors = _fix_signs(vectors)
    vectors.setflags(write=False)
    values = values.copy()
    values.setflags(write=False)
    return SpectralBasis(
        vectors=vectors,
        values=values,
        end=end,
        operator_kind=OperatorKind(op.kind),
        residual_norms=residuals,
        seed=cfg.seed,
        tolerance=cfg.tolerance,
        degenerate_cutoff=degenerate,
        cutoff_gap=cutoff_gap,
    )


def save_basis(basis: SpectralBasis, path: str | Path) -> None:
    """Serialize a basis to an .npz archive."""
    np.savez(
        path,
        vectors=basis.vectors,
        values=basis.values,
        residual_norms=basis.residual_norms,
        end=np.array(basis.end.value),
        operator_kind=np.array(basis.operator_kind.value),
        seed=np.array(basis.seed),
        tolerance=np.array(basis.tolerance),
        degenerate_cutoff=np.array(basis.degenerate_cutoff),
        cutoff_gap=np.array(np.nan if basis.cutoff_gap is None else basis.cutoff_gap),
    )


def load_basis(path: str | Path) -> SpectralBasis:
    """Load a basis saved by :func:`save_basis`."""
    with np.load(path) as z:
        gap = float(z["cutoff_gap"])
        return SpectralBasis(
            vectors=z["vectors"],
            values=z["values"],
            end=SpectralEnd(str(z["end"])),
            operator_kind=OperatorKind(str(z["operator_kind"])),
            residual_norms=z["residual_norms"],
            seed=int(z["seed"]),
            tolerance=float(z["tolerance"]),
            degenerate_cutoff=bool(z["degenerate_cutoff"]),
            cutoff_gap=None if np.isnan(gap) else gap,
        )
