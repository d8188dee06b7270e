"""Sparse SPD solves and the boundary Schur complement as an operator.

The Schur complement S = (boundary block) - coupling^T (interior block)^{-1}
coupling is never formed at scale: applying S costs one interior solve, and
applying S^{-1} on mean-zero vectors costs one solve with the full (grounded)
Laplacian. Both factorizations are cached on the operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConvergenceError, InputError
from .graphs import BlockSystem, BoundaryFace

DENSE_SOLVE_CUTOFF = 500
DENSE_SCHUR_CAP = 2000


def solve_spd(A, b, tol: float = 1e-10, maxiter: int | None = None) -> np.ndarray:
    """Solve A x = b for symmetric positive definite A.

    Guarantees ||A x - b|| <= tol * ||b|| on return. Uses dense Cholesky
    below size 500 and Jacobi-preconditioned conjugate gradients above;
    raises ConvergenceError (carrying the final relative residual) if the
    iteration cap (default 10 n) is exhausted.
    """
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    if A.shape != (n, n):
        raise InputError(f"operator shape {A.shape} does not match rhs length {n}")
    norm_b = np.linalg.norm(b)
    if norm_b == 0.0:
        return np.zeros_like(b)

    if n < DENSE_SOLVE_CUTOFF:
        dense = A.toarray() if sp.issparse(A) else np.asarray(A, dtype=float)
        x = sla.cho_solve(sla.cho_factor(dense), b)
        residual = np.linalg.norm(dense @ x - b) / norm_b
        if residual <= tol:
            return x
        # fall through to CG polishing from the direct solution
        x0 = x
    else:
        x0 = np.zeros_like(b)

    diag = A.diagonal() if hasattr(A, "diagonal") else np.asarray(A).diagonal()
    inv_diag = np.where(diag > 0, 1.0 / np.where(diag > 0, diag, 1.0), 1.0)

    x = x0
    r = b - A @ x
    z = inv_diag * r
    p = z.copy()
    rz = float(r @ z)
    cap = maxiter if maxiter is not None else 10 * n
    for _ in range(cap):
        if np.linalg.norm(r) <= tol * norm_b:
            return x
        Ap = A @ p
        alpha = rz / float(p @ Ap)
        x = x + alpha * p
        r = r - alpha * Ap
        z = inv_diag * r
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new
    residual = np.linalg.norm(b - A @ x) / norm_b
    if residual <= tol:
        return x
    raise ConvergenceError(
        f"CG did not reach tol={tol} in {cap} iterations (residual {residual:.3e})",
        residual=residual,
    )


class SchurOperator:
    """Matrix-free boundary Schur complement of a partitioned Laplacian.

    Read-only after construction; applies allocate per-call scratch only, so
    concurrent use is safe (the lazy grounded factorization is idempotent).
    """

    def __init__(self, blocks: BlockSystem, tol: float = 1e-10, maxiter: int | None = None):
        self.blocks = blocks
        self.tol = tol
        self.maxiter = maxiter
        if blocks.n_interior > 0:
            self._interior_solve = spla.factorized(blocks.interior_matrix.tocsc())
        else:
            self._interior_solve = None
        self._grounded = None

    @property
    def n_gamma(self) -> int:
        return self.blocks.n_gamma

    def apply(self, x: np.ndarray) -> np.ndarray:
        """S x, one interior solve per call (matrix-free)."""
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.n_gamma:
            raise InputError(f"expected leading dimension {self.n_gamma}, got {x.shape}")
        bl = self.blocks
        if self._interior_solve is None:
            return bl.boundary_matrix @ x
        y = self._interior_solve(bl.coupling @ x)
        return bl.boundary_matrix @ x - bl.coupling.T @ y

    def _permuted_laplacian(self) -> sp.csr_matrix:
        bl = self.blocks
        if bl.n_interior == 0:
            return bl.boundary_matrix.tocsr()
        return sp.bmat(
            [[bl.interior_matrix, -bl.coupling], [-bl.coupling.T, bl.boundary_matrix]],
            format="csr",
        )

    def apply_inverse(self, x: np.ndarray, mean_tol: float = 1e-8) -> np.ndarray:
        """S^{-1} x on the mean-zero subspace.

        Solves the full Laplacian system with right-hand side (0, x) and
        reads off the boundary block; the solution is pinned by grounding
        one vertex and then recentered. Inputs with a mean component above
        ``mean_tol`` (relative) are rejected; smaller ones are projected.
        """
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.n_gamma:
            raise InputError(f"expected leading dimension {self.n_gamma}, got {x.shape}")
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            return np.zeros_like(x)
        mean = x.mean(axis=0)
        if np.linalg.norm(np.atleast_1d(mean)) * np.sqrt(self.n_gamma) > mean_tol * norm_x:
            raise InputError("input to apply_inverse has a nonzero mean component")
        x = x - mean

        if self._grounded is None:
            full = self._permuted_laplacian().tocsc()
            self._grounded = (full, spla.splu(full[:-1, :-1].tocsc()))
        full, lu = self._grounded

        n_int = self.blocks.n_interior
        rhs = np.zeros((full.shape[0],) + x.shape[1:])
        rhs[n_int:] = x
        z = lu.solve(rhs[:-1])
        v = np.concatenate([z, np.zeros((1,) + x.shape[1:])], axis=0)

        residual = np.linalg.norm(full @ v - rhs)
        if residual > self.tol * norm_x:
            v[:-1] += lu.solve((rhs - full @ v)[:-1])
            residual = np.linalg.norm(full @ v - rhs)
            if residual > self.tol * norm_x:
                raise ConvergenceError(
                    f"grounded Laplacian solve stalled at residual {residual:.3e}",
                    residual=residual,
                )
        y = v[n_int:]
        return y - y.mean(axis=0)

    def dense(self) -> np.ndarray:
        """S as a dense matrix, by applying the operator to the identity."""
        return self.apply(np.eye(self.n_gamma))


def dense_schur(blocks: BlockSystem, cap: int = DENSE_SCHUR_CAP) -> np.ndarray:
    """Schur complement by dense elimination of the interior block.

    Testing oracle: refuses interiors larger than ``cap``.
    """
    if blocks.n_interior > cap:
        raise InputError(
            f"interior size {blocks.n_interior} exceeds dense cap {cap}"
        )
    boundary = blocks.boundary_matrix.toarray()
    if blocks.n_interior == 0:
        return boundary
    interior = blocks.interior_matrix.toarray()
    coupling = blocks.coupling.toarray()
    return boundary - coupling.T @ sla.solve(interior, coupling, assume_a="pos")


@dataclass
class EigenPairSet:
    """Two smallest non-trivial eigenpairs of a PSD operator with nullspace 1.

    ``vectors`` columns are orthonormal and mean-zero; ``residuals`` are
    ||A v - lambda v|| per pair.
    """

    values: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    iterations: int


class _PsdOperator:
    """Uniform (apply, inverse-apply, size) view used by the eigensolver."""

    def __init__(self, op):
        if isinstance(op, SchurOperator):
            self.size = op.n_gamma
            self.apply = op.apply
            self.inverse = op.apply_inverse
        else:
            matrix = op.tocsr() if sp.issparse(op) else np.asarray(op, dtype=float)
            self.size = matrix.shape[0]
            self.apply = lambda x: matrix @ x
            if sp.issparse(matrix):
                lu = spla.splu(matrix[:-1, :-1].tocsc())
                solve = lu.solve
            else:
                factor = sla.cho_factor(matrix[:-1, :-1])
                solve = lambda b: sla.cho_solve(factor, b)

            def inverse(x):
                x = x - x.mean(axis=0)
                z = solve(x[:-1] if x.ndim == 1 else x[:-1, :])
                pad = np.zeros((1,) + x.shape[1:])
                v = np.concatenate([z, pad], axis=0)
                return v - v.mean(axis=0)

            self.inverse = inverse


def two_min_nontrivial_eigvecs(
    op,
    tol: float = 1e-8,
    maxiter: int = 500,
    seed: int = 0,
) -> EigenPairSet:
    """Two smallest non-trivial eigenpairs of a symmetric PSD operator whose
    nullspace is exactly span(1).

    Block inverse iteration on the mean-zero subspace with a 2-column
    Rayleigh-Ritz step; converges on eigen-residuals below ``tol``. Accepts
    a SchurOperator or any symmetric PSD matrix (sparse or dense) with the
    all-ones nullspace. For a doubled minimal eigenvalue any orthonormal
    basis of the invariant subspace may be returned.
    """
    psd = _PsdOperator(op)
    m = psd.size
    if m < 3:
        raise InputError("operator must act on at least 3 vertices")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((m, 2))
    v -= v.mean(axis=0)
    v, _ = np.linalg.qr(v)

    theta = np.zeros(2)
    res = np.full(2, np.inf)
    for it in range(1, maxiter + 1):
        w = psd.inverse(v)
        w -= w.mean(axis=0)
        w, _ = np.linalg.qr(w)
        aw = psd.apply(w)
        t = w.T @ aw
        theta, q = np.linalg.eigh((t + t.T) / 2.0)
        v = w @ q
        av = aw @ q
        res = np.linalg.norm(av - v * theta, axis=0)
        if res.max() <= tol:
            return EigenPairSet(values=theta, vectors=v, residuals=res, iterations=it)
    raise ConvergenceError(
        f"eigensolver residuals {res} above tol={tol} after {maxiter} iterations",
        residual=res,
    )


def cycle_laplacian(n: int) -> np.ndarray:
    """Dense Laplacian of the n-cycle."""
    lap = 2.0 * np.eye(n)
    idx = np.arange(n)
    lap[idx, (idx + 1) % n] -= 1.0
    lap[(idx + 1) % n, idx] -= 1.0
    return lap


def cycle_sqrt_laplacian(n_gamma: int) -> np.ndarray:
    """The cycle Laplacian to the one-half power, via its Fourier eigenbasis.

    The n-cycle Laplacian is circulant with eigenvalues 2 - 2cos(2 pi k / n),
    so its square root is the circulant matrix whose symbol is the square
    root of that: entry (i, j) equals (2/n) sum_k sin(pi k/n) cos(2 pi k
    (i-j)/n), the trapezoid-rule value of the integral of sin(pi x/2)
    cos(phi pi x) over [0, 2] at phi = cyclic distance (i - j).
    """
    if n_gamma < 3:
        raise InputError(f"cycle needs >= 3 vertices, got {n_gamma}")
    k = np.arange(n_gamma)
    symbol = 2.0 * np.sin(np.pi * k / n_gamma)
    first_col = np.fft.ifft(symbol).real
    return sla.circulant(first_col)


def cyclic_distance_matrix(n: int) -> np.ndarray:
    """Pairwise cyclic distances min(|i-j|, n-|i-j|)."""
    idx = np.arange(n)
    diff = np.abs(idx[:, None] - idx[None, :])
    return np.minimum(diff, n - diff)


def tilde_laplacian(gamma) -> np.ndarray:
    """Laplacian of the complete graph on the boundary cycle with weights
    equal to the inverse square cyclic distance."""
    n = gamma.n_gamma if isinstance(gamma, BoundaryFace) else int(gamma)
    if n < 3:
        raise InputError(f"cycle needs >= 3 vertices, got {n}")
    dist = cyclic_distance_matrix(n).astype(float)
    np.fill_diagonal(dist, np.inf)
    weights = 1.0 / dist**2
    return np.diag(weights.sum(axis=1)) - weights
