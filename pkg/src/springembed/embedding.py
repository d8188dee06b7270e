"""Planar embeddings: Tutte extension, energies, the circle layout, and
normalization onto the constraint set (centered, whitened columns)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla

from .errors import DegenerateGeometryError, InputError
from .graphs import BlockSystem, Graph
from .spectral import SchurOperator


@dataclass(frozen=True)
class Embedding:
    """An m x 2 coordinate table.

    ``scope`` is "full" (one row per graph vertex) or "boundary" (one row
    per boundary-cycle vertex, in cycle order).
    """

    coords: np.ndarray
    scope: str = "boundary"

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise InputError(f"coordinates must be m x 2, got {coords.shape}")
        if self.scope not in ("full", "boundary"):
            raise InputError(f"unknown scope {self.scope!r}")
        object.__setattr__(self, "coords", coords)

    @property
    def m(self) -> int:
        return len(self.coords)

    def is_normalized(self, tol: float = 1e-8) -> bool:
        gram = self.coords.T @ self.coords
        mean = self.coords.mean(axis=0)
        return bool(
            np.abs(mean).max() <= 1e-10 and np.abs(gram - np.eye(2)).max() <= tol
        )


def tutte_extend(blocks, x_gamma: Embedding) -> Embedding:
    """Harmonic (spring) extension of a boundary embedding.

    Interior coordinates solve the mass-center fixed point, columnwise:
    (interior block) X_o = coupling X_gamma. Accepts a BlockSystem or a
    SchurOperator (whose cached interior factorization is then reused).
    """
    if isinstance(blocks, SchurOperator):
        op, blocks = blocks, blocks.blocks
        solve = op._interior_solve
    else:
        solve = (
            spla.factorized(blocks.interior_matrix.tocsc())
            if blocks.n_interior > 0
            else None
        )
    if x_gamma.m != blocks.n_gamma:
        raise InputError(f"boundary embedding has {x_gamma.m} rows, expected {blocks.n_gamma}")
    full = np.empty((blocks.n, 2))
    full[blocks.boundary_index] = x_gamma.coords
    if blocks.n_interior > 0:
        full[blocks.interior_index] = solve(blocks.coupling @ x_gamma.coords)
    return Embedding(coords=full, scope="full")


def hall_energy(g: Graph, x: Embedding) -> float:
    """Sum of squared Euclidean edge lengths, Tr(X^T L X)."""
    if x.scope != "full":
        raise InputError("hall_energy needs a full-graph embedding")
    if x.m != g.n:
        raise InputError(f"embedding has {x.m} rows, graph has {g.n} vertices")
    if g.m == 0:
        return 0.0
    diff = x.coords[g.edges[:, 0]] - x.coords[g.edges[:, 1]]
    return float((diff * diff).sum())


def boundary_energy(op: SchurOperator, x_gamma: Embedding) -> float:
    """Tr(X^T S X) for the boundary Schur complement, matrix-free."""
    if x_gamma.scope != "boundary":
        raise InputError("boundary_energy needs a boundary embedding")
    coords = x_gamma.coords
    return float((coords * op.apply(coords)).sum())


def circle_embedding(n_gamma: int) -> Embedding:
    """Evenly spaced points on a circle, scaled onto the constraint set.

    Row j-1 is sqrt(2/n) (cos(2 pi j / n), sin(2 pi j / n)); the sqrt(2/n)
    radius makes the columns orthonormal, and the columns span the minimal
    non-trivial eigenspace of the boundary-cycle Laplacian (and of its
    square root).
    """
    if n_gamma < 3:
        raise InputError(f"need at least 3 boundary vertices, got {n_gamma}")
    j = np.arange(1, n_gamma + 1)
    angle = 2.0 * np.pi * j / n_gamma
    scale = np.sqrt(2.0 / n_gamma)
    coords = scale * np.column_stack([np.cos(angle), np.sin(angle)])
    return Embedding(coords=coords, scope="boundary")


def normalize(x_gamma: Embedding, rank_tol: float = 1e-12) -> Embedding:
    """Center the rows and whiten via the 2x2 Gram eigendecomposition.

    The applied map is affine and invertible, so convex position and
    planarity of the input are preserved. Collinear input has a singular
    Gram matrix and is rejected.
    """
    coords = x_gamma.coords - x_gamma.coords.mean(axis=0)
    gram = coords.T @ coords
    evals, q = np.linalg.eigh((gram + gram.T) / 2.0)
    if evals[0] <= rank_tol * max(evals[1], 1e-300):
        raise DegenerateGeometryError("embedding rows are collinear; cannot whiten")
    out = coords @ q / np.sqrt(evals)
    return Embedding(coords=out, scope=x_gamma.scope)
