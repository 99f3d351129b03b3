"""Small complex linear-algebra kernel: inner products, orthonormal bases,
null spaces and subspace projection for the precoding code.

Everything here works on 1-D complex numpy arrays and is pure, so all
functions are safe to call from multiple threads.
"""

import numpy as np

from .errors import DimensionError

RANK_TOL = 1e-12


def as_cvector(v):
    """Coerce to a 1-D complex array, rejecting anything else."""
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1:
        raise DimensionError(f"expected a vector, got shape {arr.shape}")
    return arr


def hermitian_inner(a, b):
    """Hermitian inner product sum(conj(a_i) * b_i)."""
    a = as_cvector(a)
    b = as_cvector(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return complex(np.vdot(a, b))


def norm(v):
    return float(np.linalg.norm(as_cvector(v)))


def _orthogonalize(v, basis):
    # Modified Gram-Schmidt with one re-orthogonalization pass; stable
    # enough for the tiny dimensions (N_t <= 8) this package targets.
    w = v.astype(complex).copy()
    for _ in range(2):
        for b in basis:
            w -= np.vdot(b, w) * b
    return w


def orthonormalize(vectors, tol=RANK_TOL):
    """Orthonormal basis of span(vectors); rank-deficient inputs are dropped.

    A candidate is discarded when its residual norm after projection falls
    below tol times its input norm.
    """
    basis = []
    for v in vectors:
        v = as_cvector(v)
        scale = np.linalg.norm(v)
        if scale == 0.0:
            continue
        w = _orthogonalize(v, basis)
        r = np.linalg.norm(w)
        if r < tol * scale:
            continue
        basis.append(w / r)
    return basis


def null_space_basis(rows, tol=RANK_TOL, dim=None):
    """Orthonormal basis of the orthogonal complement of span(rows).

    `dim` is the ambient dimension; required when `rows` is empty,
    otherwise inferred (and checked) from the rows. Returns
    dim - rank(rows) vectors; an empty list for full-rank square input.
    """
    rows = [as_cvector(r) for r in rows]
    if rows:
        d = rows[0].shape[0]
        for r in rows[1:]:
            if r.shape[0] != d:
                raise DimensionError("rows have inconsistent dimensions")
        if dim is not None and dim != d:
            raise DimensionError(f"dim={dim} but rows have dimension {d}")
    elif dim is None:
        raise DimensionError("dim is required when rows is empty")
    else:
        d = dim

    row_basis = orthonormalize(rows, tol)
    basis = []
    for i in range(d):
        e = np.zeros(d, dtype=complex)
        e[i] = 1.0
        w = _orthogonalize(e, row_basis + basis)
        r = np.linalg.norm(w)
        if r >= tol:
            basis.append(w / r)
    return basis


def project_onto_subspace(v, basis):
    """Orthogonal projection of v onto span(basis); basis must be orthonormal."""
    v = as_cvector(v)
    out = np.zeros_like(v)
    for b in basis:
        b = as_cvector(b)
        if b.shape != v.shape:
            raise DimensionError(f"dimension mismatch: {b.shape[0]} vs {v.shape[0]}")
        out += np.vdot(b, v) * b
    return out
