"""Biased (zero-padded) autocorrelation estimates: 1D lags and 2D blocks.

All lag sums are UNNORMALIZED: ``r_t = sum_k x(k+t) conj(x(k))`` over every
index pair that exists, i.e. over the zero-padded signal, with no ``1/N`` or
``1/(N-t)`` factor. The recursion coefficients downstream are ratios of lag
sums, so the scale cancels, and this exact windowing convention is what
makes the zero-padded lattice estimators agree with the autocorrelation
route to machine precision. Unbiased and covariance-method variants are
deliberately not provided.

For 2D signals the channel embedding stacks each signal row into shifted,
zero-filled copies (:func:`build_data_matrices`); the resulting lag blocks
form a Hermitian Toeplitz-block-Toeplitz correlation structure.
"""

import numpy as np

__all__ = [
    "block_toeplitz_matrix",
    "build_data_matrices",
    "estimate_autocorr_1d",
    "estimate_block_autocorr_2d",
    "toeplitz_matrix",
]


def as_signal_1d(x) -> np.ndarray:
    """Validate and convert a 1D complex signal (finite, length >= 1)."""
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1 or x.size < 1:
        raise ValueError(f"signal must be a nonempty 1D array, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError("signal contains NaN or Inf samples")
    return x


def as_grid_2d(x) -> np.ndarray:
    """Validate and convert a 2D complex grid (finite, both dims >= 1)."""
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
        raise ValueError(f"grid must be a nonempty 2D array, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError("grid contains NaN or Inf samples")
    return x


def estimate_autocorr_1d(x, max_lag: int) -> np.ndarray:
    """Lags ``r_0 .. r_max_lag`` of the biased, unnormalized autocorrelation.

    ``r_t = sum_{k=0}^{N-1-t} x(k+t) conj(x(k))``; negative lags are implied
    by ``r_{-t} = conj(r_t)``. ``r_0`` is real and nonnegative.
    """
    x = as_signal_1d(x)
    n = x.size
    if not 0 <= max_lag <= n - 1:
        raise ValueError(f"max_lag must be in [0, {n - 1}], got {max_lag}")
    r = np.empty(max_lag + 1, dtype=complex)
    for t in range(max_lag + 1):
        r[t] = np.vdot(x[: n - t], x[t:])
    r[0] = r[0].real
    return r


def toeplitz_matrix(lags, size: int | None = None) -> np.ndarray:
    """Hermitian Toeplitz matrix ``M[i, j] = r_{i-j}`` from lags ``r_0..``.

    ``r_{-t}`` is taken as ``conj(r_t)``. Used to assemble the dense normal
    equations that serve as the oracle for the order recursions.
    """
    lags = np.asarray(lags, dtype=complex)
    if lags.ndim != 1 or lags.size < 1:
        raise ValueError("lags must be a nonempty 1D array")
    n = lags.size if size is None else size
    if n < 1 or n > lags.size:
        raise ValueError(f"size must be in [1, {lags.size}], got {n}")
    idx = np.arange(n)
    d = idx[:, None] - idx[None, :]
    m = lags[np.abs(d)]
    return np.where(d >= 0, m, m.conj())


def build_data_matrices(x, n2: int) -> np.ndarray:
    """Shifted zero-filled embedding of a 2D signal, one matrix per row index.

    Returns an array of shape ``(N1, n2+1, N2+n2)`` whose ``k``-th matrix
    holds ``x(k, j - i)`` at row ``i``, column ``j`` when ``0 <= j-i <= N2-1``
    and zero elsewhere: each signal row is repeated and shifted one column to
    the right on every following line.
    """
    x = as_grid_2d(x)
    n_rows, n_cols = x.shape
    if not 0 <= n2 <= n_cols - 1:
        raise ValueError(f"channel order must be in [0, {n_cols - 1}], got {n2}")
    out = np.zeros((n_rows, n2 + 1, n_cols + n2), dtype=complex)
    for i in range(n2 + 1):
        out[:, i, i : i + n_cols] = x
    return out


def estimate_block_autocorr_2d(x, n1: int, n2: int) -> np.ndarray:
    """Lag blocks ``R_0 .. R_n1`` of the shifted-row embedding.

    Equals ``R_k = sum_m X(m+k) X(m)^H`` with ``X(m) = 0`` outside
    ``[0, N1-1]`` (zero padding along the row dimension, matching the
    extended error supports of the zero-padded lattice estimators), but is
    computed from the direct lag formula

        ``R_k[i, j] = sum_{m,u} x(m+k, u-i) conj(x(m, u-j))``

    which depends on ``(k, i-j)`` only, so every block is exactly Toeplitz.
    Returns shape ``(n1+1, n2+1, n2+1)``; negative lags are implied by
    ``R_{-k} = R_k^H``.
    """
    x = as_grid_2d(x)
    rows, cols = x.shape
    if not 0 <= n1 <= rows - 1:
        raise ValueError(f"n1 must be in [0, {rows - 1}], got {n1}")
    if not 0 <= n2 <= cols - 1:
        raise ValueError(f"n2 must be in [0, {cols - 1}], got {n2}")

    # rho[k, d] = sum_{m,v} x(m+k, v-d) conj(x(m, v)), d = i - j
    rho = np.empty((n1 + 1, 2 * n2 + 1), dtype=complex)
    for k in range(n1 + 1):
        lead = x[k:, :]
        lag = x[: rows - k, :]
        for d in range(-n2, n2 + 1):
            if d >= 0:
                rho[k, d + n2] = np.sum(lead[:, : cols - d] * lag[:, d:].conj())
            else:
                rho[k, d + n2] = np.sum(lead[:, -d:] * lag[:, : cols + d].conj())

    p = n2 + 1
    diff = np.arange(p)[:, None] - np.arange(p)[None, :]
    blocks = rho[:, diff + n2]
    return np.ascontiguousarray(blocks)


def block_toeplitz_matrix(blocks, order: int | None = None) -> np.ndarray:
    """Stacked Hermitian block-Toeplitz matrix with ``(i, j)`` block
    ``R_{j-i}``, assembled from nonnegative lag blocks (``R_{-k} = R_k^H``).

    Oracle-side helper for the dense solve of the block normal equations.
    """
    blocks = np.asarray(blocks, dtype=complex)
    if blocks.ndim != 3 or blocks.shape[1] != blocks.shape[2]:
        raise ValueError(f"blocks must have shape (n+1, p, p), got {blocks.shape}")
    n = blocks.shape[0] if order is None else order
    if n < 1 or n > blocks.shape[0]:
        raise ValueError(f"order must be in [1, {blocks.shape[0]}], got {n}")
    p = blocks.shape[1]
    big = np.empty((n * p, n * p), dtype=complex)
    for i in range(n):
        for j in range(n):
            k = j - i
            blk = blocks[k] if k >= 0 else blocks[-k].conj().T
            big[i * p : (i + 1) * p, j * p : (j + 1) * p] = blk
    return big
