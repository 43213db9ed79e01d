"""Dense Hermitian linear algebra on small finite-dimensional spaces.

Everything here works on plain complex numpy arrays.  Operators that are
only positive semidefinite up to rounding are handled through a relative
rank cutoff: eigenvalues below ``dim * eps * lambda_max`` are treated as
exactly zero, so negative powers and logarithms are always taken on the
support only (pseudo-inverse convention).

Subsystem ordering is big-endian throughout: in ``kron(A, B)`` the first
factor carries the most significant index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Hard ceiling for composite dimensions; everything is dense.
MAX_TENSOR_DIM = 4096

_EPS = float(np.finfo(np.float64).eps)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def rank_cutoff(eigenvalues: np.ndarray, rank_tol: float | None = None) -> float:
    """Absolute cutoff below which eigenvalues count as zero.

    Defaults to ``d * eps * max(|lambda|)``; pass ``rank_tol`` to override.
    """
    if rank_tol is not None:
        if rank_tol < 0:
            raise ValueError(f"rank tolerance must be nonnegative, got {rank_tol}")
        return float(rank_tol)
    lam_max = float(np.max(np.abs(eigenvalues), initial=0.0))
    return len(eigenvalues) * _EPS * lam_max


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # unitary; column j pairs with eigenvalues[j]
    rank_tolerance: float

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.eigenvalues > self.rank_tolerance))

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def hermiticity_residual(h: np.ndarray) -> float:
    """Relative spectral-norm deviation of ``h`` from its adjoint."""
    scale = np.linalg.norm(h, 2)
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(h - dagger(h), 2) / scale)


def eig_hermitian(
    h: np.ndarray, *, rank_tol: float | None = None, herm_tol: float = 1e-10
) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises ``ValueError`` naming the symmetry residual when the input is
    not Hermitian within ``herm_tol`` (relative spectral norm).
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise ValueError("matrix has non-finite entries")
    res = hermiticity_residual(h)
    if res > herm_tol:
        raise ValueError(
            f"matrix is not Hermitian: relative symmetry residual {res:.3e} "
            f"exceeds {herm_tol:.1e}"
        )
    vals, vecs = np.linalg.eigh(0.5 * (h + dagger(h)))
    order = np.argsort(vals)[::-1]
    vals = vals[order]
    vecs = vecs[:, order]
    return SpectralDecomposition(vals, vecs, rank_cutoff(vals, rank_tol))


def _psd_eigensystem(h, rank_tol):
    """Eigensystem of a PSD matrix with sub-cutoff eigenvalues clamped to 0."""
    dec = eig_hermitian(h, rank_tol=rank_tol)
    vals = dec.eigenvalues.copy()
    cut = dec.rank_tolerance
    neg = vals < -cut
    if np.any(neg):
        worst = float(vals[neg].min())
        raise ValueError(
            f"matrix is not positive semidefinite: eigenvalue {worst:.3e} "
            f"below -{cut:.3e}"
        )
    vals[vals <= cut] = 0.0
    return vals, dec.eigenvectors


def fun_on_support(h, f, rank_tol: float | None = None) -> np.ndarray:
    """Apply scalar ``f`` to the spectrum of PSD ``h`` restricted to its support.

    Eigenvalues at or below the rank cutoff are mapped to zero regardless
    of ``f``, which realizes pseudo-inverses and support-restricted logs.
    """
    vals, vecs = _psd_eigensystem(h, rank_tol)
    fvals = np.array([f(v) if v > 0.0 else 0.0 for v in vals], dtype=complex)
    return (vecs * fvals) @ dagger(vecs)


def power_on_support(h, p: float, rank_tol: float | None = None) -> np.ndarray:
    """``h**p`` on the support of PSD ``h``; zero on the kernel.

    Negative ``p`` gives the pseudo-inverse power.
    """
    return fun_on_support(h, lambda v: v**p, rank_tol=rank_tol)


def imaginary_power(h, t: float, rank_tol: float | None = None) -> np.ndarray:
    """``h**(i t)`` on the support of PSD ``h``; zero on the kernel.

    The result is unitary on the support.
    """
    return fun_on_support(h, lambda v: np.exp(1j * t * np.log(v)), rank_tol=rank_tol)


def complex_power_on_support(h, z: complex, rank_tol: float | None = None) -> np.ndarray:
    """``h**z`` on the support of PSD ``h`` for complex exponent ``z``."""
    return fun_on_support(h, lambda v: np.exp(z * np.log(v)), rank_tol=rank_tol)


def log_on_support(h, rank_tol: float | None = None) -> np.ndarray:
    """Natural log of PSD ``h`` on its support; zero on the kernel."""
    return fun_on_support(h, np.log, rank_tol=rank_tol)


def sqrtm_psd(h, rank_tol: float | None = None) -> np.ndarray:
    """Principal square root of a PSD matrix."""
    return power_on_support(h, 0.5, rank_tol=rank_tol)


def support_projector(h, rank_tol: float | None = None) -> np.ndarray:
    """Orthogonal projector onto the support of PSD ``h``."""
    vals, vecs = _psd_eigensystem(h, rank_tol)
    cols = vecs[:, vals > 0.0]
    return cols @ dagger(cols)


def schatten_norm(m: np.ndarray, p: float) -> float:
    """Schatten p-norm (l^p norm of the singular values); ``p=np.inf`` allowed."""
    m = np.asarray(m, dtype=complex)
    if not (p == np.inf or p >= 1.0):
        raise ValueError(f"Schatten norm requires p >= 1 or inf, got {p}")
    s = np.linalg.svd(m, compute_uv=False)
    if p == np.inf:
        return float(s[0]) if s.size else 0.0
    if p == 1.0:
        return float(np.sum(s))
    if p == 2.0:
        return float(np.sqrt(np.sum(s * s)))
    return float(np.sum(s**p) ** (1.0 / p))


def trace_norm(m: np.ndarray) -> float:
    return schatten_norm(m, 1.0)


def trace_norm_hermitian(m: np.ndarray) -> float:
    """Trace norm of a Hermitian matrix via its eigenvalues (faster than SVD)."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(m))))


def tensor_product(*factors: np.ndarray, max_dim: int = MAX_TENSOR_DIM) -> np.ndarray:
    """Kronecker product of the factors, first factor most significant.

    Guards against composite dimensions above ``max_dim``.
    """
    if not factors:
        raise ValueError("tensor_product needs at least one factor")
    factors = [np.asarray(f, dtype=complex) for f in factors]
    rows = int(np.prod([f.shape[0] for f in factors]))
    cols = int(np.prod([f.shape[1] for f in factors]))
    if rows > max_dim or cols > max_dim:
        raise ValueError(
            f"tensor product dimension {rows}x{cols} exceeds the configured "
            f"maximum {max_dim}"
        )
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def partial_trace(m: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out all tensor factors not listed in ``keep``.

    ``dims`` lists the factor dimensions in big-endian order and must
    multiply to the dimension of ``m``; ``keep`` is an iterable of factor
    indices to retain (output keeps their original order).
    """
    m = np.asarray(m, dtype=complex)
    dims = [int(d) for d in dims]
    n = len(dims)
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise ValueError(f"dims {dims} do not match matrix shape {m.shape}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} factors")

    tensor = m.reshape(dims + dims)
    # Trace over discarded factors from the highest index down so that the
    # remaining axis numbering stays valid.
    removed = 0
    for i in range(n - 1, -1, -1):
        if i in keep:
            continue
        n_cur = n - removed
        tensor = np.trace(tensor, axis1=i, axis2=i + n_cur)
        removed += 1
    d_keep = int(np.prod([dims[k] for k in keep], initial=1))
    return tensor.reshape(d_keep, d_keep)
